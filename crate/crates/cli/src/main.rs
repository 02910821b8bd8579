use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use higgscalc::bundlealg::eval_expr;
use higgscalc::registry::{self, Verdict};
use higgscalc::vanish::{self, AxiomSet, CoverageRow, Statement};
use higgscalc::{parse_expr, Error, ErrorCategory, FormalBundle};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "higgscalc", version, about = "Exact Higgs-complex calculus on compactified ball quotients")]
struct Cli {
    /// Complex dimension n of the ball quotient.
    #[arg(long, global = true, default_value_t = 2)]
    dim: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Comma-separated axioms: nefBig, saper, kazdan, paperTheorem9, all.
    #[arg(long, global = true, default_value = "")]
    axioms: String,
    /// Largest total rank of a fiber system before giving up.
    #[arg(long, global = true, default_value_t = higgscalc::fiber::DEFAULT_LIMIT)]
    limit: usize,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Include derivation chains.
    #[arg(long, global = true)]
    chains: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a bundle expression into Schur summands.
    Decompose { expr: String },
    /// Reduce the Higgs complex of a system (or `named:X`) and apply the rule engine.
    Reduce { expr: String },
    /// Coverage table for H^0(S^n Omega1(log D)(-D) (x) L^-m) = 0.
    VanishingReport {
        #[arg(long, default_value_t = 6)]
        max_n: u32,
        #[arg(long, default_value_t = 8)]
        max_m: u32,
    },
    /// Compare the engine against the pinned printed displays.
    VerifyPaper,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match e.category() {
            ErrorCategory::Parse => (2, "parse"),
            ErrorCategory::Eval => (3, "eval"),
            ErrorCategory::Resources => (4, "resources"),
        };
        Failure { code, kind, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, code)) => match emit(&cli, &out) {
            Ok(()) => ExitCode::from(code),
            Err(f) => fail(f),
        },
        Err(f) => fail(f),
    }
}

fn fail(f: Failure) -> ExitCode {
    eprintln!("error[{}]: {}", f.kind, f.message.replace('\n', " "));
    ExitCode::from(f.code)
}

fn emit(cli: &Cli, out: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(p) => std::fs::write(p, format!("{out}\n"))
            .map_err(|e| Failure { code: 3, kind: "io", message: format!("{}: {e}", p.display()) }),
        None => {
            println!("{out}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<(String, u8), Failure> {
    if cli.dim == 0 {
        return Err(Failure { code: 2, kind: "parse", message: "--dim must be at least 1".into() });
    }
    let ax = AxiomSet::parse(&cli.axioms)?;
    match &cli.command {
        Command::Decompose { expr } => Ok((decompose(cli, expr)?, 0)),
        Command::Reduce { expr } => Ok((reduce(cli, expr, &ax)?, 0)),
        Command::VanishingReport { max_n, max_m } => {
            if *max_n < 3 || *max_m < 3 {
                return Err(Failure { code: 2, kind: "parse", message: "bounds must be at least 3".into() });
            }
            Ok((vanishing_report(cli, &vanish::coverage_report(*max_n, *max_m, &ax), &ax), 0))
        }
        Command::VerifyPaper => verify_paper(cli),
    }
}

fn count(s: String) -> Value {
    s.parse::<u64>().map(Value::from).unwrap_or(Value::String(s))
}

fn decompose(cli: &Cli, src: &str) -> Result<String, Failure> {
    let e = parse_expr(src).map_err(Error::from)?;
    let b = eval_expr(&e, cli.dim)?;
    Ok(match cli.format {
        Format::Latex => if b.is_empty() { "0".into() } else { b.to_latex() },
        Format::Json => {
            let summands: Vec<Value> = b
                .iter()
                .map(|(l, m)| {
                    json!({
                        "expr": FormalBundle::single(l.clone()).to_expr_string(),
                        "lambda": l.lambda(),
                        "lTwist": l.l_twist(),
                        "multiplicity": count(m.to_string()),
                        "rankPerSummand": count(l.weyl_dimension().to_string()),
                    })
                })
                .collect();
            let v = json!({
                "dimension": cli.dim,
                "expression": e.to_string(),
                "summands": summands,
                "rank": count(b.rank().to_string()),
            });
            serde_json::to_string_pretty(&v).expect("plain data serializes")
        }
        Format::Text => {
            let mut s = if b.is_empty() { "0".to_string() } else { b.to_expr_string() };
            for (l, m) in b.iter() {
                let name = FormalBundle::single(l.clone()).to_expr_string();
                write!(s, "\n  {m} x {name}  lambda={:?} L^{}  rank {}", l.lambda(), l.l_twist(), l.weyl_dimension()).unwrap();
            }
            write!(s, "\nrank {}", b.rank()).unwrap();
            s
        }
    })
}

fn statement_value(s: &Statement, chains: bool) -> Value {
    let mut v = serde_json::to_value(s).expect("plain data serializes");
    if !chains {
        if let Some(o) = v.as_object_mut() {
            o.remove("chain");
        }
    }
    v
}

fn reduce(cli: &Cli, src: &str, ax: &AxiomSet) -> Result<String, Failure> {
    let r = higgscalc::reduce::reduce_source(src, cli.dim, cli.limit)?;
    let a = vanish::twist_bracket(&r);
    let stmts = vanish::apply_rules(&a, ax);
    let imps = vanish::implications(&a);
    Ok(match cli.format {
        Format::Latex => r.to_latex(),
        Format::Json => {
            let brackets: Vec<Value> = a
                .terms
                .iter()
                .map(|t| {
                    json!({
                        "degree": t.degree,
                        "bigrade": [t.bigrade.0, t.bigrade.1],
                        "expr": t.expr(),
                        "multiplicity": count(t.multiplicity.to_string()),
                        "annotation": t.annotation,
                    })
                })
                .collect();
            let v = json!({
                "reduced": r.to_json_value(),
                "brackets": brackets,
                "axioms": ax.active().iter().map(|a| a.name()).collect::<Vec<_>>(),
                "implications": imps,
                "statements": stmts.iter().map(|s| statement_value(s, cli.chains)).collect::<Vec<_>>(),
            });
            serde_json::to_string_pretty(&v).expect("plain data serializes")
        }
        Format::Text => {
            let mut s = r.to_string();
            s.push_str("\nL2 brackets:");
            for t in &a.terms {
                let (inner, outer) = (t.subject(t.inner(), 0), t.subject(t.outer(), 0));
                if inner == outer {
                    write!(s, "\n  H{} {}: exact {:?}", t.degree, t.expr(), t.inner()).unwrap();
                } else {
                    write!(s, "\n  H{} {}: inner {:?}, outer {:?}", t.degree, t.expr(), t.inner(), t.outer()).unwrap();
                }
            }
            if !imps.is_empty() {
                s.push_str("\nimplications:");
                for i in &imps {
                    write!(s, "\n  {i}").unwrap();
                }
            }
            s.push('\n');
            s.push_str(&vanish::render_report(&stmts, ax, cli.chains));
            s
        }
    })
}

fn vanishing_report(cli: &Cli, rows: &[CoverageRow], ax: &AxiomSet) -> String {
    match cli.format {
        Format::Json => {
            let v: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "m": r.m,
                        "route": r.route.map(|(a, b)| json!({"a": a, "b": b})),
                        "statement": statement_value(&r.statement, cli.chains),
                    })
                })
                .collect();
            let v = json!({ "axioms": ax.active().iter().map(|a| a.name()).collect::<Vec<_>>(), "rows": v });
            serde_json::to_string_pretty(&v).expect("plain data serializes")
        }
        Format::Text | Format::Latex => {
            let mut s = ax.header();
            s.push_str("\n  n  m  status             route");
            for r in rows {
                let status = serde_json::to_value(r.statement.status).expect("enum serializes");
                let route = r.route.map(|(a, b)| format!("(a,b)=({a},{b})")).unwrap_or_else(|| "-".into());
                write!(s, "\n{:>3}{:>3}  {:<18} {route}", r.n, r.m, status.as_str().unwrap_or("?")).unwrap();
                if cli.chains {
                    for st in &r.statement.chain {
                        write!(s, "\n        <- {}: {}", st.rule, st.rule.citation()).unwrap();
                    }
                }
            }
            s
        }
    }
}

fn verify_paper(cli: &Cli) -> Result<(String, u8), Failure> {
    let outcomes = registry::verify_all()?;
    let failed = outcomes.iter().filter(|o| o.is_failure()).count();
    let known = outcomes.iter().filter(|o| matches!(o.verdict, Verdict::KnownDiscrepancy { .. })).count();
    let text = match cli.format {
        Format::Json => {
            let items: Vec<Value> = outcomes
                .iter()
                .map(|o| match &o.verdict {
                    Verdict::Match => json!({"id": o.id, "n": o.n, "verdict": "match"}),
                    Verdict::KnownDiscrepancy { diffs, reason } => {
                        json!({"id": o.id, "n": o.n, "verdict": "known-discrepancy", "diffs": diffs, "reason": reason})
                    }
                    Verdict::Diff { diffs } => json!({"id": o.id, "n": o.n, "verdict": "diff", "diffs": diffs}),
                })
                .collect();
            serde_json::to_string_pretty(&json!({"entries": items, "unexpectedDiffs": failed})).expect("plain data serializes")
        }
        Format::Text | Format::Latex => {
            let mut s = String::new();
            for o in &outcomes {
                writeln!(s, "{o}").unwrap();
            }
            write!(
                s,
                "{} entries: {} match, {known} known discrepancies, {failed} unexpected diffs",
                outcomes.len(),
                outcomes.len() - known - failed
            )
            .unwrap();
            s
        }
    };
    Ok((text, if failed > 0 { 1 } else { 0 }))
}
