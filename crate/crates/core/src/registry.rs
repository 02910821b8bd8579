//! Printed displays pinned as data, and their comparison against the engine.
//!
//! Each entry stores the printed form as expression text. A mismatch is either
//! an exact match, a recorded known discrepancy (with the reason), or an
//! unexpected diff.

use std::fmt;

use crate::bundlealg::{eval_expr, parse_expr, Bigrade, FormalBundle};
use crate::error::Result;
use crate::higgs::{Constraint, HiggsSystem};
use crate::reduce::{reduce_source, AbelianPart};

/// What a registry entry is compared against.
#[derive(Clone, Copy, Debug)]
pub enum Subject {
    /// Reduced complex of an expression or of `named:X`, one printed term per degree
    /// (`None` where nothing is printed).
    Reduced { source: &'static str, printed: &'static [Option<&'static str>] },
    /// One bigraded piece of a system.
    Piece { system: SystemRef, bigrade: Bigrade, printed: &'static str },
}

/// A system, or its abelian sub-system, or the quotient by it.
#[derive(Clone, Copy, Debug)]
pub enum SystemRef {
    Expr(&'static str),
    Sub(&'static str, AbelianPart),
    Quotient(&'static str, AbelianPart),
}

impl SystemRef {
    pub fn build(&self, n: usize) -> Result<HiggsSystem> {
        let (src, part) = match *self {
            SystemRef::Expr(s) => return HiggsSystem::from_expr(&parse_expr(s)?, n),
            SystemRef::Sub(s, p) | SystemRef::Quotient(s, p) => (s, p),
        };
        let h = HiggsSystem::from_expr(&parse_expr(src)?, n)?;
        let c = match part {
            AbelianPart::KernelAtEdge => Constraint::abelian(&h)?,
            AbelianPart::Flat => Constraint::flat(&h),
        };
        let ab = h.maximal_sub_system(&c, true)?;
        match self {
            SystemRef::Sub(..) => Ok(ab),
            _ => h.quotient_system(&ab),
        }
    }

    fn describe(&self) -> String {
        let part = |p: &AbelianPart| match p {
            AbelianPart::KernelAtEdge => "E_ab",
            AbelianPart::Flat => "flat E_ab",
        };
        match self {
            SystemRef::Expr(s) => s.to_string(),
            SystemRef::Sub(s, p) => format!("{} of {s}", part(p)),
            SystemRef::Quotient(s, p) => format!("{s} / {}", part(p)),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Entry {
    pub id: &'static str,
    pub n: usize,
    pub subject: Subject,
    pub citation: &'static str,
    /// Reason the printed form is expected to differ from the engine, if it does.
    pub known_discrepancy: Option<&'static str>,
}

/// Outcome of comparing one entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Match,
    KnownDiscrepancy { diffs: Vec<String>, reason: &'static str },
    Diff { diffs: Vec<String> },
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: &'static str,
    pub n: usize,
    pub verdict: Verdict,
}

impl Outcome {
    pub fn is_failure(&self) -> bool {
        matches!(self.verdict, Verdict::Diff { .. })
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.verdict {
            Verdict::Match => write!(f, "match  {} (n={})", self.id, self.n),
            Verdict::KnownDiscrepancy { diffs, reason } => {
                write!(f, "known  {} (n={}): {reason}", self.id, self.n)?;
                for d in diffs {
                    write!(f, "\n         {d}")?;
                }
                Ok(())
            }
            Verdict::Diff { diffs } => {
                write!(f, "DIFF   {} (n={})", self.id, self.n)?;
                for d in diffs {
                    write!(f, "\n         {d}")?;
                }
                Ok(())
            }
        }
    }
}

fn printed_bundle(src: &str, n: usize) -> Result<FormalBundle> {
    if src.trim() == "0" {
        return Ok(FormalBundle::new(n));
    }
    eval_expr(&parse_expr(src)?, n)
}

fn show(b: &FormalBundle) -> String {
    if b.is_empty() {
        "0".into()
    } else {
        b.to_expr_string()
    }
}

impl Entry {
    /// Differences between printed and computed forms, one line each.
    pub fn diffs(&self) -> Result<Vec<String>> {
        let mut out = Vec::new();
        match self.subject {
            Subject::Reduced { source, printed } => {
                let r = reduce_source(source, self.n, crate::fiber::DEFAULT_LIMIT)?;
                for (i, p) in printed.iter().enumerate() {
                    let Some(p) = p else { continue };
                    let want = printed_bundle(p, self.n)?;
                    let got = r.term(i);
                    if want != got {
                        out.push(format!("H{i}: printed {} / computed {}", show(&want), show(&got)));
                    }
                }
            }
            Subject::Piece { system, bigrade, printed } => {
                let h = system.build(self.n)?;
                let want = printed_bundle(printed, self.n)?;
                let got = h.piece(bigrade);
                if want != got {
                    out.push(format!(
                        "{} {:?}: printed {} / computed {}",
                        system.describe(),
                        bigrade,
                        show(&want),
                        show(&got)
                    ));
                }
            }
        }
        Ok(out)
    }

    pub fn check(&self) -> Result<Outcome> {
        let diffs = self.diffs()?;
        let verdict = match (diffs.is_empty(), self.known_discrepancy) {
            (true, _) => Verdict::Match,
            (false, Some(reason)) => Verdict::KnownDiscrepancy { diffs, reason },
            (false, None) => Verdict::Diff { diffs },
        };
        Ok(Outcome { id: self.id, n: self.n, verdict })
    }
}

/// Runs every entry in order.
pub fn verify_all() -> Result<Vec<Outcome>> {
    REGISTRY.iter().map(Entry::check).collect()
}

/// Expressions used by the registry, for round-trip checks.
pub fn expressions() -> Vec<&'static str> {
    let mut out = Vec::new();
    for e in REGISTRY {
        match e.subject {
            Subject::Reduced { source, printed } => {
                if !source.starts_with("named:") {
                    out.push(source);
                }
                out.extend(printed.iter().flatten().filter(|p| p.trim() != "0"));
            }
            Subject::Piece { system, printed, .. } => {
                let (SystemRef::Expr(s) | SystemRef::Sub(s, _) | SystemRef::Quotient(s, _)) = system;
                out.push(s);
                if printed.trim() != "0" {
                    out.push(printed);
                }
            }
        }
    }
    out
}

const DET_BOOKKEEPING: &str =
    "det-summand bookkeeping: W (x) Wedge^2 W = Gamma(1,1) (+) det at n=3; the printed form keeps a det summand that cancels";

const fn reduced(id: &'static str, n: usize, source: &'static str, printed: &'static [Option<&'static str>], citation: &'static str) -> Entry {
    Entry { id, n, subject: Subject::Reduced { source, printed }, citation, known_discrepancy: None }
}

const fn piece(id: &'static str, n: usize, system: SystemRef, bigrade: Bigrade, printed: &'static str, citation: &'static str) -> Entry {
    Entry { id, n, subject: Subject::Piece { system, bigrade, printed }, citation, known_discrepancy: None }
}

const fn known(mut e: Entry, reason: &'static str) -> Entry {
    e.known_discrepancy = Some(reason);
    e
}

const PR3: &str = "pr(Wedge^3(V))";
const PR4: &str = "pr(Wedge^4(V))";
const PR5: &str = "pr(Wedge^5(V))";

pub const REGISTRY: &[Entry] = &[
    reduced(
        "E1",
        2,
        "E1",
        &[Some("L^-1"), Some("S^2(Omega1) (x) L^-1"), Some("Omega1 (x) Omega2 (x) L^-1")],
        "reduced complex of E1 on a surface",
    ),
    reduced(
        "E2",
        2,
        "E2",
        &[Some("Omega1 (x) L^-2"), Some("S^2(Omega1) (x) L^-2"), Some("L^4")],
        "reduced complex of E2 on a surface",
    ),
    reduced(
        "End0(E1)",
        2,
        "End0(E1)",
        &[Some("Omega1 (x) L^-3"), Some("S^3(Omega1) (x) L^-3"), Some("Omega1 (x) L^3")],
        "reduced complex of End0(V1)",
    ),
    reduced(
        "S^2(E1)",
        2,
        "S^2(E1)",
        &[Some("L^-2"), Some("S^3(Omega1) (x) L^-2"), Some("S^2(Omega1) (x) L^1")],
        "reduced complex of S^2 E1",
    ),
    reduced(
        "S^2(E2)",
        2,
        "S^2(E2)",
        &[Some("S^2(Omega1) (x) L^-4"), Some("S^3(Omega1) (x) L^-4"), Some("L^5")],
        "reduced complex of S^2 E2",
    ),
    reduced("(A)", 2, "named:A", &[Some("O"), Some("S^3(Omega1) (x) L^-4 (+) Omega1"), Some("0")], "Wedge^3 V complex (A)"),
    reduced("(B)", 2, "named:B", &[Some("0"), Some("S^3(Omega1) (x) L^-2 (+) Omega1"), Some("L^3")], "Wedge^3 V complex (B)"),
    reduced(
        "S^1(E1)",
        3,
        "S^1(E1)",
        &[Some("L^-1"), Some("S^2(Omega1) (x) L^-1"), Some("Gamma(1,1)(Omega1) (x) L^-1"), Some("Omega1 (x) L^3")],
        "S^k E1 in dimension three, k=1",
    ),
    reduced(
        "S^2(E1)",
        3,
        "S^2(E1)",
        &[Some("L^-2"), Some("S^3(Omega1) (x) L^-2"), Some("Gamma(2,1)(Omega1) (x) L^-2"), Some("S^2(Omega1) (x) L^2")],
        "S^k E1 in dimension three, k=2",
    ),
    reduced(
        "S^3(E1)",
        3,
        "S^3(E1)",
        &[Some("L^-3"), Some("S^4(Omega1) (x) L^-3"), Some("Gamma(3,1)(Omega1) (x) L^-3"), Some("S^3(Omega1) (x) L^1")],
        "S^k E1 in dimension three, k=3",
    ),
    reduced(
        "S^1(E2)",
        3,
        "S^1(E2)",
        &[Some("Omega2 (x) L^-3"), Some("Gamma(1,1)(Omega1) (x) L^-3"), Some("S^2(Omega2) (x) L^-3"), Some("L^5")],
        "S^k E2 in dimension three, k=1",
    ),
    reduced(
        "S^2(E2)",
        3,
        "S^2(E2)",
        &[Some("S^2(Omega2) (x) L^-6"), Some("Gamma(1,2)(Omega1) (x) L^-6"), Some("S^3(Omega2) (x) L^-6"), Some("L^6")],
        "S^k E2 in dimension three, k=2",
    ),
    reduced(
        "S^3(E2)",
        3,
        "S^3(E2)",
        &[Some("S^3(Omega2) (x) L^-9"), Some("Gamma(1,3)(Omega1) (x) L^-9"), Some("S^4(Omega2) (x) L^-9"), Some("L^7")],
        "S^k E2 in dimension three, k=3",
    ),
    // genus 3
    piece("E_pr^{3,0}", 2, SystemRef::Expr(PR3), (3, 0), "L^2", "primitive part of Wedge^3 V"),
    piece("E_pr^{2,1}", 2, SystemRef::Expr(PR3), (2, 1), "O (+) Omega1 (x) L^-1 (+) S^2(Omega1) (x) L^-2", "primitive part of Wedge^3 V"),
    piece("E_pr^{1,2}", 2, SystemRef::Expr(PR3), (1, 2), "O (+) Omega1 (x) L^-2 (+) S^2(Omega1) (x) L^-4", "primitive part of Wedge^3 V"),
    piece("E_pr^{0,3}", 2, SystemRef::Expr(PR3), (0, 3), "L^-2", "primitive part of Wedge^3 V"),
    piece("E_ab^{2,1}", 2, SystemRef::Sub(PR3, AbelianPart::KernelAtEdge), (2, 1), "O", "maximal abelian sub-system, genus 3"),
    piece("E_ab^{1,2}", 2, SystemRef::Sub(PR3, AbelianPart::KernelAtEdge), (1, 2), "O", "maximal abelian sub-system, genus 3"),
    piece("E_ab^{3,0}", 2, SystemRef::Sub(PR3, AbelianPart::KernelAtEdge), (3, 0), "0", "maximal abelian sub-system, genus 3"),
    piece("E_ab^{0,3}", 2, SystemRef::Sub(PR3, AbelianPart::KernelAtEdge), (0, 3), "0", "maximal abelian sub-system, genus 3"),
    piece("F^{3,0}", 2, SystemRef::Quotient(PR3, AbelianPart::KernelAtEdge), (3, 0), "L^2", "quotient F = E/E_ab"),
    piece(
        "F^{2,1}",
        2,
        SystemRef::Quotient(PR3, AbelianPart::KernelAtEdge),
        (2, 1),
        "Omega1 (x) L^-1 (+) S^2(Omega1) (x) L^-2",
        "quotient F = E/E_ab",
    ),
    piece(
        "F^{1,2}",
        2,
        SystemRef::Quotient(PR3, AbelianPart::KernelAtEdge),
        (1, 2),
        "Omega1 (x) L^-2 (+) S^2(Omega1) (x) L^-4",
        "quotient F = E/E_ab",
    ),
    piece("F^{0,3}", 2, SystemRef::Quotient(PR3, AbelianPart::KernelAtEdge), (0, 3), "L^-2", "quotient F = E/E_ab"),
    reduced("(A')", 2, "named:Aprime", &[Some("0"), Some("S^3(Omega1) (x) L^-4"), Some("0")], "quotient complex (A')"),
    // genus 4, Wedge^4
    piece(
        "E_pr^{3,1}",
        3,
        SystemRef::Expr(PR4),
        (3, 1),
        "O (+) Omega2 (x) L^-2 (+) S^2(Omega2) (x) L^-4",
        "primitive part of Wedge^4 V",
    ),
    known(
        piece(
            "E_pr^{2,2}",
            3,
            SystemRef::Expr(PR4),
            (2, 2),
            "Omega1 (x) Omega2 (x) L^-4 (+) S^2(Omega1) (x) L^-2 (+) S^2(Omega2) (x) L^-6",
            "primitive part of Wedge^4 V",
        ),
        DET_BOOKKEEPING,
    ),
    piece(
        "E_pr^{1,3}",
        3,
        SystemRef::Expr(PR4),
        (1, 3),
        "O (+) S^2(Omega1) (x) L^-4 (+) Omega1 (x) L^-2",
        "primitive part of Wedge^4 V",
    ),
    piece("E_pr^{0,4}", 3, SystemRef::Expr(PR4), (0, 4), "L^-2", "primitive part of Wedge^4 V"),
    piece("E_ab^{3,1}", 3, SystemRef::Sub("Wedge^4(V)", AbelianPart::Flat), (3, 1), "O", "abelian sub-system of E^4"),
    piece("E_ab^{2,2}", 3, SystemRef::Sub("Wedge^4(V)", AbelianPart::Flat), (2, 2), "O", "abelian sub-system of E^4"),
    piece("E_ab^{1,3}", 3, SystemRef::Sub("Wedge^4(V)", AbelianPart::Flat), (1, 3), "O", "abelian sub-system of E^4"),
    known(
        reduced(
            "(C)",
            3,
            "named:C",
            &[
                Some("O"),
                Some("Omega1 (+) S^3(Omega1) (x) L^-2 (+) Gamma(1,2)(Omega1) (x) L^-6"),
                Some("Omega2"),
                Some("L^2"),
            ],
            "Wedge^4 V complex (C)",
        ),
        "det-summand bookkeeping: the printed E_pr^{2,2} keeps a trivial summand (giving Omega1 in H1), and the printed L^2 in H3 is hit by the det summand of Omega1 (x) L^-2 (x) Omega2",
    ),
    known(
        reduced(
            "(C')",
            3,
            "named:Cprime",
            &[Some("0"), Some("S^3(Omega1) (x) L^-2 (+) Gamma(1,2)(Omega1) (x) L^2"), Some("0"), Some("L^2")],
            "quotient complex (C')",
        ),
        "twist misprint and det-summand bookkeeping: the Gamma(1,2) summand carries the L^-6 of (C), and the printed L^2 in H3 is hit as in (C)",
    ),
    // genus 4, Wedge^5
    piece(
        "E_pr^{3,2}",
        3,
        SystemRef::Expr(PR5),
        (3, 2),
        "Omega2 (x) L^-3 (+) Omega2 (x) Omega2 (x) L^-5 (+) End0(Omega1) (x) L^1",
        "primitive part of Wedge^5 V",
    ),
    piece(
        "E_pr^{2,3}",
        3,
        SystemRef::Expr(PR5),
        (2, 3),
        "End0(Omega1) (x) L^-1 (+) Omega1 (x) Omega1 (x) L^-3 (+) Omega1 (x) L^-1",
        "primitive part of Wedge^5 V",
    ),
    piece("E_pr^{1,4}", 3, SystemRef::Expr(PR5), (1, 4), "Omega1 (x) L^-3 (+) L^-1", "primitive part of Wedge^5 V"),
    reduced("(A)", 3, "named:A", &[Some("End0(Omega1) (x) L^-1"), None, None, None], "Wedge^5 V complex (A), kernel in degree 0"),
    known(
        reduced(
            "(B)",
            3,
            "named:B",
            &[
                Some("Omega2 (x) L^-3"),
                Some("Gamma(2,1)(Omega1) (x) L^-5 (+) L^1 (+) S^3(Omega1) (x) L^-3 (+) S^2(Omega1) (x) L^-1"),
                Some("0"),
                Some("0"),
            ],
            "Wedge^5 V complex (B)",
        ),
        "derived with the n=3 reading of S^2 W (x) W = S^3 W (+) W (x) Wedge^2 W, which drops a det summand",
    ),
];
