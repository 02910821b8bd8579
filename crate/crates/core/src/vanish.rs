//! Vanishing and non-vanishing statements about the terms of a reduced complex.
//!
//! Nothing here is proved. Statements are derived from named axioms by a small
//! set of rules, and every derivation is a chain of steps that can be replayed.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::bundlealg::{eval_expr, parse_expr, Bigrade, BundleExpr, FormalBundle, IrrepLabel};
use crate::error::{Error, Result};
use crate::reduce::ReducedComplex;

/// How the coefficient sheaf of a term is twisted along the boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Twist {
    /// Log forms, no twist.
    Log,
    /// Log forms twisted by `-D`: the inner bound of the L² complex.
    MinusD,
    /// Forms without log poles: the outer bound.
    NonLogForm,
    /// The L² subcomplex itself.
    L2,
}

impl Twist {
    fn suffix(self) -> &'static str {
        match self {
            Twist::Log => "",
            Twist::MinusD => "(-D)",
            Twist::NonLogForm => "[no log poles]",
            Twist::L2 => "[L2]",
        }
    }
}

/// Annotation of one reduced term by its L² bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase", tag = "type")]
pub enum Annotation {
    Exact { twist: Twist },
    Bracket { inner: Twist, outer: Twist },
}

/// One irreducible summand of a reduced complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnotatedTerm {
    pub degree: usize,
    pub bigrade: Bigrade,
    pub label: IrrepLabel,
    pub multiplicity: BigUint,
    pub annotation: Annotation,
}

impl AnnotatedTerm {
    /// Index of the Hodge filtration the summand contributes to: `p + i`.
    pub fn hodge_index(&self) -> i32 {
        self.bigrade.0 + self.degree as i32
    }

    pub fn expr(&self) -> String {
        FormalBundle::single(self.label.clone()).to_expr_string()
    }

    /// `H^k` of this summand with the given twist.
    pub fn subject(&self, twist: Twist, cohomological_degree: u32) -> Subject {
        Subject {
            expr: self.expr(),
            twist,
            degree: cohomological_degree,
            bigrade: Some(self.bigrade),
            term: Some(self.degree),
        }
    }

    pub fn inner(&self) -> Twist {
        match self.annotation {
            Annotation::Exact { twist } => twist,
            Annotation::Bracket { inner, .. } => inner,
        }
    }

    pub fn outer(&self) -> Twist {
        match self.annotation {
            Annotation::Exact { twist } => twist,
            Annotation::Bracket { outer, .. } => outer,
        }
    }
}

/// A reduced complex with its terms split into annotated summands.
#[derive(Clone, Debug)]
pub struct Annotated {
    pub reduced: ReducedComplex,
    pub terms: Vec<AnnotatedTerm>,
}

impl Annotated {
    pub fn n(&self) -> usize {
        self.reduced.n()
    }

    pub fn in_degree(&self, i: usize) -> impl Iterator<Item = &AnnotatedTerm> {
        self.terms.iter().filter(move |t| t.degree == i)
    }

    /// The system expression, unless the complex came from a named strand.
    pub fn system(&self) -> Option<BundleExpr> {
        let e = self.reduced.expression();
        if e.starts_with("named:") {
            return None;
        }
        parse_expr(e).ok()
    }
}

/// Splits every term into summands and attaches the L² bracket.
///
/// Middle degrees sit between the `-D` twist and forms without log poles. The
/// top degree is exact: top forms without log poles are log forms twisted by
/// `-D`. Degree 0 is taken as is; its L² condition is the residue kernel.
pub fn twist_bracket(r: &ReducedComplex) -> Annotated {
    let n = r.n();
    let mut terms = Vec::new();
    for (i, d) in r.degrees().iter().enumerate() {
        let annotation = if i == 0 {
            Annotation::Exact { twist: Twist::Log }
        } else if i == n {
            Annotation::Exact { twist: Twist::MinusD }
        } else {
            Annotation::Bracket { inner: Twist::MinusD, outer: Twist::NonLogForm }
        };
        for (bg, b) in d {
            for (l, m) in b.iter() {
                terms.push(AnnotatedTerm { degree: i, bigrade: *bg, label: l.clone(), multiplicity: m.clone(), annotation });
            }
        }
    }
    Annotated { reduced: r.clone(), terms }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Kind {
    #[serde(rename = "H0-vanishing")]
    H0Vanishing,
    #[serde(rename = "H1-vanishing")]
    H1Vanishing,
    #[serde(rename = "IH-vanishing")]
    IhVanishing,
    #[serde(rename = "non-vanishing")]
    NonVanishing,
}

/// Ordered by strength, weakest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Open,
    AssertedByPaper,
    Axiom,
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Subject {
    pub expr: String,
    pub twist: Twist,
    /// Cohomological degree.
    pub degree: u32,
    pub bigrade: Option<Bigrade>,
    /// Degree of the reduced term the subject comes from.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub term: Option<usize>,
}

impl Subject {
    /// `IH^1` of a local system.
    pub fn system(expr: &str) -> Self {
        Subject { expr: expr.to_string(), twist: Twist::L2, degree: 1, bigrade: None, term: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum AxiomName {
    NefBig,
    SaperRegular,
    KazdanSmall,
    PaperTheorem9,
}

impl AxiomName {
    pub const ALL: [AxiomName; 4] = [AxiomName::NefBig, AxiomName::SaperRegular, AxiomName::KazdanSmall, AxiomName::PaperTheorem9];

    pub fn name(self) -> &'static str {
        match self {
            AxiomName::NefBig => "nefBig",
            AxiomName::SaperRegular => "saperRegular",
            AxiomName::KazdanSmall => "kazdanSmall",
            AxiomName::PaperTheorem9 => "paperTheorem9",
        }
    }

    pub fn citation(self) -> &'static str {
        match self {
            AxiomName::NefBig => "L is nef and big, so H^0(L^{-1}) = H^1(L^{-1}) = 0",
            AxiomName::SaperRegular => "regular highest weight W gives IH^1(X, W) = 0 (Raghunathan, Li-Schwermer, Saper)",
            AxiomName::KazdanSmall => "for Gamma sufficiently small, IH^1 of S^k V_1 and S^k V_2 is nonzero (Kazdan)",
            AxiomName::PaperTheorem9 => "H^0(S^n Omega^1(log D)(-D) (x) L^{-m}) = 0 for all m >= n >= 3, taken as stated",
        }
    }
}

impl std::str::FromStr for AxiomName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "nefBig" | "nefbig" => Ok(AxiomName::NefBig),
            "saper" | "saperRegular" => Ok(AxiomName::SaperRegular),
            "kazdan" | "kazdanSmall" => Ok(AxiomName::KazdanSmall),
            "paperTheorem9" | "theorem9" => Ok(AxiomName::PaperTheorem9),
            other => Err(Error::UnknownAxiom(other.to_string())),
        }
    }
}

/// Active axiom toggles. The default is empty.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct AxiomSet {
    pub nef_big: bool,
    pub saper_regular: bool,
    pub kazdan_small: bool,
    pub paper_theorem9: bool,
}

impl AxiomSet {
    pub fn all() -> Self {
        AxiomSet { nef_big: true, saper_regular: true, kazdan_small: true, paper_theorem9: true }
    }

    /// Comma-separated names; `all` and `none` are accepted.
    pub fn parse(list: &str) -> Result<Self> {
        let mut ax = AxiomSet::default();
        for part in list.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "all" => ax = AxiomSet::all(),
                "none" => {}
                _ => ax = ax.with(part.parse()?),
            }
        }
        Ok(ax)
    }

    pub fn has(&self, a: AxiomName) -> bool {
        match a {
            AxiomName::NefBig => self.nef_big,
            AxiomName::SaperRegular => self.saper_regular,
            AxiomName::KazdanSmall => self.kazdan_small,
            AxiomName::PaperTheorem9 => self.paper_theorem9,
        }
    }

    pub fn with(mut self, a: AxiomName) -> Self {
        match a {
            AxiomName::NefBig => self.nef_big = true,
            AxiomName::SaperRegular => self.saper_regular = true,
            AxiomName::KazdanSmall => self.kazdan_small = true,
            AxiomName::PaperTheorem9 => self.paper_theorem9 = true,
        }
        self
    }

    pub fn active(&self) -> Vec<AxiomName> {
        AxiomName::ALL.into_iter().filter(|a| self.has(*a)).collect()
    }

    /// `axioms: a, b` or `axioms: none`.
    pub fn header(&self) -> String {
        let names: Vec<&str> = self.active().into_iter().map(AxiomName::name).collect();
        if names.is_empty() {
            "axioms: none".into()
        } else {
            format!("axioms: {}", names.join(", "))
        }
    }

    pub fn is_subset(&self, other: &AxiomSet) -> bool {
        AxiomName::ALL.iter().all(|a| !self.has(*a) || other.has(*a))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Axiom(AxiomName),
    /// A statement supplied by the caller.
    Hypothesis,
    NegativeLPower,
    RegularWeight { a: u32, b: u32 },
    DegreeOneSurvival { a: u32, b: u32 },
    OuterImpliesIh,
    IhImpliesInner,
    Theorem9Range { k: u32, m: u32 },
    KazdanNonVanishing,
    L2ByInnerBound,
    EmptyTerm { degree: usize, hodge: i32 },
    NoriCriterion { d: i32 },
}

impl Rule {
    pub fn citation(self) -> &'static str {
        match self {
            Rule::Axiom(a) => a.citation(),
            Rule::Hypothesis => "supplied as a hypothesis",
            Rule::NegativeLPower => "As L is nef and big, we have H^0(L^{-1}) = H^1(L^{-1}) = 0",
            Rule::RegularWeight { .. } => "IH^1(X, W_{a,b}) = 0 for a, b > 0",
            Rule::DegreeOneSurvival { .. } => {
                "the degree-one term S^{a+b+1} Omega^1(log D) (x) L^{-a-2b} of E_{a,b} survives in H^1(E_{a,b}) = 0"
            }
            Rule::OuterImpliesIh => "H^0(Omega^1(log D) (x) Omega^1 (x) L^{-1}) = 0 implies IH^1(X, V_1) = 0",
            Rule::IhImpliesInner => "IH^1(X, V_1) = 0 implies H^0(S^2 Omega^1(log D)(-D) (x) L^{-1}) = 0",
            Rule::Theorem9Range { .. } => "H^0(S^n Omega^1(log D)(-D) (x) L^{-m}) = 0 for all m >= n >= 3",
            Rule::KazdanNonVanishing => "If Gamma is sufficiently small, then H^1_{L^2}(E_1) = IH^1(X, V_1) is non-zero",
            Rule::L2ByInnerBound => "H^1(A') is equal to H^0_{L^2}(S^3 Omega^1(log D) (x) L^{-4}) which vanishes by the theorem",
            Rule::EmptyTerm { .. } => "the reduced complex has no summand here",
            Rule::NoriCriterion { .. } => "the extension class is non-trivial if F^d H^0(S, P) = 0 and Gr_F^d H^1_{L^2}(S, P) = 0",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Axiom(a) => write!(f, "axiom:{}", a.name()),
            Rule::Hypothesis => write!(f, "hypothesis"),
            Rule::NegativeLPower => write!(f, "negative-L-power"),
            Rule::RegularWeight { a, b } => write!(f, "regular-weight({a},{b})"),
            Rule::DegreeOneSurvival { a, b } => write!(f, "degree-one-survival({a},{b})"),
            Rule::OuterImpliesIh => write!(f, "outer-implies-IH"),
            Rule::IhImpliesInner => write!(f, "IH-implies-inner"),
            Rule::Theorem9Range { k, m } => write!(f, "symmetric-power-range({k},{m})"),
            Rule::KazdanNonVanishing => write!(f, "kazdan-non-vanishing"),
            Rule::L2ByInnerBound => write!(f, "L2-sections-by-inner-bound"),
            Rule::EmptyTerm { degree, hodge } => write!(f, "empty-term(degree {degree}, p+i={hodge})"),
            Rule::NoriCriterion { d } => write!(f, "nori-criterion(d={d})"),
        }
    }
}

/// One rule application and what it concludes, if anything.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub rule: Rule,
    pub concludes: Option<(Kind, Subject)>,
}

impl Serialize for Step {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Step", 3)?;
        st.serialize_field("rule", &self.rule.to_string())?;
        st.serialize_field("citation", self.rule.citation())?;
        if let Some((k, subj)) = &self.concludes {
            st.serialize_field("concludes", &serde_json::json!({ "kind": k, "subject": subj }))?;
        } else {
            st.skip_field("concludes")?;
        }
        st.end()
    }
}

fn step(rule: Rule) -> Step {
    Step { rule, concludes: None }
}

fn concluding(rule: Rule, kind: Kind, subject: &Subject) -> Step {
    Step { rule, concludes: Some((kind, subject.clone())) }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Statement {
    pub kind: Kind,
    pub subject: Subject,
    pub status: Status,
    pub chain: Vec<Step>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip)]
    pub n: usize,
}

impl Statement {
    fn new(n: usize, kind: Kind, subject: Subject, status: Status, chain: Vec<Step>) -> Self {
        Statement { kind, subject, status, chain, notes: Vec::new(), n }
    }

    /// Caller-supplied fact, for example an outer vanishing assumed for a test.
    pub fn hypothesis(n: usize, kind: Kind, subject: Subject) -> Self {
        let c = vec![concluding(Rule::Hypothesis, kind, &subject)];
        Statement::new(n, kind, subject, Status::Axiom, c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Re-checks every step of the chain and recomputes the status.
    ///
    /// Each step must follow from the active axioms, the given hypotheses and
    /// the conclusions of earlier steps. A chain that never concludes this
    /// statement's claim leaves it open.
    pub fn replay(&self, ax: &AxiomSet, facts: &[Statement]) -> std::result::Result<Status, String> {
        let n = self.n;
        let mut axioms: Vec<AxiomName> = Vec::new();
        let mut known: Vec<(Kind, Subject)> = Vec::new();
        let has = |known: &[(Kind, Subject)], k: Kind, pred: &dyn Fn(&Subject) -> bool| known.iter().any(|(kk, s)| *kk == k && pred(s));
        for (idx, st) in self.chain.iter().enumerate() {
            let bad = |why: &str| Err(format!("step {idx} ({}): {why}", st.rule));
            let concl = st.concludes.as_ref();
            let ok = match st.rule {
                Rule::Axiom(a) => {
                    if !ax.has(a) {
                        return bad("axiom not active");
                    }
                    axioms.push(a);
                    true
                }
                Rule::Hypothesis => {
                    concl.is_some_and(|(k, s)| facts.iter().any(|f| f.kind == *k && f.subject == *s))
                }
                Rule::NegativeLPower => {
                    axioms.contains(&AxiomName::NefBig)
                        && n >= 2
                        && concl.is_some_and(|(k, s)| {
                            matches!(k, Kind::H0Vanishing | Kind::H1Vanishing)
                                && s.twist == Twist::Log
                                && single_label(&s.expr, n).is_some_and(|l| l.is_trivial_shape() && l.l_twist() < 0)
                        })
                }
                Rule::RegularWeight { a, b } => {
                    axioms.contains(&AxiomName::SaperRegular)
                        && n == 2
                        && a > 0
                        && b > 0
                        && concl.is_some_and(|(k, s)| *k == Kind::IhVanishing && local_weight_of(&s.expr) == Some((a, b)))
                }
                Rule::DegreeOneSurvival { a, b } => {
                    has(&known, Kind::IhVanishing, &|s| local_weight_of(&s.expr) == Some((a, b)))
                        && concl.is_some_and(|(k, s)| {
                            *k == Kind::H0Vanishing
                                && s.twist == Twist::MinusD
                                && single_label(&s.expr, n) == Some(sym_twist(a + b + 1, a + 2 * b))
                        })
                }
                Rule::OuterImpliesIh => {
                    has(&known, Kind::H0Vanishing, &|s| s.twist == Twist::NonLogForm)
                        && concl.is_some_and(|(k, _)| *k == Kind::IhVanishing)
                }
                Rule::IhImpliesInner => {
                    has(&known, Kind::IhVanishing, &|_| true)
                        && concl.is_some_and(|(k, s)| {
                            s.twist == Twist::MinusD
                                && matches!((k, s.term), (Kind::H0Vanishing, Some(1)) | (Kind::H1Vanishing, Some(0)))
                        })
                }
                Rule::Theorem9Range { k, m } => {
                    axioms.contains(&AxiomName::PaperTheorem9)
                        && n == 2
                        && m >= k
                        && k >= 3
                        && concl.is_some_and(|(kind, s)| {
                            *kind == Kind::H0Vanishing && s.twist == Twist::MinusD && single_label(&s.expr, n) == Some(sym_twist(k, m))
                        })
                }
                Rule::KazdanNonVanishing => {
                    axioms.contains(&AxiomName::KazdanSmall) && concl.is_some_and(|(k, _)| *k == Kind::NonVanishing)
                }
                Rule::L2ByInnerBound => concl.is_some_and(|(k, s)| {
                    *k == Kind::H0Vanishing
                        && s.twist == Twist::L2
                        && has(&known, Kind::H0Vanishing, &|p| p.twist == Twist::MinusD && p.expr == s.expr && p.term == s.term)
                }),
                Rule::EmptyTerm { .. } => concl.is_none(),
                Rule::NoriCriterion { .. } => concl.is_some_and(|(k, _)| *k == Kind::NonVanishing),
            };
            if !ok {
                return bad("premises or side conditions not met");
            }
            if let Some(c) = concl {
                known.push(c.clone());
            }
        }
        let concluded = self.chain.last().and_then(|s| s.concludes.as_ref()) == Some(&(self.kind, self.subject.clone()));
        Ok(if !concluded {
            Status::Open
        } else if self.chain.iter().all(|s| s.rule == Rule::Hypothesis) {
            Status::Axiom
        } else if axioms.contains(&AxiomName::PaperTheorem9) {
            Status::AssertedByPaper
        } else {
            Status::Derived
        })
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.subject;
        let body = claim(self.kind, s);
        let status = match self.status {
            Status::Open => "open",
            Status::AssertedByPaper => "asserted",
            Status::Axiom => "axiom",
            Status::Derived => "derived",
        };
        write!(f, "[{status}] {body}")?;
        if let Some(i) = s.term {
            write!(f, "  (degree {i}")?;
            if let Some((p, q)) = s.bigrade {
                write!(f, ", bigrade ({p},{q})")?;
            }
            write!(f, ")")?;
        }
        for note in &self.notes {
            write!(f, "\n    {note}")?;
        }
        Ok(())
    }
}

/// The claim alone, without status or location.
fn claim(kind: Kind, s: &Subject) -> String {
    let tw = s.twist.suffix();
    match kind {
        Kind::H0Vanishing => format!("H^0({}{tw}) = 0", s.expr),
        Kind::H1Vanishing => format!("H^1({}{tw}) = 0", s.expr),
        Kind::IhVanishing => format!("IH^1(X, {}) = 0", s.expr),
        Kind::NonVanishing if s.term.is_none() => format!("IH^{}(X, {}) != 0", s.degree, s.expr),
        Kind::NonVanishing => format!("H^{}({}{tw}) != 0", s.degree, s.expr),
    }
}

trait ShapeExt {
    fn is_trivial_shape(&self) -> bool;
}

impl ShapeExt for IrrepLabel {
    fn is_trivial_shape(&self) -> bool {
        self.lambda().iter().all(|&x| x == 0)
    }
}

fn single_label(expr: &str, n: usize) -> Option<IrrepLabel> {
    let b = eval_expr(&parse_expr(expr).ok()?, n).ok()?;
    let mut it = b.iter();
    match (it.next(), it.next()) {
        (Some((l, m)), None) if *m == BigUint::from(1u32) => Some(l.clone()),
        _ => None,
    }
}

/// `S^k Ω¹ ⊗ L^{-m}` on a surface.
fn sym_twist(k: u32, m: u32) -> IrrepLabel {
    IrrepLabel::sym(2, k as i64).with_twist(-(m as i64))
}

/// Highest weight `(a, b)` of the local system behind a surface system, if it is irreducible.
pub fn local_weight(e: &BundleExpr) -> Option<(u32, u32)> {
    match e {
        BundleExpr::E1 => Some((1, 0)),
        BundleExpr::E2 => Some((0, 1)),
        BundleExpr::Sym(k, x) => match **x {
            BundleExpr::E1 => Some((*k, 0)),
            BundleExpr::E2 => Some((0, *k)),
            _ => None,
        },
        BundleExpr::End0(x) if matches!(**x, BundleExpr::E1 | BundleExpr::E2) => Some((1, 1)),
        _ => None,
    }
}

/// Like [`local_weight`] but also reads the `W(a,b)` subjects used by the saper route.
fn local_weight_of(expr: &str) -> Option<(u32, u32)> {
    if let Some(rest) = expr.strip_prefix("W(").and_then(|r| r.strip_suffix(')')) {
        let (a, b) = rest.split_once(',')?;
        return Some((a.trim().parse().ok()?, b.trim().parse().ok()?));
    }
    local_weight(&parse_expr(expr).ok()?)
}

/// Whether the system is one of `S^k E1`, `S^k E2`, which the non-vanishing facts cover.
fn kazdan_system(e: &BundleExpr) -> bool {
    match e {
        BundleExpr::E1 | BundleExpr::E2 => true,
        BundleExpr::Sym(k, x) => *k >= 1 && matches!(**x, BundleExpr::E1 | BundleExpr::E2),
        _ => false,
    }
}

/// Derives `H^0(S^{a+b+1} Ω¹(log D)(-D) ⊗ L^{-(a+2b)}) = 0` on a surface from `IH^1(W_{a,b}) = 0`.
pub fn saper_derive(a: u32, b: u32) -> Result<Statement> {
    if a == 0 || b == 0 {
        return Err(Error::NotRegularWeight { a, b });
    }
    let ih = Subject::system(&format!("W({a},{b})"));
    let label = sym_twist(a + b + 1, a + 2 * b);
    let subject =
        Subject { expr: FormalBundle::single(label).to_expr_string(), twist: Twist::MinusD, degree: 0, bigrade: None, term: Some(1) };
    let chain = vec![
        step(Rule::Axiom(AxiomName::SaperRegular)),
        concluding(Rule::RegularWeight { a, b }, Kind::IhVanishing, &ih),
        concluding(Rule::DegreeOneSurvival { a, b }, Kind::H0Vanishing, &subject),
    ];
    Ok(Statement::new(2, Kind::H0Vanishing, subject, Status::Derived, chain))
}

/// One row of the symmetric-power coverage table.
#[derive(Clone, Debug, Serialize)]
pub struct CoverageRow {
    /// Symmetric power.
    pub n: u32,
    /// Negative L-twist.
    pub m: u32,
    /// `(a, b)` with `a + b + 1 = n`, `a + 2b = m`, when both are positive.
    pub route: Option<(u32, u32)>,
    pub statement: Statement,
}

/// The `(a, b)` reaching `(n, m)`, if any: `b = m - n + 1`, `a = 2n - m - 2`.
pub fn saper_route(n: u32, m: u32) -> Option<(u32, u32)> {
    let b = m as i64 - n as i64 + 1;
    let a = 2 * n as i64 - m as i64 - 2;
    (a >= 1 && b >= 1).then_some((a as u32, b as u32))
}

/// Status of `H^0(S^n Ω¹(log D)(-D) ⊗ L^{-m}) = 0` for `3 ≤ n ≤ max_n`, `n ≤ m ≤ max_m`.
pub fn coverage_report(max_n: u32, max_m: u32, ax: &AxiomSet) -> Vec<CoverageRow> {
    let mut rows = Vec::new();
    for n in 3..=max_n {
        for m in n..=max_m {
            let route = saper_route(n, m);
            let subject = Subject {
                expr: FormalBundle::single(sym_twist(n, m)).to_expr_string(),
                twist: Twist::MinusD,
                degree: 0,
                bigrade: None,
                term: Some(1),
            };
            let statement = match route {
                Some((a, b)) if ax.saper_regular => saper_derive(a, b).expect("a, b >= 1"),
                _ if ax.paper_theorem9 => {
                    let chain = vec![
                        step(Rule::Axiom(AxiomName::PaperTheorem9)),
                        concluding(Rule::Theorem9Range { k: n, m }, Kind::H0Vanishing, &subject),
                    ];
                    Statement::new(2, Kind::H0Vanishing, subject, Status::AssertedByPaper, chain)
                }
                _ => {
                    let mut s = Statement::new(2, Kind::H0Vanishing, subject, Status::Open, Vec::new());
                    if route.is_none() {
                        s.notes.push("not reachable by any (a,b) with a, b >= 1".into());
                    } else {
                        s.notes.push("reachable, but saperRegular is not active".into());
                    }
                    s
                }
            };
            rows.push(CoverageRow { n, m, route, statement });
        }
    }
    rows
}

pub fn apply_rules(a: &Annotated, ax: &AxiomSet) -> Vec<Statement> {
    apply_rules_with(a, ax, &[])
}

/// Runs every rule over the annotated terms, with extra caller-supplied hypotheses.
///
/// Output is sorted by subject then kind, one statement per claim, keeping the
/// strongest status found.
pub fn apply_rules_with(a: &Annotated, ax: &AxiomSet, facts: &[Statement]) -> Vec<Statement> {
    let n = a.n();
    let mut out: Vec<Statement> = facts.to_vec();
    let system = a.system();
    let sys_expr = a.reduced.expression().to_string();

    if ax.nef_big && n >= 2 {
        for t in &a.terms {
            if t.label.is_trivial_shape() && t.label.l_twist() < 0 {
                for (kind, deg) in [(Kind::H0Vanishing, 0), (Kind::H1Vanishing, 1)] {
                    let s = t.subject(Twist::Log, deg);
                    let chain = vec![step(Rule::Axiom(AxiomName::NefBig)), concluding(Rule::NegativeLPower, kind, &s)];
                    out.push(Statement::new(n, kind, s, Status::Derived, chain));
                }
            }
        }
    }

    // IH^1 of the system, by regular weight or from outer vanishing.
    let ih_subject = Subject::system(&sys_expr);
    let mut ih: Option<Vec<Step>> = None;
    if let (true, 2, Some((wa, wb))) = (ax.saper_regular, n, system.as_ref().and_then(local_weight)) {
        if wa > 0 && wb > 0 {
            ih = Some(vec![
                step(Rule::Axiom(AxiomName::SaperRegular)),
                concluding(Rule::RegularWeight { a: wa, b: wb }, Kind::IhVanishing, &ih_subject),
            ]);
        }
    }
    if ih.is_none() {
        ih = outer_route(a, &out, &ih_subject);
    }
    if let Some(chain) = &ih {
        out.push(Statement::new(n, Kind::IhVanishing, ih_subject.clone(), Status::Derived, chain.clone()));
        for t in a.in_degree(1).chain(a.in_degree(0)) {
            let (kind, deg) = if t.degree == 1 { (Kind::H0Vanishing, 0) } else { (Kind::H1Vanishing, 1) };
            let s = t.subject(Twist::MinusD, deg);
            let mut c = chain.clone();
            c.push(concluding(Rule::IhImpliesInner, kind, &s));
            out.push(Statement::new(n, kind, s, Status::Derived, c));
        }
    }

    // Symmetric powers in degree one on a surface.
    if n == 2 {
        for t in a.in_degree(1) {
            let Some((k, m)) = sym_shape(&t.label) else { continue };
            if let Some((sa, sb)) = saper_route(k, m).filter(|_| ax.saper_regular) {
                let mut st = saper_derive(sa, sb).expect("route is regular");
                st.subject = t.subject(Twist::MinusD, 0);
                if let Some(last) = st.chain.last_mut() {
                    last.concludes = Some((Kind::H0Vanishing, st.subject.clone()));
                }
                out.push(st);
            } else if ax.paper_theorem9 && m >= k && k >= 3 {
                let s = t.subject(Twist::MinusD, 0);
                let chain = vec![
                    step(Rule::Axiom(AxiomName::PaperTheorem9)),
                    concluding(Rule::Theorem9Range { k, m }, Kind::H0Vanishing, &s),
                ];
                out.push(Statement::new(n, Kind::H0Vanishing, s, Status::AssertedByPaper, chain));
            }
        }
    }

    if ax.kazdan_small && system.as_ref().is_some_and(kazdan_system) {
        let mut s = ih_subject.clone();
        s.degree = 1;
        let chain = vec![step(Rule::Axiom(AxiomName::KazdanSmall)), concluding(Rule::KazdanNonVanishing, Kind::NonVanishing, &s)];
        out.push(Statement::new(n, Kind::NonVanishing, s, Status::Derived, chain));
        let deg1: Vec<&AnnotatedTerm> = a.in_degree(1).collect();
        if let [t] = deg1.as_slice() {
            let s = t.subject(Twist::L2, 0);
            let chain =
                vec![step(Rule::Axiom(AxiomName::KazdanSmall)), concluding(Rule::KazdanNonVanishing, Kind::NonVanishing, &s)];
            out.push(Statement::new(n, Kind::NonVanishing, s, Status::Derived, chain));
        }
    }

    // every summand is marked, open unless something above decides it
    for t in &a.terms {
        out.push(Statement::new(n, Kind::H0Vanishing, t.subject(t.inner(), 0), Status::Open, Vec::new()));
    }

    let mut best: BTreeMap<(Subject, Kind), Statement> = BTreeMap::new();
    for s in out {
        let key = (s.subject.clone(), s.kind);
        match best.get(&key) {
            Some(prev) if prev.status >= s.status => {}
            _ => {
                best.insert(key, s);
            }
        }
    }
    best.into_values().collect()
}

/// `premise` implies `conclusion` by `rule`, independent of any axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Implication {
    pub premise: (Kind, Subject),
    pub conclusion: (Kind, Subject),
    #[serde(serialize_with = "rule_name")]
    pub rule: Rule,
}

fn rule_name<S: serde::Serializer>(r: &Rule, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl fmt::Display for Implication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} implies {}", claim(self.premise.0, &self.premise.1), claim(self.conclusion.0, &self.conclusion.1))
    }
}

/// The two bracket implications for `H^1_{L^2}`: outer vanishing of the
/// degree-one summands implies `IH^1 = 0`, which implies inner vanishing.
pub fn implications(a: &Annotated) -> Vec<Implication> {
    let ih = (Kind::IhVanishing, Subject::system(a.reduced.expression()));
    let mut out = Vec::new();
    for t in a.in_degree(1) {
        out.push(Implication {
            premise: (Kind::H0Vanishing, t.subject(t.outer(), 0)),
            conclusion: ih.clone(),
            rule: Rule::OuterImpliesIh,
        });
    }
    for t in a.in_degree(1) {
        out.push(Implication {
            premise: ih.clone(),
            conclusion: (Kind::H0Vanishing, t.subject(t.inner(), 0)),
            rule: Rule::IhImpliesInner,
        });
    }
    for t in a.in_degree(0) {
        out.push(Implication {
            premise: ih.clone(),
            conclusion: (Kind::H1Vanishing, t.subject(Twist::MinusD, 1)),
            rule: Rule::IhImpliesInner,
        });
    }
    out
}

/// `(k, m)` when the label is `S^k Ω¹ ⊗ L^{-m}` on a surface with `m ≥ 0`.
fn sym_shape(l: &IrrepLabel) -> Option<(u32, u32)> {
    match l.lambda() {
        [k, 0] if *k >= 1 && l.l_twist() <= 0 => Some((*k as u32, (-l.l_twist()) as u32)),
        _ => None,
    }
}

/// IH vanishing from outer H^0 vanishing of every degree-one summand and H^1
/// vanishing of every degree-zero summand.
fn outer_route(a: &Annotated, known: &[Statement], ih: &Subject) -> Option<Vec<Step>> {
    let find = |kind: Kind, s: &Subject| known.iter().find(|k| k.kind == kind && k.subject == *s && k.status >= Status::Axiom);
    let mut chain = Vec::new();
    let mut any = false;
    for t in a.in_degree(1) {
        let st = find(Kind::H0Vanishing, &t.subject(t.outer(), 0))?;
        chain.extend(st.chain.iter().cloned());
        any = true;
    }
    if !any {
        return None;
    }
    for t in a.in_degree(0) {
        let st = find(Kind::H1Vanishing, &t.subject(Twist::Log, 1))?;
        chain.extend(st.chain.iter().cloned());
    }
    chain.push(concluding(Rule::OuterImpliesIh, Kind::IhVanishing, ih));
    Some(chain)
}

/// Checks the two hypotheses of the Nori-type criterion for `Gr_F^d H^r_{L^2}`.
///
/// The input must have pure weight `2d - 1` (classes in `H^1`) or `2d - 2`
/// (classes in `H^2`). Hypothesis (1) asks that no summand survives in
/// `F^d H^{r-1}`, hypothesis (2) that every summand of `Gr_F^d H^r` vanishes.
/// A summand of degree `i` contributes `H^{j-i}` of itself to `H^j`.
pub fn nori_check(a: &Annotated, d: i32, ax: &AxiomSet) -> Result<Statement> {
    let n = a.n();
    let weights: std::collections::BTreeSet<i32> = a.reduced.degrees().iter().flat_map(|m| m.keys().map(|(p, q)| p + q)).collect();
    let w = match weights.len() {
        0 => 2 * d - 1,
        1 => *weights.iter().next().expect("one weight"),
        _ => return Err(Error::WrongWeight(format!("{} mixes weights {weights:?}", a.reduced.expression()))),
    };
    let r = 2 * d - w;
    if !(r == 1 || r == 2) {
        return Err(Error::WrongWeight(format!("weight {w} is neither 2d-1 nor 2d-2 for d={d}")));
    }
    let r = r as usize;
    let rules = apply_rules(a, ax);
    let vanishing = |t: &AnnotatedTerm, h: u32| -> Option<Vec<Step>> {
        let kind = match h {
            0 => Kind::H0Vanishing,
            1 => Kind::H1Vanishing,
            _ => return None,
        };
        let lookup = |tw: Twist| rules.iter().find(|s| s.kind == kind && s.subject == t.subject(tw, h) && s.status > Status::Open);
        if let Some(s) = lookup(Twist::L2).or_else(|| lookup(Twist::Log)) {
            return Some(s.chain.clone());
        }
        let s = lookup(Twist::MinusD)?;
        let mut c = s.chain.clone();
        c.push(concluding(Rule::L2ByInnerBound, kind, &t.subject(Twist::L2, h)));
        Some(c)
    };

    let mut chain = Vec::new();
    let mut notes = Vec::new();
    let mut met = true;
    let mut check = |label: &str, target: usize, hodge_ok: &dyn Fn(i32) -> bool| {
        for i in 0..=target.min(n) {
            let h = (target - i) as u32;
            let terms: Vec<&AnnotatedTerm> = a.in_degree(i).filter(|t| hodge_ok(t.hodge_index())).collect();
            if terms.is_empty() {
                chain.push(step(Rule::EmptyTerm { degree: i, hodge: d }));
                notes.push(format!("hypothesis {label}: degree {i} has no summand in range"));
                continue;
            }
            for t in terms {
                match vanishing(t, h) {
                    Some(c) => {
                        notes.push(format!("hypothesis {label}: H^{h}({}) = 0 (degree {i})", t.expr()));
                        chain.extend(c);
                    }
                    None => {
                        met = false;
                        notes.push(format!("hypothesis {label} unmet: H^{h}({}) (degree {i}) has no vanishing statement", t.expr()));
                    }
                }
            }
        }
    };
    check("(1) F^d H^{r-1}", r - 1, &|p| p >= d);
    check("(2) Gr_F^d H^r", r, &|p| p == d);

    let subject = Subject { expr: format!("extension class over {}", a.reduced.expression()), twist: Twist::L2, degree: r as u32, bigrade: None, term: None };
    let status = if !met {
        Status::Open
    } else {
        chain.push(concluding(Rule::NoriCriterion { d }, Kind::NonVanishing, &subject));
        if chain.iter().any(|s| s.rule == Rule::Axiom(AxiomName::PaperTheorem9)) {
            Status::AssertedByPaper
        } else {
            Status::Derived
        }
    };
    let mut st = Statement::new(n, Kind::NonVanishing, subject, status, chain);
    st.notes = notes;
    Ok(st)
}

/// Text report: axiom header, then one statement per line.
pub fn render_report(stmts: &[Statement], ax: &AxiomSet, chains: bool) -> String {
    let mut out = ax.header();
    for s in stmts {
        out.push('\n');
        out.push_str(&s.to_string());
        if chains {
            for st in &s.chain {
                out.push_str(&format!("\n      <- {}: {}", st.rule, st.rule.citation()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduce::{reduce_named, reduce_source};

    fn annotated(src: &str, n: usize) -> Annotated {
        twist_bracket(&reduce_source(src, n, crate::fiber::DEFAULT_LIMIT).unwrap())
    }

    fn find<'a>(v: &'a [Statement], kind: Kind, expr: &str, twist: Twist) -> Option<&'a Statement> {
        v.iter().find(|s| s.kind == kind && s.subject.expr == expr && s.subject.twist == twist)
    }

    #[test]
    fn e1_bracket() {
        let a = annotated("E1", 2);
        let t: Vec<_> = a.in_degree(1).collect();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].expr(), "S^2(Omega1) (x) L^-1");
        assert_eq!(t[0].annotation, Annotation::Bracket { inner: Twist::MinusD, outer: Twist::NonLogForm });
        assert!(a.in_degree(0).all(|t| t.annotation == Annotation::Exact { twist: Twist::Log }));
        assert!(a.in_degree(2).all(|t| t.annotation == Annotation::Exact { twist: Twist::MinusD }));
        // unitary: the same rule applies
        let u = annotated("U(2) (x) E1", 2);
        assert!(u.in_degree(1).all(|t| matches!(t.annotation, Annotation::Bracket { .. })));
    }

    #[test]
    fn e1_bullets() {
        let a = annotated("E1", 2);
        let imps: Vec<String> = implications(&a).iter().map(|i| i.to_string()).collect();
        assert_eq!(imps[0], "H^0(S^2(Omega1) (x) L^-1[no log poles]) = 0 implies IH^1(X, E1) = 0");
        assert_eq!(imps[1], "IH^1(X, E1) = 0 implies H^0(S^2(Omega1) (x) L^-1(-D)) = 0");
        let v = apply_rules(&a, &AxiomSet::default());
        assert!(v.iter().all(|s| s.status == Status::Open));
        assert_eq!(v.len(), a.terms.len());
    }

    #[test]
    fn e2_inner_pair() {
        let a = annotated("E2", 2);
        let d1: Vec<String> = a.in_degree(1).map(|t| t.expr()).collect();
        let d0: Vec<String> = a.in_degree(0).map(|t| t.expr()).collect();
        assert_eq!(d1, ["S^2(Omega1) (x) L^-2"]);
        assert_eq!(d0, ["Omega1 (x) L^-2"]);
        assert_eq!(a.in_degree(1).next().unwrap().inner(), Twist::MinusD);
    }

    #[test]
    fn negative_l_power_needs_nef_big() {
        let a = annotated("E1", 2);
        let off = apply_rules(&a, &AxiomSet::default());
        assert_eq!(find(&off, Kind::H0Vanishing, "L^-1", Twist::Log).unwrap().status, Status::Open);
        assert!(find(&off, Kind::H1Vanishing, "L^-1", Twist::Log).is_none());
        let v = apply_rules(&a, &AxiomSet::default().with(AxiomName::NefBig));
        let s = find(&v, Kind::H0Vanishing, "L^-1", Twist::Log).unwrap();
        assert_eq!(s.status, Status::Derived);
        assert!(find(&v, Kind::H1Vanishing, "L^-1", Twist::Log).is_some());
    }

    #[test]
    fn kazdan_non_vanishing() {
        let a = annotated("E1", 2);
        let v = apply_rules(&a, &AxiomSet::default().with(AxiomName::KazdanSmall));
        let ih = v.iter().find(|s| s.kind == Kind::NonVanishing && s.subject.term.is_none()).unwrap();
        assert_eq!(ih.subject.expr, "E1");
        assert_eq!(ih.to_string(), "[derived] IH^1(X, E1) != 0");
        assert!(find(&v, Kind::NonVanishing, "S^2(Omega1) (x) L^-1", Twist::L2).is_some());
    }

    #[test]
    fn end0_rigidity() {
        let a = annotated("End0(E1)", 2);
        let v = apply_rules(&a, &AxiomSet::default().with(AxiomName::SaperRegular));
        assert_eq!(find(&v, Kind::IhVanishing, "End0(E1)", Twist::L2).unwrap().status, Status::Derived);
        let h0 = find(&v, Kind::H0Vanishing, "S^3(Omega1) (x) L^-3", Twist::MinusD).unwrap();
        assert_eq!(h0.status, Status::Derived);
        let h1 = find(&v, Kind::H1Vanishing, "Omega1 (x) L^-3", Twist::MinusD).unwrap();
        assert_eq!(h1.status, Status::Derived);
        // the inner statements go through IH, never straight from an axiom
        assert_eq!(h0.chain.last().unwrap().rule, Rule::IhImpliesInner);
    }

    #[test]
    fn outer_routes_through_ih() {
        let a = annotated("E1", 2);
        let t = a.in_degree(1).next().unwrap();
        let fact = Statement::hypothesis(2, Kind::H0Vanishing, t.subject(Twist::NonLogForm, 0));
        let ax = AxiomSet::default().with(AxiomName::NefBig);
        let v = apply_rules_with(&a, &ax, std::slice::from_ref(&fact));
        let ih = find(&v, Kind::IhVanishing, "E1", Twist::L2).unwrap();
        assert_eq!(ih.chain.last().unwrap().rule, Rule::OuterImpliesIh);
        let inner = find(&v, Kind::H0Vanishing, "S^2(Omega1) (x) L^-1", Twist::MinusD).unwrap();
        let rules: Vec<Rule> = inner.chain.iter().map(|s| s.rule).collect();
        let o = rules.iter().position(|r| *r == Rule::OuterImpliesIh).unwrap();
        let i = rules.iter().position(|r| *r == Rule::IhImpliesInner).unwrap();
        assert!(o < i);
        assert_eq!(inner.replay(&ax, &[fact]), Ok(Status::Derived));
        // without nefBig the degree-0 H^1 is missing and nothing follows
        let v = apply_rules_with(&a, &AxiomSet::default(), &[Statement::hypothesis(2, Kind::H0Vanishing, t.subject(Twist::NonLogForm, 0))]);
        assert!(find(&v, Kind::IhVanishing, "E1", Twist::L2).is_none());
    }

    #[test]
    fn saper_examples() {
        let s = saper_derive(1, 1).unwrap();
        assert_eq!(s.subject.expr, "S^3(Omega1) (x) L^-3");
        assert_eq!(s.subject.twist, Twist::MinusD);
        assert_eq!(s.status, Status::Derived);
        assert_eq!(s.to_string(), "[derived] H^0(S^3(Omega1) (x) L^-3(-D)) = 0  (degree 1)");
        assert_eq!(saper_derive(2, 1).unwrap().subject.expr, "S^4(Omega1) (x) L^-4");
        assert_eq!(saper_derive(1, 2).unwrap().subject.expr, "S^4(Omega1) (x) L^-5");
        assert_eq!(saper_derive(0, 2), Err(Error::NotRegularWeight { a: 0, b: 2 }));
        assert_eq!(saper_derive(3, 0), Err(Error::NotRegularWeight { a: 3, b: 0 }));
        let ax = AxiomSet::default().with(AxiomName::SaperRegular);
        assert_eq!(s.replay(&ax, &[]), Ok(Status::Derived));
        assert!(s.replay(&AxiomSet::default(), &[]).is_err());
    }

    #[test]
    fn coverage_examples() {
        let ax = AxiomSet::default().with(AxiomName::SaperRegular);
        let rows = coverage_report(4, 6, &ax);
        let at = |n, m| rows.iter().find(|r| r.n == n && r.m == m).unwrap();
        assert_eq!(at(3, 3).route, Some((1, 1)));
        assert_eq!(at(3, 3).statement.status, Status::Derived);
        assert_eq!(at(3, 4).route, None);
        assert_eq!(at(3, 4).statement.status, Status::Open);
        assert_eq!(at(4, 5).route, Some((1, 2)));
        let with9 = coverage_report(4, 6, &ax.with(AxiomName::PaperTheorem9));
        let r = with9.iter().find(|r| r.n == 3 && r.m == 4).unwrap();
        assert_eq!(r.statement.status, Status::AssertedByPaper);
        assert_eq!(r.statement.replay(&ax.with(AxiomName::PaperTheorem9), &[]), Ok(Status::AssertedByPaper));
    }

    #[test]
    fn statement_json_shape() {
        let v: serde_json::Value = serde_json::from_str(&saper_derive(1, 1).unwrap().to_json()).unwrap();
        assert_eq!(v["kind"], "H0-vanishing");
        assert_eq!(v["status"], "derived");
        assert_eq!(v["subject"]["twist"], "minusD");
        assert_eq!(v["subject"]["degree"], 0);
        assert_eq!(v["chain"][0]["rule"], "axiom:saperRegular");
        assert!(v["chain"][1]["citation"].as_str().unwrap().contains("W_{a,b}"));
    }

    #[test]
    fn nori_genus_three() {
        let a = twist_bracket(&reduce_named("Aprime", 2).unwrap());
        let off = nori_check(&a, 2, &AxiomSet::default()).unwrap();
        assert_eq!(off.status, Status::Open);
        assert!(off.notes.iter().any(|n| n.contains("unmet") && n.contains("S^3(Omega1) (x) L^-4")), "{:?}", off.notes);

        let saper_only = nori_check(&a, 2, &AxiomSet::default().with(AxiomName::SaperRegular)).unwrap();
        assert_eq!(saper_only.status, Status::Open, "(3,4) is not on the saper route");

        let ax = AxiomSet::all();
        let on = nori_check(&a, 2, &ax).unwrap();
        assert_eq!(on.status, Status::AssertedByPaper);
        assert!(on.chain.iter().any(|s| s.rule == Rule::Axiom(AxiomName::PaperTheorem9)));
        assert!(on.chain.iter().any(|s| s.rule == Rule::L2ByInnerBound));
        assert_eq!(on.replay(&ax, &[]), Ok(Status::AssertedByPaper));
    }

    #[test]
    fn nori_on_whole_quotient() {
        use crate::registry::SystemRef;
        use crate::reduce::{reduce, AbelianPart};
        let f = SystemRef::Quotient("pr(Wedge^3(V))", AbelianPart::KernelAtEdge).build(2).unwrap();
        let a = twist_bracket(&reduce(&f.higgs_complex().unwrap()).unwrap());
        let st = nori_check(&a, 2, &AxiomSet::all()).unwrap();
        assert_eq!(st.status, Status::AssertedByPaper, "{:?}", st.notes);
        assert!(st.chain.iter().any(|s| s.rule == Rule::Axiom(AxiomName::PaperTheorem9)));
    }

    #[test]
    fn nori_weight_guard() {
        let a = annotated("E1", 2);
        assert!(matches!(nori_check(&a, 3, &AxiomSet::default()), Err(Error::WrongWeight(_))));
        let c = twist_bracket(&reduce_named("Cprime", 3).unwrap());
        let st = nori_check(&c, 3, &AxiomSet::all()).unwrap();
        assert!(st.chain.iter().any(|s| s.rule == Rule::EmptyTerm { degree: 2, hodge: 3 }), "{:?}", st.notes);
    }

    #[test]
    fn axiom_parsing() {
        let ax = AxiomSet::parse("saper, nefBig,paperTheorem9").unwrap();
        assert!(ax.saper_regular && ax.nef_big && ax.paper_theorem9 && !ax.kazdan_small);
        assert_eq!(ax.header(), "axioms: nefBig, saperRegular, paperTheorem9");
        assert_eq!(AxiomSet::parse("").unwrap().header(), "axioms: none");
        assert_eq!(AxiomSet::parse("kazdan").unwrap(), AxiomSet::default().with(AxiomName::KazdanSmall));
        assert!(matches!(AxiomSet::parse("magic"), Err(Error::UnknownAxiom(_))));
    }
}
