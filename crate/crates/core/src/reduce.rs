//! Zero-differential normal forms of Higgs complexes: the cohomology of the
//! fiber complex, decomposed into Schur summands per degree and bigrade.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::bundlealg::{parse_expr, Bigrade, BundleExpr, FormalBundle, GradedCharacter};
use crate::charcalc::{Character, WeightMonomial};
use crate::error::{Error, Result};
use crate::higgs::{Constraint, HiggsComplex, HiggsSystem};

/// Cohomology of a Higgs complex (or of one strand of it), degree by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedComplex {
    n: usize,
    expression: String,
    strand: Option<i32>,
    degrees: Vec<BTreeMap<Bigrade, FormalBundle>>,
    euler_checked: bool,
}

impl ReducedComplex {
    /// Builds a reduced complex from explicit terms without any check.
    pub fn from_terms(n: usize, expression: &str, strand: Option<i32>, degrees: Vec<BTreeMap<Bigrade, FormalBundle>>) -> Self {
        ReducedComplex { n, expression: expression.into(), strand, degrees, euler_checked: false }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn expression(&self) -> &str {
        &self.expression
    }

    /// `p + i` for a single strand, `None` for the whole complex.
    pub fn strand(&self) -> Option<i32> {
        self.strand
    }

    pub fn degrees(&self) -> &[BTreeMap<Bigrade, FormalBundle>] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> &BTreeMap<Bigrade, FormalBundle> {
        &self.degrees[i]
    }

    /// All summands of degree `i`, forgetting the bigrade.
    pub fn term(&self, i: usize) -> FormalBundle {
        let mut out = FormalBundle::new(self.n);
        for b in self.degrees[i].values() {
            for (l, m) in b.iter() {
                out.insert(l.clone(), m.clone());
            }
        }
        out
    }

    pub fn euler_checked(&self) -> bool {
        self.euler_checked
    }

    /// Character of degree `i`, graded by source bigrade.
    pub fn character(&self, i: usize) -> GradedCharacter {
        let mut g = GradedCharacter::zero(self.n);
        for (bg, b) in &self.degrees[i] {
            g.add_piece(*bg, &b.character());
        }
        g
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&JsonReduced::from(self)).expect("plain data serializes")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(JsonReduced::from(self)).expect("plain data serializes")
    }

    /// Display in the style `A \xrightarrow{0} B \xrightarrow{0} C`.
    pub fn to_latex(&self) -> String {
        let terms: Vec<String> = (0..self.degrees.len())
            .map(|i| {
                let t = self.term(i);
                if t.is_empty() {
                    "0".to_string()
                } else {
                    t.to_latex()
                }
            })
            .collect();
        terms.join(" \\xrightarrow{0} ")
    }
}

impl fmt::Display for ReducedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.strand {
            Some(s) => writeln!(f, "{} at n={} (strand p+i={s})", self.expression, self.n)?,
            None => writeln!(f, "{} at n={}", self.expression, self.n)?,
        }
        for (i, d) in self.degrees.iter().enumerate() {
            if d.is_empty() {
                writeln!(f, "  H{i}: 0")?;
            }
            for ((p, q), b) in d {
                writeln!(f, "  H{i} ({p},{q}): {}", b.to_expr_string())?;
            }
        }
        write!(f, "  euler check: {}", if self.euler_checked { "ok" } else { "not run" })
    }
}

/// Reduces the whole complex.
pub fn reduce(c: &HiggsComplex) -> Result<ReducedComplex> {
    reduce_strand(c, None)
}

/// Reduces the complex, keeping only the strand `p + i = s` if one is given.
pub fn reduce_strand(c: &HiggsComplex, strand: Option<i32>) -> Result<ReducedComplex> {
    let coh = c.cohomology();
    let degrees = (0..=c.n())
        .map(|i| coh.character(i, strand).decompose())
        .collect::<Result<Vec<_>>>()?;
    let mut r = ReducedComplex { n: c.n(), expression: c.description().to_string(), strand, degrees, euler_checked: false };
    let gap = euler_check(c, &r);
    if !gap.is_empty() {
        return Err(Error::InvalidConstruction(format!("Euler identity fails for {} at {} weights", r.expression, gap.len())));
    }
    r.euler_checked = true;
    Ok(r)
}

/// Per-(block, weight) difference `Σ(−1)^i (term_i − reduced_i)`, graded by `(p+i, q−i)`
/// which `θ` preserves; empty when the identity holds.
pub fn euler_check(c: &HiggsComplex, r: &ReducedComplex) -> BTreeMap<(Bigrade, WeightMonomial), BigInt> {
    let mut acc = GradedCharacter::zero(c.n());
    for i in 0..=c.n() {
        let mut term = GradedCharacter::zero(c.n());
        for b in c.fiber().term(i) {
            if r.strand.is_some_and(|s| s != b.bigrade.0 + i as i32) {
                continue;
            }
            term.add_piece(b.bigrade, &Character::monomial(b.weight.clone(), BigInt::from(1)));
        }
        let diff = if i < r.degrees.len() { term.sub(&r.character(i)) } else { term };
        let diff = diff.shift((i as i32, -(i as i32)));
        acc = if i % 2 == 0 { acc.add(&diff) } else { acc.sub(&diff) };
    }
    let mut out = BTreeMap::new();
    for (g, ch) in acc.pieces() {
        for (w, m) in ch.terms() {
            out.insert((*g, w.clone()), m.clone());
        }
    }
    out
}

/// A hand-picked strand of a primitive wedge power, optionally modulo its abelian part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedStrand {
    pub name: &'static str,
    pub n: usize,
    pub system: &'static str,
    pub strand: i32,
    pub quotient: Option<AbelianPart>,
    pub citation: &'static str,
}

/// Which sub-system is divided out of a named strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbelianPart {
    /// Greatest conjugation-closed sub-system with `(1, w-1)` in `ker θ` and no `(w,0)`, `(0,w)`.
    KernelAtEdge,
    /// Greatest conjugation-closed sub-system lying entirely in `ker θ`.
    Flat,
}

pub const NAMED_STRANDS: &[NamedStrand] = &[
    NamedStrand { name: "A", n: 2, system: "pr(Wedge^3(V))", strand: 2, quotient: None, citation: "genus-3 complex (A) from E_pr^{2,1}" },
    NamedStrand { name: "B", n: 2, system: "pr(Wedge^3(V))", strand: 3, quotient: None, citation: "genus-3 complex (B) from E_pr^{3,0}" },
    NamedStrand {
        name: "Aprime",
        n: 2,
        system: "pr(Wedge^3(V))",
        strand: 2,
        quotient: Some(AbelianPart::KernelAtEdge),
        citation: "quotient complex (A') of F = E/E_ab",
    },
    NamedStrand { name: "A", n: 3, system: "pr(Wedge^5(V))", strand: 2, quotient: None, citation: "genus-4 complex (A) from E_pr^{2,3}" },
    NamedStrand { name: "B", n: 3, system: "pr(Wedge^5(V))", strand: 3, quotient: None, citation: "genus-4 complex (B) from E_pr^{3,2}" },
    NamedStrand { name: "C", n: 3, system: "pr(Wedge^4(V))", strand: 3, quotient: None, citation: "genus-4 complex (C) from E_pr^{3,1}" },
    NamedStrand {
        name: "Cprime",
        n: 3,
        system: "pr(Wedge^4(V))",
        strand: 3,
        quotient: Some(AbelianPart::Flat),
        citation: "quotient complex (C') of F = E^4/E^4_ab",
    },
];

pub fn named_strand(name: &str, n: usize) -> Result<&'static NamedStrand> {
    NAMED_STRANDS
        .iter()
        .find(|s| s.name == name && s.n == n)
        .ok_or_else(|| Error::UnknownStrand { name: name.to_string(), n })
}

impl NamedStrand {
    /// The system whose complex carries the strand.
    pub fn system(&self) -> Result<HiggsSystem> {
        let h = HiggsSystem::from_expr(&parse_expr(self.system)?, self.n)?;
        match self.quotient {
            None => Ok(h),
            Some(part) => {
                let c = match part {
                    AbelianPart::KernelAtEdge => Constraint::abelian(&h)?,
                    AbelianPart::Flat => Constraint::flat(&h),
                };
                let ab = h.maximal_sub_system(&c, true)?;
                h.quotient_system(&ab)
            }
        }
    }
}

/// Builds and reduces one of the hand-picked strands.
pub fn reduce_named(name: &str, n: usize) -> Result<ReducedComplex> {
    let s = named_strand(name, n)?;
    let h = s.system()?;
    let mut r = reduce_strand(&h.higgs_complex()?, Some(s.strand))?;
    r.expression = format!("named:{name}");
    Ok(r)
}

/// Reduces a system given as an expression, or a named strand as `named:X`.
pub fn reduce_source(src: &str, n: usize, limit: usize) -> Result<ReducedComplex> {
    if let Some(name) = src.strip_prefix("named:") {
        return reduce_named(name.trim(), n);
    }
    let e: BundleExpr = parse_expr(src)?;
    let h = HiggsSystem::from_expr_with_limit(&e, n, limit)?;
    let mut r = reduce(&h.higgs_complex()?)?;
    r.expression = e.to_string();
    Ok(r)
}

#[derive(Serialize)]
#[serde(untagged)]
enum Count {
    Small(u64),
    Big(String),
}

impl From<&BigUint> for Count {
    fn from(v: &BigUint) -> Self {
        match v.to_u64() {
            Some(x) => Count::Small(x),
            None => Count::Big(v.to_string()),
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct JsonPiece {
    p: i32,
    q: i32,
    lambda: Vec<i64>,
    l_twist: i64,
    multiplicity: Count,
    rank_per_summand: Count,
}

#[derive(Serialize)]
struct JsonDegree {
    i: usize,
    pieces: Vec<JsonPiece>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct JsonReduced {
    dimension: usize,
    expression: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    strand: Option<i32>,
    degrees: Vec<JsonDegree>,
    euler_checked: bool,
}

impl From<&ReducedComplex> for JsonReduced {
    fn from(r: &ReducedComplex) -> Self {
        let degrees = r
            .degrees
            .iter()
            .enumerate()
            .map(|(i, d)| JsonDegree {
                i,
                pieces: d
                    .iter()
                    .flat_map(|((p, q), b)| {
                        b.iter().map(move |(l, m)| JsonPiece {
                            p: *p,
                            q: *q,
                            lambda: l.lambda().to_vec(),
                            l_twist: l.l_twist(),
                            multiplicity: m.into(),
                            rank_per_summand: (&l.weyl_dimension()).into(),
                        })
                    })
                    .collect(),
            })
            .collect();
        JsonReduced { dimension: r.n, expression: r.expression.clone(), strand: r.strand, degrees, euler_checked: r.euler_checked }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundlealg::eval_expr;

    fn ev(src: &str, n: usize) -> FormalBundle {
        eval_expr(&parse_expr(src).unwrap(), n).unwrap()
    }

    fn red(src: &str, n: usize) -> ReducedComplex {
        reduce_source(src, n, crate::fiber::DEFAULT_LIMIT).unwrap()
    }

    #[test]
    fn e1_surface() {
        let r = red("E1", 2);
        assert!(r.euler_checked());
        assert_eq!(r.term(0), ev("L^-1", 2));
        assert_eq!(r.term(1), ev("S^2(Omega1) (x) L^-1", 2));
        assert_eq!(r.term(2), ev("Omega1 (x) L^2", 2));
        assert_eq!(r.degree(1).keys().copied().collect::<Vec<_>>(), [(1, 0)]);
    }

    #[test]
    fn e2_and_end0() {
        let r = red("E2", 2);
        assert_eq!(r.term(0), ev("Omega1 (x) L^-2", 2));
        assert_eq!(r.term(2), ev("L^4", 2));
        let r = red("End0(E1)", 2);
        assert_eq!(r.term(1), ev("S^3(Omega1) (x) L^-3", 2));
        assert_eq!(r.term(2), ev("Omega1 (x) L^3", 2));
    }

    #[test]
    fn higher_dimension_shapes() {
        for k in 1..=3i64 {
            let r = red(&format!("S^{k}(E1)"), 3);
            assert_eq!(r.term(0), ev(&format!("L^{}", -k), 3));
            assert_eq!(r.term(1), ev(&format!("S^{}(Omega1) (x) L^{}", k + 1, -k), 3));
            assert_eq!(r.term(2), ev(&format!("Gamma({k},1)(Omega1) (x) L^{}", -k), 3));
            assert_eq!(r.term(3), ev(&format!("S^{k}(Omega1) (x) L^{}", 4 - k), 3));
        }
    }

    #[test]
    fn named_strands() {
        let a = reduce_named("A", 2).unwrap();
        assert_eq!(a.term(0), ev("O", 2));
        assert_eq!(a.term(1), ev("S^3(Omega1) (x) L^-4 (+) Omega1", 2));
        assert!(a.term(2).is_empty());
        let ap = reduce_named("Aprime", 2).unwrap();
        assert!(ap.term(0).is_empty());
        assert_eq!(ap.term(1), ev("S^3(Omega1) (x) L^-4", 2));
        assert!(matches!(reduce_named("C", 2), Err(Error::UnknownStrand { .. })));
        assert!(matches!(reduce_named("Z", 3), Err(Error::UnknownStrand { .. })));
    }

    #[test]
    fn euler_negative_control() {
        let h = HiggsSystem::uniformizing(2);
        let c = h.higgs_complex().unwrap();
        let r = reduce(&c).unwrap();
        assert!(euler_check(&c, &r).is_empty());
        let mut bad = r.degrees.clone();
        bad[1].insert((1, 0), ev("S^2(Omega1) (x) L^-1 (+) O", 2));
        let corrupted = ReducedComplex::from_terms(2, "E1", None, bad);
        assert!(!euler_check(&c, &corrupted).is_empty());
    }

    #[test]
    fn re_reducing_is_identity() {
        // a plain system has θ = 0, so its reduction is itself in degree 0 tensored with Ω^i
        let r = red("U(2) (+) L^-1", 2);
        assert_eq!(r.term(0), ev("U(2) (+) L^-1", 2));
        assert_eq!(r.term(2), ev("U(2) (x) L^3 (+) L^2", 2));
    }

    #[test]
    fn json_shape() {
        let j: serde_json::Value = serde_json::from_str(&red("E1", 2).to_json()).unwrap();
        assert_eq!(j["dimension"], 2);
        assert_eq!(j["eulerChecked"], true);
        let p = &j["degrees"][1]["pieces"][0];
        assert_eq!(p["lambda"], serde_json::json!([2, 0]));
        assert_eq!(p["lTwist"], -1);
        assert_eq!(p["rankPerSummand"], 3);
        assert_eq!((p["p"].as_i64(), p["q"].as_i64()), (Some(1), Some(0)));
    }
}
