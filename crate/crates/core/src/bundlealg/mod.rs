//! Canonical names for irreducible summands, formal bundles, and the
//! expression language used to describe them.

pub(crate) mod eval;
mod expr;
mod parse;
mod print;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::charcalc::{self, Character};
use crate::error::{Error, Result};

pub use eval::{eval_expr, eval_graded, Bigrade, GradedCharacter};
pub use expr::BundleExpr;
pub use parse::{parse_expr, ParseError, ParseErrorKind};
pub use print::{label_expr, label_latex};

/// Dominant weight with last entry 0 plus an `L`-twist.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IrrepLabel {
    lambda: Vec<i64>,
    l_twist: i64,
}

impl IrrepLabel {
    /// Builds a label that is already canonical.
    pub fn new(lambda: Vec<i64>, l_twist: i64) -> Result<Self> {
        if lambda.is_empty() {
            return Err(Error::DimensionMismatch { left: 0, right: 1 });
        }
        if lambda.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::MalformedLabel(lambda));
        }
        if *lambda.last().unwrap() != 0 {
            return Err(Error::NonCanonicalLabel(lambda));
        }
        Ok(IrrepLabel { lambda, l_twist })
    }

    /// Resolves `(λ + c·𝟙, e) ≡ (λ, e + (n+1)c)` by forcing the last entry to 0.
    pub fn canonicalize(lambda: &[i64], l_twist: i64) -> Result<Self> {
        if lambda.is_empty() {
            return Err(Error::DimensionMismatch { left: 0, right: 1 });
        }
        if lambda.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::MalformedLabel(lambda.to_vec()));
        }
        let n = lambda.len() as i64;
        let c = *lambda.last().unwrap();
        Ok(IrrepLabel {
            lambda: lambda.iter().map(|a| a - c).collect(),
            l_twist: l_twist + (n + 1) * c,
        })
    }

    pub fn trivial(n: usize) -> Self {
        IrrepLabel { lambda: vec![0; n], l_twist: 0 }
    }

    pub fn l_power(n: usize, e: i64) -> Self {
        IrrepLabel { lambda: vec![0; n], l_twist: e }
    }

    /// `Ω^k(log D)` for `1 ≤ k ≤ n`.
    pub fn omega(n: usize, k: usize) -> Self {
        let lambda: Vec<i64> = (0..n).map(|i| if i < k { 1 } else { 0 }).collect();
        IrrepLabel::canonicalize(&lambda, 0).expect("monotone")
    }

    /// `S^k Ω¹(log D)`.
    pub fn sym(n: usize, k: i64) -> Self {
        let mut lambda = vec![0; n];
        lambda[0] = k;
        IrrepLabel::canonicalize(&lambda, 0).expect("monotone")
    }

    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &[i64] {
        &self.lambda
    }

    pub fn l_twist(&self) -> i64 {
        self.l_twist
    }

    pub fn with_twist(&self, l_twist: i64) -> Self {
        IrrepLabel { lambda: self.lambda.clone(), l_twist }
    }

    pub fn is_line(&self) -> bool {
        self.lambda.iter().all(|a| *a == 0)
    }

    pub fn is_trivial(&self) -> bool {
        self.is_line() && self.l_twist == 0
    }

    /// Weyl dimension `Π_{i<j} (λ_i − λ_j + j − i)/(j − i)`.
    pub fn weyl_dimension(&self) -> BigUint {
        let n = self.lambda.len();
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for i in 0..n {
            for j in i + 1..n {
                num *= BigInt::from(self.lambda[i] - self.lambda[j] + (j - i) as i64);
                den *= BigInt::from((j - i) as i64);
            }
        }
        (num / den).to_biguint().expect("dominant weights have positive dimension")
    }

    pub fn character(&self) -> Character {
        charcalc::schur_character(&self.lambda, self.l_twist, self.n()).expect("canonical label")
    }

    pub fn dual(&self) -> IrrepLabel {
        let lambda: Vec<i64> = self.lambda.iter().rev().map(|a| -a).collect();
        IrrepLabel::canonicalize(&lambda, -self.l_twist).expect("reversed dominant weight is dominant")
    }

    /// Consecutive differences `a_i = λ_i − λ_{i+1}`; the Γ-parameters of the label.
    pub fn gamma_params(&self) -> Vec<i64> {
        self.lambda.windows(2).map(|w| w[0] - w[1]).collect()
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", label_expr(self))
    }
}

/// Finite multiset of irreducible labels sharing the same `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalBundle {
    n: usize,
    entries: BTreeMap<IrrepLabel, BigUint>,
}

impl FormalBundle {
    pub fn new(n: usize) -> Self {
        FormalBundle { n, entries: BTreeMap::new() }
    }

    pub fn single(label: IrrepLabel) -> Self {
        let mut b = FormalBundle::new(label.n());
        b.insert(label, BigUint::one());
        b
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, label: IrrepLabel, mult: BigUint) {
        assert_eq!(label.n(), self.n, "label dimension");
        if mult.is_zero() {
            return;
        }
        *self.entries.entry(label).or_default() += mult;
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IrrepLabel, &BigUint)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, label: &IrrepLabel) -> bool {
        self.entries.contains_key(label)
    }

    pub fn multiplicity(&self, label: &IrrepLabel) -> BigUint {
        self.entries.get(label).cloned().unwrap_or_default()
    }

    pub fn rank(&self) -> BigUint {
        self.entries.iter().map(|(l, m)| l.weyl_dimension() * m).sum()
    }

    pub fn dual(&self) -> FormalBundle {
        let mut out = FormalBundle::new(self.n);
        for (l, m) in &self.entries {
            out.insert(l.dual(), m.clone());
        }
        out
    }

    pub fn character(&self) -> Character {
        let mut ch = Character::zero(self.n);
        for (l, m) in &self.entries {
            ch = ch.add(&l.character().scale(&BigInt::from(m.clone()))).expect("same n");
        }
        ch
    }

    /// Multiset union.
    pub fn union(&self, other: &FormalBundle) -> Result<FormalBundle> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        let mut out = self.clone();
        for (l, m) in &other.entries {
            out.insert(l.clone(), m.clone());
        }
        Ok(out)
    }

    /// Expression in the bundle grammar that evaluates back to this bundle.
    pub fn to_expr_string(&self) -> String {
        print::bundle_expr(self)
    }

    pub fn to_latex(&self) -> String {
        print::bundle_latex(self)
    }
}

impl fmt::Display for FormalBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr_string())
    }
}

/// `Σ multiplicity × Weyl dimension`.
pub fn rank(b: &FormalBundle) -> BigUint {
    b.rank()
}

pub fn dual(b: &FormalBundle) -> FormalBundle {
    b.dual()
}

pub fn canonicalize(lambda: &[i64], l_twist: i64) -> Result<IrrepLabel> {
    IrrepLabel::canonicalize(lambda, l_twist)
}
