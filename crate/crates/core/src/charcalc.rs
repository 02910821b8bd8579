//! Symmetric-function calculus for the frame group of `Ω¹(log D)` with the
//! `L`-scaling, modulo the relation `det = L^{n+1}`.
//!
//! A character is a finitely supported function on weight monomials
//! `x^a · L^e`. Monomials are kept in normal form (`min a = 0`): a common
//! shift `c·(1,…,1)` of the torus exponents is traded for `L^{(n+1)c}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::bundlealg::{FormalBundle, IrrepLabel};
use crate::error::{Error, Result};

/// A torus weight `x^a · L^e` in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightMonomial {
    x: Vec<i64>,
    l: i64,
}

impl WeightMonomial {
    /// Builds the monomial and brings it to normal form.
    pub fn new(mut x: Vec<i64>, mut l: i64) -> Self {
        assert!(!x.is_empty(), "weight monomials need n >= 1");
        let n = x.len() as i64;
        let c = *x.iter().min().unwrap();
        if c != 0 {
            x.iter_mut().for_each(|a| *a -= c);
            l += (n + 1) * c;
        }
        WeightMonomial { x, l }
    }

    pub fn one(n: usize) -> Self {
        WeightMonomial { x: vec![0; n], l: 0 }
    }

    /// The weight of the `j`-th coordinate covector of `Ω¹(log D)`.
    pub fn coordinate(n: usize, j: usize) -> Self {
        let mut x = vec![0; n];
        x[j] = 1;
        WeightMonomial::new(x, 0)
    }

    pub fn l_power(n: usize, e: i64) -> Self {
        WeightMonomial { x: vec![0; n], l: e }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &[i64] {
        &self.x
    }

    pub fn l(&self) -> i64 {
        self.l
    }

    pub fn mul(&self, other: &WeightMonomial) -> WeightMonomial {
        assert_eq!(self.n(), other.n());
        let x = self.x.iter().zip(&other.x).map(|(a, b)| a + b).collect();
        WeightMonomial::new(x, self.l + other.l)
    }

    pub fn inverse(&self) -> WeightMonomial {
        WeightMonomial::new(self.x.iter().map(|a| -a).collect(), -self.l)
    }

    pub fn div(&self, other: &WeightMonomial) -> WeightMonomial {
        self.mul(&other.inverse())
    }

    pub fn pow(&self, k: i64) -> WeightMonomial {
        WeightMonomial::new(self.x.iter().map(|a| a * k).collect(), self.l * k)
    }

    pub fn is_one(&self) -> bool {
        self.l == 0 && self.x.iter().all(|a| *a == 0)
    }

    pub fn permuted(&self, perm: &[usize]) -> WeightMonomial {
        WeightMonomial::new(perm.iter().map(|&i| self.x[i]).collect(), self.l)
    }
}

impl fmt::Display for WeightMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.x.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "|{})", self.l)
    }
}

/// Integer-valued weight multiplicity function in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    n: usize,
    terms: BTreeMap<WeightMonomial, BigInt>,
}

impl Character {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "dimension must be positive");
        Character { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Character::monomial(WeightMonomial::one(n), BigInt::one())
    }

    pub fn monomial(m: WeightMonomial, c: BigInt) -> Self {
        let mut ch = Character::zero(m.n());
        ch.add_term(m, c);
        ch
    }

    /// `L^e` as a character.
    pub fn l_power(n: usize, e: i64) -> Self {
        Character::monomial(WeightMonomial::l_power(n, e), BigInt::one())
    }

    /// Character of the standard representation `W = Ω¹(log D)`.
    pub fn standard(n: usize) -> Self {
        let mut ch = Character::zero(n);
        for j in 0..n {
            ch.add_term(WeightMonomial::coordinate(n, j), BigInt::one());
        }
        ch
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<WeightMonomial, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, m: &WeightMonomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: WeightMonomial, c: BigInt) {
        assert_eq!(m.n(), self.n, "monomial dimension");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dim(&self, other: &Character) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn add(&self, other: &Character) -> Result<Character> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Character) -> Result<Character> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> Character {
        let mut out = Character::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    /// Tensor product.
    pub fn multiply(&self, other: &Character) -> Result<Character> {
        self.check_dim(other)?;
        let mut out = Character::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// Multiplies every monomial by `m`.
    pub fn shift(&self, m: &WeightMonomial) -> Character {
        let mut out = Character::zero(self.n);
        for (k, c) in &self.terms {
            out.add_term(k.mul(m), c.clone());
        }
        out
    }

    pub fn shift_l(&self, e: i64) -> Character {
        self.shift(&WeightMonomial::l_power(self.n, e))
    }

    /// Character of the dual representation.
    pub fn dual(&self) -> Character {
        let mut out = Character::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(m.inverse(), c.clone());
        }
        out
    }

    /// Adams operation: every exponent scaled by `k`.
    pub fn adams(&self, k: i64) -> Character {
        let mut out = Character::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(m.pow(k), c.clone());
        }
        out
    }

    pub fn total_multiplicity(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn has_negative(&self) -> Option<(&WeightMonomial, &BigInt)> {
        self.terms.iter().find(|(_, c)| c.is_negative())
    }

    /// Character of the `k`-th symmetric power, via `k·h_k = Σ p_i·h_{k-i}`.
    pub fn sym_power(&self, k: usize) -> Character {
        self.plethysm_power(k, false)
    }

    /// Character of the `k`-th exterior power, via `k·e_k = Σ (-1)^{i-1} p_i·e_{k-i}`.
    pub fn ext_power(&self, k: usize) -> Character {
        self.plethysm_power(k, true)
    }

    fn plethysm_power(&self, k: usize, alternating: bool) -> Character {
        let mut powers: Vec<Character> = vec![Character::one(self.n)];
        let adams: Vec<Character> = (1..=k).map(|i| self.adams(i as i64)).collect();
        for j in 1..=k {
            let mut acc = Character::zero(self.n);
            for i in 1..=j {
                let mut term = adams[i - 1].multiply(&powers[j - i]).expect("same n");
                if alternating && i % 2 == 0 {
                    term = term.scale(&-BigInt::one());
                }
                acc = acc.add(&term).expect("same n");
            }
            let jj = BigInt::from(j);
            let mut out = Character::zero(self.n);
            for (m, c) in acc.terms {
                let (q, r) = c.div_rem(&jj);
                assert!(r.is_zero(), "power-sum recurrence must divide exactly");
                out.add_term(m, q);
            }
            powers.push(out);
        }
        powers.swap_remove(k)
    }

    /// `s_λ[self]` via the Jacobi–Trudi determinant in the complete symmetric powers.
    pub fn schur_functor(&self, lambda: &[u64]) -> Character {
        let rows: Vec<u64> = lambda.iter().copied().filter(|&a| a > 0).collect();
        let len = rows.len();
        if len == 0 {
            return Character::one(self.n);
        }
        let max = rows[0] as usize + len;
        let h: Vec<Character> = (0..=max).map(|k| self.sym_power(k)).collect();
        let entry = |i: usize, j: usize| -> Option<&Character> {
            let idx = rows[i] as i64 - i as i64 + j as i64;
            if idx < 0 {
                None
            } else {
                Some(&h[idx as usize])
            }
        };
        let mut total = Character::zero(self.n);
        for perm in permutations(len) {
            let mut prod = Character::one(self.n);
            let mut zero = false;
            for (i, &j) in perm.iter().enumerate() {
                match entry(i, j) {
                    Some(c) => prod = prod.multiply(c).expect("same n"),
                    None => {
                        zero = true;
                        break;
                    }
                }
            }
            if zero {
                continue;
            }
            if permutation_sign(&perm) < 0 {
                prod = prod.scale(&-BigInt::one());
            }
            total = total.add(&prod).expect("same n");
        }
        total
    }

    /// True when the x-part is invariant under all permutations of the torus variables.
    pub fn is_symmetric(&self) -> bool {
        if self.n == 1 {
            return true;
        }
        // transpositions (0 1) and the cycle generate S_n
        let mut swap: Vec<usize> = (0..self.n).collect();
        swap.swap(0, 1);
        let cycle: Vec<usize> = (0..self.n).map(|i| (i + 1) % self.n).collect();
        self.permuted(&swap) == *self && self.permuted(&cycle) == *self
    }

    pub fn permuted(&self, perm: &[usize]) -> Character {
        let mut out = Character::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(m.permuted(perm), c.clone());
        }
        out
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{c}·{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub(crate) fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

pub(crate) fn permutation_sign(perm: &[usize]) -> i32 {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn check_lambda(lambda: &[i64], n: usize) -> Result<()> {
    if lambda.len() != n || n == 0 {
        return Err(Error::DimensionMismatch { left: lambda.len(), right: n });
    }
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::MalformedLabel(lambda.to_vec()));
    }
    if lambda[n - 1] != 0 {
        return Err(Error::NonCanonicalLabel(lambda.to_vec()));
    }
    Ok(())
}

/// Schur polynomial `s_λ(x_1..x_n)·L^{l_twist}` by semistandard-tableau enumeration.
pub fn schur_character(lambda: &[i64], l_twist: i64, n: usize) -> Result<Character> {
    check_lambda(lambda, n)?;
    let cells: Vec<(usize, usize)> = lambda
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
        .collect();
    let mut counts: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    let mut filling: Vec<Vec<usize>> = lambda.iter().map(|&len| vec![0; len as usize]).collect();
    let mut weight = vec![0i64; n];
    fill_tableau(&cells, 0, &mut filling, &mut weight, n, &mut counts);
    let mut ch = Character::zero(n);
    for (x, c) in counts {
        ch.add_term(WeightMonomial::new(x, l_twist), BigInt::from(c));
    }
    Ok(ch)
}

fn fill_tableau(
    cells: &[(usize, usize)],
    idx: usize,
    filling: &mut Vec<Vec<usize>>,
    weight: &mut Vec<i64>,
    n: usize,
    counts: &mut BTreeMap<Vec<i64>, u64>,
) {
    if idx == cells.len() {
        *counts.entry(weight.clone()).or_insert(0) += 1;
        return;
    }
    let (r, c) = cells[idx];
    let mut lo = 0;
    if c > 0 {
        lo = lo.max(filling[r][c - 1]);
    }
    if r > 0 {
        lo = lo.max(filling[r - 1][c] + 1);
    }
    for v in lo..n {
        filling[r][c] = v;
        weight[v] += 1;
        fill_tableau(cells, idx + 1, filling, weight, n, counts);
        weight[v] -= 1;
    }
}

/// Writes a character as a signed combination of irreducible labels.
///
/// Greedy: the monomial whose x-part is lexicographically maximal is a highest
/// weight; its coefficient is the multiplicity of that label.
pub fn decompose_signed(chi: &Character) -> Result<Vec<(IrrepLabel, BigInt)>> {
    let mut rest = chi.clone();
    let mut out: Vec<(IrrepLabel, BigInt)> = Vec::new();
    while let Some((m, c)) = rest.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
        if m.x().windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotARepresentation {
                weight: m.to_string(),
                coefficient: c.to_string(),
            });
        }
        let label = IrrepLabel::new(m.x().to_vec(), m.l())?;
        let s = label.character().scale(&c);
        rest = rest.sub(&s)?;
        out.push((label, c));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Decomposes a genuine representation into the Schur basis.
pub fn decompose(chi: &Character) -> Result<FormalBundle> {
    let mut bundle = FormalBundle::new(chi.n());
    for (label, c) in decompose_signed(chi)? {
        if c.is_negative() {
            return Err(Error::NotARepresentation {
                weight: WeightMonomial::new(label.lambda().to_vec(), label.l_twist()).to_string(),
                coefficient: c.to_string(),
            });
        }
        bundle.insert(label, c.to_biguint().expect("nonnegative"));
    }
    Ok(bundle)
}


#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn ch(n: usize, terms: &[(&[i64], i64, i64)]) -> Character {
        let mut c = Character::zero(n);
        for (x, l, k) in terms {
            c.add_term(WeightMonomial::new(x.to_vec(), *l), BigInt::from(*k));
        }
        c
    }

    fn schur(l: &[i64], e: i64) -> Character {
        schur_character(l, e, l.len()).unwrap()
    }

    #[test]
    fn normal_form_trades_common_shift() {
        let m = WeightMonomial::new(vec![1, 1], 0);
        assert_eq!(m.x(), &[0, 0]);
        assert_eq!(m.l(), 3);
        let m = WeightMonomial::new(vec![0, -1], 0);
        assert_eq!(m.x(), &[1, 0]);
        assert_eq!(m.l(), -3);
    }

    #[test]
    fn standard_and_e2() {
        assert_eq!(schur(&[1, 0], 0), ch(2, &[(&[1, 0], 0, 1), (&[0, 1], 0, 1)]));
        assert_eq!(
            schur(&[1, 1, 0], 0),
            ch(3, &[(&[1, 1, 0], 0, 1), (&[1, 0, 1], 0, 1), (&[0, 1, 1], 0, 1)])
        );
    }

    #[test]
    fn sym2_of_plane_has_l3_middle_term() {
        let s2 = schur(&[2, 0], 0);
        assert_eq!(s2, ch(2, &[(&[2, 0], 0, 1), (&[0, 2], 0, 1), (&[0, 0], 3, 1)]));
    }

    #[test]
    fn rejects_bad_labels() {
        assert!(matches!(schur_character(&[1, 2], 0, 2), Err(Error::MalformedLabel(_))));
        assert!(matches!(schur_character(&[2, 1], 0, 2), Err(Error::NonCanonicalLabel(_))));
    }

    #[test]
    fn multiply_dimension_mismatch() {
        let a = Character::standard(2);
        let b = Character::standard(3);
        assert!(matches!(a.multiply(&b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn s2w_times_w_surface() {
        let w = Character::standard(2);
        let lhs = schur(&[2, 0], 0).multiply(&w).unwrap();
        let rhs = schur(&[3, 0], 0).add(&w.shift_l(3)).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(w.multiply(&w).unwrap().total_multiplicity(), BigInt::from(4));
    }

    #[test]
    fn s2w_times_wedge2w_threefold() {
        let lhs = schur(&[2, 0, 0], 0).multiply(&schur(&[1, 1, 0], 0)).unwrap();
        let rhs = schur(&[3, 1, 0], 0).add(&Character::standard(3).shift_l(4)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn sym_power_dimensions() {
        let w = Character::standard(2);
        let s3 = w.sym_power(3);
        assert_eq!(s3, schur(&[3, 0], 0));
        assert_eq!(s3.total_multiplicity(), BigInt::from(4));
        let e1 = w.shift_l(-1).add(&Character::l_power(2, -1)).unwrap();
        assert_eq!(e1.sym_power(2).total_multiplicity(), BigInt::from(6));
        assert_eq!(w.sym_power(0), Character::one(2));
    }

    #[test]
    fn sym2_of_wedge2_threefold() {
        let e2 = schur(&[1, 1, 0], 0);
        assert_eq!(e2.sym_power(2), schur(&[2, 2, 0], 0));
    }

    #[test]
    fn ext_powers() {
        let w2 = Character::standard(2);
        assert_eq!(w2.ext_power(2), Character::l_power(2, 3));
        let w3 = Character::standard(3);
        let e2 = schur(&[1, 1, 0], 0);
        assert_eq!(e2.ext_power(2), w3.shift_l(4));
        assert!(w3.ext_power(4).is_zero());
        // det(Λ²W) = det(W)²
        assert_eq!(e2.ext_power(3), Character::l_power(3, 8));
    }

    #[test]
    fn decompose_examples() {
        let w = Character::standard(3);
        let b = decompose(&w.multiply(&w).unwrap()).unwrap();
        let labels: Vec<_> = b.iter().map(|(l, m)| (l.lambda().to_vec(), l.l_twist(), m.clone())).collect();
        assert_eq!(
            labels,
            vec![(vec![1, 1, 0], 0, BigUint::from(1u32)), (vec![2, 0, 0], 0, BigUint::from(1u32))]
        );
        let s2w = schur(&[2, 0, 0], 0).multiply(&w).unwrap();
        let b = decompose(&s2w).unwrap();
        assert_eq!(b.rank(), BigUint::from(18u32));
        assert_eq!(b.len(), 2);
        assert!(b.contains(&IrrepLabel::new(vec![3, 0, 0], 0).unwrap()));
        assert!(b.contains(&IrrepLabel::new(vec![2, 1, 0], 0).unwrap()));
    }

    #[test]
    fn decompose_reports_negative() {
        let w = Character::standard(2);
        let virt = Character::one(2).sub(&w.multiply(&w).unwrap()).unwrap();
        assert!(matches!(decompose(&virt), Err(Error::NotARepresentation { .. })));
        let asym = ch(2, &[(&[1, 0], 0, 1)]);
        assert!(matches!(decompose(&asym), Err(Error::NotARepresentation { .. })));
    }

    #[test]
    fn schur_functor_matches_sym_and_wedge() {
        let w = Character::standard(3);
        assert_eq!(w.schur_functor(&[2]), w.sym_power(2));
        assert_eq!(w.schur_functor(&[1, 1]), w.ext_power(2));
        assert_eq!(w.schur_functor(&[3, 2]), schur(&[3, 2, 0], 0));
    }
}
