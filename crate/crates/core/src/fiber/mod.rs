//! Generic-fiber realization of Higgs systems: explicit bases with torus
//! weights and Hodge bigrades, the residue components `N_j` of `θ`, and the
//! functorial constructions on them.

mod complex;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bundlealg::{Bigrade, GradedCharacter};
use crate::charcalc::{Character, WeightMonomial};
use crate::error::{Error, Result};
use crate::linalg::{kernel, q, SparseMap, Subspace, Q};

pub use complex::{BlockKey, Cohomology, FiberComplex};

/// Default bound on the rank of any realized system.
pub const DEFAULT_LIMIT: usize = 5000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisVector {
    pub weight: WeightMonomial,
    pub bigrade: Bigrade,
    pub tag: String,
}

/// A realized Higgs system: `θ = Σ_j N_j dz_j` with `N_j` lowering the weight by `x_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberSystem {
    n: usize,
    basis: Vec<BasisVector>,
    theta: Vec<SparseMap>,
    conj: Option<SparseMap>,
}

impl FiberSystem {
    pub fn zero(n: usize) -> Self {
        FiberSystem { n, basis: Vec::new(), theta: vec![SparseMap::zero(0, 0); n], conj: None }
    }

    /// Basis `dz_j ⊗ v` (weight `x_j/L`, bigrade (1,0)) and `v` (weight `1/L`, bigrade (0,1)),
    /// with `N_j(dz_j ⊗ v) = v`.
    pub fn uniformizing(n: usize) -> Self {
        let mut basis: Vec<BasisVector> = (0..n)
            .map(|j| BasisVector {
                weight: WeightMonomial::coordinate(n, j).mul(&WeightMonomial::l_power(n, -1)),
                bigrade: (1, 0),
                tag: format!("dz{}v", j + 1),
            })
            .collect();
        basis.push(BasisVector { weight: WeightMonomial::l_power(n, -1), bigrade: (0, 1), tag: "v".into() });
        let theta = (0..n)
            .map(|j| {
                let mut cols = vec![Vec::new(); n + 1];
                cols[j].push((n, Q::one()));
                SparseMap::from_columns(n + 1, cols)
            })
            .collect();
        FiberSystem { n, basis, theta, conj: None }
    }

    pub fn dual_uniformizing(n: usize) -> Self {
        FiberSystem::uniformizing(n).dual()
    }

    /// `E1 ⊕ E2` with the conjugation exchanging each generator with its dual.
    pub fn polarized(n: usize) -> Self {
        let mut v = FiberSystem::uniformizing(n).direct_sum_tagged(&FiberSystem::dual_uniformizing(n), false);
        let r = n + 1;
        let cols = (0..2 * r).map(|i| vec![((i + r) % (2 * r), Q::one())]).collect();
        v.conj = Some(SparseMap::from_columns(2 * r, cols));
        v
    }

    /// A system with `θ = 0` in bigrade (0,0) realizing a genuine character.
    pub fn plain(ch: &Character) -> Result<Self> {
        let n = ch.n();
        let mut basis = Vec::new();
        for (m, c) in ch.terms() {
            if c.is_negative() {
                return Err(Error::NotARepresentation { weight: m.to_string(), coefficient: c.to_string() });
            }
            let count = c.to_usize().ok_or_else(|| Error::ResourceLimit { rank: c.to_string(), limit: usize::MAX })?;
            for _ in 0..count {
                let tag = format!("w{}", basis.len());
                basis.push(BasisVector { weight: m.clone(), bigrade: (0, 0), tag });
            }
        }
        let d = basis.len();
        Ok(FiberSystem { n, basis, theta: vec![SparseMap::zero(d, d); n], conj: None })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    /// `N_j` for `j = 0..n`.
    pub fn theta(&self) -> &[SparseMap] {
        &self.theta
    }

    pub fn conjugation(&self) -> Option<&SparseMap> {
        self.conj.as_ref()
    }

    /// Weight and bigrade census.
    pub fn census(&self) -> GradedCharacter {
        let mut g = GradedCharacter::zero(self.n);
        for b in &self.basis {
            g.add_piece(b.bigrade, &Character::monomial(b.weight.clone(), BigInt::one()));
        }
        g
    }

    /// Rank of `θ` viewed as a map into `E ⊗ Ω¹`.
    pub fn theta_rank(&self) -> usize {
        let stacked: Vec<Vec<Q>> = self.theta.iter().flat_map(|m| m.to_dense()).collect();
        crate::linalg::rank(&stacked)
    }

    /// Checks `[N_i, N_j] = 0`.
    pub fn check_flat(&self) -> Result<()> {
        for i in 0..self.n {
            for j in i + 1..self.n {
                let a = self.theta[i].compose(&self.theta[j]);
                let b = self.theta[j].compose(&self.theta[i]);
                if a != b {
                    return Err(Error::FlatnessViolation(format!("N{} and N{} do not commute", i + 1, j + 1)));
                }
            }
        }
        Ok(())
    }

    /// Checks that `N_j` has bigrade `(-1,+1)` and lowers the weight by `x_j`,
    /// and that the conjugation swaps bigrades and inverts weights.
    pub fn check_homogeneous(&self) -> Result<()> {
        for (j, nj) in self.theta.iter().enumerate() {
            let xj = WeightMonomial::coordinate(self.n, j);
            for c in 0..nj.cols() {
                for (r, _) in nj.column(c) {
                    let (src, dst) = (&self.basis[c], &self.basis[*r]);
                    if dst.bigrade != (src.bigrade.0 - 1, src.bigrade.1 + 1) || dst.weight.mul(&xj) != src.weight {
                        return Err(Error::InvalidConstruction(format!(
                            "N{} maps {} to {} inhomogeneously",
                            j + 1,
                            src.tag,
                            dst.tag
                        )));
                    }
                }
            }
        }
        if let Some(c) = &self.conj {
            for col in 0..c.cols() {
                for (r, _) in c.column(col) {
                    let (src, dst) = (&self.basis[col], &self.basis[*r]);
                    if dst.bigrade != (src.bigrade.1, src.bigrade.0) || dst.weight != src.weight.inverse() {
                        return Err(Error::InvalidConstruction(format!(
                            "conjugation maps {} to {} inhomogeneously",
                            src.tag, dst.tag
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn direct_sum_tagged(&self, other: &FiberSystem, prefix: bool) -> FiberSystem {
        assert_eq!(self.n, other.n);
        let d1 = self.dim();
        let d = d1 + other.dim();
        let tag = |i: usize, t: &str| if prefix { format!("{i}:{t}") } else { t.to_string() };
        let mut basis: Vec<BasisVector> =
            self.basis.iter().map(|b| BasisVector { tag: tag(0, &b.tag), ..b.clone() }).collect();
        basis.extend(other.basis.iter().map(|b| BasisVector { tag: tag(1, &b.tag), ..b.clone() }));
        let block = |a: &SparseMap, b: &SparseMap| {
            let mut cols: Vec<Vec<(usize, Q)>> = (0..a.cols()).map(|c| a.column(c).to_vec()).collect();
            cols.extend((0..b.cols()).map(|c| b.column(c).iter().map(|(r, v)| (r + d1, v.clone())).collect()));
            SparseMap::from_columns(d, cols)
        };
        let theta = self.theta.iter().zip(&other.theta).map(|(a, b)| block(a, b)).collect();
        let conj = match (&self.conj, &other.conj) {
            (Some(a), Some(b)) => Some(block(a, b)),
            _ => None,
        };
        FiberSystem { n: self.n, basis, theta, conj }
    }

    pub fn direct_sum(&self, other: &FiberSystem) -> FiberSystem {
        self.direct_sum_tagged(other, true)
    }

    pub fn tensor(&self, other: &FiberSystem) -> FiberSystem {
        assert_eq!(self.n, other.n);
        let (da, db) = (self.dim(), other.dim());
        let idx = |i: usize, j: usize| i * db + j;
        let mut basis = Vec::with_capacity(da * db);
        for a in &self.basis {
            for b in &other.basis {
                basis.push(BasisVector {
                    weight: a.weight.mul(&b.weight),
                    bigrade: (a.bigrade.0 + b.bigrade.0, a.bigrade.1 + b.bigrade.1),
                    tag: format!("{} x {}", a.tag, b.tag),
                });
            }
        }
        let leibniz = |ma: &SparseMap, mb: &SparseMap| {
            let mut cols = Vec::with_capacity(da * db);
            for i in 0..da {
                for j in 0..db {
                    let mut col: Vec<(usize, Q)> = ma.column(i).iter().map(|(r, v)| (idx(*r, j), v.clone())).collect();
                    col.extend(mb.column(j).iter().map(|(r, v)| (idx(i, *r), v.clone())));
                    cols.push(col);
                }
            }
            SparseMap::from_columns(da * db, cols)
        };
        let theta = self.theta.iter().zip(&other.theta).map(|(a, b)| leibniz(a, b)).collect();
        let conj = match (&self.conj, &other.conj) {
            (Some(ca), Some(cb)) => {
                let mut cols = Vec::with_capacity(da * db);
                for i in 0..da {
                    for j in 0..db {
                        let mut col = Vec::new();
                        for (ra, va) in ca.column(i) {
                            for (rb, vb) in cb.column(j) {
                                col.push((idx(*ra, *rb), va * vb));
                            }
                        }
                        cols.push(col);
                    }
                }
                Some(SparseMap::from_columns(da * db, cols))
            }
            _ => None,
        };
        FiberSystem { n: self.n, basis, theta, conj }
    }

    /// Dual with `N^* = -N^T`; bigrades follow `(p,q) -> (w-p, w-q)` for pure weight `w`.
    pub fn dual(&self) -> FiberSystem {
        let w = self.census().pure_weight().unwrap_or(0);
        let basis = self
            .basis
            .iter()
            .map(|b| BasisVector {
                weight: b.weight.inverse(),
                bigrade: (w - b.bigrade.0, w - b.bigrade.1),
                tag: format!("({})*", b.tag),
            })
            .collect();
        let theta = self.theta.iter().map(|m| m.transpose().scale(&q(-1))).collect();
        let conj = self.conj.as_ref().map(|c| c.transpose());
        FiberSystem { n: self.n, basis, theta, conj }
    }

    pub fn sym(&self, k: usize) -> FiberSystem {
        self.power(k, false)
    }

    pub fn wedge(&self, k: usize) -> FiberSystem {
        self.power(k, true)
    }

    fn power(&self, k: usize, alternating: bool) -> FiberSystem {
        let words = if alternating { subsets(self.dim(), k) } else { multisets(self.dim(), k) };
        let index: HashMap<Vec<usize>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let d = words.len();
        let (open, sep) = if alternating { ("W(", "^") } else { ("S(", ".") };
        let basis = words
            .iter()
            .map(|w| {
                let mut weight = WeightMonomial::one(self.n);
                let mut bigrade = (0, 0);
                for &i in w {
                    weight = weight.mul(&self.basis[i].weight);
                    bigrade = (bigrade.0 + self.basis[i].bigrade.0, bigrade.1 + self.basis[i].bigrade.1);
                }
                let tags: Vec<&str> = w.iter().map(|&i| self.basis[i].tag.as_str()).collect();
                BasisVector { weight, bigrade, tag: format!("{open}{})", tags.join(sep)) }
            })
            .collect();
        // derivation: replace one factor at a time
        let derive = |m: &SparseMap| {
            let cols = words
                .iter()
                .map(|w| {
                    let mut col = Vec::new();
                    for t in 0..w.len() {
                        for (r, v) in m.column(w[t]) {
                            let mut nw = w.clone();
                            nw[t] = *r;
                            if let Some((sorted, sign)) = normalize(nw, alternating) {
                                col.push((index[&sorted], v * q(sign)));
                            }
                        }
                    }
                    col
                })
                .collect();
            SparseMap::from_columns(d, cols)
        };
        let theta = self.theta.iter().map(derive).collect();
        // multiplicative: expand the product of images
        let conj = self.conj.as_ref().map(|c| {
            let cols = words
                .iter()
                .map(|w| {
                    let mut partial: Vec<(Vec<usize>, Q)> = vec![(Vec::new(), Q::one())];
                    for &i in w {
                        let mut next = Vec::new();
                        for (pw, pv) in &partial {
                            for (r, v) in c.column(i) {
                                let mut nw = pw.clone();
                                nw.push(*r);
                                next.push((nw, pv * v));
                            }
                        }
                        partial = next;
                    }
                    partial
                        .into_iter()
                        .filter_map(|(nw, v)| normalize(nw, alternating).map(|(s, sign)| (index[&s], v * q(sign))))
                        .collect()
                })
                .collect();
            SparseMap::from_columns(d, cols)
        });
        FiberSystem { n: self.n, basis, theta, conj }
    }

    /// Checks that a subspace is stable under every `N_j`.
    pub fn is_theta_stable(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|b| self.theta.iter().all(|m| s.contains(&m.apply(b))))
    }

    fn conj_stable(&self, s: &Subspace) -> bool {
        match &self.conj {
            Some(c) => s.basis().iter().all(|b| s.contains(&c.apply(b))),
            None => false,
        }
    }

    /// Restriction to a `θ`-stable subspace spanned by homogeneous vectors.
    pub fn restrict(&self, s: &Subspace) -> Result<FiberSystem> {
        if !self.is_theta_stable(s) {
            return Err(Error::NotASubsystem("subspace is not θ-stable".into()));
        }
        let piv = s.pivots().to_vec();
        let basis = piv
            .iter()
            .map(|&p| BasisVector { tag: format!("~{}", self.basis[p].tag), ..self.basis[p].clone() })
            .collect();
        let coords = |v: Vec<Q>| -> Vec<(usize, Q)> {
            piv.iter().enumerate().filter(|(_, p)| !v[**p].is_zero()).map(|(i, p)| (i, v[*p].clone())).collect()
        };
        let d = s.dim();
        let induced = |m: &SparseMap| SparseMap::from_columns(d, s.basis().iter().map(|b| coords(m.apply(b))).collect());
        let theta = self.theta.iter().map(induced).collect();
        let conj = if self.conj_stable(s) { self.conj.as_ref().map(induced) } else { None };
        let out = FiberSystem { n: self.n, basis, theta, conj };
        out.check_homogeneous().map_err(|_| Error::NotASubsystem("subspace is not homogeneous".into()))?;
        Ok(out)
    }

    /// Quotient by a `θ`-stable subspace spanned by homogeneous vectors.
    pub fn quotient(&self, s: &Subspace) -> Result<FiberSystem> {
        if !self.is_theta_stable(s) {
            return Err(Error::NotASubsystem("subspace is not θ-stable".into()));
        }
        let keep = s.complement_coordinates();
        let basis = keep.iter().map(|&c| self.basis[c].clone()).collect();
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let d = keep.len();
        let induced = |m: &SparseMap| {
            let cols = keep
                .iter()
                .map(|&c| {
                    let mut v = vec![Q::zero(); self.dim()];
                    for (r, x) in m.column(c) {
                        v[*r] = x.clone();
                    }
                    let red = s.reduce(&v);
                    red.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(r, x)| (pos[&r], x)).collect()
                })
                .collect();
            SparseMap::from_columns(d, cols)
        };
        let theta = self.theta.iter().map(induced).collect();
        let conj = if self.conj_stable(s) { self.conj.as_ref().map(induced) } else { None };
        let out = FiberSystem { n: self.n, basis, theta, conj };
        out.check_homogeneous().map_err(|_| Error::NotASubsystem("subspace is not homogeneous".into()))?;
        Ok(out)
    }

    /// Indices of basis vectors in a bigrade.
    pub fn indices_at(&self, g: Bigrade) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].bigrade == g).collect()
    }

    /// Vectors killed by every `N_j` inside the span of the given coordinates.
    pub fn invariants_among(&self, coords: &[usize]) -> Vec<Vec<Q>> {
        let rows: Vec<Vec<Q>> = self
            .theta
            .iter()
            .flat_map(|m| {
                let all: Vec<usize> = (0..self.dim()).collect();
                m.dense(&all, coords)
            })
            .collect();
        kernel(&rows, coords.len())
            .into_iter()
            .map(|k| {
                let mut v = vec![Q::zero(); self.dim()];
                for (i, c) in coords.iter().enumerate() {
                    v[*c] = k[i].clone();
                }
                v
            })
            .collect()
    }

    /// Kernel of `N_dir` (`dir` is 1-based) as a sub-system.
    pub fn residue_kernel(&self, dir: usize) -> Result<FiberSystem> {
        if dir == 0 || dir > self.n {
            return Err(Error::InvalidConstruction(format!("direction {dir} outside 1..={}", self.n)));
        }
        let dense = self.theta[dir - 1].to_dense();
        let s = Subspace::span(self.dim(), kernel(&dense, self.dim()));
        self.restrict(&s)
    }

    /// Matrices of `N_j` and the conjugation as sparse triplet text.
    pub fn debug_dump(&self) -> String {
        let mut s = String::new();
        for (i, b) in self.basis.iter().enumerate() {
            s.push_str(&format!("# {i} {} {:?} {}\n", b.tag, b.bigrade, b.weight));
        }
        for (j, m) in self.theta.iter().enumerate() {
            s.push_str(&format!("N{} {}x{}\n", j + 1, m.rows(), m.cols()));
            s.push_str(&m.triplets());
        }
        if let Some(c) = &self.conj {
            s.push_str(&format!("conj {}x{}\n", c.rows(), c.cols()));
            s.push_str(&c.triplets());
        }
        s
    }
}

/// Sorts a word; for alternating words returns the permutation sign, or `None` on a repeat.
fn normalize(mut w: Vec<usize>, alternating: bool) -> Option<(Vec<usize>, i64)> {
    if !alternating {
        w.sort_unstable();
        return Some((w, 1));
    }
    let mut sign = 1;
    for i in 1..w.len() {
        let mut j = i;
        while j > 0 && w[j - 1] > w[j] {
            w.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if w.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    Some((w, sign))
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Weakly increasing `k`-words in `0..n` in lexicographic order.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Wedge product of `Λ^a` and `Λ^b` elements indexed by sorted subsets.
pub(crate) fn wedge_product(
    a: &[(Vec<usize>, Q)],
    b: &[(Vec<usize>, Q)],
) -> Vec<(Vec<usize>, Q)> {
    let mut acc: std::collections::BTreeMap<Vec<usize>, Q> = std::collections::BTreeMap::new();
    for (sa, va) in a {
        for (sb, vb) in b {
            let mut w = sa.clone();
            w.extend(sb.iter().copied());
            if let Some((s, sign)) = normalize(w, true) {
                *acc.entry(s).or_insert_with(Q::zero) += va * vb * q(sign);
            }
        }
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

#[cfg(test)]
mod tests;
