//! Exact linear algebra over the rationals: sparse maps, reduced row echelon
//! forms, subspaces, and fraction-free rank.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Column-sparse matrix: `columns[j]` lists the nonzero `(row, value)` of column `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMap {
    rows: usize,
    columns: Vec<Vec<(usize, Q)>>,
}

impl SparseMap {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMap { rows, columns: vec![Vec::new(); cols] }
    }

    /// Builds from per-column entries, merging duplicates and dropping zeros.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, Q)>>) -> Self {
        let columns = columns
            .into_iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
                for (r, v) in col {
                    assert!(r < rows, "row index out of range");
                    *acc.entry(r).or_insert_with(Q::zero) += v;
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        SparseMap { rows, columns }
    }

    pub fn identity(dim: usize) -> Self {
        SparseMap { rows: dim, columns: (0..dim).map(|i| vec![(i, Q::one())]).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, Q)] {
        &self.columns[j]
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols());
        let mut out = vec![Q::zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, a) in &self.columns[j] {
                out[*r] += a * x;
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SparseMap) -> SparseMap {
        assert_eq!(self.cols(), other.rows, "composable shapes");
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut entries = Vec::new();
                for (k, b) in col {
                    for (r, a) in &self.columns[*k] {
                        entries.push((*r, a * b));
                    }
                }
                entries
            })
            .collect();
        SparseMap::from_columns(self.rows, columns)
    }

    pub fn add(&self, other: &SparseMap) -> SparseMap {
        assert_eq!((self.rows, self.cols()), (other.rows, other.cols()));
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| a.iter().chain(b.iter()).cloned().collect())
            .collect();
        SparseMap::from_columns(self.rows, columns)
    }

    pub fn scale(&self, s: &Q) -> SparseMap {
        let columns = self
            .columns
            .iter()
            .map(|c| c.iter().map(|(r, v)| (*r, v * s)).collect())
            .collect();
        SparseMap::from_columns(self.rows, columns)
    }

    pub fn transpose(&self) -> SparseMap {
        let mut columns = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                columns[*r].push((j, v.clone()));
            }
        }
        SparseMap { rows: self.cols(), columns }
    }

    /// Dense row-major submatrix on the given rows and columns.
    pub fn dense(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<Q>> {
        let pos: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        let mut out = vec![vec![Q::zero(); cols.len()]; rows.len()];
        for (jj, j) in cols.iter().enumerate() {
            for (r, v) in &self.columns[*j] {
                if let Some(i) = pos.get(r) {
                    out[*i][jj] = v.clone();
                }
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = (0..self.cols()).collect();
        self.dense(&rows, &cols)
    }

    /// Sparse triplets `row col num/den`, one per line, column-major.
    pub fn triplets(&self) -> String {
        let mut s = String::new();
        for (j, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                s.push_str(&format!("{r} {j} {}/{}\n", v.numer(), v.denom()));
            }
        }
        s
    }
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(rows: &mut Vec<Vec<Q>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Rank by fraction-free (Bareiss) elimination after clearing denominators row by row.
pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    bareiss_rank(&mut m)
}

pub fn bareiss_rank(m: &mut [Vec<BigInt>]) -> usize {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Basis of `{x : A x = 0}` for a row-major `A` with `ncols` columns.
pub fn kernel(a: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut rows = a.to_vec();
    let pivots = rref(&mut rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (row, &p) in rows.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// A subspace of `Q^dim`, stored as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::span(ambient, (0..ambient).map(|i| unit(ambient, i)).collect())
    }

    pub fn span(ambient: usize, vectors: Vec<Vec<Q>>) -> Self {
        let mut basis: Vec<Vec<Q>> = vectors.into_iter().filter(|v| v.iter().any(|x| !x.is_zero())).collect();
        for v in &basis {
            assert_eq!(v.len(), ambient, "vector length");
        }
        let pivots = rref(&mut basis);
        Subspace { ambient, basis, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not used as pivots; their unit vectors span a complement.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Representative of `v` modulo the subspace, zero on pivot coordinates.
    pub fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (x, y) in out.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, v)
    }

    /// Rows spanning the annihilator `{y : y·s = 0 for s in self}`.
    pub fn annihilator(&self) -> Vec<Vec<Q>> {
        kernel(&self.basis, self.ambient)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let mut eqs = self.annihilator();
        eqs.extend(other.annihilator());
        Subspace::span(self.ambient, kernel(&eqs, self.ambient))
    }

    /// `{x : A x ∈ self}`.
    pub fn preimage(&self, a: &SparseMap) -> Subspace {
        assert_eq!(a.rows(), self.ambient);
        let ann = self.annihilator();
        if ann.is_empty() {
            return Subspace::full(a.cols());
        }
        // (ann · A) as dense rows
        let at = a.transpose();
        let rows: Vec<Vec<Q>> = ann.iter().map(|y| at.apply(y)).collect();
        Subspace::span(a.cols(), kernel(&rows, a.cols()))
    }

    pub fn image(&self, a: &SparseMap) -> Subspace {
        assert_eq!(a.cols(), self.ambient);
        Subspace::span(a.rows(), self.basis.iter().map(|v| a.apply(v)).collect())
    }
}

pub fn unit(dim: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); dim];
    v[i] = Q::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter().map(|r| r.iter().map(|x| q(*x)).collect()).collect()
    }

    /// Rank by brute force over all square minors.
    fn rank_by_minors(a: &[Vec<Q>]) -> usize {
        fn det(m: &[Vec<Q>]) -> Q {
            if m.is_empty() {
                return Q::one();
            }
            let mut acc = Q::zero();
            for j in 0..m.len() {
                let minor: Vec<Vec<Q>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let t = &m[0][j] * det(&minor);
                if j % 2 == 0 {
                    acc += t;
                } else {
                    acc -= t;
                }
            }
            acc
        }
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = subsets(n - 1, k);
            for mut s in subsets(n - 1, k - 1) {
                s.push(n - 1);
                out.push(s);
            }
            out
        }
        let (r, c) = (a.len(), a.first().map_or(0, |x| x.len()));
        for k in (1..=r.min(c)).rev() {
            for rs in subsets(r, k) {
                for cs in subsets(c, k) {
                    let m: Vec<Vec<Q>> = rs.iter().map(|&i| cs.iter().map(|&j| a[i][j].clone()).collect()).collect();
                    if !det(&m).is_zero() {
                        return k;
                    }
                }
            }
        }
        0
    }

    #[test]
    fn rank_and_kernel() {
        let a = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 1);
        let m = SparseMap::from_columns(
            3,
            (0..3).map(|j| (0..3).map(|i| (i, a[i][j].clone())).collect()).collect(),
        );
        assert!(m.apply(&k[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn subspace_ops() {
        let s = Subspace::span(3, mat(&[&[1, 1, 0], &[0, 1, 1]]));
        let t = Subspace::span(3, mat(&[&[1, 0, 0], &[0, 0, 1]]));
        let i = s.intersect(&t);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[q(1), q(0), q(-1)]));
        assert_eq!(s.sum(&t).dim(), 3);
        // projection onto the first coordinate; preimage of 0 is the last two axes
        let p = SparseMap::from_columns(1, vec![vec![(0, q(1))], vec![], vec![]]);
        assert_eq!(Subspace::zero(1).preimage(&p).dim(), 2);
        assert_eq!(s.image(&p).dim(), 1);
    }

    proptest! {
        #[test]
        fn bareiss_matches_minors(entries in proptest::collection::vec(-3i64..=3, 12)) {
            let a: Vec<Vec<Q>> = entries.chunks(4).map(|r| r.iter().map(|x| q(*x)).collect()).collect();
            prop_assert_eq!(rank(&a), rank_by_minors(&a));
            let mut r = a.clone();
            prop_assert_eq!(rref(&mut r).len(), rank(&a));
            prop_assert_eq!(kernel(&a, 4).len(), 4 - rank(&a));
        }

        #[test]
        fn intersection_dimension_formula(a in proptest::collection::vec(-2i64..=2, 8), b in proptest::collection::vec(-2i64..=2, 8)) {
            let s = Subspace::span(4, a.chunks(4).map(|r| r.iter().map(|x| q(*x)).collect()).collect());
            let t = Subspace::span(4, b.chunks(4).map(|r| r.iter().map(|x| q(*x)).collect()).collect());
            prop_assert_eq!(s.intersect(&t).dim() + s.sum(&t).dim(), s.dim() + t.dim());
        }
    }
}
