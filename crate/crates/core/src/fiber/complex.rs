//! The Higgs complex `E → E⊗Ω¹ → … → E⊗Ωⁿ` on the generic fiber and its
//! weight-blocked cohomology.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::{subsets, BasisVector, FiberSystem};
use crate::bundlealg::{Bigrade, GradedCharacter};
use crate::charcalc::{Character, WeightMonomial};
use crate::error::{Error, Result};
use crate::linalg::{self, q, SparseMap};

/// `(weight, p + i, q − i)`: the differential preserves all three.
pub type BlockKey = (WeightMonomial, i32, i32);

#[derive(Clone, Debug)]
pub struct FiberComplex {
    n: usize,
    terms: Vec<Vec<BasisVector>>,
    diffs: Vec<SparseMap>,
}

impl FiberComplex {
    /// `d(e ⊗ dz_I) = Σ_j N_j e ⊗ dz_j ∧ dz_I`; aborts if `d² ≠ 0`.
    pub fn new(h: &FiberSystem) -> Result<Self> {
        h.check_flat()?;
        let n = h.n();
        let forms: Vec<Vec<Vec<usize>>> = (0..=n).map(|i| subsets(n, i)).collect();
        let form_index: Vec<BTreeMap<Vec<usize>, usize>> = forms
            .iter()
            .map(|fs| fs.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect())
            .collect();
        let terms: Vec<Vec<BasisVector>> = forms
            .iter()
            .map(|fs| {
                let mut basis = Vec::with_capacity(h.dim() * fs.len());
                for b in h.basis() {
                    for f in fs {
                        let mut weight = b.weight.clone();
                        for &j in f {
                            weight = weight.mul(&WeightMonomial::coordinate(n, j));
                        }
                        let dz: Vec<String> = f.iter().map(|j| format!("dz{}", j + 1)).collect();
                        basis.push(BasisVector {
                            weight,
                            bigrade: b.bigrade,
                            tag: format!("{}|{}", b.tag, dz.join("^")),
                        });
                    }
                }
                basis
            })
            .collect();
        let mut diffs = Vec::with_capacity(n);
        for i in 0..n {
            let (src, dst) = (forms[i].len(), forms[i + 1].len());
            let mut cols = Vec::with_capacity(h.dim() * src);
            for a in 0..h.dim() {
                for f in &forms[i] {
                    let mut col = Vec::new();
                    for j in (0..n).filter(|j| !f.contains(j)) {
                        let before = f.iter().filter(|&&t| t < j).count();
                        let sign = if before % 2 == 0 { 1 } else { -1 };
                        let mut g = f.clone();
                        g.insert(before, j);
                        let gi = form_index[i + 1][&g];
                        for (r, v) in h.theta()[j].column(a) {
                            col.push((r * dst + gi, v * q(sign)));
                        }
                    }
                    cols.push(col);
                }
            }
            diffs.push(SparseMap::from_columns(h.dim() * dst, cols));
        }
        let c = FiberComplex { n, terms, diffs };
        c.check_square_zero()?;
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn term(&self, i: usize) -> &[BasisVector] {
        &self.terms[i]
    }

    pub fn term_dims(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.len()).collect()
    }

    /// `d_i : term(i) → term(i+1)`.
    pub fn differentials(&self) -> &[SparseMap] {
        &self.diffs
    }

    pub fn check_square_zero(&self) -> Result<()> {
        for i in 0..self.diffs.len().saturating_sub(1) {
            if !self.diffs[i + 1].compose(&self.diffs[i]).is_zero() {
                return Err(Error::FlatnessViolation(format!("d{} ∘ d{} ≠ 0", i + 1, i)));
            }
        }
        Ok(())
    }

    pub fn key(&self, i: usize, idx: usize) -> BlockKey {
        let b = &self.terms[i][idx];
        (b.weight.clone(), b.bigrade.0 + i as i32, b.bigrade.1 - i as i32)
    }

    fn blocks(&self, i: usize) -> BTreeMap<BlockKey, Vec<usize>> {
        let mut out: BTreeMap<BlockKey, Vec<usize>> = BTreeMap::new();
        for idx in 0..self.terms[i].len() {
            out.entry(self.key(i, idx)).or_default().push(idx);
        }
        out
    }

    /// Character of term `i`, graded by the bigrade of the source piece.
    pub fn term_character(&self, i: usize) -> GradedCharacter {
        let mut g = GradedCharacter::zero(self.n);
        for b in &self.terms[i] {
            g.add_piece(b.bigrade, &Character::monomial(b.weight.clone(), BigInt::from(1)));
        }
        g
    }

    /// Global rank of each differential, without blocking.
    pub fn global_ranks(&self) -> Vec<usize> {
        self.diffs.par_iter().map(|d| linalg::rank(&d.to_dense())).collect()
    }

    /// Cohomology dimensions per degree and block.
    pub fn cohomology(&self) -> Cohomology {
        let blocks: Vec<BTreeMap<BlockKey, Vec<usize>>> = (0..=self.n).map(|i| self.blocks(i)).collect();
        // rank of d_i on each block of term(i)
        let work: Vec<(usize, BlockKey)> = (0..self.n)
            .flat_map(|i| blocks[i].keys().map(move |k| (i, k.clone())))
            .collect();
        let ranks: Vec<usize> = work
            .par_iter()
            .map(|(i, k)| {
                let cols = &blocks[*i][k];
                match blocks[i + 1].get(k) {
                    Some(rows) => linalg::rank(&self.diffs[*i].dense(rows, cols)),
                    None => 0,
                }
            })
            .collect();
        let mut block_ranks: Vec<BTreeMap<BlockKey, usize>> = vec![BTreeMap::new(); self.n];
        for ((i, k), r) in work.into_iter().zip(ranks) {
            if r > 0 {
                block_ranks[i].insert(k, r);
            }
        }
        let mut dims: Vec<BTreeMap<BlockKey, usize>> = vec![BTreeMap::new(); self.n + 1];
        for i in 0..=self.n {
            for (k, idx) in &blocks[i] {
                let out = if i < self.n { block_ranks[i].get(k).copied().unwrap_or(0) } else { 0 };
                let inc = if i > 0 { block_ranks[i - 1].get(k).copied().unwrap_or(0) } else { 0 };
                let h = idx.len() - out - inc;
                if h > 0 {
                    dims[i].insert(k.clone(), h);
                }
            }
        }
        Cohomology { n: self.n, dims, block_ranks }
    }
}

/// Cohomology of a fiber complex, blocked by [`BlockKey`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cohomology {
    n: usize,
    dims: Vec<BTreeMap<BlockKey, usize>>,
    block_ranks: Vec<BTreeMap<BlockKey, usize>>,
}

impl Cohomology {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dims(&self, i: usize) -> &BTreeMap<BlockKey, usize> {
        &self.dims[i]
    }

    /// Rank of `d_i` summed over blocks.
    pub fn rank(&self, i: usize) -> usize {
        self.block_ranks[i].values().sum()
    }

    pub fn total_dim(&self, i: usize) -> usize {
        self.dims[i].values().sum()
    }

    /// Cohomology character in degree `i`, graded by the source bigrade,
    /// optionally restricted to the strand `p + i = s`.
    pub fn character(&self, i: usize, strand: Option<i32>) -> GradedCharacter {
        let mut g = GradedCharacter::zero(self.n);
        for ((w, s, t), d) in &self.dims[i] {
            if strand.is_some_and(|x| x != *s) {
                continue;
            }
            let grade: Bigrade = (s - i as i32, t + i as i32);
            g.add_piece(grade, &Character::monomial(w.clone(), BigInt::from(*d)));
        }
        g
    }

    /// Strand values `p + i` carrying cohomology.
    pub fn strands(&self) -> Vec<i32> {
        let mut s: Vec<i32> = self.dims.iter().flat_map(|m| m.keys().map(|k| k.1)).collect();
        s.sort_unstable();
        s.dedup();
        s
    }
}
