//! Higgs systems built functorially from the uniformizing system `E1`, its
//! dual `E2` and plain bundles, together with their Higgs complexes,
//! primitive parts, maximal sub-systems and quotients.

use std::collections::BTreeMap;

use num_traits::{One, ToPrimitive, Zero};

use crate::bundlealg::eval::lefschetz_power;
use crate::bundlealg::{eval_graded, Bigrade, BundleExpr, FormalBundle, GradedCharacter};
use crate::error::{Error, Result};
use crate::fiber::{self, Cohomology, FiberComplex, FiberSystem};
use crate::linalg::{unit, Subspace, Q};

/// A bigraded bundle with an explicit fiber realization of `θ`.
#[derive(Clone, Debug)]
pub struct HiggsSystem {
    n: usize,
    provenance: BundleExpr,
    description: String,
    pieces: BTreeMap<Bigrade, FormalBundle>,
    fiber: FiberSystem,
    /// Span of this system inside the fiber it was cut out of.
    inclusion: Option<Subspace>,
}

impl HiggsSystem {
    fn from_fiber(provenance: BundleExpr, description: String, fiber: FiberSystem) -> Result<Self> {
        let pieces = fiber.census().decompose()?;
        Ok(HiggsSystem { n: fiber.n(), provenance, description, pieces, fiber, inclusion: None })
    }

    /// `E1 = (Ω¹(log D) ⊗ L^{-1}) ⊕ L^{-1}`.
    pub fn uniformizing(n: usize) -> Self {
        Self::from_expr(&BundleExpr::E1, n).expect("E1 is always constructible")
    }

    /// `E2 = L ⊕ (Ω^{n-1}(log D) ⊗ L^{-n})`.
    pub fn dual_uniformizing(n: usize) -> Self {
        Self::from_expr(&BundleExpr::E2, n).expect("E2 is always constructible")
    }

    /// `V = E1 ⊕ E2` with its conjugation.
    pub fn polarized(n: usize) -> Self {
        Self::from_expr(&BundleExpr::V, n).expect("V is always constructible")
    }

    pub fn unitary(n: usize, r: u64) -> Self {
        Self::from_expr(&BundleExpr::Unitary(r), n).expect("U(r) is always constructible")
    }

    pub fn from_expr(e: &BundleExpr, n: usize) -> Result<Self> {
        Self::from_expr_with_limit(e, n, fiber::DEFAULT_LIMIT)
    }

    /// Realizes an expression, refusing any intermediate system of rank above `limit`.
    pub fn from_expr_with_limit(e: &BundleExpr, n: usize, limit: usize) -> Result<Self> {
        let fiber = realize(e, n, limit)?;
        Self::from_fiber(e.clone(), e.to_string(), fiber)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn provenance(&self) -> &BundleExpr {
        &self.provenance
    }

    /// Human-readable construction, including sub/quotient steps.
    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn pieces(&self) -> &BTreeMap<Bigrade, FormalBundle> {
        &self.pieces
    }

    pub fn piece(&self, g: Bigrade) -> FormalBundle {
        self.pieces.get(&g).cloned().unwrap_or_else(|| FormalBundle::new(self.n))
    }

    pub fn fiber(&self) -> &FiberSystem {
        &self.fiber
    }

    pub fn inclusion(&self) -> Option<&Subspace> {
        self.inclusion.as_ref()
    }

    pub fn rank(&self) -> usize {
        self.fiber.dim()
    }

    pub fn character(&self) -> GradedCharacter {
        self.fiber.census()
    }

    /// `Some(w)` for a system of pure weight `p + q = w`.
    pub fn weight(&self) -> Option<i32> {
        self.character().pure_weight()
    }

    /// Flatness and homogeneity of the fiber realization.
    pub fn check(&self) -> Result<()> {
        self.fiber.check_flat()?;
        self.fiber.check_homogeneous()
    }

    fn derived(&self, e: BundleExpr, limit: usize) -> Result<HiggsSystem> {
        // re-realizing from the expression keeps provenance exact
        let fiber = realize(&e, self.n, limit)?;
        Self::from_fiber(e.clone(), e.to_string(), fiber)
    }

    fn ensure_plain_provenance(&self) -> Result<()> {
        if self.inclusion.is_some() || self.description != self.provenance.to_string() {
            return Err(Error::InvalidConstruction(format!(
                "{} is a sub or quotient system; build functors from an expression instead",
                self.description
            )));
        }
        Ok(())
    }

    pub fn sym(&self, k: u32) -> Result<HiggsSystem> {
        self.ensure_plain_provenance()?;
        self.derived(BundleExpr::sym(k, self.provenance.clone()), fiber::DEFAULT_LIMIT)
    }

    pub fn wedge(&self, k: u32) -> Result<HiggsSystem> {
        self.ensure_plain_provenance()?;
        self.derived(BundleExpr::wedge(k, self.provenance.clone()), fiber::DEFAULT_LIMIT)
    }

    pub fn tensor(&self, other: &HiggsSystem) -> Result<HiggsSystem> {
        self.ensure_plain_provenance()?;
        other.ensure_plain_provenance()?;
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        self.derived(BundleExpr::tensor(self.provenance.clone(), other.provenance.clone()), fiber::DEFAULT_LIMIT)
    }

    pub fn end0(&self) -> Result<HiggsSystem> {
        self.ensure_plain_provenance()?;
        self.derived(BundleExpr::end0(self.provenance.clone()), fiber::DEFAULT_LIMIT)
    }

    pub fn dual(&self) -> Result<HiggsSystem> {
        self.ensure_plain_provenance()?;
        self.derived(BundleExpr::dual(self.provenance.clone()), fiber::DEFAULT_LIMIT)
    }

    /// The Higgs complex `E ⊗ Ω^•(log D)` with `d = ∧θ`; aborts on `d² ≠ 0`.
    pub fn higgs_complex(&self) -> Result<HiggsComplex> {
        let complex = FiberComplex::new(&self.fiber)?;
        let terms = (0..=self.n).map(|i| complex.term_character(i).decompose()).collect::<Result<Vec<_>>>()?;
        Ok(HiggsComplex { n: self.n, description: self.description.clone(), complex, terms })
    }

    /// Kernel of the residue `N_dir` on the fiber.
    pub fn residue_kernel(&self, dir: usize) -> Result<FiberSystem> {
        self.fiber.residue_kernel(dir)
    }

    /// Greatest sub-system inside `constraint` that is `θ`-stable and, if asked,
    /// closed under conjugation.
    pub fn maximal_sub_system(&self, constraint: &Constraint, conjugation_closed: bool) -> Result<HiggsSystem> {
        let dim = self.fiber.dim();
        let conj = if conjugation_closed {
            Some(self.fiber.conjugation().ok_or_else(|| {
                Error::InvalidConstruction(format!("{} carries no conjugation", self.description))
            })?)
        } else {
            None
        };
        let mut s = constraint.subspace(dim)?;
        loop {
            let before = s.dim();
            for m in self.fiber.theta() {
                s = s.intersect(&s.preimage(m));
            }
            if let Some(c) = conj {
                s = s.intersect(&s.image(c));
            }
            if s.dim() == before {
                break;
            }
        }
        let fiber = self.fiber.restrict(&s)?;
        let description = format!("max-sub({})", self.description);
        let mut sub = Self::from_fiber(self.provenance.clone(), description, fiber)?;
        sub.inclusion = Some(s);
        Ok(sub)
    }

    /// The zero sub-system.
    pub fn zero_sub_system(&self) -> HiggsSystem {
        let s = Subspace::zero(self.fiber.dim());
        let fiber = self.fiber.restrict(&s).expect("zero is θ-stable");
        let mut sub = Self::from_fiber(self.provenance.clone(), "0".into(), fiber).expect("empty census");
        sub.inclusion = Some(s);
        sub
    }

    /// Quotient by a sub-system cut out of this one.
    pub fn quotient_system(&self, sub: &HiggsSystem) -> Result<HiggsSystem> {
        let s = sub
            .inclusion
            .as_ref()
            .ok_or_else(|| Error::NotASubsystem(format!("{} has no inclusion", sub.description)))?;
        if s.ambient() != self.fiber.dim() || sub.n != self.n {
            return Err(Error::NotASubsystem(format!("{} does not live in {}", sub.description, self.description)));
        }
        let fiber = self.fiber.quotient(s)?;
        let description = if s.dim() == 0 {
            self.description.clone()
        } else {
            format!("{} / {}", self.description, sub.description)
        };
        let mut q = Self::from_fiber(self.provenance.clone(), description, fiber)?;
        q.inclusion = None;
        Ok(q)
    }

    /// `pr(Wedge^k(X))` for a system built as a wedge power.
    pub fn primitive_part(&self) -> Result<HiggsSystem> {
        self.ensure_plain_provenance()?;
        match &self.provenance {
            BundleExpr::Wedge(..) => self.derived(BundleExpr::primitive(self.provenance.clone()), fiber::DEFAULT_LIMIT),
            other => Err(Error::NotPrimitiveInput(other.to_string())),
        }
    }
}

/// Allowed subspace per bigrade for [`HiggsSystem::maximal_sub_system`];
/// bigrades without an entry allow nothing.
#[derive(Clone, Debug, Default)]
pub struct Constraint {
    allowed: BTreeMap<Bigrade, Vec<Vec<Q>>>,
}

impl Constraint {
    /// Allows nothing.
    pub fn empty() -> Self {
        Constraint::default()
    }

    pub fn allow(&mut self, g: Bigrade, vectors: Vec<Vec<Q>>) {
        self.allowed.entry(g).or_default().extend(vectors);
    }

    /// Everything in bigrade `g`.
    pub fn allow_all(&mut self, h: &HiggsSystem, g: Bigrade) {
        let dim = h.fiber.dim();
        self.allow(g, h.fiber.indices_at(g).into_iter().map(|i| unit(dim, i)).collect());
    }

    /// The `θ`-kernel inside bigrade `g`.
    pub fn allow_theta_kernel(&mut self, h: &HiggsSystem, g: Bigrade) {
        let coords = h.fiber.indices_at(g);
        self.allow(g, h.fiber.invariants_among(&coords));
    }

    /// For a pure weight-`w` system: `(1, w-1)` inside `ker θ`, `(w,0)` and `(0,w)` zero,
    /// every other bigrade unconstrained.
    pub fn abelian(h: &HiggsSystem) -> Result<Self> {
        let w = h.weight().ok_or_else(|| Error::WrongWeight(format!("{} is not of pure weight", h.description)))?;
        let mut c = Constraint::empty();
        for g in h.pieces.keys() {
            if *g == (1, w - 1) {
                c.allow_theta_kernel(h, *g);
            } else if *g != (w, 0) && *g != (0, w) {
                c.allow_all(h, *g);
            }
        }
        Ok(c)
    }

    /// The whole sub-system inside `ker θ`, bigrade by bigrade.
    pub fn flat(h: &HiggsSystem) -> Self {
        let mut c = Constraint::empty();
        for g in h.pieces.keys() {
            c.allow_theta_kernel(h, *g);
        }
        c
    }

    fn subspace(&self, dim: usize) -> Result<Subspace> {
        let mut vs = Vec::new();
        for v in self.allowed.values().flatten() {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { left: v.len(), right: dim });
            }
            vs.push(v.clone());
        }
        Ok(Subspace::span(dim, vs))
    }
}

/// A Higgs complex with its fiber differentials.
#[derive(Clone, Debug)]
pub struct HiggsComplex {
    n: usize,
    description: String,
    complex: FiberComplex,
    terms: Vec<BTreeMap<Bigrade, FormalBundle>>,
}

impl HiggsComplex {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn fiber(&self) -> &FiberComplex {
        &self.complex
    }

    /// `term(i)` split by the bigrade of the source piece.
    pub fn term(&self, i: usize) -> &BTreeMap<Bigrade, FormalBundle> {
        &self.terms[i]
    }

    pub fn term_ranks(&self) -> Vec<usize> {
        self.complex.term_dims()
    }

    pub fn cohomology(&self) -> Cohomology {
        self.complex.cohomology()
    }
}

fn check_limit(g: &GradedCharacter, limit: usize) -> Result<()> {
    let r = g.rank();
    match r.to_usize() {
        Some(v) if v <= limit => Ok(()),
        _ => Err(Error::ResourceLimit { rank: r.to_string(), limit }),
    }
}

fn realize(e: &BundleExpr, n: usize, limit: usize) -> Result<FiberSystem> {
    let g = eval_graded(e, n)?;
    check_limit(&g, limit)?;
    let fiber = realize_node(e, n, limit, &g)?;
    if fiber.census() != g {
        return Err(Error::InvalidConstruction(format!("realization of {e} disagrees with its character")));
    }
    Ok(fiber)
}

fn realize_node(e: &BundleExpr, n: usize, limit: usize, g: &GradedCharacter) -> Result<FiberSystem> {
    if e.is_plain() {
        return FiberSystem::plain(&g.total());
    }
    Ok(match e {
        BundleExpr::E1 => FiberSystem::uniformizing(n),
        BundleExpr::E2 => FiberSystem::dual_uniformizing(n),
        BundleExpr::V => FiberSystem::polarized(n),
        BundleExpr::Sum(a, b) if **a == BundleExpr::E1 && **b == BundleExpr::E2 => FiberSystem::polarized(n),
        BundleExpr::Sum(a, b) => realize(a, n, limit)?.direct_sum(&realize(b, n, limit)?),
        BundleExpr::Tensor(a, b) => realize(a, n, limit)?.tensor(&realize(b, n, limit)?),
        BundleExpr::Sym(k, a) => realize(a, n, limit)?.sym(*k as usize),
        BundleExpr::Wedge(k, a) => realize(a, n, limit)?.wedge(*k as usize),
        BundleExpr::Dual(a) => realize(a, n, limit)?.dual(),
        BundleExpr::Det(a) => {
            let x = realize(a, n, limit)?;
            x.wedge(x.dim())
        }
        BundleExpr::End0(a) => {
            let x = realize(a, n, limit)?;
            let d = x.dim();
            let t = x.tensor(&x.dual());
            let mut id = vec![Q::zero(); d * d];
            for i in 0..d {
                id[i * d + i] = Q::one();
            }
            t.quotient(&Subspace::span(d * d, vec![id]))?
        }
        BundleExpr::Primitive(arg) => match &**arg {
            BundleExpr::Wedge(k, x) => primitive_fiber(&realize(x, n, limit)?, *k as usize)?,
            other => return Err(Error::NotPrimitiveInput(other.to_string())),
        },
        // plain-only constructions are handled above; eval_graded rejects the rest
        other => return Err(Error::InvalidConstruction(format!("cannot realize {other}"))),
    })
}

/// The polarization: the unique `θ`-invariant weight-zero vector of bigrade (1,1) in `Λ²X`.
pub fn polarization(x: &FiberSystem) -> Result<Vec<(Vec<usize>, Q)>> {
    let w2 = x.wedge(2);
    let coords: Vec<usize> = w2
        .indices_at((1, 1))
        .into_iter()
        .filter(|&i| w2.basis()[i].weight.is_one())
        .collect();
    let inv = w2.invariants_among(&coords);
    if inv.len() != 1 {
        return Err(Error::NotPrimitiveInput(format!("{} invariant (1,1)-forms instead of one", inv.len())));
    }
    let pairs = fiber::subsets(x.dim(), 2);
    Ok(inv[0]
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (pairs[i].clone(), v.clone()))
        .collect())
}

fn primitive_fiber(x: &FiberSystem, k: usize) -> Result<FiberSystem> {
    let full = x.wedge(k);
    let j = lefschetz_power(k, x.dim());
    if k < 2 * j {
        return Ok(full);
    }
    let omega = polarization(x)?;
    let mut omega_j: Vec<(Vec<usize>, Q)> = vec![(Vec::new(), Q::one())];
    for _ in 0..j {
        omega_j = fiber::wedge_product(&omega_j, &omega);
    }
    let index: BTreeMap<Vec<usize>, usize> =
        fiber::subsets(x.dim(), k).into_iter().enumerate().map(|(i, s)| (s, i)).collect();
    let sources = fiber::subsets(x.dim(), k - 2 * j);
    let image: Vec<Vec<Q>> = sources
        .iter()
        .map(|s| {
            let mut v = vec![Q::zero(); full.dim()];
            for (t, c) in fiber::wedge_product(&omega_j, &[(s.clone(), Q::one())]) {
                v[index[&t]] = c;
            }
            v
        })
        .collect();
    let span = Subspace::span(full.dim(), image);
    if span.dim() != sources.len() {
        return Err(Error::LefschetzNotInjective { p: j as i32, q: j as i32 });
    }
    full.quotient(&span)
}
