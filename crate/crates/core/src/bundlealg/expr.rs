use std::fmt;

/// Abstract syntax of bundle expressions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BundleExpr {
    /// `Omega1` is `Omega(1)`; `OmegaK` is the k-th exterior power of `Ω¹(log D)`.
    Omega(u32),
    LPow(i64),
    /// `O`
    Trivial,
    E1,
    E2,
    /// `E1 (+) E2` with its conjugation.
    V,
    Unitary(u64),
    Sum(Box<BundleExpr>, Box<BundleExpr>),
    Tensor(Box<BundleExpr>, Box<BundleExpr>),
    Sym(u32, Box<BundleExpr>),
    Wedge(u32, Box<BundleExpr>),
    Dual(Box<BundleExpr>),
    End0(Box<BundleExpr>),
    Det(Box<BundleExpr>),
    Primitive(Box<BundleExpr>),
    Gamma(Vec<u32>, Box<BundleExpr>),
}

impl BundleExpr {
    pub fn sum(a: BundleExpr, b: BundleExpr) -> Self {
        BundleExpr::Sum(Box::new(a), Box::new(b))
    }

    pub fn tensor(a: BundleExpr, b: BundleExpr) -> Self {
        BundleExpr::Tensor(Box::new(a), Box::new(b))
    }

    pub fn sym(k: u32, a: BundleExpr) -> Self {
        BundleExpr::Sym(k, Box::new(a))
    }

    pub fn wedge(k: u32, a: BundleExpr) -> Self {
        BundleExpr::Wedge(k, Box::new(a))
    }

    pub fn dual(a: BundleExpr) -> Self {
        BundleExpr::Dual(Box::new(a))
    }

    pub fn end0(a: BundleExpr) -> Self {
        BundleExpr::End0(Box::new(a))
    }

    pub fn det(a: BundleExpr) -> Self {
        BundleExpr::Det(Box::new(a))
    }

    pub fn primitive(a: BundleExpr) -> Self {
        BundleExpr::Primitive(Box::new(a))
    }

    pub fn gamma(params: Vec<u32>, a: BundleExpr) -> Self {
        BundleExpr::Gamma(params, Box::new(a))
    }

    /// True when no Higgs generator (`E1`, `E2`, `V`) occurs.
    pub fn is_plain(&self) -> bool {
        match self {
            BundleExpr::E1 | BundleExpr::E2 | BundleExpr::V => false,
            BundleExpr::Omega(_) | BundleExpr::LPow(_) | BundleExpr::Trivial | BundleExpr::Unitary(_) => true,
            BundleExpr::Sum(a, b) | BundleExpr::Tensor(a, b) => a.is_plain() && b.is_plain(),
            BundleExpr::Sym(_, a)
            | BundleExpr::Wedge(_, a)
            | BundleExpr::Dual(a)
            | BundleExpr::End0(a)
            | BundleExpr::Det(a)
            | BundleExpr::Primitive(a)
            | BundleExpr::Gamma(_, a) => a.is_plain(),
        }
    }
}

impl fmt::Display for BundleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::print::expr_to_string(self))
    }
}
