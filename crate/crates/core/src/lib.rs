//! Exact Higgs-complex calculus for the uniformizing Higgs systems of
//! compactified ball quotients.

pub mod bundlealg;
pub mod charcalc;
pub mod error;
pub mod fiber;
pub mod higgs;
pub mod linalg;
pub mod reduce;
pub mod registry;
pub mod vanish;

pub use bundlealg::{parse_expr, BundleExpr, FormalBundle, IrrepLabel};
pub use charcalc::{Character, WeightMonomial};
pub use reduce::{reduce, reduce_named, ReducedComplex};
pub use higgs::{Constraint, HiggsComplex, HiggsSystem};
pub use error::{Error, ErrorCategory, Result};
