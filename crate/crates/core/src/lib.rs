//! Exact computer algebra for noncommutative geometry: presentations and
//! rewriting, path algebras and localizations, noncommutative differential
//! forms, module categories, representation schemes, and noncommutative
//! covers with their Čech cohomology.

pub mod algebra;
pub mod calculus;
pub mod commpoly;
pub mod error;
pub mod linalg;
pub mod ncpoly;
pub mod nproj;
pub mod repmod;
pub mod reprscheme;
pub mod rewrite;
pub mod spaces;

pub use error::{Error, Result};

/// Exact rational scalars used throughout.
pub type Q = num_rational::BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}
