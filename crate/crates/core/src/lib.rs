//! Exact singularity invariants of complex polynomials in two variables.

pub mod cli;
pub mod complex;
pub mod elimination;
pub mod invariants;
pub mod error;
pub mod family;
pub mod poly;
pub mod qpoly;
pub mod roots;
pub mod singular;

pub use error::{Error, Result};
pub use poly::{MPoly, Monomial, Rat, Shear, Var};
pub use qpoly::QPoly;
