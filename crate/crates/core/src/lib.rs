//! Exact algebra for logarithmic series solutions of A-hypergeometric systems.
//!
//! The crate is organised bottom-up: exact scalars and polynomials, integer
//! lattices, toric Gröbner bases, ideal operations, negative-support analysis,
//! the apolarity pairing, and finally the Frobenius construction of series
//! solutions with exact verification.

pub mod apolarity;
pub mod error;
pub mod frobenius;
pub mod groebner;
pub mod ideal;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod monomial;
pub mod order;
pub mod poly;
pub mod rational;
pub mod series;
pub mod support;

pub use error::{Error, Result};
pub use monomial::Monomial;
pub use order::TermOrder;
pub use poly::{Family, Polynomial};
pub use rational::Rational;
pub use series::TruncatedSeries;
