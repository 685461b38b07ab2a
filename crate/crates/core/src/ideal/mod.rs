//! Monomial and homogeneous ideals.

mod homogeneous;
mod monomial;

pub use homogeneous::HomogeneousIdeal;
pub use monomial::{MonomialIdeal, StandardPair};
