//! Frobenius's method at a minimal weight vector: the operators of the
//! coefficient system, the ideals `P_{N'}`, `Q_{N'}(t)`, `P_{B_{N'}}`, the
//! deformation `F̃`, solution extraction and exact verification.

mod deform;
mod ideals;
mod operators;
mod sufficiency;
mod verify;

pub use deform::{c_unit_series, extract_solution, l_perturb_solution, FrobeniusDeformation, LogSeries, Window};
pub use ideals::{build_ideals, coefficient_dual, FrobeniusIdeals};
pub use operators::{p_operator, q_operator, FactoredOperator};
pub use sufficiency::{sufficiency_check, SufficiencyReport};
pub use verify::{verify_series, VerificationReport, Violation, ViolationKind};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::rational::Rational;
use crate::support::nsupp;

/// A vector `v` together with the supports `N' ⊆ NS` used around it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportChoice {
    pub v: Vec<Rational>,
    /// All negative supports of the coset, sorted.
    pub ns: Vec<Vec<usize>>,
    /// The chosen supports, sorted.
    pub n_prime: Vec<Vec<usize>>,
    /// `K = ∩ N'`.
    pub k: Vec<usize>,
    /// `I₀ = nsupp(v)`.
    pub i0: Vec<usize>,
}

impl SupportChoice {
    /// Validates `N' ⊆ NS` and `N' ≠ ∅`; `I₀ ∈ N'` is not required here.
    pub fn new(v: Vec<Rational>, ns: &[Vec<usize>], n_prime: &[Vec<usize>]) -> Result<Self> {
        let mut ns = ns.to_vec();
        ns.sort();
        ns.dedup();
        let mut np = n_prime.to_vec();
        np.sort();
        np.dedup();
        if np.is_empty() {
            return Err(Error::Argument("N' must be nonempty".into()));
        }
        if let Some(bad) = np.iter().find(|s| !ns.contains(s)) {
            return Err(Error::Argument(format!("support {bad:?} is not a negative support of the coset")));
        }
        let k: Vec<usize> = np[0].iter().copied().filter(|i| np.iter().all(|s| s.contains(i))).collect();
        let i0 = nsupp(&v);
        Ok(SupportChoice { v, ns, n_prime: np, k, i0 })
    }

    pub fn n(&self) -> usize {
        self.v.len()
    }

    /// `NS \ N'`.
    pub fn complement(&self) -> Vec<Vec<usize>> {
        self.ns.iter().filter(|s| !self.n_prime.contains(s)).cloned().collect()
    }

    pub fn contains_i0(&self) -> bool {
        self.n_prime.contains(&self.i0)
    }

    pub(crate) fn require_i0(&self) -> Result<()> {
        if self.contains_i0() {
            Ok(())
        } else {
            Err(Error::Argument(format!("nsupp(v) = {:?} is not in N'", self.i0)))
        }
    }

    /// `I \ K`.
    pub fn minus_k(&self, set: &[usize]) -> Vec<usize> {
        set.iter().copied().filter(|i| !self.k.contains(i)).collect()
    }

    /// `t^{I₀\K}`.
    pub fn m_t(&self) -> Monomial {
        Monomial::from_set(self.n(), &self.minus_k(&self.i0))
    }
}

/// Supports printed 1-based, as in `{1,3}`.
pub fn format_set(s: &[usize]) -> String {
    let inner: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}
