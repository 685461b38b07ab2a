//! The ideals attached to a support choice and the coefficient dual space.

use crate::apolarity::{perp_of_ideal, DualSpace};
use crate::error::Result;
use crate::ideal::{HomogeneousIdeal, MonomialIdeal};
use crate::lattice::{LatticeBasis, MatrixA};
use crate::monomial::Monomial;
use crate::poly::{Family, Polynomial};
use crate::rational::int;

use super::SupportChoice;

/// `P_{N'}`, `P_{N'}(t)`, `Q_{N'}(t)`, `P_{B_{N'}}` over `s` and `t`, and `m`.
#[derive(Clone, Debug)]
pub struct FrobeniusIdeals {
    pub p_s: HomogeneousIdeal,
    pub p_t: MonomialIdeal,
    pub q_t: HomogeneousIdeal,
    pub p_b_s: HomogeneousIdeal,
    pub p_b_t: MonomialIdeal,
    /// `(Bs)^{I₀\K}`.
    pub m_s: Polynomial,
    /// `t^{I₀\K}`.
    pub m_t: Monomial,
}

fn bs_power(b: &LatticeBasis, set: &[usize]) -> Polynomial {
    set.iter().fold(Polynomial::one(Family::S, b.h()), |acc, &i| &acc * &b.row_form(i, Family::S))
}

fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut u: Vec<usize> = a.iter().chain(b).copied().collect();
    u.sort();
    u.dedup();
    u
}

/// The ideals of the support choice `(v, N')`.
pub fn build_ideals(a: &MatrixA, b: &LatticeBasis, choice: &SupportChoice) -> Result<FrobeniusIdeals> {
    let n = choice.n();
    let comp = choice.complement();
    let mut p_sets: Vec<Vec<usize>> = Vec::new();
    for i in &choice.n_prime {
        for j in &comp {
            p_sets.push(choice.minus_k(&union(i, j)));
        }
    }
    let p_t = MonomialIdeal::from_sets(n, &p_sets);
    let p_s_gens = p_t.generators().iter().map(|m| bs_power(b, &m.support())).collect();
    let p_s = HomogeneousIdeal::new(Family::S, b.h(), p_s_gens)?;

    let at: Vec<Polynomial> = a
        .rows()
        .iter()
        .map(|r| Polynomial::linear(Family::T, &r.iter().map(|&x| int(x)).collect::<Vec<_>>(), int(0)))
        .collect();
    let shifts = MonomialIdeal::from_sets(n, &choice.n_prime.iter().map(|i| choice.minus_k(i)).collect::<Vec<_>>());
    let mut q_gens = Vec::new();
    for m in shifts.generators() {
        for f in &at {
            q_gens.push(f.mul_term(m, &int(1)));
        }
    }
    q_gens.extend(p_t.to_polynomials(Family::T));
    let q_t = HomogeneousIdeal::new(Family::T, n, q_gens)?;

    let b_sets: Vec<Vec<usize>> =
        comp.iter().map(|j| j.iter().copied().filter(|x| !choice.i0.contains(x)).collect()).collect();
    let p_b_t = MonomialIdeal::from_sets(n, &b_sets);
    let p_b_s_gens = p_b_t.generators().iter().map(|m| bs_power(b, &m.support())).collect();
    let p_b_s = HomogeneousIdeal::new(Family::S, b.h(), p_b_s_gens)?;

    let rest = choice.minus_k(&choice.i0);
    Ok(FrobeniusIdeals { p_s, p_t, q_t, p_b_s, p_b_t, m_s: bs_power(b, &rest), m_t: choice.m_t() })
}

/// `(Q_{N'}(t) : t^{I₀\K})^⊥` up to `degcap`, the space of `x^v` coefficients.
///
/// A unit colon ideal gives the zero space: `v` starts no series supported in `N'`.
pub fn coefficient_dual(ideals: &FrobeniusIdeals, degcap: u32) -> Result<(HomogeneousIdeal, DualSpace)> {
    let colon = ideals.q_t.colon(&Polynomial::monomial(Family::T, ideals.m_t.clone()))?;
    let dual = perp_of_ideal(&colon, degcap);
    Ok((colon, dual))
}
