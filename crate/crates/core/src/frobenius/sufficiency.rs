//! Criteria for `L`-perturbation to produce every series of the extended method.

use crate::apolarity::TransportMaps;
use crate::error::{Error, Result};
use crate::ideal::HomogeneousIdeal;
use crate::lattice::{LatticeBasis, MatrixA};
use crate::monomial::Monomial;
use crate::poly::{Family, Polynomial};

use super::ideals::{build_ideals, FrobeniusIdeals};
use super::SupportChoice;

/// Outcome of the sufficiency criteria for `I₀ ∈ N' ⊆ N''`.
#[derive(Clone, Debug)]
pub struct SufficiencyReport {
    pub ideals: FrobeniusIdeals,
    /// `Q_{N'}(t) : t^{I₀\K}`.
    pub q_colon: HomogeneousIdeal,
    /// `Φ(Q_{N'}(t) : t^{I₀\K})`.
    pub phi_q_colon: HomogeneousIdeal,
    /// `P_{N'} : m`.
    pub p_colon: HomogeneousIdeal,
    /// (a) `Φ(Q : t^{I₀\K}) = P : m`.
    pub phi_matches: bool,
    /// (b) `P : m = P_{B_{N'}}`.
    pub p_b_matches: bool,
    /// (c) the smallest element of `N'`, if any.
    pub smallest: Option<Vec<usize>>,
    /// (d) `Q : t^{I₀\K} = (⟨At⟩ ∩ ⟨t^{I\K}⟩ + P_{N'}(t)) : t^{I₀\K}`.
    pub intersection_form: bool,
    /// (e) a support `I ∈ N'` with `Q : t^{I₀\K}t^{I\K} = Q : t^{I₀\K}`.
    pub square_witness: Option<Vec<usize>>,
    /// (f) `P_{N''} : m'' = P_{B_{N''}}`, so series on `N'` come from `L`-perturbation on `N''`.
    pub chain: bool,
}

impl SufficiencyReport {
    /// `L`-perturbation reaches every `x^v` coefficient of the extended method.
    pub fn suffices(&self) -> bool {
        self.phi_matches
    }
}

fn colon_mono(i: &HomogeneousIdeal, m: &Monomial) -> Result<HomogeneousIdeal> {
    i.colon(&Polynomial::monomial(i.family(), m.clone()))
}

fn p_b_holds(a: &MatrixA, b: &LatticeBasis, choice: &SupportChoice) -> Result<(FrobeniusIdeals, HomogeneousIdeal, bool)> {
    let ids = build_ideals(a, b, choice)?;
    let p_colon = ids.p_s.colon(&ids.m_s)?;
    let holds = p_colon.equals(&ids.p_b_s);
    Ok((ids, p_colon, holds))
}

/// Runs criteria (a)–(f). Implications between them are re-checked and a
/// contradiction is reported as an internal error.
pub fn sufficiency_check(a: &MatrixA, b: &LatticeBasis, n1: &SupportChoice, n2: &SupportChoice) -> Result<SufficiencyReport> {
    n1.require_i0()?;
    if n1.v != n2.v || n1.ns != n2.ns {
        return Err(Error::Argument("both support choices must share v and NS".into()));
    }
    if let Some(bad) = n1.n_prime.iter().find(|s| !n2.n_prime.contains(s)) {
        return Err(Error::Argument(format!("support {bad:?} of N' is missing from N''")));
    }
    let maps = TransportMaps::new(a, b);
    let (ids, p_colon, p_b_matches) = p_b_holds(a, b, n1)?;
    let q_colon = colon_mono(&ids.q_t, &ids.m_t)?;
    let phi_q_colon = maps.phi_ideal(&q_colon)?;
    let phi_matches = phi_q_colon.equals(&p_colon);

    let smallest = n1.n_prime.iter().find(|i| n1.n_prime.iter().all(|j| i.iter().all(|x| j.contains(x)))).cloned();

    let n = n1.n();
    let shifts = HomogeneousIdeal::new(
        Family::T,
        n,
        n1.n_prime.iter().map(|i| Polynomial::monomial(Family::T, Monomial::from_set(n, &n1.minus_k(i)))).collect(),
    )?;
    let at = HomogeneousIdeal::new(Family::T, n, maps.at_forms())?;
    let p_t = HomogeneousIdeal::from_monomial(&ids.p_t, Family::T);
    let cap_form = colon_mono(&at.intersect(&shifts).sum(&p_t), &ids.m_t)?;
    let intersection_form = q_colon.equals(&cap_form);
    let lifted = maps.phi_inverse(&p_colon)?;
    if !lifted.equals(&cap_form) {
        return Err(Error::Internal("Φ⁻¹(P : m) differs from the intersection form".into()));
    }

    let mut square_witness = None;
    for i in &n1.n_prime {
        let m = ids.m_t.mul(&Monomial::from_set(n, &n1.minus_k(i)));
        if colon_mono(&ids.q_t, &m)?.equals(&q_colon) {
            square_witness = Some(i.clone());
            break;
        }
    }
    let chain = if n1 == n2 { p_b_matches } else { p_b_holds(a, b, n2)?.2 };

    if (p_b_matches || intersection_form || square_witness.is_some()) && !phi_matches {
        return Err(Error::Internal("a sufficient criterion holds but Φ(Q : t^{I₀\\K}) ≠ P : m".into()));
    }
    Ok(SufficiencyReport {
        ideals: ids,
        q_colon,
        phi_q_colon,
        p_colon,
        phi_matches,
        p_b_matches,
        smallest,
        intersection_form,
        square_witness,
        chain,
    })
}
