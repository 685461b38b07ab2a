//! The deformation `F̃` as a rule on lattice points, and the extraction of
//! logarithmic series from it by the extended method and by `L`-perturbation.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::apolarity::star;
use crate::error::{Error, Result};
use crate::lattice::{enumerate_lattice, LatticeBasis};
use crate::monomial::Monomial;
use crate::poly::{Family, Polynomial};
use crate::rational::{int, Rational};
use crate::series::TruncatedSeries;
use crate::support::{nsupp, offset};

use super::ideals::FrobeniusIdeals;
use super::SupportChoice;

/// Truncation of the lattice sum: `‖z‖_∞ ≤ radius` in basis coordinates and `w·u ≤ weight_cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub weight_cap: Rational,
    pub radius: i64,
}

/// `Σ_u r_{v+u}(log x) x^{v+u}` over the lattice points of a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogSeries {
    pub v: Vec<Rational>,
    /// Every window point with support in `N'`, including zero coefficients.
    pub terms: BTreeMap<Vec<i64>, Polynomial>,
    pub window: Window,
    pub support: Vec<Vec<usize>>,
}

impl LogSeries {
    pub fn nvars(&self) -> usize {
        self.v.len()
    }

    /// The coefficient of `x^v`.
    pub fn leading(&self) -> Polynomial {
        self.terms.get(&vec![0; self.nvars()]).cloned().unwrap_or_else(|| Polynomial::zero(Family::Y, self.nvars()))
    }

    pub fn nonzero_terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Polynomial)> {
        self.terms.iter().filter(|(_, r)| !r.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|r| r.is_zero())
    }

    pub fn exponent(&self, u: &[i64]) -> Vec<Rational> {
        offset(&self.v, u)
    }
}

/// Product over `j` of univariate series `∏ (t_j + c)^{±1}` to degree `deg`.
fn univariate(num: &[Rational], den: &[Rational], deg: u32) -> Vec<Rational> {
    let len = deg as usize + 1;
    let mut s = vec![Rational::zero(); len];
    s[0] = Rational::one();
    for c in num {
        for k in (0..len).rev() {
            let lower = if k > 0 { s[k - 1].clone() } else { Rational::zero() };
            s[k] = &s[k] * c + lower;
        }
    }
    for c in den {
        // s / (t + c): out_k = (s_k − out_{k−1}) / c.
        let mut out = vec![Rational::zero(); len];
        for k in 0..len {
            let prev = if k > 0 { out[k - 1].clone() } else { Rational::zero() };
            out[k] = (&s[k] - prev) / c;
        }
        s = out;
    }
    s
}

/// `c_u` and the monomial `t^{I_u\(I₀∩K)}` with `t^{I₀\K}·a_u(t) = c_u(t)·t^{I_u\(I₀∩K)}`.
pub fn c_unit_series(choice: &SupportChoice, u: &[i64], deg: u32) -> Result<(TruncatedSeries, Monomial)> {
    let v = &choice.v;
    let n = v.len();
    if u.len() != n {
        return Err(Error::Dimension { expected: n, found: u.len() });
    }
    let mut c = TruncatedSeries::new(Polynomial::one(Family::T, n), deg);
    let mut expo: Vec<i64> = (0..n).map(|j| i64::from(choice.minus_k(&choice.i0).contains(&j))).collect();
    for j in 0..n {
        let (mut num, mut den) = (Vec::new(), Vec::new());
        // [v + t]_{u₋} over [v + t + u]_{u₊}.
        if u[j] < 0 {
            for k in 0..-u[j] {
                num.push(&v[j] - int(k));
            }
        } else {
            for k in 0..u[j] {
                den.push(&v[j] + int(u[j]) - int(k));
            }
        }
        let pure_num = num.iter().filter(|x| x.is_zero()).count() as i64;
        let pure_den = den.iter().filter(|x| x.is_zero()).count() as i64;
        expo[j] += pure_num - pure_den;
        num.retain(|x| !x.is_zero());
        den.retain(|x| !x.is_zero());
        let s = univariate(&num, &den, deg);
        let poly = Polynomial::from_terms(
            Family::T,
            n,
            s.into_iter().enumerate().map(|(k, x)| {
                let mut e = vec![0u32; n];
                e[j] = k as u32;
                (Monomial::new(e), x)
            }),
        );
        c = c.mul(&TruncatedSeries::new(poly, deg));
    }
    let iu = nsupp(&offset(v, u));
    let expected: Vec<i64> =
        (0..n).map(|j| i64::from(iu.contains(&j) && !(choice.i0.contains(&j) && choice.k.contains(&j)))).collect();
    if expo != expected {
        return Err(Error::Internal(format!("a_u for u = {u:?} leaves t-exponent {expo:?}, expected {expected:?}")));
    }
    if c.poly().constant_term().is_zero() {
        return Err(Error::Internal(format!("c_u(0) = 0 for u = {u:?}")));
    }
    let m = Monomial::new(expo.into_iter().map(|x| x as u32).collect());
    Ok((c, m))
}

/// `F̃_{v,N'}` evaluated lazily: lattice point ↦ coefficient series.
#[derive(Clone, Debug)]
pub struct FrobeniusDeformation {
    choice: SupportChoice,
    b: LatticeBasis,
}

impl FrobeniusDeformation {
    pub fn new(choice: &SupportChoice, b: &LatticeBasis) -> Result<Self> {
        if choice.n() != b.n() {
            return Err(Error::Dimension { expected: b.n(), found: choice.n() });
        }
        choice.require_i0()?;
        Ok(FrobeniusDeformation { choice: choice.clone(), b: b.clone() })
    }

    pub fn choice(&self) -> &SupportChoice {
        &self.choice
    }

    /// Lattice points of the window whose support lies in `N'`.
    pub fn points(&self, w: &[Rational], window: &Window) -> Vec<Vec<i64>> {
        let mut pts: Vec<Vec<i64>> = enumerate_lattice(&self.b, window.radius, Some(&window.weight_cap), w)
            .into_iter()
            .filter(|u| self.choice.n_prime.contains(&nsupp(&offset(&self.choice.v, u))))
            .collect();
        pts.sort();
        pts
    }

    /// `c_u(t)·t^{I_u\(I₀∩K)}` to total degree `deg`.
    pub fn extended_term(&self, u: &[i64], deg: u32) -> Result<Polynomial> {
        let (c, m) = c_unit_series(&self.choice, u, deg)?;
        if m.degree() > deg {
            return Ok(Polynomial::zero(Family::T, self.choice.n()));
        }
        Ok(c.poly().truncate(deg - m.degree()).mul_term(&m, &Rational::one()))
    }

    /// `m(s)·a_u(Bs)`, the image of the extended term under `t ↦ Bs`.
    pub fn lattice_term(&self, u: &[i64], deg: u32) -> Result<Polynomial> {
        let g = self.extended_term(u, deg)?;
        let images: Vec<Polynomial> = (0..self.b.n()).map(|j| self.b.row_form(j, Family::S)).collect();
        Ok(g.substitute(&images).truncate(deg))
    }
}

/// `(q(∂)•(g·e^{t·y}))|_{t=0} = Σ_α q_α Σ_{β≤α} α!/(α−β)!·g_β·y^{α−β}`.
pub fn leibniz_extract(q: &Polynomial, g: &Polynomial) -> Polynomial {
    let n = q.nvars();
    let mut out = Polynomial::zero(Family::Y, n);
    for (alpha, qa) in q.terms() {
        for (beta, gb) in g.terms() {
            if let Some(rest) = alpha.div(beta) {
                let k = Rational::from_integer(alpha.factorial()) / Rational::from_integer(rest.factorial());
                out.add_term(rest, qa * gb * k);
            }
        }
    }
    out
}

fn check_perp(q: &Polynomial, gens: &[Polynomial]) -> Result<()> {
    for f in gens {
        if !star(f, q)?.is_zero() {
            return Err(Error::NotInPerp { operator: q.to_string(), generator: f.to_string() });
        }
    }
    Ok(())
}

fn assemble(
    def: &FrobeniusDeformation,
    w: &[Rational],
    window: &Window,
    qs: &[Polynomial],
    term: impl Fn(&[i64], u32) -> Result<Polynomial>,
    finish: impl Fn(Polynomial) -> Polynomial,
) -> Result<Vec<LogSeries>> {
    let deg = qs.iter().filter_map(|q| q.degree()).max().unwrap_or(0);
    let mut out: Vec<LogSeries> = qs
        .iter()
        .map(|_| LogSeries {
            v: def.choice.v.clone(),
            terms: BTreeMap::new(),
            window: window.clone(),
            support: def.choice.n_prime.clone(),
        })
        .collect();
    for u in def.points(w, window) {
        let g = term(&u, deg)?;
        for (q, series) in qs.iter().zip(out.iter_mut()) {
            series.terms.insert(u.clone(), finish(leibniz_extract(q, &g)));
        }
    }
    Ok(out)
}

/// Series `(q(∂_t)•F̃(x,t))|_{t=0}` for each `q ∈ Q_{N'}(t)^⊥`.
pub fn extract_solution(
    b: &LatticeBasis,
    w: &[Rational],
    choice: &SupportChoice,
    ideals: &FrobeniusIdeals,
    qs: &[Polynomial],
    window: &Window,
) -> Result<Vec<LogSeries>> {
    let def = FrobeniusDeformation::new(choice, b)?;
    for q in qs {
        if q.family() != Family::Dt || q.nvars() != choice.n() {
            return Err(Error::Ring(Family::Dt, q.family()));
        }
        check_perp(q, ideals.q_t.generators())?;
    }
    assemble(&def, w, window, qs, |u, d| def.extended_term(u, d), |r| r)
}

/// Series `(q'(∂_s)•F̃(x,s))|_{s=0}` for each `q' ∈ P_{N'}^⊥`, with the
/// logarithms `(log x)·b^{(k)}` expanded in the `n` log-variables.
pub fn l_perturb_solution(
    b: &LatticeBasis,
    w: &[Rational],
    choice: &SupportChoice,
    ideals: &FrobeniusIdeals,
    qs: &[Polynomial],
    window: &Window,
) -> Result<Vec<LogSeries>> {
    let def = FrobeniusDeformation::new(choice, b)?;
    for q in qs {
        if q.family() != Family::Ds || q.nvars() != b.h() {
            return Err(Error::Ring(Family::Ds, q.family()));
        }
        check_perp(q, ideals.p_s.generators())?;
    }
    let logs: Vec<Polynomial> = b
        .columns()
        .iter()
        .map(|col| Polynomial::linear(Family::Y, &col.iter().map(|&x| int(x)).collect::<Vec<_>>(), Rational::zero()))
        .collect();
    assemble(&def, w, window, qs, |u, d| def.lattice_term(u, d), |r| if r.is_zero() {
        Polynomial::zero(Family::Y, b.n())
    } else {
        r.substitute(&logs)
    })
}
