//! Exact check of the coefficient system satisfied by a hypergeometric log-series.

use std::fmt;

use crate::lattice::{enumerate_lattice, LatticeBasis, MatrixA};
use crate::monomial::Monomial;
use crate::poly::{apply_operator, Family, Polynomial};
use crate::rational::{int, Rational};
use crate::support::{nsupp, offset};

use super::deform::LogSeries;
use super::operators::p_operator;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ViolationKind {
    /// `(A∂_y)_ν • r_v ≠ 0`.
    Euler,
    /// `p_{v←v'}•r_{v'} − p_{v'←v}•r_v ≠ 0`.
    Toric,
    /// `∂^{J\nsupp(v)} • r_v ≠ 0` for a support `J` outside `N'`.
    Support,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub u: Vec<i64>,
    /// Partner lattice point or offending support, when there is one.
    pub other: Option<Vec<i64>>,
    pub residue: Polynomial,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} at u = {:?}", self.kind, self.u)?;
        if let Some(o) = &self.other {
            write!(f, " with {o:?}")?;
        }
        write!(f, ": residue {}", self.residue.format_with("y"))
    }
}

/// Counts of checked and skipped equations plus every violation found.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub euler_checked: usize,
    pub toric_checked: usize,
    pub support_checked: usize,
    /// Toric equations pairing a stored term with an `N'` term beyond the weight cap.
    pub skipped: usize,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn checked(&self) -> usize {
        self.euler_checked + self.toric_checked + self.support_checked
    }
}

/// Checks every equation of the coefficient system that involves stored terms only.
///
/// `ns` lists all negative supports of the coset; supports outside the series' `N'`
/// give the vanishing conditions.
pub fn verify_series(series: &LogSeries, a: &MatrixA, b: &LatticeBasis, w: &[Rational], ns: &[Vec<usize>]) -> VerificationReport {
    let n = series.nvars();
    let mut rep = VerificationReport::default();
    let zero = Polynomial::zero(Family::Y, n);
    let euler: Vec<Polynomial> = a
        .rows()
        .iter()
        .map(|r| Polynomial::linear(Family::Dy, &r.iter().map(|&x| int(x)).collect::<Vec<_>>(), int(0)))
        .collect();
    let outside: Vec<&Vec<usize>> = ns.iter().filter(|s| !series.support.contains(s)).collect();

    let stored: Vec<(&Vec<i64>, &Polynomial, Vec<Rational>)> =
        series.terms.iter().map(|(u, r)| (u, r, series.exponent(u))).collect();
    for (u, r, x) in &stored {
        for e in &euler {
            rep.euler_checked += 1;
            let res = apply_operator(e, r).expect("operator families match");
            if !res.is_zero() {
                rep.violations.push(Violation { kind: ViolationKind::Euler, u: (*u).clone(), other: None, residue: res });
            }
        }
        let own = nsupp(x);
        for j in &outside {
            rep.support_checked += 1;
            if r.is_zero() {
                continue;
            }
            let diff: Vec<usize> = j.iter().copied().filter(|i| !own.contains(i)).collect();
            let op = Polynomial::monomial(Family::Dy, Monomial::from_set(n, &diff));
            let res = apply_operator(&op, r).expect("operator families match");
            if !res.is_zero() {
                let tag = j.iter().map(|&i| i as i64).collect();
                rep.violations.push(Violation { kind: ViolationKind::Support, u: (*u).clone(), other: Some(tag), residue: res });
            }
        }
    }
    for (k, (u, r, x)) in stored.iter().enumerate() {
        for (u2, r2, x2) in &stored[k + 1..] {
            rep.toric_checked += 1;
            if r.is_zero() && r2.is_zero() {
                continue;
            }
            let back = p_operator(x, x2).expect("lattice translates");
            let fwd = p_operator(x2, x).expect("lattice translates");
            let lhs = if r2.is_zero() { zero.clone() } else { back.apply(r2) };
            let rhs = if r.is_zero() { zero.clone() } else { fwd.apply(r) };
            let res = &lhs - &rhs;
            if !res.is_zero() {
                rep.violations.push(Violation {
                    kind: ViolationKind::Toric,
                    u: (*u).clone(),
                    other: Some((*u2).clone()),
                    residue: res,
                });
            }
        }
    }
    let beyond = enumerate_lattice(b, series.window.radius, None, w)
        .into_iter()
        .filter(|u| !series.terms.contains_key(u) && series.support.contains(&nsupp(&offset(&series.v, u))))
        .count();
    rep.skipped = beyond * stored.len();
    rep
}
