//! The transfer operators `p_{v'←v}` and the weights `q_i` in `ℚ[∂_y]`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::{Family, Polynomial};
use crate::rational::{int, is_integer, to_i64, Rational};
use crate::support::nsupp;

/// A product of linear factors `∂_{y_ν} + c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredOperator {
    nvars: usize,
    /// `(ν, c)` sorted by `ν`, then `c`.
    factors: Vec<(usize, Rational)>,
}

impl FactoredOperator {
    fn new(nvars: usize, mut factors: Vec<(usize, Rational)>) -> Self {
        factors.sort();
        FactoredOperator { nvars, factors }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn factors(&self) -> &[(usize, Rational)] {
        &self.factors
    }

    /// Indices `ν` with a bare factor `∂_{y_ν}`, sorted.
    pub fn monomial_part(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.factors.iter().filter(|(_, c)| c.is_zero()).map(|(j, _)| *j).collect();
        out.dedup();
        out
    }

    /// True iff no factor vanishes at the origin.
    pub fn is_unit(&self) -> bool {
        self.factors.iter().all(|(_, c)| !c.is_zero())
    }

    /// The product of the factors with nonzero constant.
    pub fn unit_part(&self) -> Polynomial {
        self.product(|c| !c.is_zero())
    }

    pub fn to_polynomial(&self) -> Polynomial {
        self.product(|_| true)
    }

    fn product(&self, keep: impl Fn(&Rational) -> bool) -> Polynomial {
        let n = self.nvars;
        let mut acc = Polynomial::one(Family::Dy, n);
        for (j, c) in self.factors.iter().filter(|(_, c)| keep(c)) {
            let mut f = Polynomial::var(Family::Dy, n, *j);
            f.add_term(Monomial::one(n), c.clone());
            acc = &acc * &f;
        }
        acc
    }

    /// Applies the factors one at a time, which keeps intermediate degrees at most `deg r`.
    pub fn apply(&self, r: &Polynomial) -> Polynomial {
        let n = self.nvars;
        let mut acc = r.clone();
        for (j, c) in &self.factors {
            if acc.is_zero() {
                break;
            }
            let mut next = acc.derivative(*j);
            next = &next + &acc.scale(c);
            acc = next;
        }
        debug_assert_eq!(acc.nvars(), n);
        acc
    }

    /// True iff the two factor multisets share no factor.
    pub fn is_coprime_to(&self, other: &FactoredOperator) -> bool {
        self.factors.iter().all(|f| !other.factors.contains(f))
    }
}

fn integer_difference(a: &[Rational], b: &[Rational]) -> Result<Vec<i64>> {
    if a.len() != b.len() {
        return Err(Error::Dimension { expected: a.len(), found: b.len() });
    }
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = x - y;
            if is_integer(&d) { to_i64(&d) } else { None }
        })
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Argument("vectors do not differ by an integer vector".into()))
}

/// `p_{target←source} = ∏_ν ∏_{μ=1}^{source_ν − target_ν} (∂_{y_ν} + source_ν − μ + 1)`.
pub fn p_operator(target: &[Rational], source: &[Rational]) -> Result<FactoredOperator> {
    let diff = integer_difference(source, target)?;
    let mut factors = Vec::new();
    for (nu, &k) in diff.iter().enumerate() {
        for mu in 1..=k {
            factors.push((nu, &source[nu] - int(mu) + int(1)));
        }
    }
    Ok(FactoredOperator::new(source.len(), factors))
}

/// `q_i = ∏_ν ∏_{μ=1}^{max_λ (v^{(λ)}_ν − v^{(i)}_ν)} (∂_{y_ν} + v^{(i)}_ν + μ)`.
///
/// The vectors must pairwise differ by integer vectors. The bare part is
/// checked against `∂^{I_i \ K}` with `K` the common negative support.
pub fn q_operator(i: usize, vectors: &[Vec<Rational>]) -> Result<FactoredOperator> {
    let vi = vectors.get(i).ok_or_else(|| Error::Argument(format!("no vector with index {i}")))?;
    let n = vi.len();
    let diffs: Vec<Vec<i64>> = vectors.iter().map(|v| integer_difference(v, vi)).collect::<Result<_>>()?;
    let mut factors = Vec::new();
    for nu in 0..n {
        let top = diffs.iter().map(|d| d[nu]).max().unwrap_or(0);
        for mu in 1..=top {
            factors.push((nu, &vi[nu] + int(mu)));
        }
    }
    let q = FactoredOperator::new(n, factors);
    let supports: Vec<Vec<usize>> = vectors.iter().map(|v| nsupp(v)).collect();
    let expected: Vec<usize> = supports[i].iter().copied().filter(|j| !supports.iter().all(|s| s.contains(j))).collect();
    if q.monomial_part() != expected {
        return Err(Error::Internal(format!("q_{i} has bare part {:?}, expected {:?}", q.monomial_part(), expected)));
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn dy(s: &str) -> Polynomial {
        Polynomial::parse(s, Family::Dy, 4).unwrap()
    }

    #[test]
    fn identity_operator() {
        let v = ints(&[0, 0, -1, 1]);
        let p = p_operator(&v, &v).unwrap();
        assert!(p.factors().is_empty());
        assert_eq!(p.to_polynomial(), Polynomial::one(Family::Dy, 4));
    }

    #[test]
    fn example_one_pair() {
        let v = ints(&[0, 0, -1, 1]);
        let vp = ints(&[-1, 1, 0, 0]);
        let fwd = p_operator(&vp, &v).unwrap();
        assert_eq!(fwd.to_polynomial(), dy("dy1*dy4 + dy1"));
        assert_eq!(fwd.monomial_part(), vec![0]);
        let back = p_operator(&v, &vp).unwrap();
        assert_eq!(back.to_polynomial(), dy("dy2*dy3 + dy3"));
        assert_eq!(back.monomial_part(), vec![2]);
        assert!(fwd.is_coprime_to(&back));
        assert!(!fwd.is_unit());
    }

    #[test]
    fn non_integer_difference_rejected() {
        let v = ints(&[0, 0, -1, 1]);
        let h = vec![rat(-1, 2), int(0), rat(1, 2), int(0)];
        assert!(matches!(p_operator(&h, &v), Err(Error::Argument(_))));
    }

    #[test]
    fn q_single_vector_is_one() {
        let q = q_operator(0, &[ints(&[0, 0, -1, 1])]).unwrap();
        assert_eq!(q.to_polynomial(), Polynomial::one(Family::Dy, 4));
    }

    #[test]
    fn example_one_q_and_cross_identity() {
        let vs = vec![ints(&[0, 0, -1, 1]), ints(&[-1, 1, 0, 0])];
        let q0 = q_operator(0, &vs).unwrap();
        let q1 = q_operator(1, &vs).unwrap();
        assert_eq!(q0.monomial_part(), vec![2]);
        assert_eq!(q1.monomial_part(), vec![0]);
        let p10 = p_operator(&vs[1], &vs[0]).unwrap().to_polynomial();
        let p01 = p_operator(&vs[0], &vs[1]).unwrap().to_polynomial();
        assert_eq!(&p10 * &q0.to_polynomial(), &p01 * &q1.to_polynomial());
    }

    #[test]
    fn factorwise_application() {
        let p = p_operator(&ints(&[-2, 1, 1, 0]), &ints(&[0, 0, -1, 1])).unwrap();
        let r = Polynomial::parse("y1^2*y4 - 3*y2 + y3*y4 + 2", Family::Y, 4).unwrap();
        let direct = crate::poly::apply_operator(&p.to_polynomial(), &r).unwrap();
        assert_eq!(p.apply(&r), direct);
    }
}
