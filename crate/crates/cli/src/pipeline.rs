//! Drivers behind the `analyze`, `solve`, `verify` and `check-sufficiency` verbs.

use std::str::FromStr;

use gkz_core::apolarity::perp_of_ideal;
use gkz_core::frobenius::{
    build_ideals, coefficient_dual, extract_solution, format_set, l_perturb_solution, sufficiency_check, verify_series,
    LogSeries, SufficiencyReport, SupportChoice, VerificationReport, Window,
};
use gkz_core::ideal::{HomogeneousIdeal, MonomialIdeal};
use gkz_core::linalg::Echelon;
use gkz_core::support::{compute_n_v, fake_exponents, minimality_check, nsupp, support_classes, Certification, FakeExponents, NvStatus, SupportClass};
use gkz_core::{Family, Monomial, Polynomial, Rational, TermOrder};

use crate::config::{Problem, ProblemConfig};
use crate::error::{CliError, CliResult};
use crate::report::*;

/// Which supports form `N'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NPrime {
    /// All of `N_v`.
    Nv,
    /// Only `nsupp(v)`.
    I0,
    /// Explicit zero-based supports.
    Sets(Vec<Vec<usize>>),
}

impl FromStr for NPrime {
    type Err = CliError;

    /// `nv`, `i0`, or 1-based sets separated by `;`, as in `{3};{1,3}`.
    fn from_str(s: &str) -> CliResult<Self> {
        match s.trim() {
            "nv" => return Ok(NPrime::Nv),
            "i0" => return Ok(NPrime::I0),
            _ => {}
        }
        let mut sets = Vec::new();
        for part in s.split(';') {
            let inner = part
                .trim()
                .strip_prefix('{')
                .and_then(|x| x.strip_suffix('}'))
                .ok_or_else(|| CliError::Config(format!("support `{part}` must look like {{1,3}}")))?;
            let mut set = Vec::new();
            for x in inner.split(',').map(str::trim).filter(|x| !x.is_empty()) {
                let i: usize = x.parse().map_err(|_| CliError::Config(format!("bad index `{x}`")))?;
                if i == 0 {
                    return Err(CliError::Config("indices are 1-based".into()));
                }
                set.push(i - 1);
            }
            set.sort();
            set.dedup();
            sets.push(set);
        }
        Ok(NPrime::Sets(sets))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Extended,
    Lattice,
}

impl FromStr for Method {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "extended" => Ok(Method::Extended),
            "lattice" => Ok(Method::Lattice),
            _ => Err(CliError::Config(format!("unknown method `{s}`, expected extended or lattice"))),
        }
    }
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Extended => "extended",
            Method::Lattice => "lattice",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub exponent: Option<Vec<Rational>>,
    pub n_prime: NPrime,
    /// `None` asks for a spanning set of the perp space.
    pub q: Option<String>,
    pub method: Method,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { exponent: None, n_prime: NPrime::Nv, q: None, method: Method::Extended }
    }
}

/// Support analysis around one exponent.
#[derive(Clone, Debug)]
pub struct ExponentData {
    pub v: Vec<Rational>,
    pub classes: Vec<SupportClass>,
    pub status: Vec<NvStatus>,
}

impl ExponentData {
    pub fn ns(&self) -> Vec<Vec<usize>> {
        self.classes.iter().map(|c| c.support.clone()).collect()
    }

    fn pick(&self, f: impl Fn(&SupportClass, NvStatus) -> bool) -> Vec<Vec<usize>> {
        self.classes.iter().zip(&self.status).filter(|(c, s)| f(c, **s)).map(|(c, _)| c.support.clone()).collect()
    }

    pub fn n(&self) -> Vec<Vec<usize>> {
        self.pick(|c, _| c.in_n)
    }

    pub fn n_v(&self) -> Vec<Vec<usize>> {
        self.pick(|_, s| s == NvStatus::In)
    }

    pub fn choice(&self, sel: &NPrime) -> CliResult<SupportChoice> {
        let sets = match sel {
            NPrime::Nv => self.n_v(),
            NPrime::I0 => vec![nsupp(&self.v)],
            NPrime::Sets(s) => s.clone(),
        };
        let c = SupportChoice::new(self.v.clone(), &self.ns(), &sets)?;
        if !c.contains_i0() {
            return Err(CliError::Config(format!("N' must contain nsupp(v) = {}", format_set(&c.i0))));
        }
        Ok(c)
    }
}

pub fn exponent_data(p: &Problem, v: &[Rational]) -> CliResult<ExponentData> {
    let classes = support_classes(v, &p.b, &p.w, p.radius.max(1))?;
    let status = compute_n_v(v, v, &classes, &p.b, &p.w)?;
    Ok(ExponentData { v: v.to_vec(), classes, status })
}

pub fn rat_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn set_strings(sets: &[Vec<usize>]) -> Vec<String> {
    let mut s = sets.to_vec();
    s.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    s.iter().map(|x| format_set(x)).collect()
}

fn ideal_strings(i: &HomogeneousIdeal) -> Vec<String> {
    i.canonical_generators().iter().map(|g| g.to_string()).collect()
}

fn monomial_strings(i: &MonomialIdeal, fam: Family) -> Vec<String> {
    i.to_polynomials(fam).iter().map(|g| g.to_string()).collect()
}

/// Renders a polynomial with its leading term first, as in `dx2*dx3 - dx1*dx4`.
pub fn lead_first(p: &Polynomial, order: &TermOrder) -> String {
    let Some((m, c)) = p.leading_term(order) else { return "0".into() };
    let lead = Polynomial::term(p.family(), m.clone(), c.clone());
    let rest = (p - &lead).to_string();
    match rest.as_str() {
        "0" => lead.to_string(),
        r => match r.strip_prefix('-') {
            Some(r) => format!("{lead} - {r}"),
            None => format!("{lead} + {r}"),
        },
    }
}

pub fn echo(cfg: &ProblemConfig, p: &Problem) -> ProblemEcho {
    ProblemEcho {
        a: cfg.a.clone(),
        beta: rat_strings(&p.beta),
        w: rat_strings(&p.w),
        basis: p.b.columns().to_vec(),
        radius: p.radius,
    }
}

fn certification_name(c: Certification) -> &'static str {
    match c {
        Certification::LpCertified => "lp-certified",
        Certification::RadiusStable => "radius-stable",
        Certification::Uncertified => "uncertified",
    }
}

fn status_name(s: NvStatus) -> &'static str {
    match s {
        NvStatus::In => "in",
        NvStatus::Out => "out",
        NvStatus::Uncertified => "uncertified",
    }
}

pub fn sufficiency_entry(rep: &SufficiencyReport, n1: &SupportChoice, n2: &SupportChoice) -> SufficiencyEntry {
    let suffices = rep.suffices();
    SufficiencyEntry {
        v: rat_strings(&n1.v),
        n_prime: set_strings(&n1.n_prime),
        n_double: set_strings(&n2.n_prime),
        q_colon: ideal_strings(&rep.q_colon),
        phi_q_colon: ideal_strings(&rep.phi_q_colon),
        p_colon: ideal_strings(&rep.p_colon),
        p_b: ideal_strings(&rep.ideals.p_b_s),
        phi_matches: rep.phi_matches,
        p_b_matches: rep.p_b_matches,
        smallest: rep.smallest.as_ref().map(|s| format_set(s)),
        intersection_form: rep.intersection_form,
        square_witness: rep.square_witness.as_ref().map(|s| format_set(s)),
        chain: rep.chain,
        suffices,
        verdict: if suffices { "L-perturbation suffices here" } else { "L-perturbation does not suffice here" }.into(),
    }
}

fn exponent_entry(p: &Problem, fe: &gkz_core::support::FakeExponent) -> CliResult<ExponentEntry> {
    let data = exponent_data(p, &fe.v)?;
    let radius = p.radius.max(1);
    let classes = data
        .classes
        .iter()
        .zip(&data.status)
        .map(|(c, s)| ClassEntry {
            support: format_set(&c.support),
            witness: c.witness.clone(),
            in_n: c.in_n,
            min_weight: c.min_weight.as_ref().map(|x| x.to_string()),
            min_weight_vector: c.min_weight_vector(&fe.v).map(|x| rat_strings(&x)),
            lp_bound: c.lp_bound.as_ref().map(|x| x.to_string()),
            certification: certification_name(c.certified).into(),
            n_v: status_name(*s).into(),
        })
        .collect();
    let i0 = nsupp(&fe.v);
    let mut entry = ExponentEntry {
        v: rat_strings(&fe.v),
        standard_pairs: fe.pairs.iter().map(|x| x.to_string()).collect(),
        class_id: fe.class_id,
        negative_support: format_set(&i0),
        minimal: minimality_check(&fe.v, &p.b, &p.w, radius),
        minimal_at_double_radius: minimality_check(&fe.v, &p.b, &p.w, 2 * radius),
        support_classes: classes,
        n: set_strings(&data.n()),
        n_complement: set_strings(&data.pick(|c, _| !c.in_n)),
        n_v: set_strings(&data.n_v()),
        n_v_complement: set_strings(&data.pick(|_, s| s != NvStatus::In)),
        uncertified: set_strings(&data.pick(|_, s| s == NvStatus::Uncertified)),
        frobenius: None,
        note: None,
    };
    if !data.n_v().contains(&i0) {
        entry.note = Some(format!("nsupp(v) = {} is not certified in N_v; ideals skipped", format_set(&i0)));
        return Ok(entry);
    }
    let choice = data.choice(&NPrime::Nv)?;
    let ids = build_ideals(&p.a, &p.b, &choice)?;
    let (colon, dual) = coefficient_dual(&ids, p.degree_cap)?;
    let suff = sufficiency_check(&p.a, &p.b, &choice, &choice)?;
    entry.frobenius = Some(FrobeniusEntry {
        k: format_set(&choice.k),
        m_t: Polynomial::monomial(Family::T, ids.m_t.clone()).to_string(),
        m_s: ids.m_s.to_string(),
        p_t: monomial_strings(&ids.p_t, Family::T),
        p_s: ideal_strings(&ids.p_s),
        q_t: ideal_strings(&ids.q_t),
        p_b_t: monomial_strings(&ids.p_b_t, Family::T),
        p_b_s: ideal_strings(&ids.p_b_s),
        colon: ideal_strings(&colon),
        dual_basis: dual.basis().iter().map(|q| q.to_string()).collect(),
        dual_dim: dual.dim(),
        dual_complete: dual.is_complete(),
        sufficiency: sufficiency_entry(&suff, &choice, &choice),
    });
    Ok(entry)
}

pub fn run_analyze(cfg: &ProblemConfig) -> CliResult<AnalyzeReport> {
    let p = cfg.resolve()?;
    let fe = fake_exponents(&p.a, &p.beta, &p.w, &p.b)?;
    let mut gb: Vec<String> = fe.gb.elements().iter().map(|g| lead_first(g, fe.gb.order())).collect();
    gb.sort();
    let pairs = |v: &[gkz_core::ideal::StandardPair]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let exponents = fe.exponents.iter().map(|e| exponent_entry(&p, e)).collect::<CliResult<Vec<_>>>()?;
    Ok(AnalyzeReport {
        problem: echo(cfg, &p),
        groebner_basis: gb,
        initial_ideal: monomial_strings(&fe.initial, Family::Dx),
        standard_pairs: pairs(&fe.pairs),
        unsolvable_pairs: pairs(&fe.unsolvable),
        ambiguous_pairs: pairs(&fe.ambiguous),
        fake_exponents: exponents,
    })
}

fn select_exponent(p: &Problem, fe: &FakeExponents, wanted: Option<&Vec<Rational>>) -> CliResult<Vec<Rational>> {
    let v = match wanted.or(p.exponent.as_ref()) {
        Some(v) => v.clone(),
        None => fe.exponents.first().map(|e| e.v.clone()).ok_or_else(|| CliError::Config("there are no fake exponents".into()))?,
    };
    if !fe.exponents.iter().any(|e| e.v == v) {
        return Err(CliError::Config(format!("({}) is not a fake exponent", rat_strings(&v).join(", "))));
    }
    Ok(v)
}

/// Dimension of the span of arbitrary polynomials.
fn span_dim(polys: &[Polynomial]) -> usize {
    let mut monos: Vec<Monomial> = polys.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
    monos.sort();
    monos.dedup();
    let mut e = Echelon::new(monos.len());
    for p in polys {
        e.insert(&p.coefficient_vector(&monos));
    }
    e.rank()
}

fn verification_entry(v: &VerificationReport) -> VerificationEntry {
    VerificationEntry {
        euler_checked: v.euler_checked,
        toric_checked: v.toric_checked,
        support_checked: v.support_checked,
        skipped: v.skipped,
        violations: v.violations.iter().map(|x| x.to_string()).collect(),
        ok: v.is_ok(),
    }
}

/// Series and their verification reports, before rendering.
pub struct Solved {
    pub problem: Problem,
    pub choice: SupportChoice,
    pub qs: Vec<Polynomial>,
    pub series: Vec<LogSeries>,
    pub reports: Vec<VerificationReport>,
    pub dual_dim: usize,
}

pub fn solve(cfg: &ProblemConfig, opts: &SolveOptions) -> CliResult<Solved> {
    let p = cfg.resolve()?;
    let fe = fake_exponents(&p.a, &p.beta, &p.w, &p.b)?;
    let v = select_exponent(&p, &fe, opts.exponent.as_ref())?;
    let data = exponent_data(&p, &v)?;
    let choice = data.choice(&opts.n_prime)?;
    let ids = build_ideals(&p.a, &p.b, &choice)?;
    let window = Window { weight_cap: p.weight_cap.clone(), radius: p.radius };
    let (qs, series, dual_dim) = match opts.method {
        Method::Extended => {
            let (_, dual) = coefficient_dual(&ids, p.degree_cap)?;
            let qs = match &opts.q {
                Some(s) => vec![Polynomial::parse(s, Family::Dt, p.a.n())?],
                None => perp_of_ideal(&ids.q_t, p.degree_cap).basis().to_vec(),
            };
            let series = extract_solution(&p.b, &p.w, &choice, &ids, &qs, &window)?;
            (qs, series, dual.dim())
        }
        Method::Lattice => {
            let colon = ids.p_s.colon(&ids.m_s)?;
            let qs = match &opts.q {
                Some(s) => vec![Polynomial::parse(s, Family::Ds, p.b.h())?],
                None => perp_of_ideal(&ids.p_s, p.degree_cap).basis().to_vec(),
            };
            let series = l_perturb_solution(&p.b, &p.w, &choice, &ids, &qs, &window)?;
            (qs, series, perp_of_ideal(&colon, p.degree_cap).dim())
        }
    };
    let ns = choice.ns.clone();
    let reports = series.iter().map(|s| verify_series(s, &p.a, &p.b, &p.w, &ns)).collect();
    Ok(Solved { problem: p, choice, qs, series, reports, dual_dim })
}

pub fn render_solved(cfg: &ProblemConfig, s: &Solved, method: Method, q_given: bool) -> SolveReport {
    let leading: Vec<Polynomial> = s.series.iter().map(|x| x.leading()).collect();
    let series = s
        .series
        .iter()
        .zip(&s.qs)
        .zip(&s.reports)
        .map(|((x, q), r)| SeriesEntry {
            q: q.to_string(),
            leading: x.leading().to_string(),
            stored_terms: x.terms.len(),
            terms: x
                .nonzero_terms()
                .map(|(u, c)| TermEntry { u: u.clone(), exponent: rat_strings(&x.exponent(u)), coefficient: c.to_string() })
                .collect(),
            verification: verification_entry(r),
        })
        .collect();
    SolveReport {
        problem: echo(cfg, &s.problem),
        v: rat_strings(&s.choice.v),
        method: method.name().into(),
        n_prime: set_strings(&s.choice.n_prime),
        weight_cap: s.problem.weight_cap.to_string(),
        q_source: if q_given { "given" } else { "spanning" }.into(),
        dual_dim: s.dual_dim,
        leading_span_dim: span_dim(&leading),
        series,
        all_verified: s.reports.iter().all(|r| r.is_ok()),
    }
}

pub fn run_solve(cfg: &ProblemConfig, opts: &SolveOptions) -> CliResult<SolveReport> {
    let s = solve(cfg, opts)?;
    Ok(render_solved(cfg, &s, opts.method, opts.q.is_some()))
}

pub fn run_check_sufficiency(cfg: &ProblemConfig, exponent: Option<&Vec<Rational>>, n1: &NPrime, n2: &NPrime) -> CliResult<SufficiencyEntry> {
    let p = cfg.resolve()?;
    let fe = fake_exponents(&p.a, &p.beta, &p.w, &p.b)?;
    let v = select_exponent(&p, &fe, exponent)?;
    let data = exponent_data(&p, &v)?;
    let c1 = data.choice(n1)?;
    let c2 = data.choice(n2)?;
    let nv = data.n_v();
    if let Some(bad) = c2.n_prime.iter().find(|s| !nv.contains(s)) {
        return Err(CliError::Config(format!("N'' must lie in N_v, but {} does not", format_set(bad))));
    }
    let rep = sufficiency_check(&p.a, &p.b, &c1, &c2)?;
    Ok(sufficiency_entry(&rep, &c1, &c2))
}
