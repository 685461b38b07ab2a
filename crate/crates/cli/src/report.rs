//! Report trees. Every number is an exact string and every list has a fixed order,
//! so the structured form is byte-stable across runs.

use std::fmt::Write;

use serde::Serialize;

pub const FORMAT: &str = "gkz-report v1";

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Analyze(AnalyzeReport),
    Solve(SolveReport),
    Verify(SolveReport),
    CheckSufficiency(SufficiencyEntry),
    Search(SearchReport),
    Selftest(SelftestReport),
}

#[derive(Clone, Debug, Serialize)]
pub struct Envelope<'a> {
    pub format: &'static str,
    #[serde(flatten)]
    pub report: &'a Report,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ProblemEcho {
    #[serde(rename = "A")]
    pub a: Vec<Vec<i64>>,
    pub beta: Vec<String>,
    pub w: Vec<String>,
    pub basis: Vec<Vec<i64>>,
    pub radius: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalyzeReport {
    pub problem: ProblemEcho,
    pub groebner_basis: Vec<String>,
    pub initial_ideal: Vec<String>,
    pub standard_pairs: Vec<String>,
    pub unsolvable_pairs: Vec<String>,
    pub ambiguous_pairs: Vec<String>,
    pub fake_exponents: Vec<ExponentEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExponentEntry {
    pub v: Vec<String>,
    pub standard_pairs: Vec<String>,
    pub class_id: usize,
    pub negative_support: String,
    pub minimal: bool,
    pub minimal_at_double_radius: bool,
    pub support_classes: Vec<ClassEntry>,
    pub n: Vec<String>,
    pub n_complement: Vec<String>,
    pub n_v: Vec<String>,
    pub n_v_complement: Vec<String>,
    pub uncertified: Vec<String>,
    pub frobenius: Option<FrobeniusEntry>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassEntry {
    pub support: String,
    pub witness: Vec<i64>,
    pub in_n: bool,
    pub min_weight: Option<String>,
    pub min_weight_vector: Option<Vec<String>>,
    pub lp_bound: Option<String>,
    pub certification: String,
    pub n_v: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FrobeniusEntry {
    pub k: String,
    pub m_t: String,
    pub m_s: String,
    pub p_t: Vec<String>,
    pub p_s: Vec<String>,
    pub q_t: Vec<String>,
    pub p_b_t: Vec<String>,
    pub p_b_s: Vec<String>,
    pub colon: Vec<String>,
    pub dual_basis: Vec<String>,
    pub dual_dim: usize,
    pub dual_complete: bool,
    pub sufficiency: SufficiencyEntry,
}

#[derive(Clone, Debug, Serialize)]
pub struct SufficiencyEntry {
    pub v: Vec<String>,
    pub n_prime: Vec<String>,
    pub n_double: Vec<String>,
    pub q_colon: Vec<String>,
    pub phi_q_colon: Vec<String>,
    pub p_colon: Vec<String>,
    pub p_b: Vec<String>,
    pub phi_matches: bool,
    pub p_b_matches: bool,
    pub smallest: Option<String>,
    pub intersection_form: bool,
    pub square_witness: Option<String>,
    pub chain: bool,
    pub suffices: bool,
    pub verdict: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub problem: ProblemEcho,
    pub v: Vec<String>,
    pub method: String,
    pub n_prime: Vec<String>,
    pub weight_cap: String,
    pub q_source: String,
    pub dual_dim: usize,
    pub leading_span_dim: usize,
    pub series: Vec<SeriesEntry>,
    pub all_verified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesEntry {
    pub q: String,
    pub leading: String,
    pub stored_terms: usize,
    pub terms: Vec<TermEntry>,
    pub verification: VerificationEntry,
}

#[derive(Clone, Debug, Serialize)]
pub struct TermEntry {
    pub u: Vec<i64>,
    pub exponent: Vec<String>,
    pub coefficient: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationEntry {
    pub euler_checked: usize,
    pub toric_checked: usize,
    pub support_checked: usize,
    pub skipped: usize,
    pub violations: Vec<String>,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SearchBounds {
    pub d_min: usize,
    pub d_max: usize,
    pub n_max: usize,
    pub entry_max: i64,
    pub beta_max: i64,
    pub radius: i64,
    pub count: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub seed: u64,
    pub bounds: SearchBounds,
    pub instances: usize,
    pub exponents_checked: usize,
    pub skipped: Vec<SkipEntry>,
    pub counterexamples: Vec<Counterexample>,
    pub summary: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SkipEntry {
    pub index: usize,
    pub reason: String,
    /// Set when the instance hit a broken internal invariant rather than a rejected input.
    pub internal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub index: usize,
    pub v: Vec<String>,
    pub config: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub properties: Vec<PropertyEntry>,
    pub all_passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyEntry {
    pub name: String,
    pub checks: usize,
    pub failures: usize,
    pub counterexample: Option<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&Envelope { format: FORMAT, report: self }).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Analyze(r) => analyze_text(&mut out, r),
            Report::Solve(r) | Report::Verify(r) => solve_text(&mut out, r),
            Report::CheckSufficiency(r) => sufficiency_text(&mut out, r, ""),
            Report::Search(r) => search_text(&mut out, r),
            Report::Selftest(r) => selftest_text(&mut out, r),
        }
        out
    }
}

fn vec_text(v: &[String]) -> String {
    format!("({})", v.join(", "))
}

fn list(out: &mut String, indent: &str, label: &str, items: &[String]) {
    let _ = writeln!(out, "{indent}{label}: {}", if items.is_empty() { "(none)".to_string() } else { items.join(", ") });
}

fn analyze_text(out: &mut String, r: &AnalyzeReport) {
    let _ = writeln!(out, "Gröbner basis ({} elements):", r.groebner_basis.len());
    for g in &r.groebner_basis {
        let _ = writeln!(out, "  {g}");
    }
    list(out, "", "initial ideal", &r.initial_ideal);
    list(out, "", "standard pairs", &r.standard_pairs);
    if !r.unsolvable_pairs.is_empty() {
        list(out, "", "pairs without exponent", &r.unsolvable_pairs);
    }
    if !r.ambiguous_pairs.is_empty() {
        list(out, "", "pairs with a positive-dimensional solution set", &r.ambiguous_pairs);
    }
    for e in &r.fake_exponents {
        let _ = writeln!(out, "\nfake exponent v = {} (class {}, nsupp {})", vec_text(&e.v), e.class_id, e.negative_support);
        list(out, "  ", "standard pairs", &e.standard_pairs);
        let _ = writeln!(out, "  minimal: {} (double radius: {})", e.minimal, e.minimal_at_double_radius);
        list(out, "  ", "N", &e.n);
        list(out, "  ", "NS \\ N", &e.n_complement);
        list(out, "  ", "N_v", &e.n_v);
        list(out, "  ", "NS \\ N_v", &e.n_v_complement);
        if !e.uncertified.is_empty() {
            list(out, "  ", "uncertified", &e.uncertified);
        }
        if let Some(f) = &e.frobenius {
            let _ = writeln!(out, "  K = {}, m(t) = {}, m(s) = {}", f.k, f.m_t, f.m_s);
            list(out, "  ", "P(t)", &f.p_t);
            list(out, "  ", "P(s)", &f.p_s);
            list(out, "  ", "Q(t)", &f.q_t);
            list(out, "  ", "P_B(t)", &f.p_b_t);
            list(out, "  ", "P_B(s)", &f.p_b_s);
            list(out, "  ", "Q(t) : m", &f.colon);
            let _ = writeln!(
                out,
                "  dual ({}dim {}): {}",
                if f.dual_complete { "" } else { "truncated, " },
                f.dual_dim,
                f.dual_basis.join(", ")
            );
            sufficiency_text(out, &f.sufficiency, "  ");
        }
        if let Some(n) = &e.note {
            let _ = writeln!(out, "  note: {n}");
        }
    }
}

fn sufficiency_text(out: &mut String, r: &SufficiencyEntry, indent: &str) {
    list(out, indent, "P : m", &r.p_colon);
    list(out, indent, "Phi(Q(t) : m)", &r.phi_q_colon);
    let _ = writeln!(
        out,
        "{indent}Phi match {}, P_B match {}, smallest {}, intersection form {}, square witness {}, chain {}",
        r.phi_matches,
        r.p_b_matches,
        r.smallest.as_deref().unwrap_or("none"),
        r.intersection_form,
        r.square_witness.as_deref().unwrap_or("none"),
        r.chain
    );
    let _ = writeln!(out, "{indent}{}", r.verdict);
}

fn solve_text(out: &mut String, r: &SolveReport) {
    let _ = writeln!(out, "v = {}, method {}, N' = {}", vec_text(&r.v), r.method, r.n_prime.join(", "));
    let _ = writeln!(out, "weight cap {}, q from {}, dual dim {}, leading span dim {}", r.weight_cap, r.q_source, r.dual_dim, r.leading_span_dim);
    for (k, s) in r.series.iter().enumerate() {
        let _ = writeln!(out, "\nseries {} for q = {}: {} nonzero of {} stored terms", k + 1, s.q, s.terms.len(), s.stored_terms);
        for t in &s.terms {
            let _ = writeln!(out, "  x^{} : {}", vec_text(&t.exponent), t.coefficient);
        }
        let v = &s.verification;
        let _ = writeln!(
            out,
            "  checked {} Euler, {} toric, {} support; skipped {}; {}",
            v.euler_checked,
            v.toric_checked,
            v.support_checked,
            v.skipped,
            if v.ok { "no violations".to_string() } else { format!("{} violations", v.violations.len()) }
        );
        for x in &v.violations {
            let _ = writeln!(out, "  violation: {x}");
        }
    }
    let _ = writeln!(out, "\nall verified: {}", r.all_verified);
}

fn search_text(out: &mut String, r: &SearchReport) {
    let _ = writeln!(out, "seed {}, {} instances, {} exponents checked", r.seed, r.instances, r.exponents_checked);
    for s in &r.skipped {
        let _ = writeln!(out, "  instance {} skipped: {}", s.index, s.reason);
    }
    for c in &r.counterexamples {
        let _ = writeln!(out, "counterexample at instance {}, v = {}:\n{}", c.index, vec_text(&c.v), c.config);
    }
    let _ = writeln!(out, "{}", r.summary);
}

fn selftest_text(out: &mut String, r: &SelftestReport) {
    for p in &r.properties {
        let status = if p.failures == 0 { "pass" } else { "FAIL" };
        let _ = writeln!(out, "{status} {} ({} checks, {} failures)", p.name, p.checks, p.failures);
        if let Some(c) = &p.counterexample {
            let _ = writeln!(out, "  counterexample: {c}");
        }
    }
    let _ = writeln!(out, "{}", if r.all_passed { "all properties passed" } else { "some properties failed" });
}
