//! End-to-end acceptance checks on the two fixtures and the property suites.
//! Prints one pass/fail line per criterion and exits nonzero if any fails.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use gkz_cli::pipeline::{run_analyze, run_solve, solve, Method, SolveOptions};
use gkz_cli::report::{AnalyzeReport, ExponentEntry};
use gkz_cli::selftest::{
    fixture_families, suite_adjointness, suite_colon_perp, suite_double_perp, suite_minimality, suite_operators,
    suite_perp_criteria, suite_perp_oracle, suite_toric, Tally, FIXTURES,
};
use gkz_cli::ProblemConfig;
use gkz_core::apolarity::{star, TransportMaps};
use gkz_core::frobenius::verify_series;
use gkz_core::groebner::toric_groebner;
use gkz_core::ideal::HomogeneousIdeal;
use gkz_core::rational::{int, rat};
use gkz_core::{Family, Monomial, Polynomial, Rational};

const SEED: u64 = 0;

fn fixture(name: &str) -> ProblemConfig {
    let text = FIXTURES.iter().find(|(n, _)| *n == name).expect("known fixture").1;
    ProblemConfig::parse(text).expect("fixture parses")
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn owned(items: &[String]) -> BTreeSet<String> {
    items.iter().cloned().collect()
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

fn exponent<'a>(r: &'a AnalyzeReport, v: &[Rational]) -> &'a ExponentEntry {
    let want = strings(v);
    r.fake_exponents.iter().find(|e| e.v == want).unwrap_or_else(|| panic!("no exponent {want:?}"))
}

fn clean(t: Tally, name: &str, min_checks: usize) {
    assert_eq!(t.failures, 0, "{name}: {:?}", t.counterexample);
    assert!(t.checks >= min_checks, "{name}: only {} checks", t.checks);
}

fn groebner_ex71() {
    let start = Instant::now();
    let r = run_analyze(&fixture("ex71")).expect("analyze");
    let elapsed = start.elapsed();
    let want = set(&["dx2*dx3 - dx1*dx4", "dx1*dx4^2 - dx3^3", "dx2^2 - dx1*dx3", "dx2*dx4 - dx3^2"]);
    assert_eq!(owned(&r.groebner_basis), want);
    let p = fixture("ex71").resolve().expect("resolve");
    let gb = toric_groebner(&p.a, &p.b, &p.w).expect("basis");
    for g in gb.elements() {
        let (_, c) = g.leading_term(gb.order()).expect("nonzero");
        assert_eq!(*c, int(1), "{g} is not monic");
    }
    assert!(elapsed < Duration::from_secs(1), "analyze took {elapsed:?}");
}

fn pairs_ex71() {
    let r = run_analyze(&fixture("ex71")).expect("analyze");
    assert_eq!(owned(&r.initial_ideal), set(&["dx2*dx3", "dx1*dx4^2", "dx2^2", "dx2*dx4"]));
    assert_eq!(owned(&r.standard_pairs), set(&["(0,0,*,*)", "(*,0,*,0)", "(*,0,*,1)", "(*,1,0,0)"]));
}

fn exponents_ex71() {
    let r = run_analyze(&fixture("ex71")).expect("analyze");
    let half = vec![rat(-1, 2), int(0), rat(1, 2), int(0)];
    let v = ints(&[0, 0, -1, 1]);
    let v1 = ints(&[-1, 1, 0, 0]);
    let got: BTreeSet<Vec<String>> = r.fake_exponents.iter().map(|e| e.v.clone()).collect();
    assert_eq!(got, [&half, &v, &v1].iter().map(|x| strings(x)).collect());
    assert_eq!(exponent(&r, &v).standard_pairs.len(), 2);
    assert_eq!(exponent(&r, &v).class_id, exponent(&r, &v1).class_id);
    assert_ne!(exponent(&r, &v).class_id, exponent(&r, &half).class_id);
}

fn supports_ex71() {
    let cfg = fixture("ex71");
    assert!(cfg.radius >= 10);
    let r = run_analyze(&cfg).expect("analyze");
    let e = exponent(&r, &ints(&[0, 0, -1, 1]));
    assert_eq!(owned(&e.n), set(&["{3}", "{1}", "{1,3}", "{1,3,4}"]));
    assert_eq!(owned(&e.n_complement), set(&["{1,4}", "{1,2,4}", "{2,4}", "{2}", "{2,3}"]));
    assert!(e.uncertified.is_empty());
    for c in &e.support_classes {
        assert!(c.certification == "lp-certified" || c.certification == "radius-stable", "{}", c.support);
    }
    let f = e.frobenius.as_ref().expect("I0 lies in N_v");
    assert_eq!(f.k, "{}");
    assert_eq!(f.m_t, "t3");
}

fn ideals_ex71() {
    let r = run_analyze(&fixture("ex71")).expect("analyze");
    let e = exponent(&r, &ints(&[0, 0, -1, 1]));
    let f = e.frobenius.as_ref().expect("I0 lies in N_v");
    assert_eq!(owned(&f.q_t), set(&["t1^2", "t1*t2", "t1*t3", "t1*t4", "t3^2", "t2*t3", "t3*t4"]));
    assert_eq!(owned(&f.colon), set(&["t1", "t2", "t3", "t4"]));
    assert_eq!(f.dual_basis, vec!["1".to_string()]);
    assert_eq!(f.dual_dim, 1);
    assert!(f.dual_complete);
    assert_eq!(owned(&f.p_b_t), set(&["t2", "t1*t4"]));
    let s = &f.sufficiency;
    assert_eq!(owned(&s.p_colon), set(&["s1", "s2"]));
    assert!(!s.p_b_matches);
    assert_eq!(owned(&s.phi_q_colon), owned(&s.p_colon));
    assert!(s.phi_matches && s.suffices);
}

fn pipeline_ex72() {
    let cfg = fixture("ex72");
    let r = run_analyze(&cfg).expect("analyze");
    let p = cfg.resolve().expect("resolve");
    let gb = toric_groebner(&p.a, &p.b, &p.w).expect("basis");
    let listed = [
        "dx1*dx3^2 - dx2^2*dx4",
        "dx2*dx4^2 - dx3^2*dx5",
        "dx3*dx5^2 - dx4^2*dx6",
        "dx1*dx5^2 - dx4*dx6^2",
        "dx1*dx4 - dx2*dx5",
        "dx2*dx5 - dx3*dx6",
        "dx1*dx3*dx5 - dx2*dx4*dx6",
        "dx1^2*dx5 - dx2*dx6^2",
        "dx1^2*dx3 - dx2^2*dx6",
    ];
    // One element here keeps a reducible tail (dx1*dx4 - dx2*dx5), so tail-reduce each before comparing.
    let reduced: BTreeSet<String> = listed
        .iter()
        .map(|s| {
            let g = Polynomial::parse(s, Family::Dx, 6).expect("parses");
            assert!(gb.contains(&g), "{s} is not in the ideal");
            let (m, c) = g.leading_term(gb.order()).expect("nonzero");
            let lead = Polynomial::term(Family::Dx, m.clone(), c.clone());
            (&lead + &gb.normal_form(&(&g - &lead))).to_string()
        })
        .collect();
    assert_eq!(gb.elements().len(), 9);
    assert_eq!(gb.elements().iter().map(|g| g.to_string()).collect::<BTreeSet<_>>(), reduced);
    assert_eq!(r.groebner_basis.len(), 9);
    assert_eq!(
        owned(&r.standard_pairs),
        set(&[
            "(*,*,0,0,0,*)",
            "(1,*,1,0,0,*)",
            "(0,*,*,1,0,*)",
            "(0,0,*,*,1,*)",
            "(0,0,0,*,*,*)",
            "(1,0,0,0,1,*)",
            "(0,*,*,0,0,*)",
            "(0,0,*,*,0,*)",
        ])
    );
    let want: BTreeSet<Vec<String>> = [
        ints(&[-1, 1, 0, 0, 0, 1]),
        ints(&[1, -1, 1, 0, 0, 0]),
        ints(&[0, 1, -1, 1, 0, 0]),
        ints(&[0, 0, 1, -1, 1, 0]),
        ints(&[0, 0, 0, 1, -1, 1]),
        ints(&[1, 0, 0, 0, 1, -1]),
        vec![int(0), int(0), rat(1, 2), int(0), int(0), rat(1, 2)],
    ]
    .iter()
    .map(|v| strings(v))
    .collect();
    assert_eq!(r.fake_exponents.iter().map(|e| e.v.clone()).collect::<BTreeSet<_>>(), want);

    let e = exponent(&r, &ints(&[-1, 1, 0, 0, 0, 1]));
    let f = e.frobenius.as_ref().expect("I0 lies in N_v");
    let quadrics: BTreeSet<String> =
        Monomial::all_of_degree(6, 2).into_iter().map(|m| Polynomial::monomial(Family::T, m).to_string()).collect();
    assert_eq!(owned(&f.q_t), quadrics);
    assert_eq!(owned(&f.colon), set(&["t1", "t2", "t3", "t4", "t5", "t6"]));
    assert_eq!(f.dual_basis, vec!["1".to_string()]);
    assert_eq!(owned(&f.sufficiency.p_colon), set(&["s1", "s2", "s3"]));
    assert!(f.sufficiency.suffices);

    let maps = TransportMaps::new(&p.a, &p.b);
    let at = HomogeneousIdeal::new(Family::T, 6, maps.at_forms()).expect("linear forms");
    let shifts =
        HomogeneousIdeal::new(Family::T, 6, (0..6).map(|i| Polynomial::var(Family::T, 6, i)).collect()).expect("variables");
    assert!(!at.product(&shifts).equals(&at.intersect(&shifts)));
}

fn duality_suites() {
    clean(suite_adjointness(star, SEED, 500), "adjointness", 500);
    clean(suite_perp_criteria(star, SEED, 500), "perp criteria", 500);
    clean(suite_double_perp(SEED, 500), "double perp", 500);
    clean(suite_colon_perp(SEED, 500), "colon perp", 500);
    // Each oracle ideal contributes an oracle check and a double-perp check.
    clean(suite_perp_oracle(SEED, 60), "oracle", 120);
}

fn operator_identities() {
    let families = fixture_families();
    assert!(!families.is_empty());
    let t = suite_operators(SEED, 100, &families);
    clean(t.disjoint, "disjoint factors", 100);
    clean(t.monomial_part, "monomial part", 100);
    clean(t.q_factorization, "q factorization", 100);
    clean(t.cross, "cross identity", 100);
}

fn series_verification() {
    for name in ["ex71", "ex72"] {
        let cfg = fixture(name);
        let r = run_analyze(&cfg).expect("analyze");
        for e in r.fake_exponents.iter().filter(|e| e.frobenius.is_some()) {
            let v: Vec<Rational> = e.v.iter().map(|s| gkz_core::rational::parse_rational(s).expect("exact")).collect();
            for method in [Method::Extended, Method::Lattice] {
                let opts = SolveOptions { exponent: Some(v.clone()), method, ..SolveOptions::default() };
                let s = run_solve(&cfg, &opts).expect("solve");
                assert!(!s.series.is_empty(), "{name} {:?}", e.v);
                assert!(s.all_verified, "{name} {:?} {}", e.v, s.method);
            }
        }
    }
    let mut cfg = fixture("ex71");
    cfg.weight_cap = "12".into();
    let solved = solve(&cfg, &SolveOptions::default()).expect("solve");
    assert!(solved.reports.iter().all(|r| r.is_ok()));
    let longest = solved.series.iter().max_by_key(|s| s.nonzero_terms().count()).expect("series");
    assert!(longest.nonzero_terms().count() >= 25, "only {} terms", longest.nonzero_terms().count());

    let mut broken = longest.clone();
    let origin = vec![0; broken.nvars()];
    let (u, c) = broken.nonzero_terms().find(|(u, _)| **u != origin).map(|(u, c)| (u.clone(), c.clone())).expect("term");
    broken.terms.insert(u, c.scale(&int(2)));
    let p = &solved.problem;
    let rep = verify_series(&broken, &p.a, &p.b, &p.w, &solved.choice.ns);
    assert!(!rep.violations.is_empty(), "corrupted coefficient went unnoticed");
}

fn minimality() {
    clean(suite_minimality(SEED, 200), "minimality", 200);
}

fn toric_oracle() {
    clean(suite_toric(SEED, 50), "toric", 50);
}

fn determinism() {
    let bin = env!("CARGO_BIN_EXE_gkz");
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    for name in ["ex71", "ex72"] {
        let path = format!("{dir}/{name}.toml");
        for verb in ["analyze", "solve", "verify", "check-sufficiency"] {
            let run = || {
                let out = Command::new(bin).args([verb, &path, "--output", "structured"]).output().expect("runs");
                assert!(out.status.success(), "{verb} {name}: {}", String::from_utf8_lossy(&out.stderr));
                out.stdout
            };
            let first = run();
            assert!(first.starts_with(b"{"), "{verb} {name} is not structured");
            assert_eq!(first, run(), "{verb} {name} differs between runs");
        }
    }
}

fn message(e: &(dyn std::any::Any + Send)) -> String {
    e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default()
}

fn main() {
    let criteria: [(&str, fn()); 12] = [
        ("Gröbner basis of the twisted cubic fixture", groebner_ex71),
        ("initial ideal and standard pairs", pairs_ex71),
        ("fake exponents and their classes", exponents_ex71),
        ("negative support classes at (0,0,-1,1)", supports_ex71),
        ("ideal pipeline and sufficiency at (0,0,-1,1)", ideals_ex71),
        ("six-variable fixture pipeline", pipeline_ex72),
        ("duality property suites", duality_suites),
        ("operator identities", operator_identities),
        ("series verification and mutation", series_verification),
        ("fake exponents are minimal", minimality),
        ("toric basis oracle", toric_oracle),
        ("byte-identical structured reports", determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2}: pass  {name} ({secs:.2}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({secs:.2}s): {}", i + 1, message(e.as_ref()));
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
