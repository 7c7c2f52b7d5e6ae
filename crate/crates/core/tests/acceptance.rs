//! Acceptance suite.
//!
//! One test per acceptance criterion, each printing a PASS line with the
//! observed worst deviation (run with `--nocapture` to see them). The
//! thresholds asserted here are the shipped ones; nothing is loosened at
//! test time. Criterion 10 (command-line determinism) lives in the CLI
//! crate's golden tests.

use lorentz_conchoid::dual::DualScalar;
use lorentz_conchoid::expansions::{
    self, reconcile_all, CaseParams, Verdict, RECONCILE_DEFAULT_TOL,
};
use lorentz_conchoid::motion::{frame_at, orbit_point, LambdaSign, MotionConfig, OrbitSpec};
use lorentz_conchoid::rng::SplitMix64;
use lorentz_conchoid::study::line_point;
use lorentz_conchoid::verify::{
    dual_suite, frame_suite, helicoid_suite, lemma21_suite, study_suite, v1_surface_suite,
    v3_congruence_suite, SuiteReport,
};

fn report_line(criterion: &str, r: &SuiteReport) {
    let worst = r
        .checks
        .iter()
        .map(|c| c.max_dev)
        .fold(0.0_f64, f64::max);
    assert!(
        r.pass,
        "criterion {criterion} FAIL: {:#?}",
        r.checks
            .iter()
            .filter(|c| !c.pass)
            .collect::<Vec<_>>()
    );
    println!("ACCEPTANCE {criterion} PASS — suite {} worst dev {worst:.3e}", r.suite);
}

#[test]
fn acceptance_01_dual_ring() {
    let r = dual_suite(10_000, 42, None);
    for c in &r.checks {
        match c.name.as_str() {
            "eps_squared_zero" => assert_eq!(c.threshold, 0.0),
            "division_inverts" => assert_eq!(c.threshold, 1e-12),
            _ => assert_eq!(c.threshold, 1e-14),
        }
    }
    report_line("1 dual ring", &r);
}

#[test]
fn acceptance_02_cross_inner_identities() {
    let r = lemma21_suite(10_000, 42, None);
    for c in &r.checks {
        assert_eq!(c.threshold, 1e-12);
    }
    report_line("2 cross/inner identities", &r);
}

#[test]
fn acceptance_03_frame_grid() {
    let r = frame_suite(1_000, 42, None);
    report_line("3 frame constraints", &r);
}

#[test]
fn acceptance_04_v3_congruence() {
    let r = v3_congruence_suite(42, None);
    for c in &r.checks {
        if c.name != "skipped_cells" {
            assert_eq!(c.threshold, 1e-12);
        }
    }
    report_line("4 v3 congruence reproduction", &r);
}

#[test]
fn acceptance_05_v1_surface() {
    let r = v1_surface_suite(42, None);
    for c in &r.checks {
        assert_eq!(c.threshold, 1e-9);
    }
    report_line("5 v1 plane/surface reproduction", &r);
}

#[test]
fn acceptance_06_helicoid() {
    let r = helicoid_suite(42, None);
    for c in &r.checks {
        assert_eq!(c.threshold, 1e-9);
    }
    report_line("6 helicoid reproduction", &r);
}

#[test]
fn acceptance_07_study_round_trip() {
    let r = study_suite(1_000, 42, None);
    for c in &r.checks {
        assert_eq!(c.threshold, 1e-12);
    }
    report_line("7 line correspondence round trip", &r);
}

/// The reconciliation ledger: every expanded formula is compared with the
/// canonical path, verdicts must be stable across seeds and must equal the
/// committed ledger. The formulas expected to agree (the v3 congruence, the
/// v2 frame expansions, and all self-consistency residual checks) must
/// verdict MATCH at 1e-9. The sigma = 0 expansion of the v1 congruence is
/// committed as a per-coordinate split: its first two coordinates agree
/// with the canonical line while the third enters sign-flipped, so this
/// test additionally pins the flip down to machine precision.
#[test]
fn acceptance_08_reconciliation_ledger() {
    let must_match = [
        "y_v3",
        "v2_re",
        "surface_v1_sigma0_residual",
        "congruence_v3_residual",
        "helicoid_sigma0_residual",
        "helicoid_psi0_residual",
    ];
    let mut verdict_sets: Vec<Vec<(String, Verdict, [Verdict; 3])>> = Vec::new();
    for seed in [42_u64, 7, 20260809] {
        let reports = reconcile_all(1_000, seed, RECONCILE_DEFAULT_TOL);
        let moved = expansions::diff_with_expected(&reports);
        assert!(
            moved.is_empty(),
            "verdicts moved off the committed ledger (seed {seed}): {moved:?}"
        );
        for name in must_match {
            let r = reports.iter().find(|r| r.formula == name).unwrap();
            assert_eq!(
                r.verdict,
                Verdict::Match,
                "{name} must agree with the canonical path, got {:?}",
                r.max_dev
            );
        }
        let split = reports.iter().find(|r| r.formula == "y_v1_sigma0").unwrap();
        assert_eq!(
            split.coords,
            [Verdict::Match, Verdict::Match, Verdict::Mismatch],
            "committed per-coordinate outcome of the sigma=0 v1 expansion"
        );
        verdict_sets.push(
            reports
                .iter()
                .map(|r| (r.formula.clone(), r.verdict, r.coords))
                .collect(),
        );
    }
    assert!(
        verdict_sets.windows(2).all(|w| w[0] == w[1]),
        "verdicts must be identical across seeds"
    );

    // The third coordinate of the sigma=0 v1 expansion is exactly the
    // canonical value with the opposite sign.
    let cfg = MotionConfig::new(DualScalar::new(0.0, 0.3), LambdaSign::Minus);
    let mut worst = 0.0_f64;
    for i in 0..19 {
        let psi = 0.2 + 1.8 * (i as f64) / 18.0;
        for lambda in [-2.0, -0.7, 0.4, 1.3, 2.0] {
            let pose = frame_at(&cfg, DualScalar::new(psi, 0.4)).unwrap();
            let y = line_point(&pose.v1, lambda, 1e-9).unwrap();
            let par = CaseParams {
                psi,
                psi_star: 0.4,
                sigma: 0.0,
                sigma_star: 0.3,
                lambda,
                ..CaseParams::default()
            };
            let y_exp = expansions::y_v1_sigma0(&par).unwrap();
            worst = worst.max((y_exp.c3 + y.c3).abs());
        }
    }
    assert!(worst <= 1e-9, "sign-flip identity broke: {worst:.3e}");
    println!(
        "ACCEPTANCE 8 PASS — reconcile verdicts equal the committed ledger across 3 seeds; \
         sign-flip identity dev {worst:.3e}"
    );
}

/// Orbit pseudo-norm identity over random admissible parameters and the
/// exact specializations to the frame vectors.
#[test]
fn acceptance_09_orbit_pseudo_norm() {
    let mut rng = SplitMix64::new(42);
    let mut identity = 0.0_f64;
    let mut special = 0.0_f64;
    for _ in 0..1_000 {
        let psi = DualScalar::new(rng.signed_uniform(0.05, 2.0), rng.uniform(-1.0, 1.0));
        let delta = DualScalar::new(rng.signed_uniform(0.3, 1.5), rng.uniform(-1.0, 1.0));
        let cfg = MotionConfig::new(delta, LambdaSign::Plus);
        let pose = frame_at(&cfg, psi).unwrap();

        let p = DualScalar::new(rng.uniform(0.2, 1.2), rng.uniform(-1.0, 1.0));
        let q = DualScalar::new(rng.uniform(0.2, 1.2), rng.uniform(-1.0, 1.0));
        let spec = OrbitSpec::new(p, q).unwrap();
        let x = orbit_point(&pose, &spec).unwrap();
        let lhs = x.inner(&x) * (p + q).sinh().unwrap();
        let rhs = (p - q).sinh().unwrap();
        identity = identity
            .max((lhs.re - rhs.re).abs())
            .max((lhs.du - rhs.du).abs());

        let spec = OrbitSpec::new(DualScalar::ZERO, q).unwrap();
        let x = orbit_point(&pose, &spec).unwrap();
        let dv = x - pose.v3;
        for v in dv.re.as_array().iter().chain(dv.du.as_array().iter()) {
            special = special.max(v.abs());
        }
        let spec = OrbitSpec::new(p, DualScalar::ZERO).unwrap();
        let x = orbit_point(&pose, &spec).unwrap();
        let dv = x - pose.v1;
        for v in dv.re.as_array().iter().chain(dv.du.as_array().iter()) {
            special = special.max(v.abs());
        }
    }
    assert!(identity <= 1e-12, "pseudo-norm identity dev {identity:.3e}");
    assert!(special <= 1e-13, "specialization dev {special:.3e}");
    println!(
        "ACCEPTANCE 9 PASS — pseudo-norm identity dev {identity:.3e}, \
         frame-vector specialization dev {special:.3e}"
    );
}
