//! Acceptance gate: one test per criterion, each printing a pass/fail line.
//!
//! Reference desk scale is p=3, n=1, m=3, N=2; every suite-backed criterion
//! also runs at p=5, n=1 and at p=3, n=2 (with the scales lifted to keep the
//! closure condition m >= N + n).  Tolerances are pinned inside the suites;
//! run with `--nocapture` to see the per-criterion lines.

use fuchs::calculus::{cv_certify, mu0_l1_norm};
use fuchs::config::RunConfig;
use fuchs::padic::FieldParams;
use fuchs::report::Check;
use fuchs::suites::{run_suite, Suite};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};
use std::time::Instant;

/// The three parameter sets every criterion exercises.
fn configs() -> Vec<RunConfig> {
    vec![
        RunConfig::default(),
        RunConfig {
            prime: 5,
            level: 1,
            u_scale: 3,
            t_cutoff: 2,
            ..RunConfig::default()
        },
        RunConfig {
            prime: 3,
            level: 2,
            u_scale: 5,
            t_cutoff: 3,
            ..RunConfig::default()
        },
    ]
}

type CacheKey = (&'static str, (u64, u32, u32, u32));

fn cfg_key(cfg: &RunConfig) -> (u64, u32, u32, u32) {
    (cfg.prime, cfg.level, cfg.u_scale, cfg.t_cutoff)
}

/// Suite results shared across criteria (tests run in one process).
fn cached(suite: Suite, cfg: &RunConfig) -> Vec<Check> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Vec<Check>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (suite.name(), cfg_key(cfg));
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let checks = run_suite(suite, cfg).expect("suite runs");
    cache.lock().unwrap().insert(key, checks.clone());
    checks
}

/// Assert the named checks pass at all three parameter sets and print the
/// criterion line.  The runtime budget applies to a fresh run of the suite
/// at the reference desk scale.
fn criterion(number: u32, title: &str, suite: Suite, names: &[&str], desk_budget_s: f64) {
    let desk = RunConfig::default();
    let t0 = Instant::now();
    let desk_checks = run_suite(suite, &desk).expect("suite runs");
    let desk_elapsed = t0.elapsed().as_secs_f64();

    let mut failures = Vec::new();
    let mut matched = 0usize;
    let mut collect = |cfg: &RunConfig, checks: &[Check]| {
        for check in checks {
            if names.iter().any(|n| check.check == *n) {
                matched += 1;
                if !check.pass {
                    failures.push(format!(
                        "  [{}] {}: lhs={:.6e} rhs={:.6e} tol={:.1e}",
                        cfg.scale_summary(),
                        check.check,
                        check.lhs,
                        check.rhs,
                        check.tol
                    ));
                }
            }
        }
    };
    collect(&desk, &desk_checks);
    for cfg in configs().into_iter().skip(1) {
        let checks = cached(suite, &cfg);
        collect(&cfg, &checks);
    }

    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {number:2} ({title}): {status}  [desk {desk_elapsed:.2}s]");
    for f in &failures {
        println!("{f}");
    }
    assert_eq!(
        matched,
        names.len() * configs().len(),
        "criterion {number}: missing checks"
    );
    assert!(
        failures.is_empty(),
        "criterion {number} failed:\n{}",
        failures.join("\n")
    );
    assert!(
        desk_elapsed < desk_budget_s,
        "criterion {number} exceeded its desk-scale budget: {desk_elapsed:.2}s >= {desk_budget_s}s"
    );
}

#[test]
fn criterion_01_isometry() {
    criterion(
        1,
        "isometry of the square and hyperbolic-sine maps",
        Suite::Padic,
        &["padic.isometry", "padic.round_trips"],
        1.0,
    );
}

#[test]
fn criterion_02_fourier() {
    criterion(
        2,
        "Fourier unitarity and the measure identities",
        Suite::Harmonic,
        &[
            "harmonic.fourier_k_unitary",
            "harmonic.fourier_k_inversion",
            "harmonic.gamma_unitary",
            "harmonic.class_sums",
            "harmonic.substitution",
            "harmonic.dilation_permutation",
        ],
        1.0,
    );
}

#[test]
fn criterion_03_square_integrability() {
    criterion(
        3,
        "square-integrability constant and coherent resolution",
        Suite::Repn,
        &["repn.square_integrability", "repn.coherent_resolution"],
        5.0,
    );
}

#[test]
fn criterion_04_quantization_unitarity() {
    criterion(
        4,
        "quantization isometry and route equivalence",
        Suite::Quantize,
        &["quantize.hs_isometry", "quantize.route_equivalence"],
        10.0,
    );
}

#[test]
fn criterion_05_wigner_inversion() {
    criterion(
        5,
        "Wigner symbols invert rank-one operators; unit symbol acts as identity",
        Suite::Quantize,
        &["quantize.wigner_inversion", "quantize.unit_symbol"],
        10.0,
    );
}

#[test]
fn criterion_06_star_product() {
    criterion(
        6,
        "star product: route agreement, associativity, traciality, covariance, rank-one rule",
        Suite::Star,
        &[
            "star.route_agreement",
            "star.associativity",
            "star.traciality",
            "star.left_covariance",
            "star.rank_one_rule",
        ],
        30.0,
    );
}

#[test]
fn criterion_07_covariance() {
    criterion(
        7,
        "equivariance of the quantization map",
        Suite::Quantize,
        &["quantize.covariance"],
        10.0,
    );
}

#[test]
fn criterion_08_j_calculus() {
    // the pinned desk value ||mu_0^{-2}||_1 = 4 at (p=3, n=1)
    let params = FieldParams::new(3, 1).unwrap();
    assert!((mu0_l1_norm(params, -2.0).unwrap() - 4.0).abs() < 1e-12);
    criterion(
        8,
        "J-calculus: semigroup, eigenrelation, positivity, kernel oracle",
        Suite::Calculus,
        &[
            "calculus.kernel_oracle",
            "calculus.mu0_l1",
            "calculus.j_zero_identity",
            "calculus.semigroup",
            "calculus.spectral_consistency",
            "calculus.positive_definite",
            "calculus.eigenrelation",
        ],
        60.0,
    );
}

#[test]
fn criterion_09_calderon_vaillancourt() {
    // pinned desk constants: bound coefficient q^n + ||mu_0^{-2}||_1 = 7 and
    // the integrated coherent-state bound 7/27 at (p=3, n=1, s=-3)
    let params = FieldParams::new(3, 1).unwrap();
    let coefficient = 3.0 + mu0_l1_norm(params, -2.0).unwrap();
    assert!((coefficient - 7.0).abs() < 1e-12);
    let integral_bound = (1.0 / 9.0) * (1.0 + (1.0 / 3.0) * mu0_l1_norm(params, -2.0).unwrap());
    assert!((integral_bound - 7.0 / 27.0).abs() < 1e-14);
    let theta = fuchs::repn::ThetaParam::one(params);
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(9);
    let f = fuchs::sample::random_symbol(params, &theta, 3, 2, &mut rng);
    let report = cv_certify(&f, -3.0).unwrap();
    assert!((report.coefficient - 7.0).abs() < 1e-12);

    criterion(
        9,
        "operator-norm certificate with the coherent-state intermediates",
        Suite::Cv,
        &[
            "cv.random_sweep",
            "cv.adversarial",
            "cv.wigner_l1",
            "cv.row_integral",
            "cv.coherent_slice",
            "cv.coefficient_bound",
        ],
        60.0,
    );
}

#[test]
fn criterion_10_reconstruction() {
    criterion(
        10,
        "symbol reconstruction round-trip and composition closure",
        Suite::Calculus,
        &["calculus.reconstruction", "calculus.compose_closure"],
        60.0,
    );
}

#[test]
fn criterion_11_seminorm_algebra() {
    criterion(
        11,
        "seminorm product inequality and the decay ideal",
        Suite::Calculus,
        &["calculus.product_inequality", "calculus.ideal_inequality"],
        60.0,
    );
}
