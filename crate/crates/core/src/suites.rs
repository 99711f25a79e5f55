//! The verification suites behind `fuchs verify`: every module invariant as
//! a reportable check.  All sampling is driven by the configured seed, so a
//! fixed configuration reproduces identical numbers.

use crate::calculus::{
    self, b_seminorms, coherent_l1_slice, coherent_row_l1, coherent_wigner, compose_bounded_check,
    cv_certify, js_wigner_l1, mu0_l1_norm, omega_weight, s_seminorms, CoherentEvaluator, JCalculus,
    KsKernel,
};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::harmonic::{
    fourier_gamma, fourier_gamma_inverse, fourier_k, fourier_k_inverse, substitution_check,
    ConfigFunction, DualGrid, GammaGrid, KFunction, UnitCosetGrid,
};
use crate::padic::{self, FieldParams, PAdicScalar, PrincipalUnit};
use crate::quantize::{
    hs_isometry_check, kernel_formula, omega_point, quantize_direct, symbol_of_operator, wigner,
    OperatorKernel, Symbol,
};
use crate::repn::{
    coherent_resolve, matrix_coefficient, orthogonality_integral, pi_apply, pi_output_scale,
    projector_p_theta, GnFunction, GroupElement,
};
use crate::report::Check;
use crate::sample;
use crate::star::{covariance_check, star_via_kernel, star_via_operators, ThreePointKernel};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::time::Instant;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Padic,
    Harmonic,
    Repn,
    Quantize,
    Star,
    Calculus,
    Cv,
}

impl Suite {
    pub fn parse(name: &str) -> Result<Vec<Suite>> {
        Ok(match name {
            "padic" => vec![Suite::Padic],
            "harmonic" => vec![Suite::Harmonic],
            "repn" => vec![Suite::Repn],
            "quantize" => vec![Suite::Quantize],
            "star" => vec![Suite::Star],
            "calculus" => vec![Suite::Calculus],
            "cv" => vec![Suite::Cv],
            "all" => vec![
                Suite::Padic,
                Suite::Harmonic,
                Suite::Repn,
                Suite::Quantize,
                Suite::Star,
                Suite::Calculus,
                Suite::Cv,
            ],
            other => return Err(Error::InvalidParams(format!("unknown suite '{other}'"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Padic => "padic",
            Suite::Harmonic => "harmonic",
            Suite::Repn => "repn",
            Suite::Quantize => "quantize",
            Suite::Star => "star",
            Suite::Calculus => "calculus",
            Suite::Cv => "cv",
        }
    }
}

pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Result<Vec<Check>> {
    let t0 = Instant::now();
    let mut checks = match suite {
        Suite::Padic => suite_padic(cfg)?,
        Suite::Harmonic => suite_harmonic(cfg)?,
        Suite::Repn => suite_repn(cfg)?,
        Suite::Quantize => suite_quantize(cfg)?,
        Suite::Star => suite_star(cfg)?,
        Suite::Calculus => suite_calculus(cfg)?,
        Suite::Cv => suite_cv(cfg)?,
    };
    if cfg.timings {
        let ms = t0.elapsed().as_millis() as u64;
        for c in &mut checks {
            if c.runtime_ms.is_none() {
                c.runtime_ms = Some(ms);
            }
        }
    }
    Ok(checks)
}

pub fn run_suites(suites: &[Suite], cfg: &RunConfig) -> Result<Vec<Check>> {
    let mut all = Vec::new();
    for s in suites {
        all.extend(run_suite(*s, cfg)?);
    }
    Ok(all)
}

fn rng_for(cfg: &RunConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed ^ (salt.wrapping_mul(0x9e3779b97f4a7c15)))
}

fn random_rational(params: FieldParams, rng: &mut impl Rng, prec: u32) -> PAdicScalar {
    let denpow = rng.random_range(0..=3u32);
    let num = rng.random_range(-(params.pow(4) as i64)..=params.pow(4) as i64);
    if num == 0 {
        return PAdicScalar::zero(params.prime());
    }
    PAdicScalar::from_rational(params.prime(), num, params.pow(denpow) as i64, prec)
}

// ---------------------------------------------------------------- padic --

fn suite_padic(cfg: &RunConfig) -> Result<Vec<Check>> {
    let (params, _theta) = cfg.validate()?;
    let p = params.prime();
    let n = params.level();
    let tol = 0.0;
    let mut checks = Vec::new();
    let span = format!("p={p} n={n}");

    // exhaustive isometry of sigma and phi over U_n/U_{n+3}
    let depth = n + 3;
    let prec = depth + 3;
    let reps: Vec<u64> = (0..params.pow(depth - n))
        .map(|a| 1 + params.pow(n) * a)
        .collect();
    let units: Vec<PrincipalUnit> = reps
        .iter()
        .map(|&r| PrincipalUnit::new(PAdicScalar::from_integer(p, r as i64, prec), n).unwrap())
        .collect();
    let mut mismatches = 0u64;
    for (i, u) in units.iter().enumerate() {
        for v in units.iter().skip(i + 1) {
            let d = u.scalar().sub(v.scalar()).valuation();
            if u.square().scalar().sub(v.square().scalar()).valuation() != d {
                mismatches += 1;
            }
            if u.phi().sub(&v.phi()).valuation() != d {
                mismatches += 1;
            }
        }
    }
    checks.push(Check::residual(
        "padic.isometry",
        "|sigma(u)-sigma(v)| = |u-v| and |phi(u)-phi(v)| = |u-v| (valuation equality)",
        &format!("{span} exhaustive over U_n/U_{{n+3}}"),
        mismatches as f64,
        tol,
    ));

    let mut mismatches = 0u64;
    for u in &units {
        let root = u.sqrt().unwrap();
        if !root.square().scalar().congruent(u.scalar()) {
            mismatches += 1;
        }
        if !u.square().sqrt().unwrap().scalar().congruent(u.scalar()) {
            mismatches += 1;
        }
        let z = u.phi();
        if !padic::phi_inverse(&z, n)
            .unwrap()
            .scalar()
            .congruent(u.scalar())
        {
            mismatches += 1;
        }
    }
    checks.push(Check::residual(
        "padic.round_trips",
        "sqrt(sigma(u)) = u, sigma(sqrt(u)) = u, phi_inv(phi(u)) = u",
        &format!("{span} exhaustive over U_n/U_{{n+3}}"),
        mismatches as f64,
        tol,
    ));

    let mut rng = rng_for(cfg, 1);
    let mut bad_char = 0u64;
    let mut bad_ultra = 0u64;
    for _ in 0..200 {
        let x = random_rational(params, &mut rng, 10);
        let y = random_rational(params, &mut rng, 10);
        let lhs = x.add(&y).fractional_part().unwrap();
        let rhs = x
            .fractional_part()
            .unwrap()
            .add(&y.fractional_part().unwrap());
        if lhs != rhs {
            bad_char += 1;
        }
        if x.add(&y).abs() > x.abs().max(y.abs()) + 1e-15 {
            bad_ultra += 1;
        }
    }
    checks.push(Check::residual(
        "padic.character_additive",
        "frac(t1 + t2) = frac(t1) + frac(t2) mod 1 (exact rationals)",
        &format!("{span} 200 random rationals"),
        bad_char as f64,
        tol,
    ));
    checks.push(Check::residual(
        "padic.ultrametric",
        "|x + y| <= max(|x|, |y|)",
        &format!("{span} 200 random rationals"),
        bad_ultra as f64,
        tol,
    ));

    // inversion against the extended-Euclid oracle mod p^L
    let modulus = params.pow(6.min(params.max_precision()));
    let mut bad_inv = 0u64;
    for _ in 0..100 {
        let a = loop {
            let a = rng.random_range(1..modulus);
            if a % p != 0 {
                break a;
            }
        };
        let inv = PAdicScalar::from_integer(p, a as i64, 6).invert().unwrap();
        // oracle: extended Euclid
        let mut oracle = 0u64;
        for t in 0..modulus {
            if (a as u128 * t as u128) % modulus as u128 == 1 {
                oracle = t;
                break;
            }
        }
        if inv.mantissa_mod(6).unwrap() != oracle {
            bad_inv += 1;
        }
    }
    checks.push(Check::residual(
        "padic.invert_oracle",
        "p-adic inversion matches exhaustive inverse mod p^6",
        &format!("{span} 100 random units"),
        bad_inv as f64,
        tol,
    ));

    let mut bad_mu0 = 0u64;
    for _ in 0..200 {
        let x = random_rational(params, &mut rng, 10);
        let y = random_rational(params, &mut rng, 10);
        if padic::mu0_exponent(&x.add(&y), n)
            > padic::mu0_exponent(&x, n) + padic::mu0_exponent(&y, n)
        {
            bad_mu0 += 1;
        }
        // unit dilation and p^{-n} O_k translation invariance
        let u = PAdicScalar::from_integer(p, 1 + p as i64, 10);
        if padic::mu0_exponent(&x.mul(&u), n) != padic::mu0_exponent(&x, n) {
            bad_mu0 += 1;
        }
        let shift = PAdicScalar::from_rational(p, 1, params.pow(n) as i64, 10);
        if padic::mu0_exponent(&x.add(&shift), n) != padic::mu0_exponent(&x, n) {
            bad_mu0 += 1;
        }
    }
    checks.push(Check::residual(
        "padic.mu0",
        "mu0(t1+t2) <= mu0(t1) mu0(t2); mu0 invariant under units and p^{-n} O_k shifts",
        &format!("{span} 200 random rationals"),
        bad_mu0 as f64,
        tol,
    ));

    Ok(checks)
}

// ------------------------------------------------------------- harmonic --

fn suite_harmonic(cfg: &RunConfig) -> Result<Vec<Check>> {
    let (params, _theta) = cfg.validate()?;
    let n = params.level();
    let tol = 1e-12 * cfg.tol_factor;
    let span = cfg.scale_summary();
    let mut rng = rng_for(cfg, 2);
    let mut checks = Vec::new();

    let mut unit_dev: f64 = 0.0;
    let mut inv_dev: f64 = 0.0;
    for _ in 0..10 {
        let f = sample::random_k_function(params, 0, 2, &mut rng);
        let g = fourier_k(&f);
        unit_dev = unit_dev.max((f.norm_sq() - g.norm_sq()).abs());
        let back = fourier_k_inverse(&g);
        for (a, b) in f.values().iter().zip(back.values()) {
            inv_dev = inv_dev.max((a - b).norm());
        }
        let twice = fourier_k(&g);
        let d = f.len();
        for j in 0..d {
            let neg = (d - j) % d;
            inv_dev = inv_dev.max((twice.values()[j] - f.values()[neg]).norm());
        }
    }
    checks.push(Check::residual(
        "harmonic.fourier_k_unitary",
        "||F_k f||_2 = ||f||_2",
        &span,
        unit_dev,
        tol,
    ));
    checks.push(Check::residual(
        "harmonic.fourier_k_inversion",
        "F_k^{-1} F_k f = f and F_k F_k f = f(-t)",
        &span,
        inv_dev,
        tol,
    ));

    let cutoff = cfg.t_cutoff.max(n + 1);
    let gamma = GammaGrid::new(params, cutoff)?;
    let mut pl_dev: f64 = 0.0;
    let mut ginv_dev: f64 = 0.0;
    let mut eq45_dev: f64 = 0.0;
    for _ in 0..10 {
        let vals = sample::random_complex_vec(gamma.len(), &mut rng);
        let hat = fourier_gamma(&gamma, &vals);
        let lhs: f64 = vals.iter().map(|z| z.norm_sqr()).sum();
        let rhs: f64 =
            hat.iter().map(|z| z.norm_sqr()).sum::<f64>() * DualGrid::of(&gamma).weight();
        pl_dev = pl_dev.max((lhs - rhs).abs());
        for (a, b) in vals.iter().zip(&fourier_gamma_inverse(&gamma, &hat)) {
            ginv_dev = ginv_dev.max((a - b).norm());
        }
        // class sums against the periodized integral, and F_k = q^n F_Gamma
        let periodized = KFunction::new(params, -(cutoff as i64), -(n as i64), vals.clone())?;
        let qn = params.powi(n as i64);
        let class_sum: Complex64 = vals.iter().sum();
        eq45_dev = eq45_dev.max((class_sum - periodized.integral() / qn).norm());
        let lhs = fourier_k(&periodized);
        for (a, b) in lhs.values().iter().zip(&hat) {
            eq45_dev = eq45_dev.max((a - qn * b).norm());
        }
    }
    checks.push(Check::residual(
        "harmonic.gamma_unitary",
        "Gamma-grid Plancherel and inversion",
        &span,
        pl_dev.max(ginv_dev),
        tol,
    ));
    checks.push(Check::residual(
        "harmonic.class_sums",
        "sum over classes = q^{-n} integral; F_k of the periodization = q^n F_Gamma",
        &span,
        eq45_dev,
        tol,
    ));

    let grid = UnitCosetGrid::new(params, cfg.u_scale)?;
    let f = sample::random_config(&grid, &mut rng);
    let h = sample::random_k_function(params, n as i64, cfg.u_scale as i64, &mut rng);
    let chk = substitution_check(&f, &h)?;
    checks.push(Check::residual(
        "harmonic.substitution",
        "int f(u^2) du = int f(u) du; int h(u - u^{-1}) du = int h over p^n O_k",
        &span,
        (chk.square_lhs - chk.square_rhs)
            .norm()
            .max((chk.phi_lhs - chk.phi_rhs).norm()),
        tol,
    ));

    let mut bad = 0u64;
    for i in 0..grid.len() {
        let mut seen = vec![false; gamma.len()];
        for b in 0..gamma.len() {
            let img = gamma.act_unit_u64(grid.rep_u64(i), b);
            if seen[img] {
                bad += 1;
            }
            seen[img] = true;
        }
    }
    checks.push(Check::residual(
        "harmonic.dilation_permutation",
        "[t] -> [u t] permutes the Gamma grid exactly",
        &span,
        bad as f64,
        0.0,
    ));

    Ok(checks)
}

// ----------------------------------------------------------------- repn --

fn suite_repn(cfg: &RunConfig) -> Result<Vec<Check>> {
    let (params, theta) = cfg.validate()?;
    let n = params.level();
    let span = cfg.scale_summary();
    let prec = params.working_precision(cfg.u_scale + n, cfg.t_cutoff) + 2;
    let grid = UnitCosetGrid::new(params, cfg.u_scale)?;
    let gamma = GammaGrid::new(params, cfg.t_cutoff)?;
    let mut rng = rng_for(cfg, 3);
    let mut checks = Vec::new();

    let mut law_dev: f64 = 0.0;
    let mut unit_dev: f64 = 0.0;
    for _ in 0..100 {
        let phi = sample::random_config(&grid, &mut rng);
        let g1 = sample::random_group_element(&grid, &gamma, prec, &mut rng);
        let g2 = sample::random_group_element(&grid, &gamma, prec, &mut rng);
        let once = pi_apply(&g2, &phi, &theta)?;
        unit_dev = unit_dev.max((once.norm_sq() - phi.norm_sq()).abs());
        let twice = pi_apply(&g1, &once, &theta)?;
        let composed = pi_apply(&g1.compose(&g2), &phi, &theta)?;
        let m = twice.scale().max(composed.scale());
        let a = twice.refine(m)?;
        let b = composed.refine(m)?;
        for (x, y) in a.values().iter().zip(b.values()) {
            law_dev = law_dev.max((x - y).norm());
        }
    }
    checks.push(Check::residual(
        "repn.group_law",
        "pi(g1) pi(g2) = pi(g1 g2)",
        &format!("{span} 100 random triples"),
        law_dev,
        1e-12 * cfg.tol_factor,
    ));
    checks.push(Check::residual(
        "repn.unitarity",
        "||pi(g) phi||_2 = ||phi||_2",
        &span,
        unit_dev,
        1e-12 * cfg.tol_factor,
    ));

    // square-integrability constant on all basis pairs at the small scale
    let m_small = (n + 1).min(cfg.u_scale);
    let small = UnitCosetGrid::new(params, m_small)?;
    let mut eq8_dev: f64 = 0.0;
    for i in 0..small.len() {
        for j in 0..small.len() {
            let e1 = ConfigFunction::basis(small.clone(), i);
            let e2 = ConfigFunction::basis(small.clone(), j);
            let got = orthogonality_integral(&e1, &e2, &theta, m_small)?;
            eq8_dev = eq8_dev.max((got - e1.norm_sq() * e2.norm_sq()).abs());
        }
    }
    for _ in 0..5 {
        let phi1 = sample::random_config(&small, &mut rng);
        let phi2 = sample::random_config(&small, &mut rng);
        let got = orthogonality_integral(&phi1, &phi2, &theta, m_small)?;
        eq8_dev = eq8_dev.max((got - phi1.norm_sq() * phi2.norm_sq()).abs());
    }
    checks.push(Check::residual(
        "repn.square_integrability",
        "int |<phi1, pi(g) phi2>|^2 dg = |theta|^{-1} ||phi1||^2 ||phi2||^2",
        &format!(
            "p={} n={n} m={m_small}, all basis pairs + 5 random",
            params.prime()
        ),
        eq8_dev,
        1e-10 * cfg.tol_factor,
    ));

    let mut res_dev: f64 = 0.0;
    for _ in 0..50 {
        let phi1 = sample::random_config(&small, &mut rng);
        let phi2 = sample::random_config(&small, &mut rng);
        let mother = sample::random_config(&small, &mut rng);
        if mother.norm_sq() < 1e-6 {
            continue;
        }
        let got = coherent_resolve(&phi1, &phi2, &mother, &theta, m_small)?;
        res_dev = res_dev.max((got - phi1.inner(&phi2)?).norm());
    }
    checks.push(Check::residual(
        "repn.coherent_resolution",
        "(|theta|/||phi||^2) int <phi1, pi(g) phi> <pi(g) phi, phi2> dg = <phi1, phi2>",
        &format!("p={} n={n} m={m_small}, 50 random triples", params.prime()),
        res_dev,
        1e-10 * cfg.tol_factor,
    ));

    // coefficient support: one shell beyond |t| = q^m everything vanishes
    let phi1 = sample::random_config(&grid, &mut rng);
    let phi2 = sample::random_config(&grid, &mut rng);
    let shell = params.pow(cfg.u_scale + 1);
    let mut leak: f64 = 0.0;
    for j in 1..params.prime().min(16) {
        let t = PAdicScalar::from_rational(params.prime(), j as i64, shell as i64, prec);
        for i in 0..grid.len() {
            let g = GroupElement::new(grid.rep_scalar(i, prec), t)?;
            leak = leak.max(matrix_coefficient(&phi1, &phi2, &g, &theta)?.norm());
        }
    }
    checks.push(Check::residual(
        "repn.coefficient_support",
        "<phi1, pi(u,t) phi2> = 0 for |t| > q^m (checked one shell beyond)",
        &span,
        leak,
        1e-12 * cfg.tol_factor,
    ));

    let mut contra_dev: f64 = 0.0;
    for _ in 0..20 {
        let g = sample::random_group_element(&grid, &gamma, prec, &mut rng);
        let lhs = matrix_coefficient(&phi1, &phi2, &g, &theta.neg())?;
        let rhs = matrix_coefficient(&phi1.conj(), &phi2.conj(), &g, &theta)?.conj();
        contra_dev = contra_dev.max((lhs - rhs).norm());
    }
    checks.push(Check::residual(
        "repn.contragredient",
        "<phi1, pi_{-theta}(g) phi2> = conj <conj phi1, pi_theta(g) conj phi2>",
        &span,
        contra_dev,
        1e-12 * cfg.tol_factor,
    ));

    // band projector: idempotent, self-adjoint, fixes its band, kills others
    let ugrid = UnitCosetGrid::new(params, m_small)?;
    let rows: Vec<KFunction> = (0..ugrid.len())
        .map(|_| sample::random_k_function(params, -(n as i64 + 1), 1, &mut rng))
        .collect();
    let f = GnFunction::new(ugrid.clone(), rows)?;
    let pf = projector_p_theta(&f, &theta)?;
    let ppf = projector_p_theta(&pf, &theta)?;
    let idem = pf.max_diff(&ppf);
    let rows: Vec<KFunction> = (0..ugrid.len())
        .map(|_| sample::random_k_function(params, -(n as i64 + 1), 1, &mut rng))
        .collect();
    let h = GnFunction::new(ugrid.clone(), rows)?;
    let ph = projector_p_theta(&h, &theta)?;
    let selfadj = (pf.inner(&h)? - f.inner(&ph)?).norm();
    checks.push(Check::residual(
        "repn.projector",
        "P_theta = Id (x) F_k^{-1} 1_{theta U_n} F_k is an orthogonal projector",
        &span,
        idem.max(selfadj),
        1e-12 * cfg.tol_factor,
    ));

    Ok(checks)
}

// ------------------------------------------------------------- quantize --

fn suite_quantize(cfg: &RunConfig) -> Result<Vec<Check>> {
    let (params, theta) = cfg.validate()?;
    let n = params.level();
    let span = cfg.scale_summary();
    let prec = params.working_precision(cfg.u_scale + n, cfg.t_cutoff) + 2;
    let mut rng = rng_for(cfg, 4);
    let mut checks = Vec::new();

    let mut hs_dev: f64 = 0.0;
    for _ in 0..100 {
        let f = sample::random_symbol(params, &theta, cfg.u_scale, cfg.t_cutoff, &mut rng);
        let (hs, qn) = hs_isometry_check(&f)?;
        hs_dev = hs_dev.max((hs - qn).abs() / qn.max(1e-30));
    }
    checks.push(Check::residual(
        "quantize.hs_isometry",
        "||Omega(f)||_HS^2 = q^n ||f||^2 (relative)",
        &format!("{span} 100 random symbols"),
        hs_dev,
        1e-10 * cfg.tol_factor,
    ));

    let mut route_dev: f64 = 0.0;
    for _ in 0..50 {
        let f = sample::random_symbol(params, &theta, cfg.u_scale, cfg.t_cutoff, &mut rng);
        route_dev = route_dev.max(quantize_direct(&f)?.max_diff(&kernel_formula(&f)?)?);
    }
    checks.push(Check::residual(
        "quantize.route_equivalence",
        "point-operator sum = Fourier/change-of-variables kernel",
        &format!("{span} 50 random symbols"),
        route_dev,
        1e-10 * cfg.tol_factor,
    ));

    let m_small = (n + 1).min(cfg.u_scale);
    let small = UnitCosetGrid::new(params, m_small)?;
    let mut wig_dev: f64 = 0.0;
    let mut sup_bad = 0u64;
    for _ in 0..50 {
        let phi1 = sample::random_config(&small, &mut rng);
        let phi2 = sample::random_config(&small, &mut rng);
        let w = wigner(&phi1, &phi2, &theta)?;
        wig_dev =
            wig_dev.max(quantize_direct(&w)?.max_diff(&OperatorKernel::rank_one(&phi2, &phi1)?)?);
        let bound = params.powi(-(n as i64)) * phi1.sup_norm() * phi2.sup_norm();
        if w.sup_norm() > bound + 1e-12 {
            sup_bad += 1;
        }
    }
    checks.push(Check::residual(
        "quantize.wigner_inversion",
        "Omega(W_{phi1,phi2}) = |phi2><phi1|",
        &format!("p={} n={n} m={m_small}, 50 random pairs", params.prime()),
        wig_dev,
        1e-10 * cfg.tol_factor,
    ));
    checks.push(Check::residual(
        "quantize.wigner_sup_bound",
        "|W(u,[t])| <= q^{-n} ||phi1||_inf ||phi2||_inf",
        &span,
        sup_bad as f64,
        0.0,
    ));

    let one = Symbol::one(params, theta.clone(), m_small, m_small + 1)?;
    let k_one = quantize_direct(&one)?;
    let mut id_dev: f64 = 0.0;
    for _ in 0..5 {
        let phi = sample::random_config(&small, &mut rng);
        let out = k_one.apply(&phi)?;
        let phi_f = phi.refine(out.scale())?;
        for (x, y) in out.values().iter().zip(phi_f.values()) {
            id_dev = id_dev.max((x - y).norm());
        }
    }
    checks.push(Check::residual(
        "quantize.unit_symbol",
        "Omega(1) acts as the identity at the resolved scale",
        &format!(
            "p={} n={n} (m,N)=({m_small},{})",
            params.prime(),
            m_small + 1
        ),
        id_dev,
        1e-10 * cfg.tol_factor,
    ));

    let f = sample::random_symbol(params, &theta, cfg.u_scale, cfg.t_cutoff, &mut rng);
    let adj_dev = quantize_direct(&f.conj())?.max_diff(&quantize_direct(&f)?.adjoint())?;
    checks.push(Check::residual(
        "quantize.adjoint",
        "Omega(conj f) = Omega(f)^*",
        &span,
        adj_dev,
        1e-11 * cfg.tol_factor,
    ));

    // covariance: pi(g) Omega(f) pi(g)^* = Omega(f circ g^{-1})
    let grid = UnitCosetGrid::new(params, cfg.u_scale)?;
    let gamma = GammaGrid::new(params, cfg.t_cutoff)?;
    let mut cov_dev: f64 = 0.0;
    for _ in 0..50 {
        let f = sample::random_symbol(params, &theta, cfg.u_scale, cfg.t_cutoff, &mut rng);
        let g = sample::random_group_element(&grid, &gamma, prec, &mut rng);
        let a = quantize_direct(&f)?;
        let scale = a
            .kernel_scale()
            .max(pi_output_scale(a.kernel_scale(), n, &theta, g.t()));
        let pgrid = UnitCosetGrid::new(params, scale)?;
        let mut pi_k = OperatorKernel::zero(pgrid.clone());
        let d = pgrid.len();
        let qm = params.powi(scale as i64);
        for i in 0..d {
            let rep = pgrid.rep_scalar(i, prec);
            let chi = theta.psi(&rep.invert()?.mul(&g.u().mul(g.t())))?;
            let j = pgrid.index_of(&g.u().invert()?.mul(&rep))?;
            pi_k.matrix_mut()[i * d + j] = chi * qm;
        }
        let lhs = pi_k.compose(&a)?.compose(&pi_k.adjoint())?;
        let rhs = quantize_direct(&f.translate_left(&g)?)?;
        cov_dev = cov_dev.max(lhs.max_diff(&rhs)?);
    }
    checks.push(Check::residual(
        "quantize.covariance",
        "pi(g) Omega(f) pi(g)^* = Omega(lambda_g f)",
        &format!("{span} 50 random (g, f)"),
        cov_dev,
        1e-10 * cfg.tol_factor,
    ));

    // injectivity: smallest singular value of the symbol-to-kernel map
    let m_inj = (n + 1).min(cfg.u_scale);
    let n_inj = (n + 1).min(cfg.t_cutoff);
    let dim_sym = (params.pow(m_inj - n) * params.pow(n_inj - n)) as usize;
    let mut cols: Vec<Complex64> = Vec::new();
    let mut rows = 0;
    for idx in 0..dim_sym {
        let mut f = Symbol::zero(params, theta.clone(), m_inj, n_inj)?;
        f.values_mut()[idx] = Complex64::new(1.0, 0.0);
        let k = kernel_formula(&f)?;
        rows = k.matrix().len();
        cols.extend_from_slice(k.matrix());
    }
    let mat = DMatrix::from_fn(rows, dim_sym, |r, c| cols[c * rows + r]);
    let sv = mat.singular_values();
    checks.push(Check::leq(
        "quantize.injectivity",
        "the symbol-to-kernel map has full rank at fixed resolution",
        &format!("p={} n={n} (m,N)=({m_inj},{n_inj})", params.prime()),
        1e-8,
        sv[sv.len() - 1],
        0.0,
    ));

    // involution of point operators and invariance in the Gamma class
    let mut inv_dev: f64 = 0.0;
    for _ in 0..10 {
        let phi = sample::random_config(&grid, &mut rng);
        let g = sample::random_group_element(&grid, &gamma, prec, &mut rng);
        let once = omega_point(g.u(), g.t(), &phi, &theta)?;
        let twice = omega_point(g.u(), g.t(), &once, &theta)?;
        let phi_f = phi.refine(twice.scale())?;
        for (x, y) in twice.values().iter().zip(phi_f.values()) {
            inv_dev = inv_dev.max((x - y).norm());
        }
        let shifted = g.t().add(&PAdicScalar::from_rational(
            params.prime(),
            1,
            params.pow(n) as i64,
            prec,
        ));
        let other = omega_point(g.u(), &shifted, &phi, &theta)?;
        for (x, y) in once.values().iter().zip(other.values()) {
            inv_dev = inv_dev.max((x - y).norm());
        }
    }
    checks.push(Check::residual(
        "quantize.point_involution",
        "Omega([g])^2 = Id and Omega([g]) depends on t only through [t]",
        &span,
        inv_dev,
        1e-12 * cfg.tol_factor,
    ));

    let mut rt_dev: f64 = 0.0;
    for _ in 0..50 {
        let f = sample::random_symbol(params, &theta, cfg.u_scale, cfg.t_cutoff, &mut rng);
        rt_dev = rt_dev.max(symbol_of_operator(&quantize_direct(&f)?, &theta)?.max_diff(&f)?);
    }
    checks.push(Check::residual(
        "quantize.symbol_round_trip",
        "symbol_of_operator(Omega(f)) = f",
        &format!("{span} 50 random symbols"),
        rt_dev,
        1e-10 * cfg.tol_factor,
    ));

    Ok(checks)
}

// ----------------------------------------------------------------- star --

fn suite_star(cfg: &RunConfig) -> Result<Vec<Check>> {
    let (params, theta) = cfg.validate()?;
    let n = params.level();
    let span = cfg.scale_summary();
    let prec = params.working_precision(cfg.u_scale + n, cfg.t_cutoff) + 2;
    let mut rng = rng_for(cfg, 5);
    let mut checks = Vec::new();
    let m_small = (n + 1).min(cfg.u_scale);
    let n_small = (n + 1).min(cfg.t_cutoff);

    let mut route_dev: f64 = 0.0;
    for _ in 0..50 {
        let f1 = sample::random_symbol(params, &theta, cfg.u_scale, cfg.t_cutoff, &mut rng);
        let f2 = sample::random_symbol(params, &theta, cfg.u_scale, cfg.t_cutoff, &mut rng);
        route_dev =
            route_dev.max(star_via_operators(&f1, &f2)?.max_diff(&star_via_kernel(&f1, &f2)?)?);
    }
    checks.push(Check::residual(
        "star.route_agreement",
        "operator-composition route = three-point-kernel route",
        &format!("{span} 50 random pairs"),
        route_dev,
        1e-9 * cfg.tol_factor,
    ));

    let mut assoc_dev: f64 = 0.0;
    for _ in 0..10 {
        let f1 = sample::random_symbol(params, &theta, m_small, n_small, &mut rng);
        let f2 = sample::random_symbol(params, &theta, m_small, n_small, &mut rng);
        let f3 = sample::random_symbol(params, &theta, m_small, n_small, &mut rng);
        let lhs = star_via_operators(&star_via_operators(&f1, &f2)?, &f3)?;
        let rhs = star_via_operators(&f1, &star_via_operators(&f2, &f3)?)?;
        assoc_dev = assoc_dev.max(lhs.max_diff(&rhs)?);
    }
    checks.push(Check::residual(
        "star.associativity",
        "(f1 * f2) * f3 = f1 * (f2 * f3)",
        &format!(
            "p={} n={n} (m,N)=({m_small},{n_small}), 10 random triples",
            params.prime()
        ),
        assoc_dev,
        1e-9 * cfg.tol_factor,
    ));

    let f = sample::random_symbol(params, &theta, m_small, n_small, &mut rng);
    let one = Symbol::one(params, theta.clone(), m_small, m_small.max(n_small))?;
    let neutral_dev = star_via_operators(&one, &f)?
        .max_diff(&f)?
        .max(star_via_operators(&f, &one)?.max_diff(&f)?);
    checks.push(Check::residual(
        "star.unit_neutral",
        "1 * f = f * 1 = f",
        &span,
        neutral_dev,
        1e-10 * cfg.tol_factor,
    ));

    let mut trac_dev: f64 = 0.0;
    for _ in 0..10 {
        let f1 = sample::random_symbol(params, &theta, m_small, n_small, &mut rng);
        let f2 = sample::random_symbol(params, &theta, m_small, n_small, &mut rng);
        let (lhs, rhs) = crate::star::traciality_check(&f1, &f2)?;
        trac_dev = trac_dev.max((lhs - rhs).norm());
    }
    let (lhs, _) = crate::star::traciality_check(&f, &f.conj())?;
    trac_dev = trac_dev.max((lhs.re - f.norm_sq()).abs()).max(lhs.im.abs());
    checks.push(Check::residual(
        "star.traciality",
        "int (f1 * f2) = int f1 f2",
        &format!("{span} 10 random pairs + polarization"),
        trac_dev,
        1e-9 * cfg.tol_factor,
    ));

    let grid = UnitCosetGrid::new(params, m_small)?;
    let gamma = GammaGrid::new(params, n_small)?;
    let mut cov_dev: f64 = 0.0;
    for _ in 0..6 {
        let f1 = sample::random_symbol(params, &theta, m_small, n_small, &mut rng);
        let f2 = sample::random_symbol(params, &theta, m_small, n_small, &mut rng);
        let gu = GroupElement::new(
            grid.rep_scalar(1 % grid.len(), prec),
            PAdicScalar::zero(params.prime()),
        )?;
        cov_dev = cov_dev.max(covariance_check(&f1, &f2, &gu)?);
        let gt = GroupElement::new(
            PAdicScalar::one(params.prime(), prec),
            gamma.rep_scalar(1 % gamma.len(), prec),
        )?;
        cov_dev = cov_dev.max(covariance_check(&f1, &f2, &gt)?);
        let g = sample::random_group_element(&grid, &gamma, prec, &mut rng);
        cov_dev = cov_dev.max(covariance_check(&f1, &f2, &g)?);
    }
    checks.push(Check::residual(
        "star.left_covariance",
        "lambda_g(f1 * f2) = lambda_g(f1) * lambda_g(f2)",
        &span,
        cov_dev,
        1e-9 * cfg.tol_factor,
    ));

    let p1 = sample::random_config(&grid, &mut rng);
    let p2 = sample::random_config(&grid, &mut rng);
    let p3 = sample::random_config(&grid, &mut rng);
    let p4 = sample::random_config(&grid, &mut rng);
    let lhs = star_via_operators(&wigner(&p1, &p2, &theta)?, &wigner(&p3, &p4, &theta)?)?;
    let c = p1.inner(&p4)?;
    let mut rhs = wigner(&p3, &p2, &theta)?;
    rhs.values_mut().iter_mut().for_each(|v| *v *= c);
    checks.push(Check::residual(
        "star.rank_one_rule",
        "W_{p1,p2} * W_{p3,p4} = <p1, p4> W_{p3,p2}",
        &span,
        lhs.max_diff(&rhs)?,
        1e-9 * cfg.tol_factor,
    ));

    let f1 = sample::random_symbol(params, &theta, m_small, n_small, &mut rng);
    let f2 = sample::random_symbol(params, &theta, m_small, n_small, &mut rng);
    let inv_dev = star_via_operators(&f1, &f2)?
        .conj()
        .max_diff(&star_via_operators(&f2.conj(), &f1.conj())?)?;
    checks.push(Check::residual(
        "star.involution",
        "conj(f1 * f2) = conj(f2) * conj(f1)",
        &span,
        inv_dev,
        1e-10 * cfg.tol_factor,
    ));

    let kernel = ThreePointKernel::new(params, theta.clone());
    let q2n = params.powi(2 * n as i64);
    let mut mod_dev: f64 = 0.0;
    let mut inv_bad = 0u64;
    for _ in 0..30 {
        let g = sample::random_group_element(&grid, &gamma, prec, &mut rng);
        let g1 = sample::random_group_element(&grid, &gamma, prec, &mut rng);
        let g2 = sample::random_group_element(&grid, &gamma, prec, &mut rng);
        mod_dev = mod_dev.max((kernel.eval(&g, &g1, &g2)?.norm() - q2n).abs());
        let h = sample::random_group_element(&grid, &gamma, prec, &mut rng);
        let lhs = kernel.eval_angle(&h.compose(&g), &h.compose(&g1), &h.compose(&g2))?;
        if lhs != kernel.eval_angle(&g, &g1, &g2)? {
            inv_bad += 1;
        }
    }
    checks.push(Check::residual(
        "star.kernel_modulus",
        "|K3| = q^{2n}",
        &span,
        mod_dev,
        1e-12 * cfg.tol_factor,
    ));
    checks.push(Check::residual(
        "star.kernel_diagonal_invariance",
        "K3(h g, h g1, h g2) = K3(g, g1, g2), exact at the angle level",
        &span,
        inv_bad as f64,
        0.0,
    ));

    let mut sup_bad = 0u64;
    for _ in 0..10 {
        let f1 = sample::random_symbol(params, &theta, m_small, n_small, &mut rng);
        let f2 = sample::random_symbol(params, &theta, m_small, n_small, &mut rng);
        let prod = star_via_kernel(&f1, &f2)?;
        let vol = params.powi(-(n as i64)) * params.pow(n_small - n) as f64;
        let bound = q2n * vol * vol * f1.sup_norm() * f2.sup_norm();
        if prod.sup_norm() > bound + 1e-12 {
            sup_bad += 1;
        }
    }
    checks.push(Check::residual(
        "star.sup_bound",
        "||f1 * f2||_inf <= q^{2n} Vol(Supp f1) Vol(Supp f2) ||f1||_inf ||f2||_inf",
        &span,
        sup_bad as f64,
        0.0,
    ));

    Ok(checks)
}

// ------------------------------------------------------------- calculus --

fn suite_calculus(cfg: &RunConfig) -> Result<Vec<Check>> {
    let (params, theta) = cfg.validate()?;
    let n = params.level();
    let p = params.prime() as f64;
    let span = cfg.scale_summary();
    let prec = params.working_precision(cfg.u_scale + n, cfg.t_cutoff) + 2;
    let mut rng = rng_for(cfg, 6);
    let mut checks = Vec::new();

    // kernel values against the brute-force shell-sum oracle
    let mut ks_dev: f64 = 0.0;
    for s in [-2.0, -3.0, -4.0] {
        let k = KsKernel::new(params, s)?;
        for v in n..=(n + 4) {
            let ball = |j: i64| if v as i64 >= j { p.powi(j as i32) } else { 0.0 };
            let mut oracle = ball(n as i64);
            for j in (n + 1)..=(n + 25) {
                oracle += p.powf(s * (j - n) as f64) * (ball(j as i64) - ball(j as i64 - 1));
            }
            ks_dev = ks_dev.max((k.kappa(v) - oracle).abs());
        }
    }
    checks.push(Check::residual(
        "calculus.kernel_oracle",
        "closed-form kappa_s(v) matches the truncated shell-sum oracle",
        &format!("{span} s in {{-2,-3,-4}}, v = n..n+4"),
        ks_dev,
        1e-10 * cfg.tol_factor,
    ));

    let mut shell = 0.0;
    for j in 1..=60 {
        let w = p.powi(n as i32 + j) - p.powi(n as i32 + j - 1);
        shell += p.powf(-2.0 * j as f64) * w;
    }
    let oracle = p.powi(n as i32) + shell;
    checks.push(Check::close(
        "calculus.mu0_l1",
        "closed-form ||mu_0^{-2}||_1 matches the shell-sum oracle",
        &span,
        mu0_l1_norm(params, -2.0)?,
        oracle,
        1e-12 * cfg.tol_factor,
    ));

    let m_eff = cfg.u_scale.max(cfg.t_cutoff + n);
    let calc = JCalculus::new(params, m_eff, cfg.t_cutoff)?;
    let dim = calc.dim();
    let jspan = format!(
        "p={} n={n} (m,N)=({m_eff},{})",
        params.prime(),
        cfg.t_cutoff
    );

    checks.push(Check::residual(
        "calculus.j_zero_identity",
        "J^0 = Id",
        &jspan,
        (calc.power(0.0) - DMatrix::<f64>::identity(dim, dim))
            .abs()
            .max(),
        1e-13 * cfg.tol_factor,
    ));

    let j2 = calc.direct_matrix(-2.0)?;
    let j4 = calc.direct_matrix(-4.0)?;
    let semigroup = (&j2 * &j2 - &j4).abs().max();
    let mixed = (&j2 * calc.direct_matrix(-3.0)? - calc.direct_matrix(-5.0)?)
        .abs()
        .max();
    let spectral = (calc.power(-2.0) - &j2)
        .abs()
        .max()
        .max((calc.power(-3.0) - calc.direct_matrix(-3.0)?).abs().max());
    let half = calc.power(-1.5);
    let frac_pair = (&half * &half - calc.power(-3.0)).abs().max();
    checks.push(Check::residual(
        "calculus.semigroup",
        "J^{s1} J^{s2} = J^{s1+s2} (direct assembly and spectral powers)",
        &jspan,
        semigroup.max(mixed).max(frac_pair),
        1e-9 * cfg.tol_factor,
    ));
    checks.push(Check::residual(
        "calculus.spectral_consistency",
        "spectral (J^{-2})^{-s/2} matches directly assembled J^s for s < -1",
        &jspan,
        spectral,
        1e-9 * cfg.tol_factor,
    ));

    checks.push(Check::leq(
        "calculus.positive_definite",
        "J^{-2} is positive definite",
        &jspan,
        0.0,
        calc.min_eigenvalue(),
        0.0,
    ));

    // eigenrelation on every representable frequency
    let mut eig_dev: f64 = 0.0;
    for j in 0..params.pow(m_eff) {
        let x = if j == 0 {
            PAdicScalar::zero(params.prime())
        } else {
            PAdicScalar::from_rational(params.prime(), j as i64, params.pow(m_eff) as i64, prec)
        };
        let mut f = Symbol::zero(params, theta.clone(), m_eff, cfg.t_cutoff)?;
        for c in 0..calc.ugrid().len() {
            let v = x.mul(&calc.ugrid().rep_scalar(c, prec)).psi()?;
            for b in 0..calc.gamma().len() {
                f.set_value(c, b, v);
            }
        }
        let mu = padic::mu0_pow(&x, n, -2.0);
        let jf = calc.apply(-2.0, &f)?;
        let mut expect = f.clone();
        expect.values_mut().iter_mut().for_each(|v| *v *= mu);
        eig_dev = eig_dev.max(jf.max_diff(&expect)?);
    }
    checks.push(Check::residual(
        "calculus.eigenrelation",
        "J^s Psi_x = mu_0^s(x) Psi_x for every grid frequency",
        &jspan,
        eig_dev,
        1e-9 * cfg.tol_factor,
    ));

    let f = sample::random_symbol(params, &theta, m_eff, cfg.t_cutoff, &mut rng);
    let ji = calc.apply(-2.0, &calc.apply_decay_weight(1, &f)?)?;
    let ij = calc.apply_decay_weight(1, &calc.apply(-2.0, &f)?)?;
    checks.push(Check::residual(
        "calculus.decay_commutes",
        "the decay weight I commutes with J",
        &jspan,
        ji.max_diff(&ij)?,
        1e-10 * cfg.tol_factor,
    ));

    // product inequality and the ideal property
    let c0 = params.powi(-2 * n as i64) * mu0_l1_norm(params, -2.0)?.powi(2);
    let mut bad_prod = 0u64;
    let mut bad_ideal = 0u64;
    for _ in 0..100 {
        let f1 = sample::random_symbol(params, &theta, m_eff, cfg.t_cutoff, &mut rng);
        let f2 = sample::random_symbol(params, &theta, m_eff, cfg.t_cutoff, &mut rng);
        let prod = f1.pointwise_mul(&f2)?;
        let bj = b_seminorms(&prod, 1)?;
        let b1 = b_seminorms(&f1, 3)?;
        let b2 = b_seminorms(&f2, 3)?;
        for j in 0..=1usize {
            let lhs = bj.entries[j].value;
            let rhs = c0 * b1.entries[j + 2].value * b2.entries[j + 2].value;
            if lhs > rhs + 1e-9 * rhs.max(1.0) {
                bad_prod += 1;
            }
        }
        let s_prod = s_seminorms(&prod, 0, 1)?;
        let s_f1 = s_seminorms(&f1, 2, 1)?;
        let lhs = s_prod
            .entries
            .iter()
            .find(|e| e.decay == 1 && e.regularity == 0)
            .unwrap()
            .value;
        let rhs = c0
            * s_f1
                .entries
                .iter()
                .find(|e| e.decay == 1 && e.regularity == 2)
                .unwrap()
                .value
            * b2.entries[2].value;
        if lhs > rhs + 1e-9 * rhs.max(1.0) {
            bad_ideal += 1;
        }
    }
    checks.push(Check::residual(
        "calculus.product_inequality",
        "||J^j(F1 F2)||_inf <= q^{-2n} ||mu_0^{-2}||_1^2 ||J^{j+2}F1||_inf ||J^{j+2}F2||_inf",
        &format!("{jspan} 100 random pairs"),
        bad_prod as f64,
        0.0,
    ));
    checks.push(Check::residual(
        "calculus.ideal_inequality",
        "||J^k I^j (f F)||_inf <= q^{-2n} ||mu_0^{-2}||_1^2 ||J^{k+2} I^j f||_inf ||J^{k+2}F||_inf",
        &format!("{jspan} 100 random pairs"),
        bad_ideal as f64,
        0.0,
    ));

    // coherent Wigner states: consistency, support, J^s integrand formula
    let m_small = (n + 1).min(cfg.u_scale);
    let small_grid = UnitCosetGrid::new(params, m_small)?;
    let small_gamma = GammaGrid::new(params, (n + 1).min(cfg.t_cutoff))?;
    let base = UnitCosetGrid::new(params, n)?;
    let one = ConfigFunction::indicator(base);
    let mut coh_dev: f64 = 0.0;
    let mut support_leak: f64 = 0.0;
    let mut js_dev: f64 = 0.0;
    for _ in 0..4 {
        let g = sample::random_group_element(&small_grid, &small_gamma, prec, &mut rng);
        let direct = coherent_wigner(&g, &theta, params)?;
        let moved = pi_apply(&g, &one, &theta)?;
        let via_wigner = wigner(&one.refine(moved.scale())?, &moved, &theta)?;
        coh_dev = coh_dev.max(direct.max_diff(&via_wigner)?);

        // one shell beyond the derived t-support
        let cut = direct.t_cutoff() + 1;
        let mut ev = CoherentEvaluator::new(params, theta.clone(), None);
        for c in 1..params.pow(cut) {
            if c % params.prime() == 0 {
                continue;
            }
            let t2 =
                PAdicScalar::from_rational(params.prime(), c as i64, params.pow(cut) as i64, prec);
            support_leak = support_leak.max(
                ev.wigner_at(&g, &PAdicScalar::one(params.prime(), prec), &t2)?
                    .norm(),
            );
        }

        let (jc, refined) = JCalculus::for_symbol(&direct)?;
        let via_matrix = jc.apply(-3.0, &refined)?;
        let mut evs = CoherentEvaluator::new(params, theta.clone(), Some(-3.0));
        for c in 0..jc.ugrid().len() {
            let u2 = jc.ugrid().rep_scalar(c, prec);
            for b in 0..jc.gamma().len() {
                let d = evs.wigner_at(&g, &u2, &jc.gamma().rep_scalar(b, prec))?;
                js_dev = js_dev.max((d - via_matrix.value(c, b)).norm());
            }
        }
    }
    checks.push(Check::residual(
        "calculus.coherent_consistency",
        "explicit coherent Wigner formula = wigner(1, pi(g) 1)",
        &span,
        coh_dev,
        1e-12 * cfg.tol_factor,
    ));
    checks.push(Check::residual(
        "calculus.coherent_support",
        "coherent Wigner values vanish beyond the derived t-support",
        &span,
        support_leak,
        1e-13 * cfg.tol_factor,
    ));
    checks.push(Check::residual(
        "calculus.js_integrand",
        "J^s W_g by the mu_0-weighted integrand = J-matrix application",
        &span,
        js_dev,
        1e-9 * cfg.tol_factor,
    ));

    // omega weight: Peetre inequality and inversion invariance
    let wgrid = UnitCosetGrid::new(params, cfg.u_scale)?;
    let wgamma = GammaGrid::new(params, cfg.t_cutoff + 1)?;
    let mut bad_omega = 0u64;
    for _ in 0..100 {
        let g = sample::random_group_element(&wgrid, &wgamma, prec, &mut rng);
        let h = sample::random_group_element(&wgrid, &wgamma, prec, &mut rng);
        for s in [-2.0, -1.0, 1.0] {
            let a = omega_weight(s, &g, n);
            if (a - omega_weight(s, &g.inverse(), n)).abs() > 1e-12 {
                bad_omega += 1;
            }
            let other = if s >= 0.0 { s } else { -s };
            if omega_weight(s, &g.compose(&h), n)
                > 2.0 * a * omega_weight(other, &h, n) * (1.0 + 1e-12)
            {
                bad_omega += 1;
            }
        }
    }
    checks.push(Check::residual(
        "calculus.omega_peetre",
        "omega_s(g g') <= 2 omega_s(g) omega_{+-s}(g'); omega_s(g) = omega_s(g^{-1})",
        &span,
        bad_omega as f64,
        0.0,
    ));

    // reconstruction round trip at the small scale
    let n_small = (n + 1).min(cfg.t_cutoff);
    let mut rec_dev: f64 = 0.0;
    let mut warned = 0u64;
    for _ in 0..20 {
        let f = sample::random_symbol(params, &theta, m_small, n_small, &mut rng);
        let k = quantize_direct(&f)?;
        let (back, diag) = calculus::reconstruct_symbol(&k, &theta, -3.0)?;
        rec_dev = rec_dev.max(back.max_diff(&f)?);
        if diag.decay_warning {
            warned += 1;
        }
    }
    let id = OperatorKernel::identity(UnitCosetGrid::new(params, m_small)?);
    let (back, _) = calculus::reconstruct_symbol(&id, &theta, -3.0)?;
    rec_dev = rec_dev.max(back.max_diff(&Symbol::one(params, theta.clone(), m_small, m_small)?)?);
    checks.push(Check::residual(
        "calculus.reconstruction",
        "reconstruct_symbol(Omega(F)) = F from coherent matrix coefficients",
        &format!(
            "p={} n={n} (m,N)=({m_small},{n_small}), 20 random symbols + identity",
            params.prime()
        ),
        rec_dev + warned as f64,
        1e-8 * cfg.tol_factor,
    ));

    // composition closure
    let f1 = sample::random_symbol(params, &theta, m_small, n_small, &mut rng);
    let f2 = sample::random_symbol(params, &theta, m_small, n_small, &mut rng);
    let pinned = compose_bounded_check(&f1, &f2, -3.0, -3.0, 20, &mut rng)?;
    let finite = compose_bounded_check(&f1, &f2, -3.0, -1.5, 20, &mut rng)?;
    checks.push(Check::residual(
        "calculus.compose_closure",
        "Omega(F1) Omega(F2) = Omega(F3) with F3 the star product, finite seminorms, coherent coefficients dominated",
        &format!("{span} (s1,s2) in {{(-3,-3),(-3,-1.5)}}"),
        if pinned.pass && finite.pass { 0.0 } else { 1.0 } + pinned.star_diff.max(finite.star_diff),
        1e-9 * cfg.tol_factor,
    ));

    Ok(checks)
}

// ------------------------------------------------------------------- cv --

fn suite_cv(cfg: &RunConfig) -> Result<Vec<Check>> {
    let (params, theta) = cfg.validate()?;
    let n = params.level();
    let span = cfg.scale_summary();
    let prec = params.working_precision(cfg.u_scale + n, cfg.t_cutoff) + 2;
    let mut rng = rng_for(cfg, 7);
    let mut checks = Vec::new();
    let s = -3.0;

    // 200 random symbols, certified in parallel
    let symbols: Vec<Symbol> = (0..200)
        .map(|_| sample::random_symbol(params, &theta, cfg.u_scale, cfg.t_cutoff, &mut rng))
        .collect();
    let reports = symbols
        .par_iter()
        .map(|f| cv_certify(f, s))
        .collect::<Result<Vec<_>>>()?;
    let worst = reports
        .iter()
        .map(|r| r.op_norm / r.bound.max(1e-300))
        .fold(0.0f64, f64::max);
    checks.push(Check::leq(
        "cv.random_sweep",
        "op norm of Omega(F) <= (q^n + ||mu_0^{s+1}||_1) ||J^{-s}F||_inf at s = -3",
        &format!("{span} 200 random symbols, worst ratio"),
        worst,
        1.0,
        1e-9 * cfg.tol_factor,
    ));

    // adversarial symbols: pure characters, delta-like, rank-one Wigner
    let mut adv_worst: f64 = 0.0;
    let m_eff = cfg.u_scale.max(cfg.t_cutoff + n);
    for j in 0..params.pow(m_eff) {
        let x = if j == 0 {
            PAdicScalar::zero(params.prime())
        } else {
            PAdicScalar::from_rational(params.prime(), j as i64, params.pow(m_eff) as i64, prec)
        };
        let grid = UnitCosetGrid::new(params, m_eff)?;
        let gamma = GammaGrid::new(params, cfg.t_cutoff)?;
        let mut vals = vec![ZERO; grid.len() * gamma.len()];
        for c in 0..grid.len() {
            let v = x.mul(&grid.rep_scalar(c, prec)).psi()?;
            for b in 0..gamma.len() {
                vals[c * gamma.len() + b] = v;
            }
        }
        let f = Symbol::new(grid, gamma, theta.clone(), vals)?;
        let r = cv_certify(&f, s)?;
        adv_worst = adv_worst.max(r.op_norm / r.bound);
    }
    for idx in 0..((params.pow(cfg.u_scale - n) * params.pow(cfg.t_cutoff - n)) as usize).min(12) {
        let mut f = Symbol::zero(params, theta.clone(), cfg.u_scale, cfg.t_cutoff)?;
        f.values_mut()[idx] = Complex64::new(1.0, 0.0);
        let r = cv_certify(&f, s)?;
        adv_worst = adv_worst.max(r.op_norm / r.bound);
    }
    let small = UnitCosetGrid::new(params, (n + 1).min(cfg.u_scale))?;
    for _ in 0..5 {
        let mut phi = sample::random_config(&small, &mut rng);
        let norm = phi.norm_sq().sqrt();
        phi.values_mut().iter_mut().for_each(|v| *v /= norm);
        let r = cv_certify(&wigner(&phi, &phi, &theta)?, s)?;
        adv_worst = adv_worst.max(r.op_norm / r.bound);
        if (r.op_norm - 1.0).abs() > 1e-9 {
            adv_worst = adv_worst.max(2.0);
        }
    }
    checks.push(Check::leq(
        "cv.adversarial",
        "certificate holds on characters, deltas, and rank-one Wigner projectors",
        &span,
        adv_worst,
        1.0,
        1e-9 * cfg.tol_factor,
    ));

    // integrated coherent-state bound
    let truncation = n + if params.prime() == 3 { 3 } else { 2 };
    let integral = js_wigner_l1(params, &theta, s, truncation)?;
    let bound = params.powi(-2 * n as i64)
        * (1.0 + params.powi(-(n as i64)) * mu0_l1_norm(params, s + 1.0)?);
    checks.push(Check::leq(
        "cv.wigner_l1",
        "int int |J^s W_g| dg d[g'] <= q^{-2n}(1 + q^{-n} ||mu_0^{s+1}||_1)",
        &format!("{span} s=-3 truncation={truncation}"),
        integral,
        bound,
        1e-12 * cfg.tol_factor,
    ));

    // row-integrated coefficient bound and the pointwise coefficient bound
    let grid = UnitCosetGrid::new(params, (n + 1).min(cfg.u_scale))?;
    let gamma = GammaGrid::new(params, (n + 1).min(cfg.t_cutoff))?;
    let f = sample::random_symbol(
        params,
        &theta,
        (n + 1).min(cfg.u_scale),
        (n + 1).min(cfg.t_cutoff),
        &mut rng,
    );
    let kernel = quantize_direct(&f)?;
    let (calc, refined) = JCalculus::for_symbol(&f)?;
    let norm_js = calc.seminorm(-s, &refined)?;
    let mut row_worst: f64 = 0.0;
    for _ in 0..3 {
        let g1 = sample::random_group_element(&grid, &gamma, prec, &mut rng);
        let lhs = coherent_row_l1(&kernel, &theta, &g1)?;
        let rhs = params.powi(-(n as i64))
            * (1.0 + params.powi(-(n as i64)) * mu0_l1_norm(params, s + 1.0)?)
            * norm_js;
        row_worst = row_worst.max(lhs / rhs);
    }
    checks.push(Check::leq(
        "cv.row_integral",
        "sup_g1 int |<pi(g1)1, Omega(F) pi(g2)1>| dg2 <= q^{-n}(1 + q^{-n}||mu_0^{s+1}||_1)||J^{-s}F||_inf",
        &format!("{span} 3 sampled g1"),
        row_worst,
        1.0,
        1e-9 * cfg.tol_factor,
    ));

    let mut slice_worst: f64 = 0.0;
    for s_slice in [-2.0, -3.0] {
        for _ in 0..5 {
            let g1 = sample::random_group_element(&grid, &gamma, prec, &mut rng);
            let (lhs, rhs) = coherent_l1_slice(params, &theta, s_slice, &g1)?;
            slice_worst = slice_worst.max(lhs / rhs);
        }
    }
    // at g1 = e the slice is exactly q^{-2n} against the bound 2 q^{-2n}
    let e = GroupElement::identity(params.prime(), prec);
    let (lhs_e, rhs_e) = coherent_l1_slice(params, &theta, s, &e)?;
    slice_worst = slice_worst.max(lhs_e / rhs_e);
    if (lhs_e - params.powi(-2 * n as i64)).abs() > 1e-12 {
        slice_worst = slice_worst.max(2.0);
    }
    checks.push(Check::leq(
        "cv.coherent_slice",
        "int_{X_n} |J^s W_{g1}| d[g2] <= q^{-2n} omega_{s+1}(g1) (sharp at g1 = e)",
        &format!("{span} s in {{-2,-3}}, 10 sampled g1 + identity"),
        slice_worst,
        1.0,
        1e-12 * cfg.tol_factor,
    ));

    let mut coeff_worst: f64 = 0.0;
    for _ in 0..10 {
        let g1 = sample::random_group_element(&grid, &gamma, prec, &mut rng);
        let g2 = sample::random_group_element(&grid, &gamma, prec, &mut rng);
        let c = calculus::coherent_coefficient(&kernel, &theta, &g1, &g2)?;
        let rhs = params.powi(-(n as i64))
            * norm_js
            * omega_weight(s + 1.0, &g1.inverse().compose(&g2), n);
        coeff_worst = coeff_worst.max(c.norm() / rhs);
    }
    checks.push(Check::leq(
        "cv.coefficient_bound",
        "|<pi(g1)1, Omega(F) pi(g2)1>| <= q^{-n} ||J^{-s}F||_inf omega_{s+1}(g1^{-1}g2)",
        &format!("{span} 10 sampled pairs"),
        coeff_worst,
        1.0,
        1e-9 * cfg.tol_factor,
    ));

    Ok(checks)
}
