//! Deterministic random inputs for tests and verification sweeps.
//!
//! Everything is driven by a seeded ChaCha stream so a fixed seed reproduces
//! bit-identical values on every platform.

use crate::harmonic::{ConfigFunction, GammaGrid, KFunction, UnitCosetGrid};
use crate::padic::{FieldParams, PAdicScalar};
use crate::quantize::Symbol;
use crate::repn::{GroupElement, ThetaParam};
use num_complex::Complex64;
use rand::Rng;

pub fn random_complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(
        rng.random::<f64>() * 2.0 - 1.0,
        rng.random::<f64>() * 2.0 - 1.0,
    )
}

pub fn random_complex_vec(len: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    (0..len).map(|_| random_complex(rng)).collect()
}

pub fn random_config(grid: &UnitCosetGrid, rng: &mut impl Rng) -> ConfigFunction {
    ConfigFunction::new(grid.clone(), random_complex_vec(grid.len(), rng)).expect("matching length")
}

pub fn random_k_function(
    params: FieldParams,
    support_scale: i64,
    invariance_scale: i64,
    rng: &mut impl Rng,
) -> KFunction {
    let len = params
        .prime()
        .pow((invariance_scale - support_scale) as u32) as usize;
    KFunction::new(
        params,
        support_scale,
        invariance_scale,
        random_complex_vec(len, rng),
    )
    .expect("matching length")
}

pub fn random_symbol(
    params: FieldParams,
    theta: &ThetaParam,
    u_scale: u32,
    t_cutoff: u32,
    rng: &mut impl Rng,
) -> Symbol {
    let ugrid = UnitCosetGrid::new(params, u_scale).expect("valid scale");
    let gamma = GammaGrid::new(params, t_cutoff).expect("valid cutoff");
    let values = random_complex_vec(ugrid.len() * gamma.len(), rng);
    Symbol::new(ugrid, gamma, theta.clone(), values).expect("matching length")
}

/// A group element with u drawn from the scale-m coset reps and t from the
/// Gamma grid representatives (t = 0 included).
pub fn random_group_element(
    ugrid: &UnitCosetGrid,
    gamma: &GammaGrid,
    prec: u32,
    rng: &mut impl Rng,
) -> GroupElement {
    let i = rng.random_range(0..ugrid.len());
    let b = rng.random_range(0..gamma.len());
    GroupElement::new(ugrid.rep_scalar(i, prec), gamma.rep_scalar(b, prec)).expect("rep is a unit")
}

/// A t-value ranging over classes mod O_k with valuation >= -depth:
/// t = j / p^depth for a uniform j.
pub fn random_translation(
    params: FieldParams,
    depth: u32,
    prec: u32,
    rng: &mut impl Rng,
) -> PAdicScalar {
    let j = rng.random_range(0..params.pow(depth));
    if j == 0 {
        return PAdicScalar::zero(params.prime());
    }
    PAdicScalar::from_rational(params.prime(), j as i64, params.pow(depth) as i64, prec)
}
