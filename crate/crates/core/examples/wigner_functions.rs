//! Wigner symbols: the matrix coefficients of the point operators.  They
//! invert the quantization on rank-one operators and obey a sharp sup bound.
//!
//!     cargo run --example wigner_functions

use fuchs::harmonic::UnitCosetGrid;
use fuchs::quantize::{quantize_direct, wigner, OperatorKernel};
use fuchs::repn::ThetaParam;
use fuchs::sample;
use fuchs::FieldParams;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> fuchs::Result<()> {
    let params = FieldParams::new(3, 1)?;
    let theta = ThetaParam::one(params);
    let grid = UnitCosetGrid::new(params, 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);

    let phi1 = sample::random_config(&grid, &mut rng);
    let phi2 = sample::random_config(&grid, &mut rng);
    let w = wigner(&phi1, &phi2, &theta)?;
    println!(
        "W_{{phi1,phi2}} lives at resolution (m, N) = ({}, {}) with {} grid values",
        w.u_scale(),
        w.t_cutoff(),
        w.values().len()
    );
    println!(
        "sup |W| = {:.12} <= q^-n ||phi1||_inf ||phi2||_inf = {:.12}",
        w.sup_norm(),
        (1.0 / 3.0) * phi1.sup_norm() * phi2.sup_norm()
    );

    // quantizing the Wigner symbol recovers the rank-one operator
    let quantized = quantize_direct(&w)?;
    let rank_one = OperatorKernel::rank_one(&phi2, &phi1)?;
    println!(
        "max |Omega(W) - |phi2><phi1|| = {:.3e}",
        quantized.max_diff(&rank_one)?
    );

    // and its trace is the inner product <phi1, phi2>
    println!(
        "tr Omega(W) = {:.12}   <phi1, phi2> = {:.12}",
        quantized.trace(),
        phi1.inner(&phi2)?
    );
    Ok(())
}
