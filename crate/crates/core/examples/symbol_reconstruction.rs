//! Recovering a symbol from an operator: the coherent matrix coefficients
//! <pi(g1) 1, A pi(g2) 1> determine a unique symbol, computed here as an
//! exact finite double integral against conjugated Wigner states.
//!
//!     cargo run --example symbol_reconstruction

use fuchs::calculus::reconstruct_symbol;
use fuchs::harmonic::UnitCosetGrid;
use fuchs::quantize::{quantize_direct, OperatorKernel};
use fuchs::repn::ThetaParam;
use fuchs::sample;
use fuchs::FieldParams;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> fuchs::Result<()> {
    let params = FieldParams::new(3, 1)?;
    let theta = ThetaParam::one(params);
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    let f = sample::random_symbol(params, &theta, 2, 2, &mut rng);
    let kernel = quantize_direct(&f)?;
    let (back, diag) = reconstruct_symbol(&kernel, &theta, -3.0)?;
    println!(
        "round trip at (m, N) = (2, 2): max error {:.3e}, decay constant {:.4}, leakage {:.3e}",
        back.max_diff(&f)?,
        diag.decay_constant,
        diag.leakage
    );

    // the identity operator reconstructs to the constant symbol
    let id = OperatorKernel::identity(UnitCosetGrid::new(params, 2)?);
    let (one, _) = reconstruct_symbol(&id, &theta, -3.0)?;
    println!(
        "identity operator -> symbol with values in [{:.12}, {:.12}] (expected all 1)",
        one.values().iter().map(|z| z.re).fold(f64::MAX, f64::min),
        one.values().iter().map(|z| z.re).fold(f64::MIN, f64::max)
    );
    Ok(())
}
