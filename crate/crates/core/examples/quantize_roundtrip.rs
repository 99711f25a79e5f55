//! Quantization round trip: symbol -> operator kernel by two independent
//! routes -> symbol again, with the Hilbert-Schmidt isometry as the invariant.
//!
//!     cargo run --example quantize_roundtrip

use fuchs::quantize::{hs_isometry_check, kernel_formula, quantize_direct, symbol_of_operator};
use fuchs::repn::ThetaParam;
use fuchs::sample;
use fuchs::FieldParams;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> fuchs::Result<()> {
    let params = FieldParams::new(3, 1)?;
    let theta = ThetaParam::one(params);
    let mut rng = ChaCha8Rng::seed_from_u64(4);

    let f = sample::random_symbol(params, &theta, 3, 2, &mut rng);
    println!("symbol at (m, N) = (3, 2): {} values", f.values().len());

    let direct = quantize_direct(&f)?;
    let via_kernel = kernel_formula(&f)?;
    println!(
        "kernel scale M = {}; dense {}x{}; route difference {:.3e}",
        direct.kernel_scale(),
        direct.dim(),
        direct.dim(),
        direct.max_diff(&via_kernel)?
    );

    let (hs, qn) = hs_isometry_check(&f)?;
    println!("||Omega(f)||_HS^2 = {hs:.15}");
    println!("q^n ||f||^2       = {qn:.15}");

    let back = symbol_of_operator(&direct, &theta)?;
    println!(
        "inverse map: output resolution ({}, {}), round-trip error {:.3e}",
        back.u_scale(),
        back.t_cutoff(),
        back.max_diff(&f)?
    );
    Ok(())
}
