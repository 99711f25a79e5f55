//! The unitary Fourier transforms on k = Q_p and on the discrete quotient
//! Gamma_n = k / p^{-n} O_k, with their measure normalizations.
//!
//!     cargo run --example fourier_transforms

use fuchs::harmonic::{fourier_gamma, fourier_k, DualGrid, GammaGrid, KFunction};
use fuchs::padic::FieldParams;
use fuchs::sample;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> fuchs::Result<()> {
    let params = FieldParams::new(3, 1)?;

    // the indicator of O_k is its own transform
    let f = KFunction::new(params, 0, 0, vec![Complex64::new(1.0, 0.0)])?;
    let hat = fourier_k(&f);
    println!("F_k 1_{{O_k}} at 0 = {}", hat.values()[0]);

    // Plancherel on a random locally constant function
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let f = sample::random_k_function(params, 0, 2, &mut rng);
    let hat = fourier_k(&f);
    println!(
        "||f||^2 = {:.15}, ||F_k f||^2 = {:.15}",
        f.norm_sq(),
        hat.norm_sq()
    );

    // the Gamma transform pairs the truncated grid with its mass-one dual
    let gamma = GammaGrid::new(params, 3)?;
    let vals = sample::random_complex_vec(gamma.len(), &mut rng);
    let dual = fourier_gamma(&gamma, &vals);
    let lhs: f64 = vals.iter().map(|z| z.norm_sqr()).sum();
    let rhs: f64 = dual.iter().map(|z| z.norm_sqr()).sum::<f64>() * DualGrid::of(&gamma).weight();
    println!("Gamma-grid Plancherel: {lhs:.15} = {rhs:.15}");

    // F_k of the periodization agrees with q^n F_Gamma on dual points
    let periodized = KFunction::new(params, -3, -1, vals.clone())?;
    let lift = fourier_k(&periodized);
    let worst = (0..gamma.len())
        .map(|c| (lift.values()[c] - 3.0 * dual[c]).norm())
        .fold(0.0f64, f64::max);
    println!("max |F_k(periodization) - q^n F_Gamma| = {worst:.3e}");
    Ok(())
}
