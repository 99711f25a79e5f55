//! The unitary representation pi_theta of the covariance group G_n on
//! L^2(U_n): orbits of a vector, the square-integrability constant, and the
//! coherent-state resolution of the identity.
//!
//!     cargo run --example representation_orbit

use fuchs::harmonic::{ConfigFunction, GammaGrid, UnitCosetGrid};
use fuchs::padic::PAdicScalar;
use fuchs::repn::{coherent_resolve, orthogonality_integral, pi_apply, GroupElement, ThetaParam};
use fuchs::sample;
use fuchs::FieldParams;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> fuchs::Result<()> {
    let params = FieldParams::new(3, 1)?;
    let theta = ThetaParam::one(params);
    let grid = UnitCosetGrid::new(params, 2)?;
    let gamma = GammaGrid::new(params, 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(2);

    // a pure translation refines the grid: the character oscillates below m
    let phi = ConfigFunction::indicator(grid.clone());
    let g = GroupElement::new(PAdicScalar::one(3, 12), gamma.rep_scalar(1, 12))?;
    let moved = pi_apply(&g, &phi, &theta)?;
    println!(
        "pi(1, t) 1_U at |t| = 9 lives at scale {} (input scale {})",
        moved.scale(),
        phi.scale()
    );
    println!("norms: {:.15} -> {:.15}", phi.norm_sq(), moved.norm_sq());

    // the square-integrability constant: the integral over G_n of the
    // squared coefficients is |theta|^{-1} ||phi1||^2 ||phi2||^2
    let one = ConfigFunction::indicator(UnitCosetGrid::new(params, 1)?);
    let got = orthogonality_integral(&one, &one, &theta, 1)?;
    println!("int |<1_U, pi(g) 1_U>|^2 dg = {got:.15}  (expected 1/9)");

    // polarized resolution of the identity against a random mother wavelet
    let phi1 = sample::random_config(&grid, &mut rng);
    let phi2 = sample::random_config(&grid, &mut rng);
    let mother = sample::random_config(&grid, &mut rng);
    let resolved = coherent_resolve(&phi1, &phi2, &mother, &theta, 2)?;
    let direct = phi1.inner(&phi2)?;
    println!("coherent resolution: {resolved:.12}  direct inner product: {direct:.12}");
    Ok(())
}
