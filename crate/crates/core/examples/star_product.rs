//! The noncommutative star product on phase-space symbols, by operator
//! composition and by the explicit three-point kernel, with traciality and
//! left covariance.
//!
//!     cargo run --example star_product

use fuchs::harmonic::{GammaGrid, UnitCosetGrid};
use fuchs::repn::ThetaParam;
use fuchs::sample;
use fuchs::star::{covariance_check, star_via_kernel, star_via_operators, traciality_check};
use fuchs::FieldParams;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> fuchs::Result<()> {
    let params = FieldParams::new(3, 1)?;
    let theta = ThetaParam::one(params);
    let mut rng = ChaCha8Rng::seed_from_u64(5);

    let f1 = sample::random_symbol(params, &theta, 2, 2, &mut rng);
    let f2 = sample::random_symbol(params, &theta, 2, 2, &mut rng);

    let via_ops = star_via_operators(&f1, &f2)?;
    let via_kernel = star_via_kernel(&f1, &f2)?;
    println!(
        "f1 * f2 at ({}, {}); route difference {:.3e}",
        via_ops.u_scale(),
        via_ops.t_cutoff(),
        via_ops.max_diff(&via_kernel)?
    );

    // noncommutativity is visible immediately
    let reversed = star_via_operators(&f2, &f1)?;
    println!(
        "||f1*f2 - f2*f1||_inf = {:.6}",
        via_ops.max_diff(&reversed)?
    );

    let (lhs, rhs) = traciality_check(&f1, &f2)?;
    println!("traciality: int f1*f2 = {lhs:.12}, int f1 f2 = {rhs:.12}");

    let grid = UnitCosetGrid::new(params, 2)?;
    let gamma = GammaGrid::new(params, 2)?;
    let g = sample::random_group_element(&grid, &gamma, 12, &mut rng);
    println!(
        "left covariance defect at a random point: {:.3e}",
        covariance_check(&f1, &f2, &g)?
    );
    Ok(())
}
