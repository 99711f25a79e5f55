//! The operator-norm certificate: the norm of a quantized symbol is
//! controlled by finitely many J-regularity seminorms,
//!   ||Omega(F)|| <= (q^n + ||mu_0^{s+1}||_1) ||J^{-s} F||_inf,  s < -2.
//!
//!     cargo run --example calderon_vaillancourt

use fuchs::calculus::{cv_certify, js_wigner_l1, mu0_l1_norm};
use fuchs::repn::ThetaParam;
use fuchs::sample;
use fuchs::FieldParams;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> fuchs::Result<()> {
    let params = FieldParams::new(3, 1)?;
    let theta = ThetaParam::one(params);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let s = -3.0;

    println!(
        "||mu_0^{{-2}}||_1 = {} (so the bound constant is 3 + 4 = 7)",
        mu0_l1_norm(params, -2.0)?
    );

    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let f = sample::random_symbol(params, &theta, 3, 2, &mut rng);
        let report = cv_certify(&f, s)?;
        worst = worst.max(report.op_norm / report.bound);
        if i < 3 {
            println!(
                "op norm {:.6}  <=  {} * ||J^3 F||_inf = {:.6}   (ratio {:.3})",
                report.op_norm,
                report.coefficient,
                report.bound,
                report.op_norm / report.bound
            );
        }
    }
    println!("worst ratio over 20 random symbols: {worst:.4}");

    // the integrated coherent-state estimate behind the proof
    let integral = js_wigner_l1(params, &theta, s, 4)?;
    println!(
        "int int |J^s W_g| dg d[g'] = {integral:.6} <= 7/27 = {:.6}",
        7.0 / 27.0
    );
    Ok(())
}
