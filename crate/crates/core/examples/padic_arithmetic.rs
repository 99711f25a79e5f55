//! Exact arithmetic in Q_p: valuations, Hensel square roots on principal
//! units, the hyperbolic-sine-type map phi and its inverse.
//!
//!     cargo run --example padic_arithmetic

use fuchs::padic::{phi_inverse, FieldParams, PAdicScalar, PrincipalUnit};

fn main() -> fuchs::Result<()> {
    let params = FieldParams::new(3, 1)?;
    let p = params.prime();

    let x = PAdicScalar::from_integer(p, 18, 8);
    println!("val_3(18) = {:?},  |18|_3 = {}", x.valuation(), x.abs());

    let four = PrincipalUnit::new(PAdicScalar::from_integer(p, 4, 6), params.level())?;
    let root = four.sqrt()?;
    println!(
        "sqrt(4) in U_1(Q_3) = ... = {} mod 3^6  (square: {} mod 3^6)",
        root.scalar().mantissa_mod(6)?,
        root.square().scalar().mantissa_mod(6)?
    );

    let z = four.phi();
    println!(
        "phi(4) = 4 - 1/4 = 15/4: valuation {:?}, mantissa {} mod 3^5",
        z.valuation(),
        z.mantissa_mod(5)?
    );
    let back = phi_inverse(&z, params.level())?;
    println!(
        "phi_inverse(15/4) = {} mod 3^6",
        back.scalar().mantissa_mod(6)?
    );

    // the additive character Psi(t) = e^{2 pi i {t}_p}
    let t = PAdicScalar::from_rational(p, 5, 9, 8);
    let angle = t.fractional_part()?;
    println!(
        "frac(5/9) = {:?},  Psi(5/9) = {}",
        angle.as_rational(),
        angle.eval()
    );

    // isometry of phi: |phi(u) - phi(v)| = |u - v|
    let u = PrincipalUnit::new(PAdicScalar::from_integer(p, 4, 8), 1)?;
    let v = PrincipalUnit::new(PAdicScalar::from_integer(p, 7, 8), 1)?;
    println!(
        "|4 - 7|_3 = {},  |phi(4) - phi(7)|_3 = {}",
        u.scalar().sub(v.scalar()).abs(),
        u.phi().sub(&v.phi()).abs()
    );
    Ok(())
}
