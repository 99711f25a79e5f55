//! Property tests over the exact arithmetic layer: the field axioms and the
//! character/weight identities hold for arbitrary rational inputs, not just
//! the hand-picked unit-test values.

use fuchs::padic::{mu0_exponent, CharacterAngle, FieldParams, PAdicScalar, PrincipalUnit};
use proptest::prelude::*;

const PRIMES: [u64; 3] = [3, 5, 7];

fn scalar(p: u64, num: i64, denpow: u32) -> PAdicScalar {
    if num == 0 {
        return PAdicScalar::zero(p);
    }
    PAdicScalar::from_rational(p, num, p.pow(denpow) as i64, 12)
}

proptest! {
    #[test]
    fn ultrametric_and_ring_laws(
        pi in 0usize..3,
        a in -2000i64..2000,
        b in -2000i64..2000,
        da in 0u32..4,
        db in 0u32..4,
    ) {
        let p = PRIMES[pi];
        let x = scalar(p, a, da);
        let y = scalar(p, b, db);
        // ultrametric inequality, with equality when valuations differ
        prop_assert!(x.add(&y).abs() <= x.abs().max(y.abs()) + 1e-15);
        if x.valuation() != y.valuation() {
            prop_assert!((x.add(&y).abs() - x.abs().max(y.abs())).abs() < 1e-15);
        }
        // commutativity and the distributive residual
        prop_assert!(x.add(&y).congruent(&y.add(&x)));
        prop_assert!(x.mul(&y).congruent(&y.mul(&x)));
        let lhs = x.mul(&y.add(&x));
        let rhs = x.mul(&y).add(&x.mul(&x));
        prop_assert!(lhs.congruent(&rhs));
    }

    #[test]
    fn inversion_round_trips(pi in 0usize..3, a in 1i64..5000, da in 0u32..4) {
        let p = PRIMES[pi];
        let x = scalar(p, a, da);
        if !x.is_zero() {
            let back = x.invert().unwrap().invert().unwrap();
            prop_assert!(back.congruent(&x));
            let prod = x.mul(&x.invert().unwrap());
            prop_assert_eq!(prod.valuation(), Some(0));
            prop_assert_eq!(prod.mantissa_mod(prod.precision().min(10)).unwrap(), 1);
        }
    }

    #[test]
    fn character_is_additive(
        pi in 0usize..3,
        a in -2000i64..2000,
        b in -2000i64..2000,
        da in 0u32..4,
        db in 0u32..4,
    ) {
        let p = PRIMES[pi];
        let x = scalar(p, a, da);
        let y = scalar(p, b, db);
        let lhs = x.add(&y).fractional_part().unwrap();
        let rhs = x.fractional_part().unwrap().add(&y.fractional_part().unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn angle_arithmetic_matches_rationals(
        pi in 0usize..3,
        n1 in 0u64..200,
        k1 in 0u32..5,
        n2 in 0u64..200,
        k2 in 0u32..5,
    ) {
        let p = PRIMES[pi];
        let a = CharacterAngle::new(p, n1, k1);
        let b = CharacterAngle::new(p, n2, k2);
        // rational addition mod 1 agrees with the angle sum
        let (x1, d1) = a.as_rational();
        let (x2, d2) = b.as_rational();
        let d = d1.max(d2) * (d1.min(d2) / num_gcd(d1, d2));
        let sum = (x1 * (d / d1) + x2 * (d / d2)) % d;
        let (xs, ds) = a.add(&b).as_rational();
        prop_assert_eq!(xs * (d / ds), sum);
        // evaluation is a homomorphism into the circle
        let ev = (a.eval() * b.eval() - a.add(&b).eval()).norm();
        prop_assert!(ev < 1e-12);
        prop_assert!((a.eval() * a.neg().eval() - num_complex::Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn mu0_peetre_and_symmetry(
        pi in 0usize..3,
        level in 1u32..3,
        a in -2000i64..2000,
        b in -2000i64..2000,
        da in 0u32..4,
        db in 0u32..4,
    ) {
        let p = PRIMES[pi];
        let x = scalar(p, a, da);
        let y = scalar(p, b, db);
        prop_assert!(mu0_exponent(&x.add(&y), level) <= mu0_exponent(&x, level) + mu0_exponent(&y, level));
        prop_assert_eq!(mu0_exponent(&x, level), mu0_exponent(&x.neg(), level));
    }

    #[test]
    fn unit_maps_are_isometries(pi in 0usize..3, a in 0i64..500, b in 0i64..500) {
        let p = PRIMES[pi] as i64;
        let u = PrincipalUnit::new(PAdicScalar::from_rational(PRIMES[pi], 1 + p * (1 + a), 1, 12), 1).unwrap();
        let v = PrincipalUnit::new(PAdicScalar::from_rational(PRIMES[pi], 1 + p * (1 + b), 1, 12), 1).unwrap();
        let d = u.scalar().sub(v.scalar()).valuation();
        prop_assert_eq!(u.square().scalar().sub(v.square().scalar()).valuation(), d);
        prop_assert_eq!(u.phi().sub(&v.phi()).valuation(), d);
        // square root level: the root of u stays congruent to 1 mod p^n
        let r = u.sqrt().unwrap();
        prop_assert!(r.square().scalar().congruent(u.scalar()));
    }
}

fn num_gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

#[test]
fn field_params_reject_invalid() {
    assert!(FieldParams::new(2, 1).is_err());
    assert!(FieldParams::new(15, 1).is_err());
    assert!(FieldParams::new(3, 0).is_err());
}
