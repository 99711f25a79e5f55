//! Exact arithmetic in the field k = Q_p for odd primes p.
//!
//! Scalars are stored in fixed-point digit form: a valuation together with a
//! unit mantissa known modulo p^L.  The absolute value |x| = p^{-v} is exact
//! regardless of the tracked precision; arithmetic propagates precision
//! pessimistically and fails loudly when no digits remain.  The module also
//! provides the unit-group maps needed by the calculus: the square root on
//! principal units (Hensel lifting), the hyperbolic-sine-type map
//! phi(u) = u - u^{-1} and its inverse, the fractional part realizing the
//! standard additive character, and the weight mu_0(t) = max(1, |p^n t|).

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::TAU;

/// Largest exponent L with p^L < 2^62, so products of mantissas fit in u128
/// and sums never overflow.
fn max_precision_for(prime: u64) -> u32 {
    let mut l = 0u32;
    let mut acc: u128 = 1;
    while acc * (prime as u128) < (1u128 << 62) {
        acc *= prime as u128;
        l += 1;
    }
    l
}

/// Deterministic Miller-Rabin for u64.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow_u64(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn mod_pow_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Modular inverse modulo m (m a prime power, argument coprime to p).
fn mod_inv_u64(a: u64, m: u64) -> u64 {
    // extended Euclid in i128
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "argument not invertible");
    (t.rem_euclid(m as i128)) as u64
}

fn val_p_u64(mut x: u64, p: u64) -> u32 {
    debug_assert!(x != 0);
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

/// Field parameters: the odd prime p and the level n of the principal unit
/// group U_n = 1 + p^n O_k.  Here q = p and the uniformizer is p itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldParams {
    prime: u64,
    level: u32,
}

impl FieldParams {
    pub fn new(prime: u64, level: u32) -> Result<Self> {
        if prime == 2 {
            return Err(Error::InvalidParams(
                "p = 2 is excluded: 2 must be a unit of the field (odd residue characteristic required)"
                    .into(),
            ));
        }
        if !is_prime_u64(prime) {
            return Err(Error::InvalidParams(format!("{prime} is not prime")));
        }
        if level == 0 {
            return Err(Error::InvalidParams("level n must be >= 1".into()));
        }
        Ok(FieldParams { prime, level })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// The level n of U_n.
    pub fn level(&self) -> u32 {
        self.level
    }

    /// Cardinality q of the residue field (q = p here).
    pub fn residue_cardinality(&self) -> u64 {
        self.prime
    }

    pub fn max_precision(&self) -> u32 {
        max_precision_for(self.prime)
    }

    /// Default working precision for computations at resolution (m, N).
    pub fn working_precision(&self, u_scale: u32, t_cutoff: u32) -> u32 {
        (u_scale + t_cutoff + 2).min(self.max_precision())
    }

    /// p^k as u64; panics if it does not fit the mantissa range.
    pub fn pow(&self, k: u32) -> u64 {
        assert!(k <= self.max_precision(), "p^{k} exceeds mantissa range");
        self.prime.pow(k)
    }

    /// q^e as f64 for a signed exponent.
    pub fn powf(&self, e: f64) -> f64 {
        (self.prime as f64).powf(e)
    }

    /// q^e as f64 for a signed integer exponent.
    pub fn powi(&self, e: i64) -> f64 {
        (self.prime as f64).powi(e as i32)
    }

    /// Vol(U_n) = q^{-n}.
    pub fn unit_volume(&self) -> f64 {
        self.powi(-(self.level as i64))
    }
}

/// An element of Q_p: p^v times a unit mantissa known modulo p^prec.
/// Zero is canonical (val = +infinity sentinel, mantissa 0).
#[derive(Debug, Clone, Copy)]
pub struct PAdicScalar {
    prime: u64,
    val: i64,
    man: u64,
    prec: u32,
}

impl PAdicScalar {
    pub fn zero(prime: u64) -> Self {
        PAdicScalar {
            prime,
            val: i64::MAX,
            man: 0,
            prec: u32::MAX,
        }
    }

    pub fn one(prime: u64, prec: u32) -> Self {
        PAdicScalar {
            prime,
            val: 0,
            man: 1,
            prec,
        }
    }

    pub fn from_integer(prime: u64, k: i64, prec: u32) -> Self {
        Self::from_rational(prime, k, 1, prec)
    }

    /// Exact embedding of num/den at the given precision.
    pub fn from_rational(prime: u64, num: i64, den: i64, prec: u32) -> Self {
        assert!(den != 0, "zero denominator");
        assert!(prec >= 1 && prec <= max_precision_for(prime));
        if num == 0 {
            return Self::zero(prime);
        }
        let neg = (num < 0) != (den < 0);
        let mut nu = num.unsigned_abs();
        let mut de = den.unsigned_abs();
        let mut val = 0i64;
        while nu.is_multiple_of(prime) {
            nu /= prime;
            val += 1;
        }
        while de.is_multiple_of(prime) {
            de /= prime;
            val -= 1;
        }
        let modulus = prime.pow(prec);
        let mut man = mul_mod_u64(nu % modulus, mod_inv_u64(de % modulus, modulus), modulus);
        if neg {
            man = (modulus - man) % modulus;
        }
        debug_assert!(!man.is_multiple_of(prime) && man != 0);
        PAdicScalar {
            prime,
            val,
            man,
            prec,
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn is_zero(&self) -> bool {
        self.man == 0
    }

    /// The valuation; None encodes val(0) = +infinity.
    pub fn valuation(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.val)
        }
    }

    /// Valuation with zero mapped to a large sentinel, for ordering logic.
    pub fn valuation_or(&self, inf: i64) -> i64 {
        self.valuation().unwrap_or(inf)
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Unit mantissa modulo p^k.  Errors if fewer than k digits are known.
    pub fn mantissa_mod(&self, k: u32) -> Result<u64> {
        if self.is_zero() {
            return Ok(0);
        }
        if k > self.prec {
            return Err(Error::PrecisionExhausted {
                needed: k,
                available: self.prec,
            });
        }
        Ok(self.man % self.prime.pow(k))
    }

    /// Exact absolute value |x| = p^{-v} (0 for zero).
    pub fn abs(&self) -> f64 {
        match self.valuation() {
            None => 0.0,
            Some(v) => (self.prime as f64).powi(-v as i32),
        }
    }

    pub fn add(&self, rhs: &PAdicScalar) -> PAdicScalar {
        assert_eq!(self.prime, rhs.prime);
        if self.is_zero() {
            return *rhs;
        }
        if rhs.is_zero() {
            return *self;
        }
        let p = self.prime;
        let base = self.val.min(rhs.val);
        // absolute precision of the sum
        let abs_prec = (self.val + self.prec as i64).min(rhs.val + rhs.prec as i64);
        let digits = (abs_prec - base) as u32;
        let digits = digits.min(max_precision_for(p));
        let modulus = p.pow(digits);
        let sx = self.man % modulus;
        let sy = rhs.man % modulus;
        let shift = |m: u64, by: i64| -> u64 {
            if by as u32 >= digits {
                0
            } else {
                mul_mod_u64(m, p.pow(by as u32), modulus)
            }
        };
        let sum = (shift(sx, self.val - base) + shift(sy, rhs.val - base)) % modulus;
        if sum == 0 {
            // complete cancellation of all known digits: canonical zero
            return PAdicScalar::zero(p);
        }
        let extra = val_p_u64(sum, p);
        PAdicScalar {
            prime: p,
            val: base + extra as i64,
            man: sum / p.pow(extra),
            prec: digits - extra,
        }
    }

    pub fn neg(&self) -> PAdicScalar {
        if self.is_zero() {
            return *self;
        }
        let modulus = self.prime.pow(self.prec);
        PAdicScalar {
            man: (modulus - self.man % modulus) % modulus,
            ..*self
        }
    }

    pub fn sub(&self, rhs: &PAdicScalar) -> PAdicScalar {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &PAdicScalar) -> PAdicScalar {
        assert_eq!(self.prime, rhs.prime);
        if self.is_zero() || rhs.is_zero() {
            return PAdicScalar::zero(self.prime);
        }
        let prec = self.prec.min(rhs.prec);
        let modulus = self.prime.pow(prec);
        PAdicScalar {
            prime: self.prime,
            val: self.val + rhs.val,
            man: mul_mod_u64(self.man % modulus, rhs.man % modulus, modulus),
            prec,
        }
    }

    pub fn invert(&self) -> Result<PAdicScalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let modulus = self.prime.pow(self.prec);
        Ok(PAdicScalar {
            prime: self.prime,
            val: -self.val,
            man: mod_inv_u64(self.man, modulus),
            prec: self.prec,
        })
    }

    /// Scale by p^k (exact).
    pub fn scale_by_uniformizer(&self, k: i64) -> PAdicScalar {
        if self.is_zero() {
            return *self;
        }
        PAdicScalar {
            val: self.val + k,
            ..*self
        }
    }

    /// True if the two scalars agree on all digits both know.
    pub fn congruent(&self, rhs: &PAdicScalar) -> bool {
        self.sub(rhs).is_zero_mod_known()
    }

    fn is_zero_mod_known(&self) -> bool {
        self.is_zero()
    }

    /// Fractional part sum_{i<0} d_i p^i mod 1, as an exact rational with
    /// p-power denominator.  Requires the digits below index 0 to be known.
    pub fn fractional_part(&self) -> Result<CharacterAngle> {
        match self.valuation() {
            None => Ok(CharacterAngle::zero(self.prime)),
            Some(v) if v >= 0 => Ok(CharacterAngle::zero(self.prime)),
            Some(v) => {
                let k = (-v) as u32;
                if k > self.prec {
                    return Err(Error::PrecisionExhausted {
                        needed: k,
                        available: self.prec,
                    });
                }
                Ok(CharacterAngle::new(
                    self.prime,
                    self.man % self.prime.pow(k),
                    k,
                ))
            }
        }
    }

    /// The fixed additive character Psi(x) = e^{2 pi i {x}_p}.
    pub fn psi(&self) -> Result<Complex64> {
        Ok(self.fractional_part()?.eval())
    }
}

/// Exact argument of a p-power root of unity: num / p^denlog in [0, 1),
/// evaluated lazily to a complex double.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CharacterAngle {
    prime: u64,
    num: u64,
    denlog: u32,
}

impl CharacterAngle {
    pub fn zero(prime: u64) -> Self {
        CharacterAngle {
            prime,
            num: 0,
            denlog: 0,
        }
    }

    pub fn new(prime: u64, num: u64, denlog: u32) -> Self {
        let mut a = CharacterAngle {
            prime,
            num: num % prime.pow(denlog),
            denlog,
        };
        a.reduce();
        a
    }

    fn reduce(&mut self) {
        if self.num == 0 {
            self.denlog = 0;
            return;
        }
        while self.denlog > 0 && self.num.is_multiple_of(self.prime) {
            self.num /= self.prime;
            self.denlog -= 1;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn add(&self, rhs: &CharacterAngle) -> CharacterAngle {
        assert_eq!(self.prime, rhs.prime);
        let k = self.denlog.max(rhs.denlog);
        let den = self.prime.pow(k);
        let a = self.num * self.prime.pow(k - self.denlog);
        let b = rhs.num * self.prime.pow(k - rhs.denlog);
        CharacterAngle::new(self.prime, (a + b) % den, k)
    }

    pub fn neg(&self) -> CharacterAngle {
        if self.num == 0 {
            return *self;
        }
        let den = self.prime.pow(self.denlog);
        CharacterAngle {
            prime: self.prime,
            num: den - self.num,
            denlog: self.denlog,
        }
    }

    /// Angle of Psi(k * x) for integer k, given the angle of Psi(x).
    pub fn scale_int(&self, k: i64) -> CharacterAngle {
        let den = self.prime.pow(self.denlog);
        let km = (k.rem_euclid(den as i64)) as u64;
        CharacterAngle::new(self.prime, mul_mod_u64(self.num, km, den), self.denlog)
    }

    /// (numerator, denominator) of the reduced rational.
    pub fn as_rational(&self) -> (u64, u64) {
        (self.num, self.prime.pow(self.denlog))
    }

    pub fn eval(&self) -> Complex64 {
        if self.num == 0 {
            return Complex64::new(1.0, 0.0);
        }
        let theta = TAU * (self.num as f64) / (self.prime.pow(self.denlog) as f64);
        let (s, c) = theta.sin_cos();
        Complex64::new(c, s)
    }
}

/// An element of U_n = 1 + p^n O_k.
#[derive(Debug, Clone, Copy)]
pub struct PrincipalUnit {
    scalar: PAdicScalar,
    level: u32,
}

impl PrincipalUnit {
    pub fn new(scalar: PAdicScalar, level: u32) -> Result<Self> {
        if scalar.valuation() != Some(0) {
            return Err(Error::InvalidParams(
                "principal unit must have valuation 0".into(),
            ));
        }
        if scalar.prec < level {
            return Err(Error::PrecisionExhausted {
                needed: level,
                available: scalar.prec,
            });
        }
        let pn = scalar.prime.pow(level);
        if scalar.man % pn != 1 % pn {
            return Err(Error::InvalidParams(format!(
                "not congruent to 1 mod p^{level}: mantissa {}",
                scalar.man
            )));
        }
        Ok(PrincipalUnit { scalar, level })
    }

    pub fn one(prime: u64, level: u32, prec: u32) -> Self {
        PrincipalUnit {
            scalar: PAdicScalar::one(prime, prec),
            level,
        }
    }

    pub fn scalar(&self) -> &PAdicScalar {
        &self.scalar
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn mul(&self, rhs: &PrincipalUnit) -> PrincipalUnit {
        PrincipalUnit {
            scalar: self.scalar.mul(&rhs.scalar),
            level: self.level.min(rhs.level),
        }
    }

    pub fn invert(&self) -> PrincipalUnit {
        PrincipalUnit {
            scalar: self.scalar.invert().expect("unit"),
            level: self.level,
        }
    }

    /// The square function sigma(u) = u^2.
    pub fn square(&self) -> PrincipalUnit {
        self.mul(self)
    }

    /// The unique square root of u inside U_n (Hensel/Newton; 2 is a unit).
    pub fn sqrt(&self) -> Result<PrincipalUnit> {
        let s = &self.scalar;
        let p = s.prime;
        if s.prec < self.level + 1 {
            return Err(Error::PrecisionExhausted {
                needed: self.level + 1,
                available: s.prec,
            });
        }
        let modulus = p.pow(s.prec);
        let inv2 = mod_inv_u64(2 % modulus, modulus);
        let u = s.man;
        let mut x = 1u64;
        for _ in 0..(64 - (s.prec as u64).leading_zeros() + 4) {
            let next = mul_mod_u64(
                (x + mul_mod_u64(u, mod_inv_u64(x, modulus), modulus)) % modulus,
                inv2,
                modulus,
            );
            if next == x {
                break;
            }
            x = next;
        }
        debug_assert_eq!(
            mul_mod_u64(x, x, modulus),
            u,
            "square root iteration failed"
        );
        Ok(PrincipalUnit {
            scalar: PAdicScalar {
                prime: p,
                val: 0,
                man: x,
                prec: s.prec,
            },
            level: self.level,
        })
    }

    /// phi(u) = u - u^{-1}, landing in p^n O_k.
    pub fn phi(&self) -> PAdicScalar {
        let z = self.scalar.sub(&self.invert().scalar);
        debug_assert!(z.valuation_or(i64::MAX) >= self.level as i64);
        z
    }
}

/// Inverse of phi: the unique u in U_n with u - u^{-1} = z, for val(z) >= n.
/// Solves u^2 - z u - 1 = 0 by u = z/2 + sqrt(1 + z^2/4), the root in U_n.
pub fn phi_inverse(z: &PAdicScalar, level: u32) -> Result<PrincipalUnit> {
    let p = z.prime;
    if z.is_zero() {
        return Ok(PrincipalUnit::one(p, level, max_precision_for(p)));
    }
    let v = z.valuation().unwrap();
    if v < level as i64 {
        return Err(Error::ValuationOutOfRange {
            required: level as i64,
            actual: v,
        });
    }
    // the discriminant 1 + z^2/4 is known to absolute precision 2v + prec(z)
    let prec = ((2 * v + z.prec as i64).min(max_precision_for(p) as i64)) as u32;
    let half = PAdicScalar::from_rational(p, 1, 2, prec);
    let quarter = PAdicScalar::from_rational(p, 1, 4, prec);
    let one = PAdicScalar::one(p, prec);
    let disc = one.add(&z.mul(z).mul(&quarter));
    let w = PrincipalUnit::new(disc, 2 * level)?.sqrt()?;
    let u = z.mul(&half).add(w.scalar());
    PrincipalUnit::new(u, level)
}

/// Exponent e >= 0 with mu_0(t) = max(1, |p^n t|) = p^e.
pub fn mu0_exponent(t: &PAdicScalar, level: u32) -> u32 {
    match t.valuation() {
        None => 0,
        Some(v) => {
            let e = -(level as i64) - v;
            if e > 0 {
                e as u32
            } else {
                0
            }
        }
    }
}

/// mu_0(t) = max(1, |p^n t|) as a float (exact: a power of p).
pub fn mu0(t: &PAdicScalar, level: u32) -> f64 {
    (t.prime as f64).powi(mu0_exponent(t, level) as i32)
}

/// mu_0(t)^s for real s.
pub fn mu0_pow(t: &PAdicScalar, level: u32, s: f64) -> f64 {
    (t.prime as f64).powf(s * mu0_exponent(t, level) as f64)
}

pub(crate) fn mod_inv(a: u64, m: u64) -> u64 {
    mod_inv_u64(a, m)
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    mul_mod_u64(a, b, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(num: i64, den: i64, prec: u32) -> PAdicScalar {
        PAdicScalar::from_rational(3, num, den, prec)
    }

    #[test]
    fn valuation_and_abs() {
        let x = PAdicScalar::from_integer(3, 18, 6);
        assert_eq!(x.valuation(), Some(2));
        assert!((x.abs() - 1.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn invert_matches_euclid_oracle() {
        // oracle: extended Euclid mod 27 gives 4 * 7 = 28 = 1 mod 27
        let x = PAdicScalar::from_integer(3, 4, 3);
        let inv = x.invert().unwrap();
        assert_eq!(inv.valuation(), Some(0));
        assert_eq!(inv.mantissa_mod(3).unwrap(), 7);
    }

    #[test]
    fn additive_inverse_cancels_to_zero() {
        let one = PAdicScalar::one(3, 5);
        let z = one.add(&one.neg());
        assert!(z.is_zero());
        assert_eq!(z.valuation(), None);
    }

    #[test]
    fn ultrametric_on_rationals() {
        let cases = [(5, 7), (1, 3), (9, 2), (-4, 11), (6, 1)];
        for &(a, b) in &cases {
            for &(c, d) in &cases {
                let x = sc(a, b, 8);
                let y = sc(c, d, 8);
                let s = x.add(&y);
                assert!(s.abs() <= x.abs().max(y.abs()) + 1e-15);
            }
        }
    }

    #[test]
    fn sqrt_unit_identity() {
        let u = PrincipalUnit::one(3, 1, 5);
        let w = u.sqrt().unwrap();
        assert_eq!(w.scalar().mantissa_mod(5).unwrap(), 1);
    }

    #[test]
    fn sqrt_unit_hensel_example_p3() {
        // sqrt(4) in U_1 of Q_3 is -2 = 25 mod 27
        let u = PrincipalUnit::new(PAdicScalar::from_integer(3, 4, 3), 1).unwrap();
        let w = u.sqrt().unwrap();
        assert_eq!(w.scalar().mantissa_mod(3).unwrap(), 25);
        let sq = w.square();
        assert_eq!(sq.scalar().mantissa_mod(3).unwrap(), 4);
    }

    #[test]
    fn sqrt_unit_exhaustive_oracle_p5() {
        // exhaustive search mod 25: the root of x^2 = 6 with x = 1 mod 5
        let mut expected = None;
        for x in 0u64..25 {
            if (x * x) % 25 == 6 && x % 5 == 1 {
                expected = Some(x);
            }
        }
        assert_eq!(expected, Some(16));
        let u = PrincipalUnit::new(PAdicScalar::from_integer(5, 6, 2), 1).unwrap();
        assert_eq!(u.sqrt().unwrap().scalar().mantissa_mod(2).unwrap(), 16);
    }

    #[test]
    fn phi_exact_rational_example() {
        // phi(4) = 4 - 1/4 = 15/4 with 3-adic valuation 1
        let u = PrincipalUnit::new(PAdicScalar::from_integer(3, 4, 6), 1).unwrap();
        let z = u.phi();
        assert_eq!(z.valuation(), Some(1));
        assert!(z.congruent(&sc(15, 4, 6)));
    }

    #[test]
    fn phi_isometry_spot() {
        let u = PrincipalUnit::new(PAdicScalar::from_integer(3, 4, 6), 1).unwrap();
        let v = PrincipalUnit::new(PAdicScalar::from_integer(3, 7, 6), 1).unwrap();
        let duv = u.scalar().sub(v.scalar());
        let dphi = u.phi().sub(&v.phi());
        assert_eq!(duv.valuation(), dphi.valuation());
        assert!((duv.abs() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn isometry_exhaustive_small() {
        // sigma and phi are isometries on U_1/U_4 at p = 3, by valuation equality
        let reps: Vec<u64> = (0..27).map(|a| 1 + 3 * a).collect();
        for &a in &reps {
            for &b in &reps {
                if a == b {
                    continue;
                }
                let u = PrincipalUnit::new(PAdicScalar::from_integer(3, a as i64, 6), 1).unwrap();
                let v = PrincipalUnit::new(PAdicScalar::from_integer(3, b as i64, 6), 1).unwrap();
                let d = u.scalar().sub(v.scalar()).valuation();
                let ds = u.square().scalar().sub(v.square().scalar()).valuation();
                let dp = u.phi().sub(&v.phi()).valuation();
                assert_eq!(d, ds);
                assert_eq!(d, dp);
            }
        }
    }

    #[test]
    fn phi_inverse_round_trips() {
        assert_eq!(
            phi_inverse(&PAdicScalar::zero(3), 1)
                .unwrap()
                .scalar()
                .mantissa_mod(1)
                .unwrap(),
            1
        );
        let z = sc(15, 4, 6);
        let u = phi_inverse(&z, 1).unwrap();
        assert_eq!(u.scalar().mantissa_mod(6).unwrap(), 4);

        let z3 = PAdicScalar::from_integer(3, 3, 4);
        let u3 = phi_inverse(&z3, 1).unwrap();
        let back = u3.phi();
        assert!(back.congruent(&PAdicScalar::from_integer(3, 3, 3)));
    }

    #[test]
    fn fractional_parts() {
        assert!(PAdicScalar::from_integer(3, 2, 4)
            .fractional_part()
            .unwrap()
            .is_zero());
        let third = sc(1, 3, 4).fractional_part().unwrap();
        assert_eq!(third.as_rational(), (1, 3));
        let f = sc(5, 9, 4).fractional_part().unwrap();
        assert_eq!(f.as_rational(), (5, 9));
    }

    #[test]
    fn fractional_part_is_additive_character() {
        let cases = [(1, 3), (5, 9), (2, 27), (7, 1), (4, 9)];
        for &(a, b) in &cases {
            for &(c, d) in &cases {
                let x = sc(a, b, 8);
                let y = sc(c, d, 8);
                let lhs = x.add(&y).fractional_part().unwrap();
                let rhs = x
                    .fractional_part()
                    .unwrap()
                    .add(&y.fractional_part().unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn mu0_examples() {
        // (p=3, n=1)
        assert_eq!(mu0(&PAdicScalar::from_integer(3, 3, 4), 1), 1.0);
        assert_eq!(mu0(&sc(1, 9, 4), 1), 3.0);
        assert_eq!(mu0(&PAdicScalar::zero(3), 1), 1.0);
        // Peetre spot: mu0(1/9 + 1/3) <= mu0(1/9) * mu0(1/3)
        let a = sc(1, 9, 4);
        let b = sc(1, 3, 4);
        assert!(mu0_exponent(&a.add(&b), 1) <= mu0_exponent(&a, 1) + mu0_exponent(&b, 1));
    }

    #[test]
    fn mu0_invariances() {
        // invariant under unit dilation and translation by p^{-n} O_k
        let t = sc(2, 27, 8);
        let u = PAdicScalar::from_integer(3, 7, 8);
        assert_eq!(mu0_exponent(&t, 1), mu0_exponent(&t.mul(&u), 1));
        let shift = sc(1, 3, 8);
        assert_eq!(mu0_exponent(&t, 1), mu0_exponent(&t.add(&shift), 1));
    }

    #[test]
    fn rejects_even_prime_and_composites() {
        assert!(FieldParams::new(2, 1).is_err());
        assert!(FieldParams::new(9, 1).is_err());
        assert!(FieldParams::new(3, 0).is_err());
        assert!(FieldParams::new(3, 1).is_ok());
        assert!(FieldParams::new(5, 2).is_ok());
    }
}
