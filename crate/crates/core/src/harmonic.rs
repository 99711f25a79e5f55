//! Finite coset grids, Haar normalizations, and the unitary Fourier
//! transforms F_k and F_{Gamma_n} at a fixed resolution.
//!
//! Grid conventions (canonical orderings, reproducible across runs):
//! * U_n/U_m is enumerated by a = 0..p^{m-n}-1 with representative 1 + p^n a.
//! * Gamma_n truncated at cutoff N is the set of k-classes t_b = b / p^N for
//!   b = 0..p^{N-n}-1; the class group is Z / p^{N-n} under addition and the
//!   unit dilation action is multiplication mod p^{N-n}.
//! * The dual of the truncated Gamma grid is x_c = c p^n, c = 0..p^{N-n}-1,
//!   carrying measure weight q^{n-N} per point so the total mass is 1.
//! * A locally constant function on k supported on p^a O_k and invariant
//!   under p^b O_k is stored on representatives t_j = j p^a, j = 0..p^{b-a}-1.

use crate::error::{Error, Result};
use crate::padic::{self, CharacterAngle, FieldParams, PAdicScalar, PrincipalUnit};
use num_complex::Complex64;
use std::f64::consts::TAU;

/// e^{2 pi i r / d} for r = 0..d-1.
fn root_table(d: usize) -> Vec<Complex64> {
    (0..d)
        .map(|r| {
            let (s, c) = (TAU * r as f64 / d as f64).sin_cos();
            Complex64::new(c, s)
        })
        .collect()
}

/// Representatives of U_n/U_m with Haar cell volume p^{-m}.
#[derive(Debug, Clone)]
pub struct UnitCosetGrid {
    params: FieldParams,
    u_scale: u32,
    modulus: u64,
    level_pow: u64,
    reps: Vec<u64>,
    sqrt_idx: Vec<usize>,
    inv_idx: Vec<usize>,
}

impl UnitCosetGrid {
    pub fn new(params: FieldParams, u_scale: u32) -> Result<Self> {
        let n = params.level();
        if u_scale < n {
            return Err(Error::InvalidParams(format!(
                "u-scale {u_scale} below level {n}"
            )));
        }
        if u_scale > params.max_precision() {
            return Err(Error::InvalidParams(format!(
                "u-scale {u_scale} too large for p = {}",
                params.prime()
            )));
        }
        let p = params.prime();
        let modulus = p.pow(u_scale);
        let level_pow = p.pow(n);
        let len = p.pow(u_scale - n);
        let reps: Vec<u64> = (0..len).map(|a| 1 + level_pow * a).collect();
        let mut grid = UnitCosetGrid {
            params,
            u_scale,
            modulus,
            level_pow,
            reps,
            sqrt_idx: Vec::new(),
            inv_idx: Vec::new(),
        };
        grid.inv_idx = (0..grid.len())
            .map(|i| grid.index_of_u64(padic::mod_inv(grid.reps[i], modulus)))
            .collect();
        grid.sqrt_idx = (0..grid.len())
            .map(|i| {
                let u = grid.rep_unit(i, u_scale + 1);
                grid.index_of_u64(
                    u.sqrt()
                        .expect("precision fixed")
                        .scalar()
                        .mantissa_mod(u_scale)
                        .expect("precision"),
                )
            })
            .collect();
        Ok(grid)
    }

    pub fn params(&self) -> FieldParams {
        self.params
    }

    pub fn u_scale(&self) -> u32 {
        self.u_scale
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Haar volume of each cell, p^{-m}.
    pub fn cell_volume(&self) -> f64 {
        self.params.powi(-(self.u_scale as i64))
    }

    pub fn rep_u64(&self, i: usize) -> u64 {
        self.reps[i]
    }

    /// Representative as an exact scalar at the given precision.
    pub fn rep_scalar(&self, i: usize, prec: u32) -> PAdicScalar {
        PAdicScalar::from_integer(self.params.prime(), self.reps[i] as i64, prec)
    }

    pub fn rep_unit(&self, i: usize, prec: u32) -> PrincipalUnit {
        PrincipalUnit::new(self.rep_scalar(i, prec), self.params.level()).expect("grid rep")
    }

    /// Coset index of x, given x mod p^m (x must lie in U_n).
    pub fn index_of_u64(&self, x: u64) -> usize {
        let xm = x % self.modulus;
        debug_assert_eq!(xm % self.level_pow, 1 % self.level_pow, "not in U_n");
        ((xm - 1) / self.level_pow) as usize
    }

    pub fn index_of(&self, x: &PAdicScalar) -> Result<usize> {
        if x.valuation() != Some(0) {
            return Err(Error::GridMismatch("coset lookup of a non-unit".into()));
        }
        let xm = x.mantissa_mod(self.u_scale)?;
        if xm % self.level_pow != 1 % self.level_pow {
            return Err(Error::GridMismatch("point not in U_n".into()));
        }
        Ok(self.index_of_u64(xm))
    }

    pub fn mul_index(&self, i: usize, j: usize) -> usize {
        self.index_of_u64(padic::mul_mod(self.reps[i], self.reps[j], self.modulus))
    }

    pub fn inv_index(&self, i: usize) -> usize {
        self.inv_idx[i]
    }

    /// Index of the unique square-root coset (the square map is a bijection).
    pub fn sqrt_index(&self, i: usize) -> usize {
        self.sqrt_idx[i]
    }

    /// phi(rep_i) = rep - rep^{-1}, exact as the rational (r^2 - 1)/r.
    pub fn phi_scalar(&self, i: usize, prec: u32) -> PAdicScalar {
        let r = self.reps[i] as i64;
        PAdicScalar::from_rational(self.params.prime(), r * r - 1, r, prec)
    }
}

/// Truncated Gamma_n = k / p^{-n} O_k: the classes inside p^{-N} O_k,
/// isomorphic to Z/p^{N-n} via t_b = b / p^N, with counting measure.
#[derive(Debug, Clone)]
pub struct GammaGrid {
    params: FieldParams,
    t_cutoff: u32,
    modulus: u64,
}

impl GammaGrid {
    pub fn new(params: FieldParams, t_cutoff: u32) -> Result<Self> {
        let n = params.level();
        if t_cutoff < n {
            return Err(Error::InvalidParams(format!(
                "t-cutoff {t_cutoff} below level {n}"
            )));
        }
        if t_cutoff > params.max_precision() {
            return Err(Error::InvalidParams("t-cutoff too large".into()));
        }
        Ok(GammaGrid {
            params,
            t_cutoff,
            modulus: params.prime().pow(t_cutoff - n),
        })
    }

    pub fn params(&self) -> FieldParams {
        self.params
    }

    pub fn t_cutoff(&self) -> u32 {
        self.t_cutoff
    }

    pub fn len(&self) -> usize {
        self.modulus as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Representative t_b = b / p^N as an exact scalar.
    pub fn rep_scalar(&self, b: usize, prec: u32) -> PAdicScalar {
        if b == 0 {
            return PAdicScalar::zero(self.params.prime());
        }
        PAdicScalar::from_rational(
            self.params.prime(),
            b as i64,
            self.params.pow(self.t_cutoff) as i64,
            prec,
        )
    }

    /// Valuation of the class representative (None encodes the zero class).
    pub fn valuation(&self, b: usize) -> Option<i64> {
        if b == 0 {
            return None;
        }
        let mut v = -(self.t_cutoff as i64);
        let mut x = b as u64;
        while x.is_multiple_of(self.params.prime()) {
            x /= self.params.prime();
            v += 1;
        }
        Some(v)
    }

    /// Exponent e with mu_0(t_b) = p^e.
    pub fn mu0_exponent(&self, b: usize) -> u32 {
        match self.valuation(b) {
            None => 0,
            Some(v) => (-(self.params.level() as i64) - v).max(0) as u32,
        }
    }

    /// Class index of a scalar in p^{-N} O_k (errors outside the cutoff).
    pub fn index_of(&self, x: &PAdicScalar) -> Result<usize> {
        match x.valuation() {
            None => Ok(0),
            Some(v) => {
                let n = self.params.level() as i64;
                if v < -(self.t_cutoff as i64) {
                    return Err(Error::GridMismatch(format!(
                        "class of valuation {v} outside cutoff {}",
                        self.t_cutoff
                    )));
                }
                if v >= -n {
                    return Ok(0);
                }
                let needed = (-n - v) as u32;
                let man = x.mantissa_mod(needed)?;
                let shift = (v + self.t_cutoff as i64) as u32;
                Ok(padic::mul_mod(
                    man % self.modulus,
                    self.params.prime().pow(shift) % self.modulus,
                    self.modulus,
                ) as usize)
            }
        }
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        (a + b) % self.modulus as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        (self.modulus as usize - a) % self.modulus as usize
    }

    /// Dilation [t] -> [u t] by a unit given mod p^{N-n} (a grid permutation).
    pub fn act_unit_u64(&self, u_mod: u64, b: usize) -> usize {
        padic::mul_mod(u_mod % self.modulus, b as u64, self.modulus) as usize
    }

    pub fn act_unit(&self, u: &PAdicScalar, b: usize) -> Result<usize> {
        let k = self.t_cutoff - self.params.level();
        if k == 0 {
            return Ok(b);
        }
        Ok(self.act_unit_u64(u.mantissa_mod(k)?, b))
    }

    /// Angle of Psi(x_c t_b) for the dual point x_c = c p^n.
    pub fn pairing_angle(&self, c: usize, b: usize) -> CharacterAngle {
        CharacterAngle::new(
            self.params.prime(),
            padic::mul_mod(c as u64, b as u64, self.modulus),
            self.t_cutoff - self.params.level(),
        )
    }
}

/// The dual grid p^n O_k / p^N O_k with point weight q^{n-N} (total mass 1).
#[derive(Debug, Clone)]
pub struct DualGrid {
    params: FieldParams,
    t_cutoff: u32,
    modulus: u64,
}

impl DualGrid {
    pub fn of(gamma: &GammaGrid) -> Self {
        DualGrid {
            params: gamma.params,
            t_cutoff: gamma.t_cutoff,
            modulus: gamma.modulus,
        }
    }

    pub fn len(&self) -> usize {
        self.modulus as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn weight(&self) -> f64 {
        self.params
            .powi(self.params.level() as i64 - self.t_cutoff as i64)
    }

    /// Representative x_c = c p^n.
    pub fn rep_scalar(&self, c: usize, prec: u32) -> PAdicScalar {
        PAdicScalar::from_integer(
            self.params.prime(),
            c as i64 * self.params.pow(self.params.level()) as i64,
            prec,
        )
    }

    /// Dual index of a scalar x with val(x) >= n, reduced mod p^N.
    pub fn index_of(&self, x: &PAdicScalar) -> Result<usize> {
        match x.valuation() {
            None => Ok(0),
            Some(v) => {
                let n = self.params.level() as i64;
                if v < n {
                    return Err(Error::GridMismatch(format!(
                        "dual point has valuation {v} < level {n}"
                    )));
                }
                if v >= self.t_cutoff as i64 {
                    return Ok(0);
                }
                let needed = (self.t_cutoff as i64 - v) as u32;
                let man = x.mantissa_mod(needed)?;
                let shift = (v - n) as u32;
                Ok(padic::mul_mod(
                    man % self.modulus,
                    self.params.prime().pow(shift) % self.modulus,
                    self.modulus,
                ) as usize)
            }
        }
    }
}

/// A locally constant function on U_n, constant on U_m-cosets.
#[derive(Debug, Clone)]
pub struct ConfigFunction {
    grid: UnitCosetGrid,
    values: Vec<Complex64>,
}

impl ConfigFunction {
    pub fn new(grid: UnitCosetGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "{} values on a grid of {} cells",
                values.len(),
                grid.len()
            )));
        }
        Ok(ConfigFunction { grid, values })
    }

    pub fn constant(grid: UnitCosetGrid, value: Complex64) -> Self {
        let n = grid.len();
        ConfigFunction {
            grid,
            values: vec![value; n],
        }
    }

    /// The indicator of U_n (constant 1 on the whole grid).
    pub fn indicator(grid: UnitCosetGrid) -> Self {
        Self::constant(grid, Complex64::new(1.0, 0.0))
    }

    pub fn basis(grid: UnitCosetGrid, i: usize) -> Self {
        let mut values = vec![Complex64::ZERO; grid.len()];
        values[i] = Complex64::new(1.0, 0.0);
        ConfigFunction { grid, values }
    }

    pub fn grid(&self) -> &UnitCosetGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn scale(&self) -> u32 {
        self.grid.u_scale()
    }

    pub fn norm_sq(&self) -> f64 {
        self.grid.cell_volume() * self.values.iter().map(|z| z.norm_sqr()).sum::<f64>()
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// <f, g> = integral of conj(f) g over U_n (antilinear in f).
    pub fn inner(&self, rhs: &ConfigFunction) -> Result<Complex64> {
        if self.scale() != rhs.scale() {
            return Err(Error::GridMismatch("inner product across scales".into()));
        }
        Ok(self.grid.cell_volume()
            * self
                .values
                .iter()
                .zip(&rhs.values)
                .map(|(a, b)| a.conj() * b)
                .sum::<Complex64>())
    }

    pub fn conj(&self) -> ConfigFunction {
        ConfigFunction {
            grid: self.grid.clone(),
            values: self.values.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Replicate onto a finer grid (exact under locally constant semantics).
    pub fn refine(&self, u_scale: u32) -> Result<ConfigFunction> {
        if u_scale < self.scale() {
            return Err(Error::Resolution("refine must not coarsen".into()));
        }
        if u_scale == self.scale() {
            return Ok(self.clone());
        }
        let fine = UnitCosetGrid::new(self.grid.params(), u_scale)?;
        let values = (0..fine.len())
            .map(|a| self.values[a % self.values.len()])
            .collect();
        ConfigFunction::new(fine, values)
    }
}

/// Refine a pair to a common scale.
pub fn common_scale(
    a: &ConfigFunction,
    b: &ConfigFunction,
) -> Result<(ConfigFunction, ConfigFunction)> {
    let m = a.scale().max(b.scale());
    Ok((a.refine(m)?, b.refine(m)?))
}

/// A compactly supported locally constant function on k: supported on
/// p^a O_k, invariant under p^b O_k (a <= b), stored on reps t_j = j p^a.
#[derive(Debug, Clone)]
pub struct KFunction {
    params: FieldParams,
    support_scale: i64,
    invariance_scale: i64,
    values: Vec<Complex64>,
}

impl KFunction {
    pub fn new(
        params: FieldParams,
        support_scale: i64,
        invariance_scale: i64,
        values: Vec<Complex64>,
    ) -> Result<Self> {
        if support_scale > invariance_scale {
            return Err(Error::InvalidParams(
                "support scale must not exceed invariance scale".into(),
            ));
        }
        if (invariance_scale - support_scale) as u32 > params.max_precision() {
            return Err(Error::InvalidParams("k-grid too large".into()));
        }
        let len = params
            .prime()
            .pow((invariance_scale - support_scale) as u32) as usize;
        if values.len() != len {
            return Err(Error::GridMismatch(format!("expected {len} cells")));
        }
        Ok(KFunction {
            params,
            support_scale,
            invariance_scale,
            values,
        })
    }

    pub fn params(&self) -> FieldParams {
        self.params
    }

    pub fn support_scale(&self) -> i64 {
        self.support_scale
    }

    pub fn invariance_scale(&self) -> i64 {
        self.invariance_scale
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn cell_volume(&self) -> f64 {
        self.params.powi(-self.invariance_scale)
    }

    /// Representative t_j = j p^a as an exact scalar.
    pub fn rep_scalar(&self, j: usize, prec: u32) -> PAdicScalar {
        if j == 0 {
            return PAdicScalar::zero(self.params.prime());
        }
        PAdicScalar::from_integer(self.params.prime(), j as i64, prec)
            .scale_by_uniformizer(self.support_scale)
    }

    /// Cell index of a scalar inside the support (errors outside).
    pub fn index_of(&self, x: &PAdicScalar) -> Result<usize> {
        match x.valuation() {
            None => Ok(0),
            Some(v) => {
                if v < self.support_scale {
                    return Err(Error::GridMismatch("point outside grid support".into()));
                }
                if v >= self.invariance_scale {
                    return Ok(0);
                }
                let needed = (self.invariance_scale - v) as u32;
                let man = x.mantissa_mod(needed)?;
                let d = self.values.len() as u64;
                let shift = (v - self.support_scale) as u32;
                Ok(padic::mul_mod(man % d, self.params.prime().pow(shift) % d, d) as usize)
            }
        }
    }

    pub fn norm_sq(&self) -> f64 {
        self.cell_volume() * self.values.iter().map(|z| z.norm_sqr()).sum::<f64>()
    }

    /// Integral over k.
    pub fn integral(&self) -> Complex64 {
        self.cell_volume() * self.values.iter().sum::<Complex64>()
    }
}

/// F_k f(s) = integral of f(t) Psi(s t) dt; unitary on L^2(k).
/// Output is supported on p^{-b} O_k and invariant under p^{-a} O_k.
pub fn fourier_k(f: &KFunction) -> KFunction {
    let d = f.len();
    let roots = root_table(d);
    let scale = f.params.powi(-f.invariance_scale);
    let values: Vec<Complex64> = (0..d)
        .map(|i| {
            let mut acc = Complex64::ZERO;
            for (j, v) in f.values.iter().enumerate() {
                acc += v * roots[(i * j) % d];
            }
            acc * scale
        })
        .collect();
    KFunction {
        params: f.params,
        support_scale: -f.invariance_scale,
        invariance_scale: -f.support_scale,
        values,
    }
}

/// F_k^{-1} g(t) = integral of g(s) Psi(-s t) ds.
pub fn fourier_k_inverse(g: &KFunction) -> KFunction {
    let d = g.len();
    let roots = root_table(d);
    let scale = g.params.powi(-g.invariance_scale);
    let values: Vec<Complex64> = (0..d)
        .map(|j| {
            let mut acc = Complex64::ZERO;
            for (i, v) in g.values.iter().enumerate() {
                acc += v * roots[(d - (i * j) % d) % d];
            }
            acc * scale
        })
        .collect();
    KFunction {
        params: g.params,
        support_scale: -g.invariance_scale,
        invariance_scale: -g.support_scale,
        values,
    }
}

/// F_{Gamma_n}: counting measure on the truncated Gamma grid to the mass-1
/// dual grid; G[c] = sum_b f[b] Psi(x_c t_b).
pub fn fourier_gamma(_gamma: &GammaGrid, values: &[Complex64]) -> Vec<Complex64> {
    let d = values.len();
    let roots = root_table(d);
    (0..d)
        .map(|c| {
            let mut acc = Complex64::ZERO;
            for (b, v) in values.iter().enumerate() {
                acc += v * roots[(c * b) % d];
            }
            acc
        })
        .collect()
}

/// Inverse of `fourier_gamma`: f[b] = q^{n-N} sum_c G[c] Psi(-x_c t_b).
pub fn fourier_gamma_inverse(gamma: &GammaGrid, dual_values: &[Complex64]) -> Vec<Complex64> {
    let d = dual_values.len();
    let roots = root_table(d);
    let w = DualGrid::of(gamma).weight();
    (0..d)
        .map(|b| {
            let mut acc = Complex64::ZERO;
            for (c, v) in dual_values.iter().enumerate() {
                acc += v * roots[(d - (c * b) % d) % d];
            }
            acc * w
        })
        .collect()
}

/// Both sides of the substitution identities
/// (i)  int_{U_n} f(u^2) du        = int_{U_n} f(u) du,
/// (ii) int_{U_n} h(u - u^{-1}) du = int_{p^n O_k} h(x) dx,
/// computed as finite sums; a self-test of grid and measure plumbing.
pub struct SubstitutionCheck {
    pub square_lhs: Complex64,
    pub square_rhs: Complex64,
    pub phi_lhs: Complex64,
    pub phi_rhs: Complex64,
}

pub fn substitution_check(f: &ConfigFunction, h: &KFunction) -> Result<SubstitutionCheck> {
    let grid = f.grid();
    let vol = grid.cell_volume();
    let mut square_lhs = Complex64::ZERO;
    let mut square_rhs = Complex64::ZERO;
    for i in 0..grid.len() {
        let sq = grid.mul_index(i, i);
        square_lhs += vol * f.values()[sq];
        square_rhs += vol * f.values()[i];
    }

    if h.support_scale() != grid.params().level() as i64 {
        return Err(Error::GridMismatch(
            "h must live on the p^n O_k grid".into(),
        ));
    }
    if h.invariance_scale() > grid.u_scale() as i64 {
        return Err(Error::Resolution(
            "u-grid too coarse for the invariance scale of h".into(),
        ));
    }
    let prec = grid
        .params()
        .working_precision(grid.u_scale(), h.invariance_scale() as u32);
    let mut phi_lhs = Complex64::ZERO;
    for i in 0..grid.len() {
        let z = grid.phi_scalar(i, prec);
        phi_lhs += vol * h.values()[h.index_of(&z)?];
    }
    Ok(SubstitutionCheck {
        square_lhs,
        square_rhs,
        phi_lhs,
        phi_rhs: h.integral(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn params(p: u64, n: u32) -> FieldParams {
        FieldParams::new(p, n).unwrap()
    }

    #[test]
    fn unit_grid_covers_and_is_closed() {
        let g = UnitCosetGrid::new(params(3, 1), 3).unwrap();
        assert_eq!(g.len(), 9);
        // total Haar mass q^{-n}
        assert!((g.cell_volume() * g.len() as f64 - 1.0 / 3.0).abs() < 1e-15);
        for i in 0..g.len() {
            assert_eq!(g.mul_index(i, g.inv_index(i)), 0);
            let s = g.sqrt_index(i);
            assert_eq!(g.mul_index(s, s), i);
        }
    }

    #[test]
    fn indicator_of_o_k_is_self_dual() {
        let f = KFunction::new(params(3, 1), 0, 0, vec![Complex64::new(1.0, 0.0)]).unwrap();
        let g = fourier_k(&f);
        assert_eq!(g.support_scale(), 0);
        assert_eq!(g.invariance_scale(), 0);
        assert!((g.values()[0] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn indicator_of_3o_k_scales() {
        // F_k 1_{3 O_k} = (1/3) 1_{(1/3) O_k}
        let f = KFunction::new(params(3, 1), 1, 1, vec![Complex64::new(1.0, 0.0)]).unwrap();
        let g = fourier_k(&f);
        assert_eq!(g.support_scale(), -1);
        assert_eq!(g.invariance_scale(), -1);
        assert!((g.values()[0] - Complex64::new(1.0 / 3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn fourier_k_unitary_and_inverts() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f = sample::random_k_function(params(3, 1), 0, 2, &mut rng);
        let g = fourier_k(&f);
        assert!((f.norm_sq() - g.norm_sq()).abs() < 1e-12);
        let back = fourier_k_inverse(&g);
        for (a, b) in f.values().iter().zip(back.values()) {
            assert!((a - b).norm() < 1e-12);
        }
        // F_k F_k f (t) = f(-t)
        let twice = fourier_k(&g);
        let d = f.len() as u64;
        for j in 0..f.len() {
            let neg = ((d - j as u64) % d) as usize;
            assert!((twice.values()[j] - f.values()[neg]).norm() < 1e-12);
        }
    }

    #[test]
    fn gamma_transform_of_delta_is_flat() {
        let gamma = GammaGrid::new(params(3, 1), 3).unwrap();
        let mut vals = vec![Complex64::ZERO; gamma.len()];
        vals[0] = Complex64::new(1.0, 0.0);
        let g = fourier_gamma(&gamma, &vals);
        for v in &g {
            assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn gamma_plancherel_and_inversion() {
        let gamma = GammaGrid::new(params(3, 1), 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let vals = sample::random_complex_vec(gamma.len(), &mut rng);
        let g = fourier_gamma(&gamma, &vals);
        let lhs: f64 = vals.iter().map(|z| z.norm_sqr()).sum();
        let w = DualGrid::of(&gamma).weight();
        let rhs: f64 = g.iter().map(|z| z.norm_sqr()).sum::<f64>() * w;
        assert!((lhs - rhs).abs() < 1e-12);
        let back = fourier_gamma_inverse(&gamma, &g);
        for (a, b) in vals.iter().zip(&back) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn periodization_matches_gamma_transform() {
        // F_k f = q^n F_{Gamma_n} f~ on the dual grid points
        let pr = params(3, 1);
        let gamma = GammaGrid::new(pr, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let vals = sample::random_complex_vec(gamma.len(), &mut rng);
        let periodized = KFunction::new(pr, -3, -1, vals.clone()).unwrap();
        let lhs = fourier_k(&periodized);
        assert_eq!(lhs.support_scale(), 1);
        assert_eq!(lhs.invariance_scale(), 3);
        let rhs = fourier_gamma(&gamma, &vals);
        for (a, b) in lhs.values().iter().zip(&rhs) {
            assert!((a - 3.0 * b).norm() < 1e-12);
        }
        // the class sum equals q^{-n} times the k-integral
        let class_sum: Complex64 = vals.iter().sum();
        let integral = periodized.integral();
        assert!((class_sum - integral / 3.0).norm() < 1e-12);
    }

    #[test]
    fn dilation_permutes_gamma_grid() {
        let gamma = GammaGrid::new(params(3, 1), 3).unwrap();
        let ugrid = UnitCosetGrid::new(params(3, 1), 3).unwrap();
        for i in 0..ugrid.len() {
            let mut seen = vec![false; gamma.len()];
            let u = ugrid.rep_u64(i);
            for b in 0..gamma.len() {
                let img = gamma.act_unit_u64(u, b);
                assert!(!seen[img]);
                seen[img] = true;
            }
        }
    }

    #[test]
    fn substitution_identities() {
        let pr = params(3, 1);
        let grid = UnitCosetGrid::new(pr, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let f = ConfigFunction::new(
            grid.clone(),
            sample::random_complex_vec(grid.len(), &mut rng),
        )
        .unwrap();
        let h = sample::random_k_function(pr, 1, 3, &mut rng);
        let chk = substitution_check(&f, &h).unwrap();
        assert!((chk.square_lhs - chk.square_rhs).norm() < 1e-12);
        assert!((chk.phi_lhs - chk.phi_rhs).norm() < 1e-12);

        // constant f: both sides Vol(U_n) = q^{-n}
        let one = ConfigFunction::indicator(grid);
        let h1 = KFunction::new(pr, 1, 1, vec![Complex64::new(1.0, 0.0)]).unwrap();
        let chk = substitution_check(&one, &h1).unwrap();
        assert!((chk.square_lhs.re - 1.0 / 3.0).abs() < 1e-15);
        // h = 1_{p^n O_k}: both phi-sides equal Vol(p^n O_k) = q^{-n}
        assert!((chk.phi_lhs.re - 1.0 / 3.0).abs() < 1e-15);
        assert!((chk.phi_rhs.re - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn gamma_index_round_trip() {
        let gamma = GammaGrid::new(params(3, 2), 4).unwrap();
        for b in 0..gamma.len() {
            let t = gamma.rep_scalar(b, 8);
            assert_eq!(gamma.index_of(&t).unwrap(), b);
        }
        // translation by p^{-n} O_k leaves the class unchanged
        let t = gamma.rep_scalar(5, 8);
        let shifted = t.add(&PAdicScalar::from_rational(3, 1, 9, 8));
        assert_eq!(gamma.index_of(&shifted).unwrap(), 5);
    }
}
