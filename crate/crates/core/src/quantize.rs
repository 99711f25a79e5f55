//! The covariant quantization map and its inverse.
//!
//! A symbol f on the phase space X_n = U_n x Gamma_n at resolution (m, N) is
//! sent to the integral operator on L^2(U_n) whose Schwartz kernel is
//!
//!   K(u0, u) = q^n sum_{[t]} f((u u0)^{1/2}, [t]) Psi(theta phi((u u0^{-1})^{1/2}) t),
//!
//! assembled here by two independent routes: `quantize_direct` sums the
//! Haar-weighted point operators, while `kernel_formula` applies the Gamma
//! Fourier transform in the t-slot followed by the square-root change of
//! variables.  `symbol_of_operator` inverts the kernel route exactly, and
//! `wigner` produces the matrix-coefficient symbols that invert rank-one
//! operators.  Resolution arithmetic is explicit: Wigner symbols come out at
//! t-cutoff N = m, kernels at scale M = max(m, N).

use crate::error::{Error, Result};
use crate::harmonic::{
    common_scale, fourier_gamma, ConfigFunction, DualGrid, GammaGrid, UnitCosetGrid,
};
use crate::padic::{FieldParams, PAdicScalar};
use crate::repn::{GroupElement, ThetaParam};
use nalgebra::DMatrix;
use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A test function on phase space at resolution (m, N): constant on
/// U_m-cosets in u, supported in the N-truncated Gamma grid in [t].
/// Values are row-major over (u-cell, t-class).
#[derive(Debug, Clone)]
pub struct Symbol {
    ugrid: UnitCosetGrid,
    gamma: GammaGrid,
    theta: ThetaParam,
    values: Vec<Complex64>,
}

impl Symbol {
    pub fn new(
        ugrid: UnitCosetGrid,
        gamma: GammaGrid,
        theta: ThetaParam,
        values: Vec<Complex64>,
    ) -> Result<Self> {
        if values.len() != ugrid.len() * gamma.len() {
            return Err(Error::GridMismatch(format!(
                "expected {} x {} symbol values",
                ugrid.len(),
                gamma.len()
            )));
        }
        Ok(Symbol {
            ugrid,
            gamma,
            theta,
            values,
        })
    }

    pub fn zero(
        params: FieldParams,
        theta: ThetaParam,
        u_scale: u32,
        t_cutoff: u32,
    ) -> Result<Self> {
        let ugrid = UnitCosetGrid::new(params, u_scale)?;
        let gamma = GammaGrid::new(params, t_cutoff)?;
        let len = ugrid.len() * gamma.len();
        Symbol::new(ugrid, gamma, theta, vec![ZERO; len])
    }

    /// The constant-1 symbol on the whole (m, N) grid.
    pub fn one(
        params: FieldParams,
        theta: ThetaParam,
        u_scale: u32,
        t_cutoff: u32,
    ) -> Result<Self> {
        let mut s = Symbol::zero(params, theta, u_scale, t_cutoff)?;
        s.values
            .iter_mut()
            .for_each(|v| *v = Complex64::new(1.0, 0.0));
        Ok(s)
    }

    pub fn params(&self) -> FieldParams {
        self.ugrid.params()
    }

    pub fn theta(&self) -> &ThetaParam {
        &self.theta
    }

    pub fn ugrid(&self) -> &UnitCosetGrid {
        &self.ugrid
    }

    pub fn gamma(&self) -> &GammaGrid {
        &self.gamma
    }

    pub fn u_scale(&self) -> u32 {
        self.ugrid.u_scale()
    }

    pub fn t_cutoff(&self) -> u32 {
        self.gamma.t_cutoff()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn value(&self, u_cell: usize, t_class: usize) -> Complex64 {
        self.values[u_cell * self.gamma.len() + t_class]
    }

    pub fn set_value(&mut self, u_cell: usize, t_class: usize, v: Complex64) {
        let t_len = self.gamma.len();
        self.values[u_cell * t_len + t_class] = v;
    }

    /// ||f||^2 on L^2(X_n): Haar in u (cell volume p^{-m}) times counting in t.
    pub fn norm_sq(&self) -> f64 {
        self.ugrid.cell_volume() * self.values.iter().map(|z| z.norm_sqr()).sum::<f64>()
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn conj(&self) -> Symbol {
        Symbol {
            ugrid: self.ugrid.clone(),
            gamma: self.gamma.clone(),
            theta: self.theta.clone(),
            values: self.values.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn pointwise_mul(&self, rhs: &Symbol) -> Result<Symbol> {
        let (a, b) = reconcile(self, rhs)?;
        let values = a.values.iter().zip(&b.values).map(|(x, y)| x * y).collect();
        Symbol::new(a.ugrid.clone(), a.gamma.clone(), a.theta.clone(), values)
    }

    /// Refine to a finer resolution (exact: replication in u, zero-padding
    /// beyond the old cutoff in t).
    pub fn refine(&self, u_scale: u32, t_cutoff: u32) -> Result<Symbol> {
        if u_scale < self.u_scale() || t_cutoff < self.t_cutoff() {
            return Err(Error::Resolution(
                "symbol refinement must not coarsen".into(),
            ));
        }
        if u_scale == self.u_scale() && t_cutoff == self.t_cutoff() {
            return Ok(self.clone());
        }
        let params = self.params();
        let ugrid = UnitCosetGrid::new(params, u_scale)?;
        let gamma = GammaGrid::new(params, t_cutoff)?;
        let stretch = params.pow(t_cutoff - self.t_cutoff()) as usize;
        let mut values = vec![ZERO; ugrid.len() * gamma.len()];
        for c in 0..ugrid.len() {
            let parent = c % self.ugrid.len();
            for b in 0..self.gamma.len() {
                // t = b / p^N = (b p^{N'-N}) / p^{N'}
                values[c * gamma.len() + b * stretch] = self.value(parent, b);
            }
        }
        Symbol::new(ugrid, gamma, self.theta.clone(), values)
    }

    pub fn max_diff(&self, rhs: &Symbol) -> Result<f64> {
        let (a, b) = reconcile(self, rhs)?;
        Ok(a.values
            .iter()
            .zip(&b.values)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max))
    }

    /// Left translation by [g]: (lambda_g f)([g']) = f([g]^{-1} [g']).
    /// The translation part of g is reduced into the Gamma grid, so this is
    /// an exact permutation of grid points.
    pub fn translate_left(&self, g: &GroupElement) -> Result<Symbol> {
        let prec = g.u().precision().min(self.params().max_precision());
        let u_inv = g.u().invert()?;
        let mut values = vec![ZERO; self.values.len()];
        for c in 0..self.ugrid.len() {
            let rep = self.ugrid.rep_scalar(c, prec);
            let src_u = self.ugrid.index_of(&u_inv.mul(&rep))?;
            // shift class [r_c^{-1} u t]
            let shift = self.gamma.index_of(&rep.invert()?.mul(g.u()).mul(g.t()))?;
            for b in 0..self.gamma.len() {
                let src_b = self.gamma.add(b, self.gamma.neg(shift));
                values[c * self.gamma.len() + b] = self.value(src_u, src_b);
            }
        }
        Symbol::new(
            self.ugrid.clone(),
            self.gamma.clone(),
            self.theta.clone(),
            values,
        )
    }
}

/// Refine two symbols to the common resolution (max m, max N); theta must
/// agree.
pub fn reconcile(a: &Symbol, b: &Symbol) -> Result<(Symbol, Symbol)> {
    if !a.theta().congruent(b.theta()) {
        return Err(Error::GridMismatch("theta mismatch between symbols".into()));
    }
    let m = a.u_scale().max(b.u_scale());
    let t = a.t_cutoff().max(b.t_cutoff());
    Ok((a.refine(m, t)?, b.refine(m, t)?))
}

/// The Schwartz kernel of an operator on L^2(U_n), stored as kernel values
/// K(u_i, u_j) on the scale-M coset grid.  The operator action and all
/// compositions carry the Haar weight p^{-M}:
///   (A phi)_i = p^{-M} sum_j K_ij phi_j.
#[derive(Debug, Clone)]
pub struct OperatorKernel {
    grid: UnitCosetGrid,
    matrix: Vec<Complex64>,
}

impl OperatorKernel {
    pub fn new(grid: UnitCosetGrid, matrix: Vec<Complex64>) -> Result<Self> {
        if matrix.len() != grid.len() * grid.len() {
            return Err(Error::GridMismatch(
                "kernel matrix must be square on the grid".into(),
            ));
        }
        Ok(OperatorKernel { grid, matrix })
    }

    pub fn zero(grid: UnitCosetGrid) -> Self {
        let len = grid.len() * grid.len();
        OperatorKernel {
            grid,
            matrix: vec![ZERO; len],
        }
    }

    /// The identity operator at scale M: diagonal kernel q^M.
    pub fn identity(grid: UnitCosetGrid) -> Self {
        let mut k = OperatorKernel::zero(grid);
        let d = k.dim();
        let qm = k.grid.params().powi(k.grid.u_scale() as i64);
        for i in 0..d {
            k.matrix[i * d + i] = Complex64::new(qm, 0.0);
        }
        k
    }

    /// |phi2><phi1|: K(u0, u) = phi2(u0) conj(phi1(u)).
    pub fn rank_one(phi2: &ConfigFunction, phi1: &ConfigFunction) -> Result<Self> {
        let (a, b) = common_scale(phi2, phi1)?;
        let d = a.grid().len();
        let mut matrix = vec![ZERO; d * d];
        for i in 0..d {
            for j in 0..d {
                matrix[i * d + j] = a.values()[i] * b.values()[j].conj();
            }
        }
        OperatorKernel::new(a.grid().clone(), matrix)
    }

    pub fn params(&self) -> FieldParams {
        self.grid.params()
    }

    pub fn grid(&self) -> &UnitCosetGrid {
        &self.grid
    }

    pub fn kernel_scale(&self) -> u32 {
        self.grid.u_scale()
    }

    pub fn dim(&self) -> usize {
        self.grid.len()
    }

    pub fn matrix(&self) -> &[Complex64] {
        &self.matrix
    }

    pub fn matrix_mut(&mut self) -> &mut [Complex64] {
        &mut self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[i * self.dim() + j]
    }

    fn haar(&self) -> f64 {
        self.grid.cell_volume()
    }

    pub fn apply(&self, phi: &ConfigFunction) -> Result<ConfigFunction> {
        let phi = phi.refine(self.kernel_scale())?;
        if phi.scale() != self.kernel_scale() {
            return Err(Error::GridMismatch(
                "vector finer than the kernel grid".into(),
            ));
        }
        let d = self.dim();
        let w = self.haar();
        let values = (0..d)
            .map(|i| {
                let mut acc = ZERO;
                for j in 0..d {
                    acc += self.matrix[i * d + j] * phi.values()[j];
                }
                acc * w
            })
            .collect();
        ConfigFunction::new(self.grid.clone(), values)
    }

    /// Operator composition: (AB)(u0, u) = int A(u0, w) B(w, u) dw.
    pub fn compose(&self, rhs: &OperatorKernel) -> Result<OperatorKernel> {
        let m = self.kernel_scale().max(rhs.kernel_scale());
        let a = self.refine(m)?;
        let b = rhs.refine(m)?;
        let d = a.dim();
        let w = a.haar();
        let mut matrix = vec![ZERO; d * d];
        for i in 0..d {
            for k in 0..d {
                let aik = a.matrix[i * d + k];
                if aik == ZERO {
                    continue;
                }
                for j in 0..d {
                    matrix[i * d + j] += aik * b.matrix[k * d + j];
                }
            }
        }
        matrix.iter_mut().for_each(|z| *z *= w);
        OperatorKernel::new(a.grid.clone(), matrix)
    }

    pub fn adjoint(&self) -> OperatorKernel {
        let d = self.dim();
        let mut matrix = vec![ZERO; d * d];
        for i in 0..d {
            for j in 0..d {
                matrix[i * d + j] = self.matrix[j * d + i].conj();
            }
        }
        OperatorKernel {
            grid: self.grid.clone(),
            matrix,
        }
    }

    pub fn trace(&self) -> Complex64 {
        let d = self.dim();
        self.haar() * (0..d).map(|i| self.matrix[i * d + i]).sum::<Complex64>()
    }

    /// Hilbert-Schmidt norm squared: p^{-2M} sum |K_ij|^2.
    pub fn hs_norm_sq(&self) -> f64 {
        let w = self.haar();
        w * w * self.matrix.iter().map(|z| z.norm_sqr()).sum::<f64>()
    }

    /// Operator norm on L^2(U_n): largest singular value of p^{-M} K.
    pub fn op_norm(&self) -> f64 {
        let d = self.dim();
        let w = self.haar();
        let m = DMatrix::from_fn(d, d, |i, j| self.matrix[i * d + j] * w);
        m.singular_values()[0]
    }

    /// Replicate the kernel onto a finer grid (exact).
    pub fn refine(&self, scale: u32) -> Result<OperatorKernel> {
        if scale < self.kernel_scale() {
            return Err(Error::Resolution(
                "kernel refinement must not coarsen".into(),
            ));
        }
        if scale == self.kernel_scale() {
            return Ok(self.clone());
        }
        let fine = UnitCosetGrid::new(self.params(), scale)?;
        let d0 = self.dim();
        let d = fine.len();
        let mut matrix = vec![ZERO; d * d];
        for i in 0..d {
            for j in 0..d {
                matrix[i * d + j] = self.matrix[(i % d0) * d0 + (j % d0)];
            }
        }
        OperatorKernel::new(fine, matrix)
    }

    /// Coarsen to scale M, averaging blocks and checking they are constant.
    pub fn coarsen(&self, scale: u32, tol: f64) -> Result<OperatorKernel> {
        if scale > self.kernel_scale() {
            return Err(Error::Resolution("coarsen must not refine".into()));
        }
        if scale == self.kernel_scale() {
            return Ok(self.clone());
        }
        let coarse = UnitCosetGrid::new(self.params(), scale)?;
        let d0 = coarse.len();
        let d = self.dim();
        let mut matrix = vec![ZERO; d0 * d0];
        let block = (d / d0) as f64;
        for i in 0..d {
            for j in 0..d {
                matrix[(i % d0) * d0 + (j % d0)] += self.matrix[i * d + j];
            }
        }
        matrix.iter_mut().for_each(|z| *z /= block * block);
        let out = OperatorKernel::new(coarse, matrix)?;
        // the fine kernel must be constant on blocks for this to be lossless
        let mut dev: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                dev =
                    dev.max((self.matrix[i * d + j] - out.matrix[(i % d0) * d0 + (j % d0)]).norm());
            }
        }
        if dev > tol {
            return Err(Error::Numerical(format!(
                "kernel not constant on scale-{scale} blocks (deviation {dev:.3e})"
            )));
        }
        Ok(out)
    }

    pub fn max_diff(&self, rhs: &OperatorKernel) -> Result<f64> {
        let m = self.kernel_scale().max(rhs.kernel_scale());
        let a = self.refine(m)?;
        let b = rhs.refine(m)?;
        Ok(a.matrix
            .iter()
            .zip(&b.matrix)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max))
    }
}

/// The self-adjoint unitary point operator Omega_theta([g]) applied to phi:
///   (Omega([g]) phi)(u0) = Psi_theta(phi_map(u u0^{-1}) t) phi(u^2 u0^{-1}).
/// Depends on t only through its class in Gamma_n.
pub fn omega_point(
    g_u: &PAdicScalar,
    g_t: &PAdicScalar,
    phi: &ConfigFunction,
    theta: &ThetaParam,
) -> Result<ConfigFunction> {
    let grid = phi.grid();
    let params = grid.params();
    let n = params.level();
    let m = grid.u_scale();
    let out_scale = match theta.scalar().mul(g_t).valuation() {
        None => m,
        Some(v) => m.max((n as i64 - v).max(m as i64) as u32),
    };
    let out_grid = if out_scale == m {
        grid.clone()
    } else {
        UnitCosetGrid::new(params, out_scale)?
    };
    let prec = params.working_precision(
        out_scale,
        out_scale.max(g_t.valuation_or(0).unsigned_abs() as u32),
    );
    let u_sq = g_u.mul(g_u);
    let mut values = Vec::with_capacity(out_grid.len());
    for i in 0..out_grid.len() {
        let rep_inv = out_grid.rep_scalar(i, prec).invert()?;
        let x = crate::padic::PrincipalUnit::new(g_u.mul(&rep_inv), n)?.phi();
        let chi = theta.psi(&x.mul(g_t))?;
        let src = grid.index_of(&u_sq.mul(&rep_inv))?;
        values.push(chi * phi.values()[src]);
    }
    ConfigFunction::new(out_grid, values)
}

/// Kernel scale of the quantization of an (m, N) symbol.
pub fn kernel_scale_for(m: u32, t_cutoff: u32) -> u32 {
    m.max(t_cutoff)
}

/// Psi(theta phi_w t_b) for every scale-M cell w and Gamma class b.
fn phase_table(
    grid: &UnitCosetGrid,
    gamma: &GammaGrid,
    theta: &ThetaParam,
) -> Result<Vec<Complex64>> {
    let params = grid.params();
    let prec = params.working_precision(grid.u_scale(), gamma.t_cutoff());
    let t_len = gamma.len();
    let mut table = vec![ZERO; grid.len() * t_len];
    for w in 0..grid.len() {
        let tp = theta.scalar().mul(&grid.phi_scalar(w, prec));
        for b in 0..t_len {
            table[w * t_len + b] = tp.mul(&gamma.rep_scalar(b, prec)).psi()?;
        }
    }
    Ok(table)
}

/// Omega_theta(f) assembled as the Haar-weighted sum of point operators over
/// the symbol grid.  Output kernel scale is M = max(m, N); the sum itself is
/// accumulated at the finer scale max(m, n + N) at which individual point
/// operators preserve the grid, then coarsened (exactly) to M.
pub fn quantize_direct(f: &Symbol) -> Result<OperatorKernel> {
    let params = f.params();
    let n = params.level();
    let m = f.u_scale();
    let t_cutoff = f.t_cutoff();
    let target = kernel_scale_for(m, t_cutoff);
    let fine_scale = m.max(n + t_cutoff);
    let fine = f.refine(fine_scale, t_cutoff)?;
    let grid = fine.ugrid();
    let gamma = fine.gamma();
    let d = grid.len();
    let t_len = gamma.len();
    let qn = params.powi(n as i64);
    let phases = phase_table(grid, gamma, f.theta())?;
    let mut matrix = vec![ZERO; d * d];
    for s in 0..d {
        let s_sq = grid.mul_index(s, s);
        for i in 0..d {
            let i_inv = grid.inv_index(i);
            let w = grid.mul_index(s, i_inv);
            let j = grid.mul_index(s_sq, i_inv);
            let mut acc = ZERO;
            for b in 0..t_len {
                acc += fine.value(s, b) * phases[w * t_len + b];
            }
            matrix[i * d + j] += qn * acc;
        }
    }
    OperatorKernel::new(grid.clone(), matrix)?.coarsen(target, 1e-9)
}

/// Omega_theta(f) via the closed kernel formula: the Gamma Fourier transform
/// in the t-slot followed by the square-root change of variables
/// (u0, u) -> (u^{1/2} u0^{1/2}, theta phi(u^{1/2} u0^{-1/2})).
pub fn kernel_formula(f: &Symbol) -> Result<OperatorKernel> {
    let params = f.params();
    let target = kernel_scale_for(f.u_scale(), f.t_cutoff());
    let grid = UnitCosetGrid::new(params, target)?;
    let dual = DualGrid::of(f.gamma());
    let prec = params.working_precision(target, f.t_cutoff());
    let u_len = f.ugrid().len();
    let t_len = f.gamma().len();
    // rows of Id (x) F_Gamma f over the dual grid
    let mut hat = vec![ZERO; u_len * t_len];
    for c in 0..u_len {
        let row = fourier_gamma(f.gamma(), &f.values()[c * t_len..(c + 1) * t_len]);
        hat[c * t_len..(c + 1) * t_len].copy_from_slice(&row);
    }
    let qn = params.powi(params.level() as i64);
    let d = grid.len();
    let theta = f.theta();
    let mut matrix = vec![ZERO; d * d];
    for i in 0..d {
        let i_inv = grid.inv_index(i);
        for j in 0..d {
            let w = grid.sqrt_index(grid.mul_index(j, i));
            let v = grid.sqrt_index(grid.mul_index(j, i_inv));
            let x = theta.scalar().mul(&grid.phi_scalar(v, prec));
            let dual_idx = dual.index_of(&x)?;
            matrix[i * d + j] = qn * hat[(w % u_len) * t_len + dual_idx];
        }
    }
    OperatorKernel::new(grid, matrix)
}

/// The Wigner symbol W_{phi1, phi2}([g]) = <phi1, Omega_theta([g]) phi2>,
/// produced at u-scale m and t-cutoff N = m (the derived support bound).
pub fn wigner(phi1: &ConfigFunction, phi2: &ConfigFunction, theta: &ThetaParam) -> Result<Symbol> {
    let (a, b) = common_scale(phi1, phi2)?;
    let grid = a.grid().clone();
    let params = grid.params();
    let m = grid.u_scale();
    let gamma = GammaGrid::new(params, m)?;
    let t_len = gamma.len();
    let d = grid.len();
    let vol = grid.cell_volume();
    let phases = phase_table(&grid, &gamma, theta)?;
    let mut values = vec![ZERO; d * t_len];
    for c in 0..d {
        let c_sq = grid.mul_index(c, c);
        for i in 0..d {
            let i_inv = grid.inv_index(i);
            let w = grid.mul_index(c, i_inv);
            let j = grid.mul_index(c_sq, i_inv);
            let amp = a.values()[i].conj() * b.values()[j] * vol;
            if amp == ZERO {
                continue;
            }
            for t in 0..t_len {
                values[c * t_len + t] += amp * phases[w * t_len + t];
            }
        }
    }
    Symbol::new(grid, gamma, theta.clone(), values)
}

/// The symbol of an operator: inverts `kernel_formula` by undoing the change
/// of variables and the Gamma Fourier transform.  Output resolution (M, M).
pub fn symbol_of_operator(a: &OperatorKernel, theta: &ThetaParam) -> Result<Symbol> {
    let params = a.params();
    let scale = a.kernel_scale();
    let grid = a.grid();
    let gamma = GammaGrid::new(params, scale)?;
    let dual = DualGrid::of(&gamma);
    let d = gamma.len();
    debug_assert_eq!(d, a.dim());
    let prec = params.working_precision(scale, scale) + 2;
    let theta_inv = theta.scalar().invert()?;
    // cells of v_x = phi^{-1}(theta^{-1} x) over the dual grid
    let v_cell: Vec<usize> = (0..d)
        .map(|c| {
            let x = dual.rep_scalar(c, prec);
            let v = crate::padic::phi_inverse(&theta_inv.mul(&x), params.level())?;
            grid.index_of(v.scalar())
        })
        .collect::<Result<_>>()?;
    let weight = params.powi(-(scale as i64));
    let roots: Vec<Complex64> = (0..d)
        .map(|r| {
            let ang =
                crate::padic::CharacterAngle::new(params.prime(), r as u64, scale - params.level());
            ang.eval()
        })
        .collect();
    let mut values = vec![ZERO; grid.len() * d];
    for c in 0..grid.len() {
        for b in 0..d {
            let mut acc = ZERO;
            for x in 0..d {
                let row = grid.mul_index(c, grid.inv_index(v_cell[x]));
                let col = grid.mul_index(c, v_cell[x]);
                // Psi(-x t_b) = conj root at xb
                acc += a.entry(row, col) * roots[(d - (x * b) % d) % d];
            }
            values[c * d + b] = acc * weight;
        }
    }
    Symbol::new(grid.clone(), gamma, theta.clone(), values)
}

/// (||Omega(f)||_HS^2, q^n ||f||^2): the two sides of the isometry identity.
pub fn hs_isometry_check(f: &Symbol) -> Result<(f64, f64)> {
    let k = quantize_direct(f)?;
    let qn = f.params().powi(f.params().level() as i64);
    Ok((k.hs_norm_sq(), qn * f.norm_sq()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn setup(p: u64, n: u32) -> (FieldParams, ThetaParam) {
        let params = FieldParams::new(p, n).unwrap();
        let theta = ThetaParam::one(params);
        (params, theta)
    }

    #[test]
    fn omega_point_at_identity_is_inversion() {
        let (params, theta) = setup(3, 1);
        let grid = UnitCosetGrid::new(params, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let phi = sample::random_config(&grid, &mut rng);
        let out = omega_point(
            &PAdicScalar::one(3, 10),
            &PAdicScalar::zero(3),
            &phi,
            &theta,
        )
        .unwrap();
        for i in 0..grid.len() {
            let inv = grid.inv_index(i);
            assert!((out.values()[i] - phi.values()[inv]).norm() < 1e-15);
        }
    }

    #[test]
    fn omega_point_is_involutive_and_class_invariant() {
        let (params, theta) = setup(3, 1);
        let grid = UnitCosetGrid::new(params, 3).unwrap();
        let gamma = GammaGrid::new(params, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let phi = sample::random_config(&grid, &mut rng);
            let g = sample::random_group_element(&grid, &gamma, 12, &mut rng);
            let once = omega_point(g.u(), g.t(), &phi, &theta).unwrap();
            let twice = omega_point(g.u(), g.t(), &once, &theta).unwrap();
            let phi_f = phi.refine(twice.scale()).unwrap();
            for (x, y) in twice.values().iter().zip(phi_f.values()) {
                assert!((x - y).norm() < 1e-12);
            }
            // translating t by p^{-n} O_k leaves the operator unchanged
            let shifted = g.t().add(&PAdicScalar::from_rational(3, 1, 3, 12));
            let other = omega_point(g.u(), &shifted, &phi, &theta).unwrap();
            for (x, y) in once.values().iter().zip(other.values()) {
                assert!((x - y).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn routes_agree_on_random_symbols() {
        let (params, theta) = setup(3, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..25 {
            let f = sample::random_symbol(params, &theta, 3, 2, &mut rng);
            let a = quantize_direct(&f).unwrap();
            let b = kernel_formula(&f).unwrap();
            assert!(a.max_diff(&b).unwrap() < 1e-10);
        }
    }

    #[test]
    fn quantization_of_one_acts_as_identity() {
        let (params, theta) = setup(3, 1);
        // N >= m: the constant symbol quantizes to the identity on scale-m vectors
        let f = Symbol::one(params, theta.clone(), 2, 3).unwrap();
        let k = quantize_direct(&f).unwrap();
        let grid = UnitCosetGrid::new(params, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let phi = sample::random_config(&grid, &mut rng);
        let out = k.apply(&phi).unwrap();
        let phi_f = phi.refine(out.scale()).unwrap();
        for (x, y) in out.values().iter().zip(phi_f.values()) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn zero_symbol_quantizes_to_zero() {
        let (params, theta) = setup(3, 1);
        let f = Symbol::zero(params, theta, 3, 2).unwrap();
        let k = quantize_direct(&f).unwrap();
        assert!(k.matrix().iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn hs_isometry_on_random_symbols() {
        let (params, theta) = setup(3, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let f = sample::random_symbol(params, &theta, 3, 2, &mut rng);
            let (hs, qn) = hs_isometry_check(&f).unwrap();
            assert!((hs - qn).abs() <= 1e-10 * qn.max(1.0));
        }
        // delta symbol: both sides exactly 1 at (p=3, n=1, m=1, N=1)
        let mut f = Symbol::zero(params, theta.clone(), 1, 1).unwrap();
        f.set_value(0, 0, Complex64::new(1.0, 0.0));
        let (hs, qn) = hs_isometry_check(&f).unwrap();
        assert!((hs - 1.0).abs() < 1e-12);
        assert!((qn - 1.0).abs() < 1e-12);
        let z = Symbol::zero(params, theta, 2, 2).unwrap();
        let (hs, qn) = hs_isometry_check(&z).unwrap();
        assert_eq!((hs, qn), (0.0, 0.0));
    }

    #[test]
    fn wigner_inverts_rank_one_operators() {
        let (params, theta) = setup(3, 1);
        let grid = UnitCosetGrid::new(params, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..10 {
            let phi1 = sample::random_config(&grid, &mut rng);
            let phi2 = sample::random_config(&grid, &mut rng);
            let w = wigner(&phi1, &phi2, &theta).unwrap();
            assert_eq!(w.t_cutoff(), 2);
            let quantized = quantize_direct(&w).unwrap();
            let expected = OperatorKernel::rank_one(&phi2, &phi1).unwrap();
            assert!(quantized.max_diff(&expected).unwrap() < 1e-10);
            // sup bound |W| <= q^{-n} ||phi1||_inf ||phi2||_inf
            let bound = (1.0 / 3.0) * phi1.sup_norm() * phi2.sup_norm();
            assert!(w.sup_norm() <= bound + 1e-12);
        }
    }

    #[test]
    fn wigner_at_identity_is_inversion_element() {
        let (params, theta) = setup(3, 1);
        let grid = UnitCosetGrid::new(params, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let phi = sample::random_config(&grid, &mut rng);
        let w = wigner(&phi, &phi, &theta).unwrap();
        // W(e) = <phi, Sigma phi>
        let mut sigma = phi.clone();
        for i in 0..grid.len() {
            sigma.values_mut()[i] = phi.values()[grid.inv_index(i)];
        }
        let expect = phi.inner(&sigma).unwrap();
        assert!((w.value(0, 0) - expect).norm() < 1e-13);
    }

    #[test]
    fn symbol_round_trips_through_operator() {
        let (params, theta) = setup(3, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..25 {
            let f = sample::random_symbol(params, &theta, 3, 2, &mut rng);
            let k = quantize_direct(&f).unwrap();
            let back = symbol_of_operator(&k, &theta).unwrap();
            assert!(back.max_diff(&f).unwrap() < 1e-10);
        }
    }

    #[test]
    fn symbol_of_identity_is_constant_one() {
        let (params, theta) = setup(3, 1);
        let grid = UnitCosetGrid::new(params, 2).unwrap();
        let id = OperatorKernel::identity(grid);
        let s = symbol_of_operator(&id, &theta).unwrap();
        let one = Symbol::one(params, theta, 2, 2).unwrap();
        assert!(s.max_diff(&one).unwrap() < 1e-12);
    }

    #[test]
    fn symbol_of_rank_one_is_wigner() {
        let (params, theta) = setup(3, 1);
        let grid = UnitCosetGrid::new(params, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let phi1 = sample::random_config(&grid, &mut rng);
        let phi2 = sample::random_config(&grid, &mut rng);
        let k = OperatorKernel::rank_one(&phi2, &phi1).unwrap();
        let s = symbol_of_operator(&k, &theta).unwrap();
        let w = wigner(&phi1, &phi2, &theta).unwrap();
        assert!(s.max_diff(&w).unwrap() < 1e-11);
    }

    #[test]
    fn adjoint_is_conjugate_symbol() {
        let (params, theta) = setup(3, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let f = sample::random_symbol(params, &theta, 3, 2, &mut rng);
        let lhs = quantize_direct(&f.conj()).unwrap();
        let rhs = quantize_direct(&f).unwrap().adjoint();
        assert!(lhs.max_diff(&rhs).unwrap() < 1e-11);
    }

    #[test]
    fn covariance_conjugation_matches_translated_symbol() {
        let (params, theta) = setup(3, 1);
        let gamma = GammaGrid::new(params, 2).unwrap();
        let ugrid = UnitCosetGrid::new(params, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let f = sample::random_symbol(params, &theta, 3, 2, &mut rng);
            let g = sample::random_group_element(&ugrid, &gamma, 12, &mut rng);
            let a = quantize_direct(&f).unwrap();
            // pi(g) as a kernel at the composed scale
            let scale = a.kernel_scale().max(crate::repn::pi_output_scale(
                a.kernel_scale(),
                params.level(),
                &theta,
                g.t(),
            ));
            let grid = UnitCosetGrid::new(params, scale).unwrap();
            let mut pi_k = OperatorKernel::zero(grid.clone());
            let d = grid.len();
            let qm = params.powi(scale as i64);
            for i in 0..d {
                let rep = grid.rep_scalar(i, 12);
                let chi = theta
                    .psi(&rep.invert().unwrap().mul(&g.u().mul(g.t())))
                    .unwrap();
                let j = grid.index_of(&g.u().invert().unwrap().mul(&rep)).unwrap();
                pi_k.matrix_mut()[i * d + j] = chi * qm;
            }
            let lhs = pi_k.compose(&a).unwrap().compose(&pi_k.adjoint()).unwrap();
            let rhs = quantize_direct(&f.translate_left(&g).unwrap()).unwrap();
            assert!(lhs.max_diff(&rhs).unwrap() < 1e-10);
        }
    }

    #[test]
    fn quantization_injective_at_fixed_resolution() {
        let (params, theta) = setup(3, 1);
        // full-rank check of the linear map symbol -> kernel at (m, N) = (2, 2)
        let dim_sym = 3 * 3;
        let mut cols: Vec<Complex64> = Vec::new();
        for idx in 0..dim_sym {
            let mut f = Symbol::zero(params, theta.clone(), 2, 2).unwrap();
            f.values_mut()[idx] = Complex64::new(1.0, 0.0);
            let k = kernel_formula(&f).unwrap();
            cols.extend_from_slice(k.matrix());
        }
        let rows = cols.len() / dim_sym;
        let m = DMatrix::from_fn(rows, dim_sym, |r, c| cols[c * rows + r]);
        let sv = m.singular_values();
        assert!(
            sv[sv.len() - 1] > 1e-8,
            "smallest singular value {}",
            sv[sv.len() - 1]
        );
    }
}
