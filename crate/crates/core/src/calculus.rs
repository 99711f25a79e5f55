//! The symbol calculus behind the operator-norm estimate.
//!
//! Regularity of a symbol is measured by the right-convolution operators J^s
//! built from the kernels kappa_s = F_k(conj(Psi) mu_0^s), with
//! mu_0(t) = max(1, |p^n t|).  The kernels live on U_n, depend only on
//! val(u - 1), and are evaluated in closed form by shell decomposition, so
//! J-matrices are assembled without truncation error for s < -1; general
//! powers use the spectral calculus of the exact J^{-2} matrix.  On top of
//! this the module provides the B/S seminorms, the coherent Wigner states
//! and their J^s integrals, the operator-norm certificate
//! ||Omega(F)|| <= (q^n + ||mu_0^{s+1}||_1) ||J^{-s}F||_inf, and the
//! reconstruction of a symbol from matrix coefficients against coherent
//! states.
//!
//! J-matrices require the closure condition m >= N + n (right convolution
//! along the unit subgroup moves the Gamma slot by [u^{-1} t]; symbols must
//! be constant on the cells it mixes).  Entry points refine automatically.

use crate::error::{Error, Result};
use crate::harmonic::{GammaGrid, UnitCosetGrid};
use crate::padic::{self, FieldParams, PAdicScalar};
use crate::quantize::{quantize_direct, symbol_of_operator, Symbol};
use crate::repn::{pi_apply, pi_output_scale, GroupElement, ThetaParam};
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use std::collections::HashMap;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// ||mu_0^sigma||_{L^1(k)} in closed form:
///   q^n (1 + (1 - 1/q) q^{sigma+1} / (1 - q^{sigma+1})),  sigma < -1.
pub fn mu0_l1_norm(params: FieldParams, sigma: f64) -> Result<f64> {
    if sigma >= -1.0 {
        return Err(Error::InvalidParams(format!(
            "mu_0^{sigma} is not integrable (need sigma < -1)"
        )));
    }
    let q = params.residue_cardinality() as f64;
    let qn = q.powi(params.level() as i32);
    let r = q.powf(sigma + 1.0);
    Ok(qn * (1.0 + (1.0 - 1.0 / q) * r / (1.0 - r)))
}

/// The convolution kernel kappa_s = F_k(conj(Psi) mu_0^s) on U_n, s < -1.
/// Real-valued, supported on U_n, a function of v = val(u - 1) alone.
#[derive(Debug, Clone)]
pub struct KsKernel {
    params: FieldParams,
    s: f64,
}

impl KsKernel {
    pub fn new(params: FieldParams, s: f64) -> Result<Self> {
        if s >= -1.0 {
            return Err(Error::InvalidParams(format!(
                "kappa_s needs s < -1, got {s}"
            )));
        }
        Ok(KsKernel { params, s })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// kappa_s at any u with val(u - 1) = v (v >= n), by shell decomposition:
    ///   p^n + (1 - 1/p) sum_{j=n+1}^{v} p^{s(j-n)+j} - p^{s(v+1-n)+v}.
    pub fn kappa(&self, v: u32) -> f64 {
        let p = self.params.prime() as f64;
        let n = self.params.level();
        debug_assert!(v >= n);
        let mut acc = p.powi(n as i32);
        for j in (n + 1)..=v {
            acc += (1.0 - 1.0 / p) * p.powf(self.s * (j - n) as f64 + j as f64);
        }
        acc - p.powf(self.s * (v + 1 - n) as f64 + v as f64)
    }

    /// kappa_s at u = 1, i.e. the total integral of mu_0^s over k.
    pub fn kappa_at_one(&self) -> f64 {
        mu0_l1_norm(self.params, self.s).expect("s < -1 by construction")
    }

    /// Per-cell integrals of kappa_s over the U_m-cells of the grid.  Cells
    /// away from 1 use the constant shell value; the cell containing 1 gets
    /// the exact remainder of the total integral int_{U_n} kappa_s = 1, so
    /// no truncation error enters the assembly.
    pub fn cell_weights(&self, grid: &UnitCosetGrid) -> Vec<f64> {
        let n = self.params.level();
        let vol = grid.cell_volume();
        let mut weights = vec![0.0; grid.len()];
        let mut rest = 1.0;
        #[allow(clippy::needless_range_loop)]
        for i in 1..grid.len() {
            // val(rep - 1) = n + val_p(a) for rep = 1 + p^n a
            let mut a = i as u64;
            let mut v = n;
            while a.is_multiple_of(self.params.prime()) {
                a /= self.params.prime();
                v += 1;
            }
            let w = self.kappa(v) * vol;
            weights[i] = w;
            rest -= w;
        }
        weights[0] = rest;
        weights
    }
}

/// The J^s calculus on the finite symbol space at resolution (m, N) with
/// m >= N + n.  Holds the exactly assembled J^{-2} matrix and its spectral
/// decomposition; powers J^s are defined through it.
pub struct JCalculus {
    ugrid: UnitCosetGrid,
    gamma: GammaGrid,
    eigen: SymmetricEigen<f64, nalgebra::Dyn>,
}

impl JCalculus {
    pub fn new(params: FieldParams, u_scale: u32, t_cutoff: u32) -> Result<Self> {
        let n = params.level();
        if u_scale < t_cutoff + n {
            return Err(Error::Resolution(format!(
                "J-calculus closure condition m >= N + n violated: m = {u_scale}, N = {t_cutoff}, n = {n}"
            )));
        }
        let ugrid = UnitCosetGrid::new(params, u_scale)?;
        let gamma = GammaGrid::new(params, t_cutoff)?;
        let j2 = assemble_direct(&KsKernel::new(params, -2.0)?, &ugrid, &gamma);
        let eigen = SymmetricEigen::new(j2.clone());
        let min = eigen.eigenvalues.iter().cloned().fold(f64::MAX, f64::min);
        if min <= 0.0 {
            return Err(Error::Numerical(format!(
                "J^-2 matrix is not positive definite (min eigenvalue {min:.3e})"
            )));
        }
        Ok(JCalculus {
            ugrid,
            gamma,
            eigen,
        })
    }

    /// Build at the closure-compatible refinement of a symbol's resolution.
    pub fn for_symbol(f: &Symbol) -> Result<(JCalculus, Symbol)> {
        let params = f.params();
        let m = f.u_scale().max(f.t_cutoff() + params.level());
        let refined = f.refine(m, f.t_cutoff())?;
        Ok((JCalculus::new(params, m, f.t_cutoff())?, refined))
    }

    pub fn ugrid(&self) -> &UnitCosetGrid {
        &self.ugrid
    }

    pub fn gamma(&self) -> &GammaGrid {
        &self.gamma
    }

    pub fn dim(&self) -> usize {
        self.ugrid.len() * self.gamma.len()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigen
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::MAX, f64::min)
    }

    /// Directly assembled J^s matrix for s < -1 (independent of the spectral
    /// route; used as its cross-check).
    pub fn direct_matrix(&self, s: f64) -> Result<DMatrix<f64>> {
        let kernel = KsKernel::new(self.ugrid.params(), s)?;
        Ok(assemble_direct(&kernel, &self.ugrid, &self.gamma))
    }

    /// J^s as the spectral power (J^{-2})^{-s/2}; J^0 is the identity.
    pub fn power(&self, s: f64) -> DMatrix<f64> {
        let d = self.dim();
        if s == 0.0 {
            return DMatrix::identity(d, d);
        }
        let lambda = self.eigen.eigenvalues.map(|l| l.powf(-s / 2.0));
        &self.eigen.eigenvectors
            * DMatrix::from_diagonal(&lambda)
            * self.eigen.eigenvectors.transpose()
    }

    /// Apply J^s to a symbol at this resolution.
    pub fn apply(&self, s: f64, f: &Symbol) -> Result<Symbol> {
        let f = f.refine(self.ugrid.u_scale(), self.gamma.t_cutoff())?;
        if f.ugrid().len() != self.ugrid.len() || f.gamma().len() != self.gamma.len() {
            return Err(Error::GridMismatch(
                "symbol resolution does not match J-calculus".into(),
            ));
        }
        let m = self.power(s);
        Ok(self.apply_matrix(&m, &f))
    }

    fn apply_matrix(&self, m: &DMatrix<f64>, f: &Symbol) -> Symbol {
        let d = self.dim();
        let mut values = vec![ZERO; d];
        for r in 0..d {
            let mut acc = ZERO;
            for c in 0..d {
                let w = m[(r, c)];
                if w != 0.0 {
                    acc += f.values()[c] * w;
                }
            }
            values[r] = acc;
        }
        Symbol::new(
            self.ugrid.clone(),
            self.gamma.clone(),
            f.theta().clone(),
            values,
        )
        .expect("dimensions match")
    }

    /// ||J^s f||_inf.
    pub fn seminorm(&self, s: f64, f: &Symbol) -> Result<f64> {
        Ok(self.apply(s, f)?.sup_norm())
    }

    /// Pointwise multiplication by mu_0([t]) (the operator I).
    pub fn apply_decay_weight(&self, j: u32, f: &Symbol) -> Result<Symbol> {
        let f = f.refine(self.ugrid.u_scale(), self.gamma.t_cutoff())?;
        let t_len = self.gamma.len();
        let p = self.ugrid.params().prime() as f64;
        let mut out = f.clone();
        for c in 0..self.ugrid.len() {
            for b in 0..t_len {
                let w = p.powi((j * self.gamma.mu0_exponent(b)) as i32);
                let v = out.value(c, b) * w;
                out.set_value(c, b, v);
            }
        }
        Ok(out)
    }
}

/// (J^s F)(u0, [t0]) = sum_cells w_c F(u0 u_c, [u_c^{-1} t0]); rows are
/// output points, and the matrix is symmetric because kappa is real and
/// inversion-invariant.
fn assemble_direct(kernel: &KsKernel, ugrid: &UnitCosetGrid, gamma: &GammaGrid) -> DMatrix<f64> {
    let weights = kernel.cell_weights(ugrid);
    let d_u = ugrid.len();
    let d_t = gamma.len();
    let dim = d_u * d_t;
    let mut m = DMatrix::zeros(dim, dim);
    for (c, &w) in weights.iter().enumerate() {
        let c_inv_rep = ugrid.rep_u64(ugrid.inv_index(c));
        for u0 in 0..d_u {
            let tgt_u = ugrid.mul_index(u0, c);
            for b in 0..d_t {
                let tgt_b = gamma.act_unit_u64(c_inv_rep, b);
                m[(u0 * d_t + b, tgt_u * d_t + tgt_b)] += w;
            }
        }
    }
    m
}

/// A report of sup-norm seminorm values.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SeminormReport {
    pub entries: Vec<SeminormEntry>,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct SeminormEntry {
    /// Decay index j (power of the weight mu_0([t])); 0 for pure J-seminorms.
    pub decay: u32,
    /// Regularity index: the J-power applied.
    pub regularity: u32,
    pub value: f64,
}

/// B-seminorms ||J^j F||_inf for j = 0..=j_max.
pub fn b_seminorms(f: &Symbol, j_max: u32) -> Result<SeminormReport> {
    let (calc, refined) = JCalculus::for_symbol(f)?;
    let mut entries = Vec::new();
    for j in 0..=j_max {
        entries.push(SeminormEntry {
            decay: 0,
            regularity: j,
            value: calc.seminorm(j as f64, &refined)?,
        });
    }
    Ok(SeminormReport { entries })
}

/// S-seminorms ||J^k I^j f||_inf for k = 0..=k_max, j = 0..=j_max.
pub fn s_seminorms(f: &Symbol, k_max: u32, j_max: u32) -> Result<SeminormReport> {
    let (calc, refined) = JCalculus::for_symbol(f)?;
    let mut entries = Vec::new();
    for j in 0..=j_max {
        let weighted = calc.apply_decay_weight(j, &refined)?;
        for k in 0..=k_max {
            entries.push(SeminormEntry {
                decay: j,
                regularity: k,
                value: calc.seminorm(k as f64, &weighted)?,
            });
        }
    }
    Ok(SeminormReport { entries })
}

/// omega_s(g) = mu_0^s(t) + 1_{p^{-n} O_k}(t); inversion invariant and
/// Peetre-compatible.
pub fn omega_weight(s: f64, g: &GroupElement, level: u32) -> f64 {
    let ind = match g.t().valuation() {
        None => 1.0,
        Some(v) if v >= -(level as i64) => 1.0,
        _ => 0.0,
    };
    padic::mu0_pow(g.t(), level, s) + ind
}

/// The integral int_{U_n} mu_0^s(u0 a - phi(u0) b) Psi_theta(u0 a - phi(u0) b) du0
/// as an exact finite sum (the mu_0 factor is dropped when `s` is None).
/// This is the building block for coherent Wigner states and their J^s
/// transforms.
pub fn wigner_phase_integral(
    params: FieldParams,
    theta: &ThetaParam,
    a: &PAdicScalar,
    b: &PAdicScalar,
    s: Option<f64>,
) -> Result<Complex64> {
    let n = params.level();
    let p = params.prime();
    let depth_a = (-a.valuation_or(0)).max(0) as u32;
    let depth_b = (-b.valuation_or(0)).max(0) as u32;
    let scale = n.max(depth_a).max(depth_b) + 1;
    let prec = params.working_precision(scale, depth_a.max(depth_b));
    let count = params.pow(scale - n);
    let vol = params.powi(-(scale as i64));
    let pn = params.pow(n);
    let mut acc = ZERO;
    for idx in 0..count {
        let r = 1 + pn * idx;
        let rs = PAdicScalar::from_integer(p, r as i64, prec);
        let phi = PAdicScalar::from_rational(p, (r * r - 1) as i64, r as i64, prec);
        let arg = rs.mul(a).sub(&phi.mul(b));
        let weight = match s {
            Some(s) => padic::mu0_pow(&arg, n, s),
            None => 1.0,
        };
        acc += weight * theta.psi(&arg)?;
    }
    Ok(acc * vol)
}

/// Memoizing evaluator for W^theta_{g1}([g2]) and J^s W^theta_{g1}([g2]).
/// Values depend only on the class of a = u2^{-1} u1 t1 mod O_k and of
/// b = t2 in Gamma_n, which the cache keys on.
pub struct CoherentEvaluator {
    params: FieldParams,
    theta: ThetaParam,
    s: Option<f64>,
    cache: HashMap<(u64, u64, u64, u64), Complex64>,
}

impl CoherentEvaluator {
    pub fn new(params: FieldParams, theta: ThetaParam, s: Option<f64>) -> Self {
        CoherentEvaluator {
            params,
            theta,
            s,
            cache: HashMap::new(),
        }
    }

    /// The integral at a = u2^{-1} u1 t1 and b = t2.
    pub fn eval(&mut self, a: &PAdicScalar, b: &PAdicScalar) -> Result<Complex64> {
        // the value depends only on a mod O_k and on the class of b in Gamma_n
        let ka = a.fractional_part()?;
        let prec = a
            .precision()
            .min(b.precision())
            .min(self.params.max_precision())
            .max(1);
        let pn = PAdicScalar::from_integer(
            self.params.prime(),
            self.params.pow(self.params.level()) as i64,
            prec,
        );
        let kb = pn.mul(b).fractional_part()?;
        let (na, da) = ka.as_rational();
        let (nb, db) = kb.as_rational();
        let key = (na, da, nb, db);
        if let Some(v) = self.cache.get(&key) {
            return Ok(*v);
        }
        let v = wigner_phase_integral(self.params, &self.theta, a, b, self.s)?;
        self.cache.insert(key, v);
        Ok(v)
    }

    /// W^theta_{g1}([g2]) for g1 = (u1, t1), [g2] = (u2, [t2]).
    pub fn wigner_at(
        &mut self,
        g1: &GroupElement,
        u2: &PAdicScalar,
        t2: &PAdicScalar,
    ) -> Result<Complex64> {
        let a = u2.invert()?.mul(g1.u()).mul(g1.t());
        self.eval(&a, t2)
    }
}

/// The coherent Wigner state W^theta_g = W_{1_{U_n}, pi_theta(g) 1_{U_n}} as
/// a grid symbol.  The u-scale matches the wigner route; the t-cutoff is the
/// derived support bound max(n, -val(t1)).
pub fn coherent_wigner(
    g: &GroupElement,
    theta: &ThetaParam,
    params: FieldParams,
) -> Result<Symbol> {
    let n = params.level();
    let v1 = g.t().valuation_or(0);
    let m_out = pi_output_scale(n, n, theta, g.t());
    let t_cut = n.max((-v1).max(0) as u32);
    let ugrid = UnitCosetGrid::new(params, m_out)?;
    let gamma = GammaGrid::new(params, t_cut)?;
    let prec = params.working_precision(m_out, t_cut.max((-v1).max(0) as u32));
    let mut ev = CoherentEvaluator::new(params, theta.clone(), None);
    let mut values = vec![ZERO; ugrid.len() * gamma.len()];
    for c in 0..ugrid.len() {
        let u2 = ugrid.rep_scalar(c, prec);
        for b in 0..gamma.len() {
            values[c * gamma.len() + b] = ev.wigner_at(g, &u2, &gamma.rep_scalar(b, prec))?;
        }
    }
    Symbol::new(ugrid, gamma, theta.clone(), values)
}

/// Truncated double integral of |J^s W^theta_{g1}([g2])| over G_n x X_n,
/// reduced to sum over classes of a = c t1 mod O_k with |a| <= p^T:
///   q^{-2n} * sum_a sum_{[t2]} |V_s(a, t2)|.
/// A monotone lower bound of the full integral, exact on the truncated range.
pub fn js_wigner_l1(
    params: FieldParams,
    theta: &ThetaParam,
    s: f64,
    truncation: u32,
) -> Result<f64> {
    if s >= -2.0 {
        return Err(Error::InvalidParams(format!("need s < -2, got {s}")));
    }
    let n = params.level();
    if truncation < n + 1 {
        return Err(Error::Resolution(format!(
            "truncation {truncation} does not cover the core region (need >= n + 1)"
        )));
    }
    let p = params.prime();
    let pt = params.pow(truncation);
    let prec = params.working_precision(truncation + 1, truncation) + 2;
    let mut total = 0.0;
    for j in 0..pt {
        let a = if j == 0 {
            PAdicScalar::zero(p)
        } else {
            PAdicScalar::from_rational(p, j as i64, pt as i64, prec)
        };
        let depth = (-a.valuation_or(0)).max(0) as u32;
        let t_cut = n.max(depth);
        let t_count = params.pow(t_cut - n);
        for c in 0..t_count {
            let b = if c == 0 {
                PAdicScalar::zero(p)
            } else {
                PAdicScalar::from_rational(p, c as i64, params.pow(t_cut) as i64, prec)
            };
            total += wigner_phase_integral(params, theta, &a, &b, Some(s))?.norm();
        }
    }
    Ok(total * params.powi(-2 * n as i64))
}

/// LHS and RHS of the pointwise coherent-state bound
///   int_{X_n} |J^s W_{g1}| d[g2] <= q^{-2n} omega_{s+1}(g1).
/// The constant q^{-2n} is what the shell estimates give without the
/// g1-integration (at g1 = e the left side is exactly q^{-2n}, so no
/// smaller power of q can work), and integrating this bound over G_n
/// recovers the integrated coherent-state estimate exactly.
pub fn coherent_l1_slice(
    params: FieldParams,
    theta: &ThetaParam,
    s: f64,
    g1: &GroupElement,
) -> Result<(f64, f64)> {
    let n = params.level();
    let v1 = g1.t().valuation_or(0);
    let depth = (-v1).max(0) as u32;
    let u_scale = n.max(depth);
    let t_cut = n.max(depth);
    let cells = UnitCosetGrid::new(params, u_scale)?;
    let gamma = GammaGrid::new(params, t_cut)?;
    let prec = params.working_precision(u_scale, t_cut) + 2;
    let mut ev = CoherentEvaluator::new(params, theta.clone(), Some(s));
    let mut lhs = 0.0;
    for c in 0..cells.len() {
        let u2 = cells.rep_scalar(c, prec);
        for b in 0..gamma.len() {
            lhs += ev.wigner_at(g1, &u2, &gamma.rep_scalar(b, prec))?.norm() * cells.cell_volume();
        }
    }
    let rhs = params.powi(-2 * n as i64) * omega_weight(s + 1.0, g1, n);
    Ok((lhs, rhs))
}

/// <pi(g1) 1, A pi(g2) 1> with the kernel and vectors refined to a common
/// scale; the coherent matrix coefficient of an operator.
pub fn coherent_coefficient(
    a: &crate::quantize::OperatorKernel,
    theta: &ThetaParam,
    g1: &GroupElement,
    g2: &GroupElement,
) -> Result<Complex64> {
    let params = a.params();
    let n = params.level();
    let base = UnitCosetGrid::new(params, n)?;
    let one = crate::harmonic::ConfigFunction::indicator(base);
    let v1 = pi_apply(g1, &one, theta)?;
    let v2 = pi_apply(g2, &one, theta)?;
    let scale = a.kernel_scale().max(v1.scale()).max(v2.scale());
    let ak = a.refine(scale)?;
    let av2 = ak.apply(&v2)?;
    v1.refine(scale)?.inner(&av2)
}

/// int_{G_n} |<pi(g1) 1, A pi(g2) 1>| dg2, reduced to the exact finite sum
/// over the coefficient support (the integrand vanishes once |t2| exceeds
/// the combined scale of the kernel and pi(g1) 1).
pub fn coherent_row_l1(
    a: &crate::quantize::OperatorKernel,
    theta: &ThetaParam,
    g1: &GroupElement,
) -> Result<f64> {
    let params = a.params();
    let n = params.level();
    let p = params.prime();
    let base = UnitCosetGrid::new(params, n)?;
    let one = crate::harmonic::ConfigFunction::indicator(base);
    let v1 = pi_apply(g1, &one, theta)?;
    let support = a.kernel_scale().max(v1.scale());
    let w1 = a.refine(support)?.adjoint().apply(&v1.refine(support)?)?;
    let prec = params.working_precision(support + n, support) + 2;
    let pt = params.pow(support);
    let mut refined: HashMap<u32, crate::harmonic::ConfigFunction> = HashMap::new();
    let mut total = 0.0;
    for j2 in 0..pt {
        let t2 = if j2 == 0 {
            PAdicScalar::zero(p)
        } else {
            PAdicScalar::from_rational(p, j2 as i64, pt as i64, prec)
        };
        let u_scale = pi_output_scale(support, n, theta, &t2);
        let cells = UnitCosetGrid::new(params, u_scale)?;
        let w1_here = refined.entry(u_scale).or_insert_with(|| {
            w1.refine(u_scale)
                .expect("refining to a coarser scale never happens")
        });
        for c in 0..cells.len() {
            let g2 = GroupElement::new(cells.rep_scalar(c, prec), t2)?;
            let v2 = pi_apply(&g2, &one, theta)?.refine(u_scale)?;
            total += w1_here.inner(&v2)?.norm() * cells.cell_volume();
        }
    }
    Ok(total)
}

/// Report from the operator-norm certificate.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CvReport {
    pub op_norm: f64,
    pub seminorm: f64,
    pub coefficient: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Certify ||Omega_theta(F)|| <= (q^n + ||mu_0^{s+1}||_1) ||J^{-s} F||_inf
/// for s < -2: the operator norm comes from the SVD of the Haar-weighted
/// kernel, the seminorm from the spectral J-calculus.
pub fn cv_certify(f: &Symbol, s: f64) -> Result<CvReport> {
    if s >= -2.0 {
        return Err(Error::InvalidParams(format!(
            "certificate needs s < -2, got {s}"
        )));
    }
    let params = f.params();
    let op_norm = quantize_direct(f)?.op_norm();
    let (calc, refined) = JCalculus::for_symbol(f)?;
    let seminorm = calc.seminorm(-s, &refined)?;
    let coefficient = params.powi(params.level() as i64) + mu0_l1_norm(params, s + 1.0)?;
    let bound = coefficient * seminorm;
    Ok(CvReport {
        op_norm,
        seminorm,
        coefficient,
        bound,
        pass: op_norm <= bound * (1.0 + 1e-9),
    })
}

/// Diagnostics attached to a reconstruction.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ReconstructionDiag {
    /// max |coefficient| / omega_{s_probe}(g1^{-1} g2) over the sampled support
    pub decay_constant: f64,
    /// max |coefficient| one t-shell beyond the derived support (should be ~0)
    pub leakage: f64,
    /// true when the decay hypothesis looks violated (leakage above 1e-9)
    pub decay_warning: bool,
}

/// Reconstruct the symbol of an operator from its coherent matrix
/// coefficients:
///   F_A([g]) = q^{2n} int int <pi(g1) 1, A pi(g2) 1>
///                    conj(W^theta_{g1^{-1} g2}([g1^{-1} g])) dg1 dg2,
/// reduced to the exact finite sum over the coefficient support
/// (|t1|, |t2| <= q^M for a scale-M kernel).  Output resolution (M, M).
pub fn reconstruct_symbol(
    a: &crate::quantize::OperatorKernel,
    theta: &ThetaParam,
    s_probe: f64,
) -> Result<(Symbol, ReconstructionDiag)> {
    if s_probe >= 0.0 {
        return Err(Error::InvalidParams("decay probe must be negative".into()));
    }
    let params = a.params();
    let n = params.level();
    let scale = a.kernel_scale();
    let p = params.prime();
    let prec = params.working_precision(scale + n, scale) + 2;
    let cells = UnitCosetGrid::new(params, scale)?;
    let pt = params.pow(scale);

    // enumerate (u-cell, t-class) support points of the coefficients
    let mut points: Vec<GroupElement> = Vec::new();
    for c in 0..cells.len() {
        for j in 0..pt {
            let t = if j == 0 {
                PAdicScalar::zero(p)
            } else {
                PAdicScalar::from_rational(p, j as i64, pt as i64, prec)
            };
            points.push(GroupElement::new(cells.rep_scalar(c, prec), t)?);
        }
    }

    // coefficient table over support pairs
    let base = UnitCosetGrid::new(params, n)?;
    let one = crate::harmonic::ConfigFunction::indicator(base);
    let pushed: Vec<crate::harmonic::ConfigFunction> = points
        .iter()
        .map(|g| pi_apply(g, &one, theta))
        .collect::<Result<_>>()?;
    let max_scale = pushed
        .iter()
        .map(|v| v.scale())
        .fold(a.kernel_scale(), u32::max);
    let ak = a.refine(max_scale)?;
    let applied: Vec<crate::harmonic::ConfigFunction> =
        pushed.iter().map(|v| ak.apply(v)).collect::<Result<_>>()?;
    let lifted: Vec<crate::harmonic::ConfigFunction> = pushed
        .iter()
        .map(|v| v.refine(max_scale))
        .collect::<Result<_>>()?;
    let np = points.len();
    let mut coeff = vec![ZERO; np * np];
    let mut decay_constant: f64 = 0.0;
    for i1 in 0..np {
        for i2 in 0..np {
            let c = lifted[i1].inner(&applied[i2])?;
            coeff[i1 * np + i2] = c;
            let w = omega_weight(s_probe, &points[i1].inverse().compose(&points[i2]), n);
            decay_constant = decay_constant.max(c.norm() / w);
        }
    }

    // leakage: one t1-shell beyond the support bound
    let mut leakage: f64 = 0.0;
    {
        let pt1 = params.pow(scale + 1);
        for j in 1..p {
            let t = PAdicScalar::from_rational(p, j as i64, pt1 as i64, prec);
            let g1 = GroupElement::new(cells.rep_scalar(0, prec), t)?;
            let v1 = pi_apply(&g1, &one, theta)?;
            let scale2 = max_scale.max(v1.scale());
            let ak2 = a.refine(scale2)?;
            for v2 in pushed.iter().take(8) {
                let c = v1.refine(scale2)?.inner(&ak2.apply(v2)?)?;
                leakage = leakage.max(c.norm());
            }
        }
    }

    // the double integral, with the Wigner factor memoized on classes
    let gamma_out = GammaGrid::new(params, scale)?;
    let mut ev = CoherentEvaluator::new(params, theta.clone(), None);
    let q2n = params.powi(2 * n as i64);
    let haar = cells.cell_volume() * cells.cell_volume();
    let t_len = gamma_out.len();
    let mut values = vec![ZERO; cells.len() * t_len];
    for (i1, g1) in points.iter().enumerate() {
        let g1_inv = g1.inverse();
        for (i2, g2) in points.iter().enumerate() {
            let c12 = coeff[i1 * np + i2];
            if c12.norm() < 1e-16 {
                continue;
            }
            let gprime = g1_inv.compose(g2);
            for c in 0..cells.len() {
                // [g1^{-1} g] for g = (u_c, t_beta)
                let uc = cells.rep_scalar(c, prec);
                let u_part = g1_inv.u().mul(&uc);
                let a_val = u_part.invert()?.mul(gprime.u()).mul(gprime.t());
                let t_shift = uc.invert()?.mul(g1.u()).mul(g1.t()).neg();
                for b in 0..t_len {
                    let t_part = t_shift.add(&gamma_out.rep_scalar(b, prec));
                    let w = ev.eval(&a_val, &t_part)?;
                    values[c * t_len + b] += c12 * w.conj();
                }
            }
        }
    }
    values.iter_mut().for_each(|v| *v *= q2n * haar);
    let symbol = Symbol::new(cells, gamma_out, theta.clone(), values)?;
    Ok((
        symbol,
        ReconstructionDiag {
            decay_constant,
            leakage,
            decay_warning: leakage > 1e-9,
        },
    ))
}

/// Report of the composition-closure check.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ComposeReport {
    /// max entry difference between the reconstructed product symbol and the
    /// kernel-route star product
    pub star_diff: f64,
    /// the proof constant C (infinite when s1 - s2 >= -1, making the
    /// coefficient bound vacuous)
    pub constant: f64,
    /// max ratio |coefficient| / (C omega_{s2+1}(g1^{-1} g2)), sampled
    pub max_ratio: f64,
    /// B-seminorms of the product symbol
    pub seminorms: SeminormReport,
    pub pass: bool,
}

/// Verify that the product Omega(F1) Omega(F2) is again the quantization of
/// a symbol with finite seminorms and coherent coefficients dominated by
///   C omega_{s2+1}(g1^{-1} g2),
/// C = 2 q^{-n} ||J^{-s1}F1||_inf ||J^{-s2}F2||_inf int omega_{s1+1} omega_{-s2-1}
/// (finite exactly when s1 - s2 < -1; reported as infinite otherwise, which
/// makes the domination vacuous).
pub fn compose_bounded_check(
    f1: &Symbol,
    f2: &Symbol,
    s1: f64,
    s2: f64,
    samples: usize,
    rng: &mut impl rand::Rng,
) -> Result<ComposeReport> {
    if s1 >= -1.0 || s2 >= -1.0 {
        return Err(Error::InvalidParams("need s1, s2 < -1".into()));
    }
    let (a, b) = crate::quantize::reconcile(f1, f2)?;
    let params = a.params();
    let n = params.level();
    let theta = a.theta().clone();
    let ka = quantize_direct(&a)?;
    let kb = quantize_direct(&b)?;
    let product = ka.compose(&kb)?;
    let f3 = symbol_of_operator(&product, &theta)?;
    let star_diff = f3.max_diff(&crate::star::star_via_kernel(&a, &b)?)?;
    let seminorms = b_seminorms(&f3, 2)?;

    let (calc1, r1) = JCalculus::for_symbol(&a)?;
    let (calc2, r2) = JCalculus::for_symbol(&b)?;
    let norm1 = calc1.seminorm(-s1, &r1)?;
    let norm2 = calc2.seminorm(-s2, &r2)?;
    let sigma = s1 - s2;
    let constant = if sigma < -1.0 {
        let qn = params.powi(n as i64);
        let i_omega = params.powi(-(n as i64)) * (mu0_l1_norm(params, sigma)? + 3.0 * qn);
        2.0 * params.powi(-(n as i64)) * norm1 * norm2 * i_omega
    } else {
        f64::INFINITY
    };

    let scale = product.kernel_scale();
    let cells = UnitCosetGrid::new(params, scale)?;
    let prec = params.working_precision(scale + n, scale) + 2;
    let pt = params.pow(scale);
    let mut max_ratio: f64 = 0.0;
    for _ in 0..samples {
        let mut draw = || -> Result<GroupElement> {
            let c = rng.random_range(0..cells.len());
            let j = rng.random_range(0..pt);
            let t = if j == 0 {
                PAdicScalar::zero(params.prime())
            } else {
                PAdicScalar::from_rational(params.prime(), j as i64, pt as i64, prec)
            };
            GroupElement::new(cells.rep_scalar(c, prec), t)
        };
        let g1 = draw()?;
        let g2 = draw()?;
        let c = coherent_coefficient(&product, &theta, &g1, &g2)?;
        let w = omega_weight(s2 + 1.0, &g1.inverse().compose(&g2), n);
        if constant.is_finite() {
            max_ratio = max_ratio.max(c.norm() / (constant * w));
        }
    }
    let pass = star_diff < 1e-9
        && seminorms.entries.iter().all(|e| e.value.is_finite())
        && (!constant.is_finite() || max_ratio <= 1.0 + 1e-9);
    Ok(ComposeReport {
        star_diff,
        constant,
        max_ratio,
        seminorms,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantize::wigner;
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn setup(p: u64, n: u32) -> (FieldParams, ThetaParam) {
        let params = FieldParams::new(p, n).unwrap();
        let theta = ThetaParam::one(params);
        (params, theta)
    }

    /// Brute-force shell-sum oracle for kappa_s(v): integrate mu_0^s(t) Psi(x t)
    /// over shells |t| = q^j up to a large cutoff, for val(x) = v.
    fn kappa_oracle(params: FieldParams, s: f64, v: u32, max_shell: u32) -> f64 {
        let p = params.prime() as f64;
        let n = params.level();
        // int_{p^{-j} O_k} Psi(x t) dt = p^j [val x >= j]
        let ball = |j: i64| -> f64 {
            if v as i64 >= j {
                p.powi(j as i32)
            } else {
                0.0
            }
        };
        let mut acc = ball(n as i64);
        for j in (n + 1)..=max_shell {
            let shell = ball(j as i64) - ball(j as i64 - 1);
            acc += p.powf(s * (j - n) as f64) * shell;
        }
        acc
    }

    #[test]
    fn kappa_matches_shell_oracle() {
        let (params, _) = setup(3, 1);
        let k = KsKernel::new(params, -2.0).unwrap();
        for v in 1..=5 {
            let oracle = kappa_oracle(params, -2.0, v, 25);
            assert!((k.kappa(v) - oracle).abs() < 1e-10, "v = {v}");
        }
        // symmetry under inversion is automatic: val(u - 1) = val(u^{-1} - 1)
        let grid = UnitCosetGrid::new(params, 3).unwrap();
        let w = k.cell_weights(&grid);
        for i in 1..grid.len() {
            assert!((w[i] - w[grid.inv_index(i)]).abs() < 1e-15);
        }
        // total integral of kappa over U_n is exactly 1
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mu0_l1_values() {
        let (params, _) = setup(3, 1);
        // (p=3, n=1, sigma=-2): shell sum gives exactly 4
        let got = mu0_l1_norm(params, -2.0).unwrap();
        assert!((got - 4.0).abs() < 1e-12);
        // shell-sum oracle
        let mut oracle = 3.0; // Vol(p^{-1} O_k)
        for j in 2..60 {
            oracle += 3f64.powf(-2.0 * (j - 1) as f64) * (3f64.powi(j) - 3f64.powi(j - 1));
        }
        assert!((got - oracle).abs() < 1e-12);
        // monotone decreasing in |sigma|, limit q^n
        let a = mu0_l1_norm(params, -2.0).unwrap();
        let b = mu0_l1_norm(params, -3.0).unwrap();
        let c = mu0_l1_norm(params, -4.0).unwrap();
        assert!(a > b && b > c && c > 3.0);
        assert!((mu0_l1_norm(params, -40.0).unwrap() - 3.0).abs() < 1e-12);
        assert!(mu0_l1_norm(params, -1.0).is_err());
    }

    #[test]
    fn j_zero_is_identity_and_j2_positive() {
        let (params, theta) = setup(3, 1);
        let calc = JCalculus::new(params, 3, 2).unwrap();
        let id = calc.power(0.0);
        assert!((id - DMatrix::<f64>::identity(27, 27)).abs().max() < 1e-14);
        assert!(calc.min_eigenvalue() > 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let f = sample::random_symbol(params, &theta, 3, 2, &mut rng);
        let back = calc.apply(0.0, &f).unwrap();
        assert!(back.max_diff(&f).unwrap() < 1e-13);
        // closure violation is refused
        assert!(JCalculus::new(params, 2, 2).is_err());
    }

    #[test]
    fn semigroup_direct_and_spectral() {
        let (params, _) = setup(3, 1);
        let calc = JCalculus::new(params, 3, 2).unwrap();
        let j2 = calc.direct_matrix(-2.0).unwrap();
        let j4 = calc.direct_matrix(-4.0).unwrap();
        assert!((&j2 * &j2 - &j4).abs().max() < 1e-9);
        let j2j3 = calc.direct_matrix(-2.0).unwrap() * calc.direct_matrix(-3.0).unwrap();
        assert!((j2j3 - calc.direct_matrix(-5.0).unwrap()).abs().max() < 1e-9);
        // spectral route agrees with direct assembly
        assert!((calc.power(-2.0) - j2).abs().max() < 1e-9);
        assert!(
            (calc.power(-3.0) - calc.direct_matrix(-3.0).unwrap())
                .abs()
                .max()
                < 1e-9
        );
        // non-integer pair via the spectral route
        let half = calc.power(-1.5);
        assert!((&half * &half - calc.power(-3.0)).abs().max() < 1e-9);
    }

    #[test]
    fn character_symbols_are_eigenfunctions() {
        let (params, theta) = setup(3, 1);
        let calc = JCalculus::new(params, 3, 2).unwrap();
        let prec = 8;
        // frequencies x = j / p^m representable on the grid
        for j in 0..params.pow(3) {
            let x = if j == 0 {
                PAdicScalar::zero(3)
            } else {
                PAdicScalar::from_rational(3, j as i64, 27, prec)
            };
            let mut f = Symbol::zero(params, theta.clone(), 3, 2).unwrap();
            for c in 0..calc.ugrid().len() {
                let v = x.mul(&calc.ugrid().rep_scalar(c, prec)).psi().unwrap();
                for b in 0..calc.gamma().len() {
                    f.set_value(c, b, v);
                }
            }
            let mu = padic::mu0_pow(&x, 1, -2.0);
            let jf = calc.apply(-2.0, &f).unwrap();
            let mut expect = f.clone();
            expect.values_mut().iter_mut().for_each(|v| *v *= mu);
            assert!(jf.max_diff(&expect).unwrap() < 1e-9, "frequency {j}");
        }
    }

    #[test]
    fn b_seminorm_of_character_symbol() {
        let (params, theta) = setup(3, 1);
        let prec = 8;
        let x = PAdicScalar::from_rational(3, 1, 9, prec);
        let grid = UnitCosetGrid::new(params, 3).unwrap();
        let gamma = GammaGrid::new(params, 2).unwrap();
        let mut values = vec![ZERO; grid.len() * gamma.len()];
        for c in 0..grid.len() {
            let v = x.mul(&grid.rep_scalar(c, prec)).psi().unwrap();
            for b in 0..gamma.len() {
                values[c * gamma.len() + b] = v;
            }
        }
        let f = Symbol::new(grid, gamma, theta, values).unwrap();
        let report = b_seminorms(&f, 3).unwrap();
        // ||J^j F||_inf = mu_0(x)^j with mu_0(1/9) = 3
        for e in &report.entries {
            let expect = 3f64.powi(e.regularity as i32);
            assert!(
                (e.value - expect).abs() < 1e-9 * expect,
                "j = {}",
                e.regularity
            );
        }
        let z = Symbol::zero(params, ThetaParam::one(params), 3, 2).unwrap();
        for e in b_seminorms(&z, 2).unwrap().entries {
            assert_eq!(e.value, 0.0);
        }
    }

    #[test]
    fn decay_weight_commutes_with_j() {
        let (params, theta) = setup(3, 1);
        let calc = JCalculus::new(params, 3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let f = sample::random_symbol(params, &theta, 3, 2, &mut rng);
        let ji = calc
            .apply(-2.0, &calc.apply_decay_weight(1, &f).unwrap())
            .unwrap();
        let ij = calc
            .apply_decay_weight(1, &calc.apply(-2.0, &f).unwrap())
            .unwrap();
        assert!(ji.max_diff(&ij).unwrap() < 1e-10);
    }

    #[test]
    fn product_inequality_and_ideal_property() {
        let (params, theta) = setup(3, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let c0 = params.powi(-2) * mu0_l1_norm(params, -2.0).unwrap().powi(2);
        for _ in 0..20 {
            let f1 = sample::random_symbol(params, &theta, 3, 2, &mut rng);
            let f2 = sample::random_symbol(params, &theta, 3, 2, &mut rng);
            let prod = f1.pointwise_mul(&f2).unwrap();
            let bj = b_seminorms(&prod, 1).unwrap();
            let b1 = b_seminorms(&f1, 3).unwrap();
            let b2 = b_seminorms(&f2, 3).unwrap();
            for j in 0..=1usize {
                let lhs = bj.entries[j].value;
                let rhs = c0 * b1.entries[j + 2].value * b2.entries[j + 2].value;
                assert!(lhs <= rhs * (1.0 + 1e-9), "j = {j}: {lhs} vs {rhs}");
            }
            // S-ideal inequality with one decay weight
            let s_prod = s_seminorms(&prod, 1, 1).unwrap();
            let s_f1 = s_seminorms(&f1, 3, 1).unwrap();
            let find = |rep: &SeminormReport, k: u32, j: u32| {
                rep.entries
                    .iter()
                    .find(|e| e.regularity == k && e.decay == j)
                    .map(|e| e.value)
                    .unwrap()
            };
            for k in 0..=1u32 {
                let lhs = find(&s_prod, k, 1);
                let rhs = c0 * find(&s_f1, k + 2, 1) * b2.entries[(k + 2) as usize].value;
                assert!(lhs <= rhs * (1.0 + 1e-9));
            }
        }
    }

    #[test]
    fn omega_weight_values_and_peetre() {
        let (params, _) = setup(3, 1);
        let prec = 10;
        // t in p^{-n} O_k: omega_s = 2
        let g = GroupElement::new(
            PAdicScalar::one(3, prec),
            PAdicScalar::from_rational(3, 1, 3, prec),
        )
        .unwrap();
        assert_eq!(omega_weight(-2.0, &g, 1), 2.0);
        // t = 1/9: omega_{-2} = 1/9
        let g = GroupElement::new(
            PAdicScalar::one(3, prec),
            PAdicScalar::from_rational(3, 1, 9, prec),
        )
        .unwrap();
        assert!((omega_weight(-2.0, &g, 1) - 1.0 / 9.0).abs() < 1e-15);
        // inversion invariance and the Peetre bound
        let ugrid = UnitCosetGrid::new(params, 3).unwrap();
        let gamma = GammaGrid::new(params, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        for _ in 0..50 {
            let g = sample::random_group_element(&ugrid, &gamma, 12, &mut rng);
            let h = sample::random_group_element(&ugrid, &gamma, 12, &mut rng);
            for s in [-2.0, -1.0, 1.5] {
                let a = omega_weight(s, &g, 1);
                assert!((a - omega_weight(s, &g.inverse(), 1)).abs() < 1e-12);
                let other = if s >= 0.0 { s } else { -s };
                let bound = 2.0 * a * omega_weight(other, &h, 1);
                assert!(omega_weight(s, &g.compose(&h), 1) <= bound * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn coherent_wigner_matches_wigner_route() {
        let (params, theta) = setup(3, 1);
        let ugrid = UnitCosetGrid::new(params, 2).unwrap();
        let gamma = GammaGrid::new(params, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        for _ in 0..6 {
            let g = sample::random_group_element(&ugrid, &gamma, 12, &mut rng);
            let direct = coherent_wigner(&g, &theta, params).unwrap();
            let base = UnitCosetGrid::new(params, 1).unwrap();
            let one = crate::harmonic::ConfigFunction::indicator(base);
            let moved = pi_apply(&g, &one, &theta).unwrap();
            let via_wigner = wigner(&one.refine(moved.scale()).unwrap(), &moved, &theta).unwrap();
            assert!(direct.max_diff(&via_wigner).unwrap() < 1e-12);
        }
        // support: values vanish one shell beyond max(n, -val t1)
        let g = GroupElement::new(
            PAdicScalar::one(3, 12),
            PAdicScalar::from_rational(3, 1, 9, 12),
        )
        .unwrap();
        let mut ev = CoherentEvaluator::new(params, theta.clone(), None);
        let beyond = params.pow(3);
        for c in 1..beyond {
            if c % 3 == 0 {
                continue;
            }
            let t2 = PAdicScalar::from_rational(3, c as i64, beyond as i64, 12);
            let w = ev.wigner_at(&g, &PAdicScalar::one(3, 12), &t2).unwrap();
            assert!(w.norm() < 1e-13);
        }
    }

    #[test]
    fn lemma_js_pointwise_matches_matrix_route() {
        // J^s of a coherent Wigner symbol: integrand formula vs J-matrix
        let (params, theta) = setup(3, 1);
        let gamma = GammaGrid::new(params, 2).unwrap();
        let ugrid = UnitCosetGrid::new(params, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(36);
        for _ in 0..4 {
            let g = sample::random_group_element(&ugrid, &gamma, 14, &mut rng);
            let w = coherent_wigner(&g, &theta, params).unwrap();
            let (calc, refined) = JCalculus::for_symbol(&w).unwrap();
            let via_matrix = calc.apply(-3.0, &refined).unwrap();
            let mut ev = CoherentEvaluator::new(params, theta.clone(), Some(-3.0));
            let prec = 14;
            for c in 0..calc.ugrid().len() {
                let u2 = calc.ugrid().rep_scalar(c, prec);
                for b in 0..calc.gamma().len() {
                    let direct = ev
                        .wigner_at(&g, &u2, &calc.gamma().rep_scalar(b, prec))
                        .unwrap();
                    assert!((direct - via_matrix.value(c, b)).norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn js_wigner_l1_respects_bound() {
        let (params, theta) = setup(3, 1);
        // bound value at (p=3, n=1, s=-3): (1/9)(1 + (1/3) * 4) = 7/27
        let bound = params.powi(-2) * (1.0 + params.powi(-1) * mu0_l1_norm(params, -2.0).unwrap());
        assert!((bound - 7.0 / 27.0).abs() < 1e-14);
        let got = js_wigner_l1(params, &theta, -3.0, 4).unwrap();
        assert!(got <= bound + 1e-12, "{got} vs {bound}");
        assert!(got > 0.0);
        // monotone in s
        let lower = js_wigner_l1(params, &theta, -4.0, 4).unwrap();
        assert!(lower <= got + 1e-12);
        assert!(js_wigner_l1(params, &theta, -1.5, 4).is_err());
    }

    #[test]
    fn coherent_l1_slice_bound() {
        let (params, theta) = setup(3, 1);
        let ugrid = UnitCosetGrid::new(params, 2).unwrap();
        let gamma = GammaGrid::new(params, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for s in [-2.0, -3.0] {
            for _ in 0..8 {
                let g1 = sample::random_group_element(&ugrid, &gamma, 12, &mut rng);
                let (lhs, rhs) = coherent_l1_slice(params, &theta, s, &g1).unwrap();
                assert!(lhs <= rhs * (1.0 + 1e-12), "s = {s}: {lhs} vs {rhs}");
            }
        }
    }

    #[test]
    fn cv_certificate_on_random_and_adversarial_symbols() {
        let (params, theta) = setup(3, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(38);
        // bound coefficient at s = -3: q^n + ||mu_0^{-2}||_1 = 3 + 4 = 7
        let report =
            cv_certify(&sample::random_symbol(params, &theta, 3, 2, &mut rng), -3.0).unwrap();
        assert!((report.coefficient - 7.0).abs() < 1e-12);
        for _ in 0..30 {
            let f = sample::random_symbol(params, &theta, 3, 2, &mut rng);
            assert!(cv_certify(&f, -3.0).unwrap().pass);
        }
        // rank-one Wigner projector: operator norm exactly 1
        let grid = UnitCosetGrid::new(params, 2).unwrap();
        let mut phi = sample::random_config(&grid, &mut rng);
        let norm = phi.norm_sq().sqrt();
        phi.values_mut().iter_mut().for_each(|v| *v /= norm);
        let w = wigner(&phi, &phi, &theta).unwrap();
        let report = cv_certify(&w, -3.0).unwrap();
        assert!((report.op_norm - 1.0).abs() < 1e-10);
        assert!(report.pass);
    }

    #[test]
    fn eq23_coefficient_bound() {
        let (params, theta) = setup(3, 1);
        let ugrid = UnitCosetGrid::new(params, 2).unwrap();
        let gamma = GammaGrid::new(params, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(39);
        let f = sample::random_symbol(params, &theta, 3, 2, &mut rng);
        let k = quantize_direct(&f).unwrap();
        let (calc, refined) = JCalculus::for_symbol(&f).unwrap();
        let s = -3.0;
        let norm = calc.seminorm(-s, &refined).unwrap();
        for _ in 0..15 {
            let g1 = sample::random_group_element(&ugrid, &gamma, 12, &mut rng);
            let g2 = sample::random_group_element(&ugrid, &gamma, 12, &mut rng);
            let c = coherent_coefficient(&k, &theta, &g1, &g2).unwrap();
            let rhs = params.powi(-1) * norm * omega_weight(s + 1.0, &g1.inverse().compose(&g2), 1);
            assert!(c.norm() <= rhs * (1.0 + 1e-9), "{} vs {rhs}", c.norm());
        }
    }

    #[test]
    fn reconstruction_round_trip() {
        let (params, theta) = setup(3, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(40);
        for _ in 0..3 {
            let f = sample::random_symbol(params, &theta, 2, 2, &mut rng);
            let k = quantize_direct(&f).unwrap();
            let (back, diag) = reconstruct_symbol(&k, &theta, -3.0).unwrap();
            assert!(back.max_diff(&f).unwrap() < 1e-8);
            assert!(!diag.decay_warning);
            assert!(diag.decay_constant.is_finite());
        }
        // identity reconstructs to the constant symbol
        let grid = UnitCosetGrid::new(params, 2).unwrap();
        let id = crate::quantize::OperatorKernel::identity(grid);
        let (back, _) = reconstruct_symbol(&id, &theta, -3.0).unwrap();
        let one = Symbol::one(params, theta.clone(), 2, 2).unwrap();
        assert!(back.max_diff(&one).unwrap() < 1e-8);
    }

    #[test]
    fn composition_closure_report() {
        let (params, theta) = setup(3, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let f1 = sample::random_symbol(params, &theta, 2, 2, &mut rng);
        let f2 = sample::random_symbol(params, &theta, 2, 2, &mut rng);
        // equal exponents make the proof constant infinite (vacuous domination)
        let report = compose_bounded_check(&f1, &f2, -3.0, -3.0, 20, &mut rng).unwrap();
        assert!(report.pass);
        assert!(report.constant.is_infinite());
        // a finite-constant pair gives a real inequality
        let report = compose_bounded_check(&f1, &f2, -3.0, -1.5, 20, &mut rng).unwrap();
        assert!(report.constant.is_finite());
        assert!(report.pass, "ratio {}", report.max_ratio);
        assert!(report.star_diff < 1e-9);
    }
}
