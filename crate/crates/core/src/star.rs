//! The star product on symbols, by two independent routes.
//!
//! `star_via_operators` composes the quantized operators and pulls the
//! product back through the symbol map; it is the canonical implementation.
//! `star_via_kernel` evaluates the three-point kernel
//!
//!   K3((u,[t]),(u1,[t1]),(u2,[t2]))
//!     = q^{2n} Psi_theta(phi(u u1^{-1}) t2 + phi(u1 u2^{-1}) t + phi(u2 u^{-1}) t1)
//!
//! against the double phase-space integral.  The two routes are mutual
//! oracles and must agree entrywise.

use crate::error::Result;
use crate::harmonic::GammaGrid;
use crate::padic::{CharacterAngle, FieldParams, PAdicScalar, PrincipalUnit};
use crate::quantize::{quantize_direct, reconcile, symbol_of_operator, Symbol};
use crate::repn::{GroupElement, ThetaParam};
use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// The three-point kernel of the star product, evaluated exactly at the
/// angle level; its modulus is identically q^{2n}.
#[derive(Debug, Clone)]
pub struct ThreePointKernel {
    params: FieldParams,
    theta: ThetaParam,
}

impl ThreePointKernel {
    pub fn new(params: FieldParams, theta: ThetaParam) -> Self {
        ThreePointKernel { params, theta }
    }

    fn phi(&self, u: &PAdicScalar, v: &PAdicScalar) -> Result<PAdicScalar> {
        let x = u.mul(&v.invert()?);
        Ok(PrincipalUnit::new(x, self.params.level())?.phi())
    }

    /// The exact character angle of K3 / q^{2n} at three phase-space points.
    pub fn eval_angle(
        &self,
        g: &GroupElement,
        g1: &GroupElement,
        g2: &GroupElement,
    ) -> Result<CharacterAngle> {
        let a = self.phi(g.u(), g1.u())?.mul(g2.t());
        let b = self.phi(g1.u(), g2.u())?.mul(g.t());
        let c = self.phi(g2.u(), g.u())?.mul(g1.t());
        self.theta.angle_of(&a.add(&b).add(&c))
    }

    pub fn eval(
        &self,
        g: &GroupElement,
        g1: &GroupElement,
        g2: &GroupElement,
    ) -> Result<Complex64> {
        let q2n = self.params.powi(2 * self.params.level() as i64);
        Ok(q2n * self.eval_angle(g, g1, g2)?.eval())
    }

    /// The two-point form K(g1, g2) = K3(e, g1, g2).
    pub fn eval_two_point(&self, g1: &GroupElement, g2: &GroupElement) -> Result<Complex64> {
        let e = GroupElement::identity(self.params.prime(), self.params.max_precision());
        self.eval(&e, g1, g2)
    }
}

/// Refine both factors to the square resolution (max(m, N), N) required for
/// the kernel-route sums, returning the common grids.
fn square_up(f1: &Symbol, f2: &Symbol) -> Result<(Symbol, Symbol)> {
    let (a, b) = reconcile(f1, f2)?;
    let m = a.u_scale().max(a.t_cutoff());
    Ok((a.refine(m, a.t_cutoff())?, b.refine(m, b.t_cutoff())?))
}

/// f1 *_theta f2 = Omega^{-1}(Omega(f1) Omega(f2)).  Output resolution
/// (max(m, N), max(m, N)) after reconciliation.
pub fn star_via_operators(f1: &Symbol, f2: &Symbol) -> Result<Symbol> {
    let (a, b) = reconcile(f1, f2)?;
    let ka = quantize_direct(&a)?;
    let kb = quantize_direct(&b)?;
    symbol_of_operator(&ka.compose(&kb)?, a.theta())
}

/// f1 *_theta f2 via the three-point kernel double integral.
pub fn star_via_kernel(f1: &Symbol, f2: &Symbol) -> Result<Symbol> {
    let (a, b) = square_up(f1, f2)?;
    let params = a.params();
    let n = params.level();
    let m = a.u_scale();
    let grid = a.ugrid().clone();
    let out_gamma = GammaGrid::new(params, m)?;
    let d = grid.len();
    let t_in = a.gamma().len();
    let t_out = out_gamma.len();
    let stretch = params.pow(m - a.t_cutoff()) as usize;

    // Psi_theta(phi(r_w) t_tau) over the output-cutoff grid
    let prec = params.working_precision(m, m);
    let mut phase = vec![ZERO; d * t_out];
    for w in 0..d {
        let tp = a.theta().scalar().mul(&grid.phi_scalar(w, prec));
        for tau in 0..t_out {
            phase[w * t_out + tau] = tp.mul(&out_gamma.rep_scalar(tau, prec)).psi()?;
        }
    }

    // partial t-sums: G[c][w] = sum_b f[c][b] Psi_theta(phi(r_w) t_b)
    let contract = |f: &Symbol| -> Vec<Complex64> {
        let mut g = vec![ZERO; d * d];
        for c in 0..d {
            for w in 0..d {
                let mut acc = ZERO;
                for bb in 0..t_in {
                    acc += f.value(c, bb) * phase[w * t_out + bb * stretch];
                }
                g[c * d + w] = acc;
            }
        }
        g
    };
    let g1 = contract(&a);
    let g2 = contract(&b);

    let weight = params.powi(2 * n as i64) * params.powi(-2 * (m as i64));
    let mut values = vec![ZERO; d * t_out];
    for c in 0..d {
        for c1 in 0..d {
            let w_c_c1 = grid.mul_index(c, grid.inv_index(c1));
            for c2 in 0..d {
                let w_c1_c2 = grid.mul_index(c1, grid.inv_index(c2));
                let w_c2_c = grid.mul_index(c2, grid.inv_index(c));
                let amp = g2[c2 * d + w_c_c1] * g1[c1 * d + w_c2_c] * weight;
                if amp == ZERO {
                    continue;
                }
                let row = &phase[w_c1_c2 * t_out..(w_c1_c2 + 1) * t_out];
                let out = &mut values[c * t_out..(c + 1) * t_out];
                for (o, ph) in out.iter_mut().zip(row) {
                    *o += amp * ph;
                }
            }
        }
    }
    Symbol::new(grid, out_gamma, a.theta().clone(), values)
}

/// Both sides of strong traciality:
/// int (f1 * f2) d[g]  and  int f1 f2 d[g].
pub fn traciality_check(f1: &Symbol, f2: &Symbol) -> Result<(Complex64, Complex64)> {
    let star = star_via_operators(f1, f2)?;
    let lhs = star.ugrid().cell_volume() * star.values().iter().sum::<Complex64>();
    let (a, b) = reconcile(f1, f2)?;
    let rhs = a.ugrid().cell_volume()
        * a.values()
            .iter()
            .zip(b.values())
            .map(|(x, y)| x * y)
            .sum::<Complex64>();
    Ok((lhs, rhs))
}

/// Max entry difference between lambda_g(f1 * f2) and lambda_g(f1) * lambda_g(f2).
pub fn covariance_check(f1: &Symbol, f2: &Symbol, g: &GroupElement) -> Result<f64> {
    let lhs = star_via_operators(f1, f2)?.translate_left(g)?;
    let rhs = star_via_operators(&f1.translate_left(g)?, &f2.translate_left(g)?)?;
    lhs.max_diff(&rhs)
}
