//! The unitary representation pi_theta of G_n = U_n x| k on L^2(U_n):
//!
//!   pi_theta(u, t) phi(u0) = Psi_theta(u0^{-1} u t) phi(u^{-1} u0),
//!
//! its matrix coefficients, the square-integrability constant, the
//! coherent-state resolution of the identity, and the band projectors
//! P_theta = Id (x) F_k^{-1} 1_{theta U_n} F_k on functions over G_n.
//!
//! Matrix coefficients of scale-m vectors vanish once |t| > q^m, so every
//! G_n-integral here is a finite sum; the support bound is computed by the
//! library rather than trusted from the caller.

use crate::error::{Error, Result};
use crate::harmonic::{fourier_k, fourier_k_inverse, ConfigFunction, KFunction, UnitCosetGrid};
use crate::padic::{self, CharacterAngle, FieldParams, PAdicScalar};
use num_complex::Complex64;

/// The representation parameter: a unit theta in O_k^x.
#[derive(Debug, Clone)]
pub struct ThetaParam {
    scalar: PAdicScalar,
}

impl ThetaParam {
    pub fn new(scalar: PAdicScalar) -> Result<Self> {
        if scalar.valuation() != Some(0) {
            return Err(Error::InvalidParams(format!(
                "theta must be a unit (valuation 0), got valuation {:?}",
                scalar.valuation()
            )));
        }
        Ok(ThetaParam { scalar })
    }

    /// theta = 1 at maximal precision.
    pub fn one(params: FieldParams) -> Self {
        ThetaParam {
            scalar: PAdicScalar::one(params.prime(), params.max_precision()),
        }
    }

    /// Little-endian digits d_0, d_1, ... with d_0 != 0; the value is the
    /// exact integer sum d_i p^i, stored at maximal precision.
    pub fn from_digits(params: FieldParams, digits: &[u32]) -> Result<Self> {
        if digits.is_empty() || digits[0] == 0 {
            return Err(Error::InvalidParams(
                "theta digits must start with a nonzero digit (valuation 0)".into(),
            ));
        }
        let p = params.prime();
        let mut value: i64 = 0;
        let mut pw: i64 = 1;
        for &d in digits {
            if d as u64 >= p {
                return Err(Error::InvalidParams(format!(
                    "digit {d} out of range for p = {p}"
                )));
            }
            value += d as i64 * pw;
            pw *= p as i64;
        }
        ThetaParam::new(PAdicScalar::from_integer(p, value, params.max_precision()))
    }

    pub fn scalar(&self) -> &PAdicScalar {
        &self.scalar
    }

    pub fn neg(&self) -> ThetaParam {
        ThetaParam {
            scalar: self.scalar.neg(),
        }
    }

    /// Angle of Psi(theta x).
    pub fn angle_of(&self, x: &PAdicScalar) -> Result<CharacterAngle> {
        self.scalar.mul(x).fractional_part()
    }

    /// Psi(theta x) as a complex number.
    pub fn psi(&self, x: &PAdicScalar) -> Result<Complex64> {
        Ok(self.angle_of(x)?.eval())
    }

    pub fn congruent(&self, rhs: &ThetaParam) -> bool {
        self.scalar.congruent(rhs.scalar())
    }
}

/// An element (u, t) of G_n, composing by (u,t)(u',t') = (uu', u'^{-1}t + t').
#[derive(Debug, Clone)]
pub struct GroupElement {
    u: PAdicScalar,
    t: PAdicScalar,
}

impl GroupElement {
    pub fn new(u: PAdicScalar, t: PAdicScalar) -> Result<Self> {
        if u.valuation() != Some(0) {
            return Err(Error::InvalidParams(
                "group element needs a unit dilation part".into(),
            ));
        }
        Ok(GroupElement { u, t })
    }

    pub fn identity(prime: u64, prec: u32) -> Self {
        GroupElement {
            u: PAdicScalar::one(prime, prec),
            t: PAdicScalar::zero(prime),
        }
    }

    pub fn u(&self) -> &PAdicScalar {
        &self.u
    }

    pub fn t(&self) -> &PAdicScalar {
        &self.t
    }

    pub fn compose(&self, rhs: &GroupElement) -> GroupElement {
        let u = self.u.mul(&rhs.u);
        let t = rhs.u.invert().expect("unit").mul(&self.t).add(&rhs.t);
        GroupElement { u, t }
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            u: self.u.invert().expect("unit"),
            t: self.u.mul(&self.t).neg(),
        }
    }
}

/// Output scale of pi_theta(u, t) on scale-m vectors: the character
/// Psi_theta(u0^{-1} u t) oscillates at scale n - val(theta t) in u0.
pub fn pi_output_scale(m: u32, level: u32, theta: &ThetaParam, t: &PAdicScalar) -> u32 {
    match theta.scalar().mul(t).valuation() {
        None => m,
        Some(v) => {
            let needed = level as i64 - v;
            if needed > m as i64 {
                needed as u32
            } else {
                m
            }
        }
    }
}

/// pi_theta(g) phi; unitary, with the output grid refined automatically when
/// the character oscillates below the input scale.
pub fn pi_apply(
    g: &GroupElement,
    phi: &ConfigFunction,
    theta: &ThetaParam,
) -> Result<ConfigFunction> {
    let grid = phi.grid();
    let params = grid.params();
    let out_scale = pi_output_scale(grid.u_scale(), params.level(), theta, g.t());
    let out_grid = if out_scale == grid.u_scale() {
        grid.clone()
    } else {
        UnitCosetGrid::new(params, out_scale)?
    };
    let prec = g.u().precision().min(params.max_precision());
    let u_inv = g.u().invert()?;
    let ut = g.u().mul(g.t());
    let mut values = Vec::with_capacity(out_grid.len());
    for i in 0..out_grid.len() {
        let rep = out_grid.rep_scalar(i, prec);
        let chi = theta.psi(&rep.invert()?.mul(&ut))?;
        let src = grid.index_of(&u_inv.mul(&rep))?;
        values.push(chi * phi.values()[src]);
    }
    ConfigFunction::new(out_grid, values)
}

/// <phi1, pi_theta(g) phi2> as an exact finite Haar-weighted sum.
pub fn matrix_coefficient(
    phi1: &ConfigFunction,
    phi2: &ConfigFunction,
    g: &GroupElement,
    theta: &ThetaParam,
) -> Result<Complex64> {
    let pushed = pi_apply(g, phi2, theta)?;
    let lhs = phi1.refine(pushed.scale())?;
    lhs.inner(&pushed)
}

/// Support bound: coefficients of scale-m vectors vanish for |t| > q^S.
fn coefficient_support(phi1: &ConfigFunction, phi2: &ConfigFunction) -> u32 {
    phi1.scale().max(phi2.scale())
}

/// int_{G_n} |<phi1, pi_theta(g) phi2>|^2 dg, reduced to the exact finite sum
/// over the derived support.  `t_truncation` must cover that support.
pub fn orthogonality_integral(
    phi1: &ConfigFunction,
    phi2: &ConfigFunction,
    theta: &ThetaParam,
    t_truncation: u32,
) -> Result<f64> {
    let support = coefficient_support(phi1, phi2);
    if t_truncation < support {
        return Err(Error::Resolution(format!(
            "t-truncation {t_truncation} below the derived support bound {support}"
        )));
    }
    let params = phi1.grid().params();
    let prec = params.working_precision(support + params.level(), support);
    let mut total = 0.0;
    for j in 0..params.pow(support) {
        let t = if j == 0 {
            PAdicScalar::zero(params.prime())
        } else {
            PAdicScalar::from_rational(params.prime(), j as i64, params.pow(support) as i64, prec)
        };
        let u_scale = pi_output_scale(support.max(params.level()), params.level(), theta, &t);
        let cells = UnitCosetGrid::new(params, u_scale)?;
        for i in 0..cells.len() {
            let g = GroupElement::new(cells.rep_scalar(i, prec), t)?;
            let c = matrix_coefficient(phi1, phi2, &g, theta)?;
            total += c.norm_sqr() * cells.cell_volume();
        }
    }
    Ok(total)
}

/// The polarized resolution of the identity:
/// (|theta| / ||mother||^2) int <phi1, pi(g) mother><pi(g) mother, phi2> dg,
/// which recovers <phi1, phi2>.
pub fn coherent_resolve(
    phi1: &ConfigFunction,
    phi2: &ConfigFunction,
    mother: &ConfigFunction,
    theta: &ThetaParam,
    t_truncation: u32,
) -> Result<Complex64> {
    let mother_norm = mother.norm_sq();
    if mother_norm == 0.0 {
        return Err(Error::InvalidParams(
            "mother wavelet must be nonzero".into(),
        ));
    }
    let support = coefficient_support(phi1, mother).max(coefficient_support(mother, phi2));
    if t_truncation < support {
        return Err(Error::Resolution(format!(
            "t-truncation {t_truncation} below the derived support bound {support}"
        )));
    }
    let params = phi1.grid().params();
    let prec = params.working_precision(support + params.level(), support);
    let mut total = Complex64::ZERO;
    for j in 0..params.pow(support) {
        let t = if j == 0 {
            PAdicScalar::zero(params.prime())
        } else {
            PAdicScalar::from_rational(params.prime(), j as i64, params.pow(support) as i64, prec)
        };
        let u_scale = pi_output_scale(support.max(params.level()), params.level(), theta, &t);
        let cells = UnitCosetGrid::new(params, u_scale)?;
        for i in 0..cells.len() {
            let g = GroupElement::new(cells.rep_scalar(i, prec), t)?;
            let a = matrix_coefficient(phi1, mother, &g, theta)?;
            // <pi(g) mother, phi2> = conj <phi2, pi(g) mother>
            let b = matrix_coefficient(phi2, mother, &g, theta)?.conj();
            total += a * b * cells.cell_volume();
        }
    }
    // |theta| = 1 for units
    Ok(total / mother_norm)
}

/// A locally constant compactly supported function on G_n = U_n x k,
/// stored as a u-grid of k-grid rows with the product Haar measure.
#[derive(Debug, Clone)]
pub struct GnFunction {
    ugrid: UnitCosetGrid,
    support_scale: i64,
    invariance_scale: i64,
    rows: Vec<KFunction>,
}

impl GnFunction {
    pub fn new(ugrid: UnitCosetGrid, rows: Vec<KFunction>) -> Result<Self> {
        if rows.len() != ugrid.len() {
            return Err(Error::GridMismatch("one k-row per u-cell required".into()));
        }
        let support_scale = rows[0].support_scale();
        let invariance_scale = rows[0].invariance_scale();
        if rows
            .iter()
            .any(|r| r.support_scale() != support_scale || r.invariance_scale() != invariance_scale)
        {
            return Err(Error::GridMismatch("rows on mismatched k-grids".into()));
        }
        Ok(GnFunction {
            ugrid,
            support_scale,
            invariance_scale,
            rows,
        })
    }

    pub fn ugrid(&self) -> &UnitCosetGrid {
        &self.ugrid
    }

    pub fn rows(&self) -> &[KFunction] {
        &self.rows
    }

    pub fn inner(&self, rhs: &GnFunction) -> Result<Complex64> {
        if self.rows.len() != rhs.rows.len() || self.rows[0].len() != rhs.rows[0].len() {
            return Err(Error::GridMismatch("inner product across grids".into()));
        }
        let w = self.ugrid.cell_volume() * self.rows[0].cell_volume();
        let mut acc = Complex64::ZERO;
        for (a, b) in self.rows.iter().zip(&rhs.rows) {
            for (x, y) in a.values().iter().zip(b.values()) {
                acc += x.conj() * y;
            }
        }
        Ok(acc * w)
    }

    pub fn max_diff(&self, rhs: &GnFunction) -> f64 {
        let mut d: f64 = 0.0;
        for (a, b) in self.rows.iter().zip(&rhs.rows) {
            for (x, y) in a.values().iter().zip(b.values()) {
                d = d.max((x - y).norm());
            }
        }
        d
    }
}

/// P_theta = Id (x) F_k^{-1} 1_{theta U_n} F_k: the orthogonal projector onto
/// the band of the left regular representation equivalent to pi_theta.
///
/// The rows must be supported in p^a O_k with a <= -n and invariant under
/// p^b O_k with b >= 0, so the dual grid resolves the ball theta U_n.
pub fn projector_p_theta(f: &GnFunction, theta: &ThetaParam) -> Result<GnFunction> {
    let params = f.ugrid.params();
    let n = params.level();
    if -f.support_scale < n as i64 || f.invariance_scale < 0 {
        return Err(Error::Resolution(
            "t-grid too coarse to resolve theta U_n on the dual side".into(),
        ));
    }
    let b = f.invariance_scale as u32;
    let modulus = params.pow(n + b);
    // s in theta U_n  <=>  s = theta mod p^n; on dual reps s_i = i p^{-b}
    // this reads i = theta p^b mod p^{n+b}.
    let target = padic::mul_mod(
        theta.scalar().mantissa_mod(n)?,
        params.pow(b) % modulus,
        modulus,
    );
    let rows = f
        .rows
        .iter()
        .map(|row| {
            let mut hat = fourier_k(row);
            for (i, v) in hat.values_mut().iter_mut().enumerate() {
                if (i as u64) % modulus != target {
                    *v = Complex64::ZERO;
                }
            }
            Ok(fourier_k_inverse(&hat))
        })
        .collect::<Result<Vec<_>>>()?;
    GnFunction::new(f.ugrid.clone(), rows)
}
