//! Run configuration shared by the CLI and the verification suites.

use crate::error::{Error, Result};
use crate::padic::FieldParams;
use crate::repn::ThetaParam;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub prime: u64,
    /// Level n of the principal unit group.
    pub level: u32,
    /// u-scale m (invariance scale of configuration vectors).
    pub u_scale: u32,
    /// t-cutoff N (support bound on the Gamma grid).
    pub t_cutoff: u32,
    /// Little-endian digits of theta; the leading digit must be nonzero.
    pub theta_digits: Vec<u32>,
    pub seed: u64,
    /// Multiplier applied to every default tolerance.
    pub tol_factor: f64,
    /// Refuse (rather than log) automatic resolution refinement.
    pub strict: bool,
    /// Include wall-clock timings in reports (off by default so fixed-seed
    /// reports are byte-identical across runs).
    pub timings: bool,
}

impl Default for RunConfig {
    /// The desk-scale configuration: p = 3, n = 1, m = 3, N = 2, theta = 1.
    fn default() -> Self {
        RunConfig {
            prime: 3,
            level: 1,
            u_scale: 3,
            t_cutoff: 2,
            theta_digits: vec![1],
            seed: 0,
            tol_factor: 1.0,
            strict: false,
            timings: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(FieldParams, ThetaParam)> {
        let params = FieldParams::new(self.prime, self.level)?;
        if self.u_scale < self.level {
            return Err(Error::InvalidParams(format!(
                "u-scale {} must be at least the level {}",
                self.u_scale, self.level
            )));
        }
        if self.t_cutoff < self.level {
            return Err(Error::InvalidParams(format!(
                "t-cutoff {} must be at least the level {}",
                self.t_cutoff, self.level
            )));
        }
        if !(self.tol_factor.is_finite() && self.tol_factor > 0.0) {
            return Err(Error::InvalidParams(
                "tolerance factor must be positive".into(),
            ));
        }
        let theta = ThetaParam::from_digits(params, &self.theta_digits)?;
        Ok((params, theta))
    }

    pub fn scale_summary(&self) -> String {
        format!(
            "p={} n={} m={} N={} theta={:?} seed={}",
            self.prime, self.level, self.u_scale, self.t_cutoff, self.theta_digits, self.seed
        )
    }
}
