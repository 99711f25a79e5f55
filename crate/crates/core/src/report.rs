//! Machine-readable check reports: JSON is canonical, CSV for flat tables.
//! Complex quantities are reported through real lhs/rhs magnitudes so a
//! report line is always `check, identity, params, lhs, rhs, tol, pass`.

use crate::config::RunConfig;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    /// Stable identifier, e.g. "quantize.hs_isometry".
    pub check: String,
    /// The identity or inequality being verified, in plain notation.
    pub identity: String,
    /// Scale and sampling parameters the check ran at.
    pub params: String,
    pub lhs: f64,
    pub rhs: f64,
    pub tol: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl Check {
    /// Pass when |lhs - rhs| <= tol.
    pub fn close(check: &str, identity: &str, params: &str, lhs: f64, rhs: f64, tol: f64) -> Self {
        Check {
            check: check.into(),
            identity: identity.into(),
            params: params.into(),
            lhs,
            rhs,
            tol,
            pass: (lhs - rhs).abs() <= tol,
            runtime_ms: None,
        }
    }

    /// Pass when lhs <= rhs + tol.
    pub fn leq(check: &str, identity: &str, params: &str, lhs: f64, rhs: f64, tol: f64) -> Self {
        Check {
            check: check.into(),
            identity: identity.into(),
            params: params.into(),
            lhs,
            rhs,
            tol,
            pass: lhs <= rhs + tol,
            runtime_ms: None,
        }
    }

    /// Pass when lhs <= tol (rhs is 0: a residual check).
    pub fn residual(check: &str, identity: &str, params: &str, lhs: f64, tol: f64) -> Self {
        Check::leq(check, identity, params, lhs, 0.0, tol)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub suites: Vec<String>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl Report {
    pub fn new(config: RunConfig, suites: Vec<String>, checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(|c| c.pass);
        Report {
            config,
            suites,
            checks,
            passed,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,identity,params,lhs,rhs,tol,pass,runtime_ms\n");
        for c in &self.checks {
            let ms = c.runtime_ms.map(|v| v.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},\"{}\",\"{}\",{:.17e},{:.17e},{:.3e},{},{}\n",
                c.check, c.identity, c.params, c.lhs, c.rhs, c.tol, c.pass, ms
            ));
        }
        out
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}
