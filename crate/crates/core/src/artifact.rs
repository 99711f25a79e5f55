//! JSON interchange for symbols and operator kernels.
//!
//! A symbol file is
//!   { "prime", "n", "m", "N", "theta": {"val": 0, "digits": [..]},
//!     "values": [[re, im], ...] }
//! with values row-major over (u-cell, t-class) in canonical grid order; an
//! operator kernel replaces m/N by the kernel scale "M".  Command outputs
//! wrap the payload with a provenance header (config echo and the resolution
//! arithmetic trace); the loaders accept wrapped or bare payloads.

use crate::error::{Error, Result};
use crate::harmonic::{GammaGrid, UnitCosetGrid};
use crate::padic::FieldParams;
use crate::quantize::{OperatorKernel, Symbol};
use crate::repn::ThetaParam;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThetaWire {
    pub val: i64,
    pub digits: Vec<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymbolWire {
    pub prime: u64,
    pub n: u32,
    pub m: u32,
    #[serde(rename = "N")]
    pub t_cutoff: u32,
    pub theta: ThetaWire,
    pub values: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KernelWire {
    pub prime: u64,
    pub n: u32,
    #[serde(rename = "M")]
    pub kernel_scale: u32,
    pub values: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Provenance {
    pub command: String,
    pub config: String,
    pub resolution_trace: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymbolFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
    pub symbol: SymbolWire,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KernelFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
    pub kernel: KernelWire,
}

fn theta_digits(theta: &ThetaParam, params: FieldParams) -> Vec<u32> {
    // digits of the mantissa to the working precision, trailing zeros trimmed
    let take = params.max_precision().min(12);
    let mut man = theta.scalar().mantissa_mod(take).expect("theta precision");
    let mut digits = Vec::new();
    for _ in 0..take {
        digits.push((man % params.prime()) as u32);
        man /= params.prime();
    }
    while digits.len() > 1 && *digits.last().unwrap() == 0 {
        digits.pop();
    }
    digits
}

pub fn symbol_to_wire(sym: &Symbol) -> SymbolWire {
    SymbolWire {
        prime: sym.params().prime(),
        n: sym.params().level(),
        m: sym.u_scale(),
        t_cutoff: sym.t_cutoff(),
        theta: ThetaWire {
            val: 0,
            digits: theta_digits(sym.theta(), sym.params()),
        },
        values: sym.values().iter().map(|z| [z.re, z.im]).collect(),
    }
}

pub fn symbol_from_wire(wire: &SymbolWire) -> Result<Symbol> {
    if wire.theta.val != 0 {
        return Err(Error::InvalidParams(
            "theta must be a unit (val = 0)".into(),
        ));
    }
    let params = FieldParams::new(wire.prime, wire.n)?;
    let theta = ThetaParam::from_digits(params, &wire.theta.digits)?;
    let ugrid = UnitCosetGrid::new(params, wire.m)?;
    let gamma = GammaGrid::new(params, wire.t_cutoff)?;
    let values: Vec<Complex64> = wire
        .values
        .iter()
        .map(|[re, im]| Complex64::new(*re, *im))
        .collect();
    Symbol::new(ugrid, gamma, theta, values)
}

pub fn kernel_to_wire(k: &OperatorKernel) -> KernelWire {
    KernelWire {
        prime: k.params().prime(),
        n: k.params().level(),
        kernel_scale: k.kernel_scale(),
        values: k.matrix().iter().map(|z| [z.re, z.im]).collect(),
    }
}

pub fn kernel_from_wire(wire: &KernelWire) -> Result<OperatorKernel> {
    let params = FieldParams::new(wire.prime, wire.n)?;
    let grid = UnitCosetGrid::new(params, wire.kernel_scale)?;
    let values: Vec<Complex64> = wire
        .values
        .iter()
        .map(|[re, im]| Complex64::new(*re, *im))
        .collect();
    OperatorKernel::new(grid, values)
}

pub fn read_symbol(text: &str) -> Result<Symbol> {
    if let Ok(file) = serde_json::from_str::<SymbolFile>(text) {
        return symbol_from_wire(&file.symbol);
    }
    let wire: SymbolWire = serde_json::from_str(text)
        .map_err(|e| Error::InvalidParams(format!("not a symbol file: {e}")))?;
    symbol_from_wire(&wire)
}

pub fn read_kernel(text: &str) -> Result<OperatorKernel> {
    if let Ok(file) = serde_json::from_str::<KernelFile>(text) {
        return kernel_from_wire(&file.kernel);
    }
    let wire: KernelWire = serde_json::from_str(text)
        .map_err(|e| Error::InvalidParams(format!("not a kernel file: {e}")))?;
    kernel_from_wire(&wire)
}

pub fn write_symbol(sym: &Symbol, provenance: Option<Provenance>) -> String {
    serde_json::to_string_pretty(&SymbolFile {
        provenance,
        symbol: symbol_to_wire(sym),
    })
    .expect("symbol serializes")
}

pub fn write_kernel(k: &OperatorKernel, provenance: Option<Provenance>) -> String {
    serde_json::to_string_pretty(&KernelFile {
        provenance,
        kernel: kernel_to_wire(k),
    })
    .expect("kernel serializes")
}
