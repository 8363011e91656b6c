//! Analytic success model for CNOT-count vs depth trade-offs.
//!
//! A circuit with k CNOTs and N CNOT-bearing layers succeeds with
//! probability (1 - p_cx)^k * exp(-N * t_cx / T1): independent gate
//! failures times relaxation survival over the layered runtime. Removing
//! k1 CNOTs at the cost of N1 extra layers helps exactly when
//! N1 <= lambda * k1, with lambda = -ln(1 - p_cx) * T1 / t_cx.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviceParams {
    pub name: String,
    pub t_cx_ns: f64,
    #[serde(rename = "T1_ns")]
    pub t1_ns: f64,
    pub p_cx: f64,
}

impl DeviceParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.t_cx_ns > 0.0 && self.t_cx_ns.is_finite()) {
            return Err(Error::InvalidDevice {
                msg: format!("t_cx_ns must be positive, got {}", self.t_cx_ns),
            });
        }
        if !(self.t1_ns > 0.0 && self.t1_ns.is_finite()) {
            return Err(Error::InvalidDevice {
                msg: format!("T1_ns must be positive, got {}", self.t1_ns),
            });
        }
        if !(0.0..1.0).contains(&self.p_cx) {
            return Err(Error::InvalidDevice {
                msg: format!("p_cx must lie in [0, 1), got {}", self.p_cx),
            });
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let d: DeviceParams =
            serde_json::from_str(text).map_err(|e| Error::InvalidDevice { msg: e.to_string() })?;
        d.validate()?;
        Ok(d)
    }
}

/// Success probability of a circuit with `k` CNOTs spread over `n_layers`
/// CNOT-bearing layers.
pub fn p_success(k: usize, n_layers: usize, d: &DeviceParams) -> f64 {
    (1.0 - d.p_cx).powi(k as i32) * (-(n_layers as f64) * d.t_cx_ns / d.t1_ns).exp()
}

/// Success probability after removing `k1` CNOTs at the price of `n1` extra
/// CNOT-bearing layers. `n1` may be negative but the layer total may not.
pub fn p_success_opt(k: usize, n_layers: usize, k1: usize, n1: i64, d: &DeviceParams) -> Result<f64> {
    if k1 > k {
        return Err(Error::InvalidReduction {
            msg: format!("cannot remove {k1} CNOTs from a circuit with {k}"),
        });
    }
    let layers = n_layers as i64 + n1;
    if layers < 0 {
        return Err(Error::InvalidReduction {
            msg: format!("layer count would go negative ({n_layers} + {n1})"),
        });
    }
    Ok((1.0 - d.p_cx).powi((k - k1) as i32) * (-(layers as f64) * d.t_cx_ns / d.t1_ns).exp())
}

/// Break-even slope: removing one CNOT buys `lambda` extra layers.
pub fn lambda(d: &DeviceParams) -> f64 {
    -(1.0 - d.p_cx).ln() * d.t1_ns / d.t_cx_ns
}

/// Does removing `k1` CNOTs at the price of `n1` extra layers pay off?
pub fn reduction_beneficial(n1: i64, k1: usize, d: &DeviceParams) -> bool {
    n1 as f64 <= lambda(d) * k1 as f64 + 1e-12
}

/// A spanning-tree chain can serialize all but one of the tree edges behind
/// each other, so the reduced first layer costs at most n - 2 extra
/// CNOT-bearing layers.
pub fn worst_case_added_layers(n: usize) -> usize {
    n.saturating_sub(2)
}

/// Is the spanning-tree reduction worth it on this device even in the worst
/// case on an n-vertex graph: n - 1 CNOTs removed against at most n - 2
/// added layers, i.e. lambda >= (n-2)/(n-1). The threshold stays below 1,
/// so any device with lambda >= 1 passes for every n.
pub fn dfs_beneficial(n: usize, d: &DeviceParams) -> bool {
    let threshold = worst_case_added_layers(n) as f64 / (n.max(2) - 1) as f64;
    lambda(d) >= threshold
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorReport {
    pub k: usize,
    #[serde(rename = "N")]
    pub n_layers: usize,
    pub k1: usize,
    #[serde(rename = "N1")]
    pub n1: i64,
    pub lambda: f64,
    #[serde(rename = "p_success_base")]
    pub p_base: f64,
    #[serde(rename = "p_success_opt")]
    pub p_opt: f64,
    pub beneficial: bool,
}

/// Compare a baseline (k CNOTs, n_layers layers) against a reduced circuit
/// (k_opt, n_opt_layers) on a device. `n1` comes out negative when the
/// reduction shortens the schedule as well as shrinking it.
pub fn report(
    k: usize,
    n_layers: usize,
    k_opt: usize,
    n_opt_layers: usize,
    d: &DeviceParams,
) -> Result<ErrorReport> {
    d.validate()?;
    if k_opt > k {
        return Err(Error::InvalidReduction {
            msg: format!("reduced circuit has more CNOTs than the baseline ({k_opt} > {k})"),
        });
    }
    let k1 = k - k_opt;
    let n1 = n_opt_layers as i64 - n_layers as i64;
    Ok(ErrorReport {
        k,
        n_layers,
        k1,
        n1,
        lambda: lambda(d),
        p_base: p_success(k, n_layers, d),
        p_opt: p_success(k_opt, n_opt_layers, d),
        beneficial: reduction_beneficial(n1, k1, d),
    })
}
