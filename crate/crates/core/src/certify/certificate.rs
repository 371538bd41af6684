//! Grid/Lipschitz certificate that θ(ρ) < 0 on an interval.
//!
//! If θ(ρ_k) < −δ on a grid of spacing Δ ≤ δ/M and |θ'| ≤ M, every ρ̂ in
//! the interval lies within Δ of some ρ_k, so θ(ρ̂) ≤ θ(ρ_k) + MΔ < 0.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize};

use super::ck::{ck_point, lipschitz_margin};
use crate::error::{Error, Result};

/// Defaults used by the published verification.
pub const DEFAULT_RHO_LO: f64 = 0.46;
pub const DEFAULT_RHO_HI: f64 = 0.914;
pub const DEFAULT_DELTA: f64 = 0.0016;
pub const DEFAULT_LIPSCHITZ: f64 = 20.0;

/// One grid evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointRecord {
    pub rho: f64,
    #[serde(deserialize_with = "nullable")]
    pub theta: f64,
    #[serde(deserialize_with = "nullable")]
    pub t_rho: f64,
    #[serde(deserialize_with = "nullable")]
    pub eps_star: f64,
    #[serde(deserialize_with = "nullable")]
    pub omega_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub rho_lo: f64,
    pub rho_hi: f64,
    pub step: f64,
    pub delta: f64,
    pub lipschitz_m: f64,
    pub n_points: usize,
    #[serde(deserialize_with = "nullable")]
    pub worst_theta: f64,
    #[serde(deserialize_with = "nullable")]
    pub worst_rho: f64,
    /// Largest numerical |θ'| seen on the grid (NaN when not checked).
    #[serde(deserialize_with = "nullable")]
    pub max_abs_slope: f64,
    pub pass: bool,
    /// Why the certificate failed; `None` on a pass.
    pub reason: Option<String>,
    pub per_point: Option<Vec<PointRecord>>,
    pub tool_version: String,
}

fn nullable<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    /// Grid spacing; defaults to δ/M. A coarser step forces a failure.
    pub step: Option<f64>,
    /// Evaluate grid points on the rayon pool.
    pub parallel: bool,
    /// Keep every grid evaluation in the certificate.
    pub per_point: bool,
    /// Check |θ'| ≤ M at every grid point by symmetric difference.
    pub check_slope: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            step: None,
            parallel: false,
            per_point: false,
            check_slope: true,
        }
    }
}

/// Inclusive grid lo, lo + step, …, with `hi` always present.
pub fn certificate_grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let k_max = ((hi - lo) / step + 1e-9).floor() as usize;
    let mut grid: Vec<f64> = (0..=k_max).map(|k| lo + k as f64 * step).collect();
    let last = grid.len() - 1;
    if (grid[last] - hi).abs() <= 1e-12 {
        grid[last] = hi;
    } else if grid[last] < hi {
        grid.push(hi);
    }
    grid
}

struct Eval {
    record: PointRecord,
    slope: f64,
    error: Option<String>,
}

fn evaluate(rho: f64, check_slope: bool) -> Eval {
    let nan = PointRecord {
        rho,
        theta: f64::NAN,
        t_rho: f64::NAN,
        eps_star: f64::NAN,
        omega_max: f64::NAN,
    };
    let record = match ck_point(rho) {
        Ok(p) => PointRecord {
            rho,
            theta: p.theta,
            t_rho: p.t_rho,
            eps_star: p.eps_star,
            omega_max: p.omega_max,
        },
        Err(e) => {
            return Eval {
                record: nan,
                slope: f64::NAN,
                error: Some(format!("rho = {rho}: {e}")),
            }
        }
    };
    if !check_slope {
        return Eval {
            record,
            slope: f64::NAN,
            error: None,
        };
    }
    match lipschitz_margin(rho) {
        Ok(slope) => Eval {
            record,
            slope,
            error: None,
        },
        Err(e) => Eval {
            record,
            slope: f64::NAN,
            error: Some(format!("slope at rho = {rho}: {e}")),
        },
    }
}

pub fn verify_interval(rho_lo: f64, rho_hi: f64, delta: f64, lipschitz_m: f64, step: Option<f64>) -> Result<Certificate> {
    verify_interval_with(
        rho_lo,
        rho_hi,
        delta,
        lipschitz_m,
        VerifyOptions {
            step,
            ..VerifyOptions::default()
        },
    )
}

/// Evaluates θ on the inclusive grid and assembles the certificate. Invalid
/// parameters are errors; failed evaluations make the certificate fail.
pub fn verify_interval_with(
    rho_lo: f64,
    rho_hi: f64,
    delta: f64,
    lipschitz_m: f64,
    opts: VerifyOptions,
) -> Result<Certificate> {
    if !(rho_lo > 0.0 && rho_hi < 1.0 && rho_lo <= rho_hi) {
        return Err(Error::Invalid(format!(
            "need 0 < rho_lo <= rho_hi < 1, got [{rho_lo}, {rho_hi}]"
        )));
    }
    for (name, value) in [("delta", delta), ("lipschitz_m", lipschitz_m)] {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::OutOfRange {
                name,
                value,
                expected: "(0, inf)",
            });
        }
    }
    let max_step = delta / lipschitz_m;
    let step = opts.step.unwrap_or(max_step);
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::OutOfRange {
            name: "step",
            value: step,
            expected: "(0, inf)",
        });
    }
    let grid = certificate_grid(rho_lo, rho_hi, step);
    let evals: Vec<Eval> = if opts.parallel {
        grid.par_iter().map(|&r| evaluate(r, opts.check_slope)).collect()
    } else {
        grid.iter().map(|&r| evaluate(r, opts.check_slope)).collect()
    };

    // Sequential reduction in grid order keeps the result independent of
    // thread count.
    let mut worst_theta = f64::NEG_INFINITY;
    let mut worst_rho = f64::NAN;
    let mut max_abs_slope = if opts.check_slope { 0.0 } else { f64::NAN };
    let mut first_error = None;
    for e in &evals {
        if first_error.is_none() {
            first_error = e.error.clone();
        }
        let th = e.record.theta;
        if th.is_nan() {
            continue;
        }
        if th > worst_theta {
            worst_theta = th;
            worst_rho = e.record.rho;
        }
        if opts.check_slope && !(e.slope <= max_abs_slope) {
            max_abs_slope = e.slope;
        }
    }
    if worst_theta == f64::NEG_INFINITY {
        worst_theta = f64::NAN;
    }

    let reason = if let Some(err) = first_error {
        Some(format!("evaluation failed: {err}"))
    } else if step > max_step * (1.0 + 1e-12) {
        Some(format!("step {step} exceeds delta / M = {max_step}"))
    } else if !(worst_theta < -delta) {
        Some(format!("worst theta {worst_theta} at rho = {worst_rho} is not below -delta = {}", -delta))
    } else if opts.check_slope && !(max_abs_slope <= lipschitz_m) {
        Some(format!("numerical |theta'| reaches {max_abs_slope}, above M = {lipschitz_m}"))
    } else {
        None
    };

    Ok(Certificate {
        rho_lo,
        rho_hi,
        step,
        delta,
        lipschitz_m,
        n_points: grid.len(),
        worst_theta,
        worst_rho,
        max_abs_slope,
        pass: reason.is_none(),
        reason,
        per_point: opts.per_point.then(|| evals.iter().map(|e| e.record).collect()),
        tool_version: format!("boolstab {}", env!("CARGO_PKG_VERSION")),
    })
}

fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

fn string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

impl Certificate {
    /// JSON with every float printed to 17 significant digits and a trailing
    /// newline. Non-finite floats become `null`.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n");
        let mut field = |name: &str, value: String| {
            let _ = writeln!(out, "  \"{name}\": {value},");
        };
        field("rho_lo", num(self.rho_lo));
        field("rho_hi", num(self.rho_hi));
        field("step", num(self.step));
        field("delta", num(self.delta));
        field("lipschitz_m", num(self.lipschitz_m));
        field("n_points", self.n_points.to_string());
        field("worst_theta", num(self.worst_theta));
        field("worst_rho", num(self.worst_rho));
        field("max_abs_slope", num(self.max_abs_slope));
        field("pass", self.pass.to_string());
        field("reason", self.reason.as_deref().map_or("null".into(), string));
        let points = match &self.per_point {
            None => "null".to_string(),
            Some(ps) => {
                let rows: Vec<String> = ps
                    .iter()
                    .map(|p| {
                        format!(
                            "    {{\"rho\": {}, \"theta\": {}, \"t_rho\": {}, \"eps_star\": {}, \"omega_max\": {}}}",
                            num(p.rho),
                            num(p.theta),
                            num(p.t_rho),
                            num(p.eps_star),
                            num(p.omega_max)
                        )
                    })
                    .collect();
                if rows.is_empty() {
                    "[]".to_string()
                } else {
                    format!("[\n{}\n  ]", rows.join(",\n"))
                }
            }
        };
        field("per_point", points);
        let _ = writeln!(out, "  \"tool_version\": {}", string(&self.tool_version));
        out.push_str("}\n");
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("certificate JSON: {e}")))
    }
}
