//! The two-dimensional program Υ_ρ(β) = max over (z₁, z₂) of γ(z₁, z₂, β).

use rayon::prelude::*;

use super::ck::{c_coefficient, omega};
use crate::bounds::phi::h;
use crate::error::{check_open_unit, Error, Result};

/// (p₁, p₂) for a point (z₁, z₂).
pub fn upsilon_weights(z1: f64, z2: f64, beta: f64, rho: f64) -> Result<(f64, f64)> {
    let c = c_coefficient(rho, omega(beta)?);
    Ok(weights_with(z1, z2, beta, rho, c))
}

fn weights_with(z1: f64, z2: f64, beta: f64, rho: f64, c: f64) -> (f64, f64) {
    let r2 = rho * rho;
    let d = 1.0 + rho * z2 - rho * z1 - r2;
    let p1 = (1.0 - rho) * (c + 2.0 * beta * (1.0 + 2.0 * rho * z2 - r2)) / (4.0 * (1.0 + 2.0 * rho * z1) * d);
    let p2 = (1.0 - rho) * (c - 2.0 * beta * (1.0 - 2.0 * rho * z1 - r2)) / (4.0 * (1.0 - 2.0 * rho * z2) * d);
    (p1, p2)
}

/// γ(z₁, z₂, β) with Φ = Φ_1^sym, or `None` outside the feasible set
/// z₁ ≤ z₂, 0 ≤ p₁ ≤ ¼ + β/2, 0 ≤ p₂ ≤ ¼ − β/2.
pub fn upsilon_gamma(z1: f64, z2: f64, beta: f64, rho: f64) -> Result<Option<f64>> {
    let c = c_coefficient(rho, omega(beta)?);
    Ok(gamma_with(z1, z2, beta, rho, c))
}

fn gamma_with(z1: f64, z2: f64, beta: f64, rho: f64, c: f64) -> Option<f64> {
    let bound = 0.5 / rho;
    if !(z1 > -bound && z1 <= z2 && z2 < bound) {
        return None;
    }
    let (p1, p2) = weights_with(z1, z2, beta, rho, c);
    let feasible = (0.0..=0.25 + 0.5 * beta).contains(&p1) && (0.0..=0.25 - 0.5 * beta).contains(&p2);
    if !feasible {
        return None;
    }
    // Φ(0) = 0 for the symmetric 1-function.
    Some(2.0 * p1 * h(0.5 + rho * z1) + 2.0 * p2 * h(0.5 + rho * z2))
}

/// Grid maximum of γ over the interior nodes z_k = −L + 2kL/N, k = 1..N−1,
/// L = 1/(2ρ). Node sets for N are contained in those for any multiple of N.
pub fn upsilon_2d(beta: f64, rho: f64, resolution: usize) -> Result<f64> {
    check_open_unit("rho", rho)?;
    let c = c_coefficient(rho, omega(beta)?);
    let l = 0.5 / rho;
    let n = resolution;
    let node = |k: usize| -l + 2.0 * l * k as f64 / n as f64;
    let best = (1..n)
        .into_par_iter()
        .map(|i| {
            let z1 = node(i);
            (i..n)
                .filter_map(|j| gamma_with(z1, node(j), beta, rho, c))
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .reduce(|| f64::NEG_INFINITY, f64::max);
    if best == f64::NEG_INFINITY {
        return Err(Error::EmptyFeasibleSet { beta, rho, resolution });
    }
    Ok(best)
}
