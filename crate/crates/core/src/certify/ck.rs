//! The one-dimensional program behind the Courtade–Kumar certificate.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::bounds::gamma::eps_star;
use crate::bounds::phi::h;
use crate::error::{check_open_unit, check_unit, Error, Result};
use crate::numeric::{bisect, golden_max, grid_then_golden_max};

/// Grid step for the ω scan.
pub const OMEGA_GRID: f64 = 1e-5;
/// Grid step for the scan over t in Ῡ_ρ.
pub const UPSILON_T_GRID: f64 = 1e-4;

/// φ_C(t) = 2t² ln(1/t), with φ_C(0) = 0.
pub fn varphi_c(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        -2.0 * t * t * t.ln()
    }
}

/// φ_LP(t) = 2t²(t^{−1/2} − 1) on [0, ¼] and t/2 on [¼, ½].
pub fn varphi_lp(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t <= 0.25 {
        2.0 * t * t * (1.0 / t.sqrt() - 1.0)
    } else {
        0.5 * t
    }
}

/// φ(t) = min(φ_C(t̃), φ_LP(t̃)) with t̃ = min(t, 1 − t).
pub fn varphi(t: f64) -> Result<f64> {
    check_unit("t", t)?;
    let tt = t.min(1.0 - t);
    Ok(varphi_c(tt).min(varphi_lp(tt)))
}

/// The bound (1 + √(1 + 4(π − √(2π))β))² / (8π).
pub fn omega_gaussian(beta: f64) -> f64 {
    let r = 1.0 + (1.0 + 4.0 * (PI - (2.0 * PI).sqrt()) * beta).sqrt();
    r * r / (8.0 * PI)
}

/// ω(β) = min(β² + φ(½ − β), (1 + √(1 + 4(π − √(2π))β))²/(8π)) on [0, ½].
pub fn omega(beta: f64) -> Result<f64> {
    if !(0.0..=0.5).contains(&beta) {
        return Err(Error::OutOfRange {
            name: "beta",
            value: beta,
            expected: "[0, 1/2]",
        });
    }
    Ok((beta * beta + varphi(0.5 - beta)?).min(omega_gaussian(beta)))
}

fn omega_unchecked(beta: f64) -> f64 {
    omega(beta.clamp(0.0, 0.5)).unwrap_or(f64::NAN)
}

/// ω_max(ρ) = max of ω over [0, ½ − ε*(ρ)]; returns (value, argmax).
pub fn omega_max(rho: f64) -> Result<(f64, f64)> {
    let e = eps_star(rho)?;
    Ok(omega_max_on(0.5 - e))
}

/// max of ω over [0, hi] by a 1e-5 grid and golden-section refinement.
pub fn omega_max_on(hi: f64) -> (f64, f64) {
    let (x, v) = grid_then_golden_max(omega_unchecked, 0.0, hi, OMEGA_GRID, 1e-13);
    (v, x)
}

/// φ(s) = h(s)/s on (0, 1).
pub fn phi_ratio(s: f64) -> Result<f64> {
    check_open_unit("s", s)?;
    Ok(h(s) / s)
}

/// φ'(s) = −ln(1 − s)/s².
pub fn phi_ratio_prime(s: f64) -> Result<f64> {
    check_open_unit("s", s)?;
    Ok(-(-s).ln_1p() / (s * s))
}

fn phi_r(s: f64) -> f64 {
    h(s) / s
}

fn phi_r_prime(s: f64) -> f64 {
    -(-s).ln_1p() / (s * s)
}

/// c = 1 + ρ − 4ρ² ω_max.
pub fn c_coefficient(rho: f64, omega_max: f64) -> f64 {
    1.0 + rho - 4.0 * rho * rho * omega_max
}

/// −½ c φ'((1 − t)/2) − φ((1 − ρ)/2), whose root is t_ρ.
pub fn t_rho_residual(t: f64, rho: f64, omega_max: f64) -> f64 {
    -0.5 * c_coefficient(rho, omega_max) * phi_r_prime(0.5 * (1.0 - t)) - phi_r(0.5 * (1.0 - rho))
}

/// The objective c φ((1−t)/2) − (1 + t − ρ²) φ((1−ρ)/2); concave in t.
pub fn theta_objective(t: f64, rho: f64, omega_max: f64) -> f64 {
    c_coefficient(rho, omega_max) * phi_r(0.5 * (1.0 - t)) - (1.0 + t - rho * rho) * phi_r(0.5 * (1.0 - rho))
}

/// The ratio (1−ρ) c / (2(1 + t − ρ²)) · φ((1−t)/2) maximized by Ῡ_ρ.
pub fn upsilon_objective(t: f64, rho: f64, omega_max: f64) -> f64 {
    (1.0 - rho) * c_coefficient(rho, omega_max) / (2.0 * (1.0 + t - rho * rho)) * phi_r(0.5 * (1.0 - t))
}

/// t_ρ for a given ω_max, by bisection on (1e-12, 1 − 1e-12).
pub fn t_rho_with(rho: f64, omega_max: f64) -> Result<f64> {
    bisect(
        "t_rho",
        |t| t_rho_residual(t, rho, omega_max),
        1e-12,
        1.0 - 1e-12,
        1e-13,
    )
}

pub fn t_rho(rho: f64) -> Result<f64> {
    check_open_unit("rho", rho)?;
    let (w, _) = omega_max(rho)?;
    t_rho_with(rho, w)
}

/// Every intermediate quantity of θ(ρ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CkPoint {
    pub rho: f64,
    pub eps_star: f64,
    pub omega_max: f64,
    pub beta0: f64,
    pub t_rho: f64,
    pub theta: f64,
}

pub fn ck_point(rho: f64) -> Result<CkPoint> {
    check_open_unit("rho", rho)?;
    let e = eps_star(rho)?;
    let (w, beta0) = omega_max_on(0.5 - e);
    let t = t_rho_with(rho, w)?;
    Ok(CkPoint {
        rho,
        eps_star: e,
        omega_max: w,
        beta0,
        t_rho: t,
        theta: theta_objective(t, rho, w),
    })
}

/// θ(ρ) = c φ((1−t_ρ)/2) − (1 + t_ρ − ρ²) φ((1−ρ)/2).
pub fn theta_rho(rho: f64) -> Result<f64> {
    Ok(ck_point(rho)?.theta)
}

/// Ῡ_ρ as the maximum over t ∈ [0, 1) of [`upsilon_objective`]; returns
/// (value, argmax t).
pub fn upsilon_bar(rho: f64) -> Result<(f64, f64)> {
    check_open_unit("rho", rho)?;
    let (w, _) = omega_max(rho)?;
    let f = |t: f64| upsilon_objective(t, rho, w);
    let (x, v) = grid_then_golden_max(f, 0.0, 1.0 - 1e-9, UPSILON_T_GRID, 1e-12);
    Ok((v, x))
}

/// The dictator's symmetric 1-stability, Φ_1^sym((1+ρ)/2).
pub fn dictator_one_sym(rho: f64) -> f64 {
    h(0.5 * (1.0 + rho))
}

/// θ'(ρ) by the displayed formula, holding ω_max and t_ρ fixed:
/// (1 − 8ρω_max) φ((1−t)/2) + 2ρ φ((1−ρ)/2) + ½(1 + t − ρ²) φ'((1−ρ)/2).
pub fn theta_prime_analytic(rho: f64) -> Result<f64> {
    let p = ck_point(rho)?;
    let b = 0.5 * (1.0 - rho);
    Ok((1.0 - 8.0 * rho * p.omega_max) * phi_r(0.5 * (1.0 - p.t_rho))
        + 2.0 * rho * phi_r(b)
        + 0.5 * (1.0 + p.t_rho - rho * rho) * phi_r_prime(b))
}

/// Step of the symmetric difference used for |θ'|.
pub const SLOPE_STEP: f64 = 1e-6;

/// |θ'(ρ)| by symmetric difference at step 1e-6.
pub fn lipschitz_margin(rho: f64) -> Result<f64> {
    let up = theta_rho(rho + SLOPE_STEP)?;
    let down = theta_rho(rho - SLOPE_STEP)?;
    Ok(((up - down) / (2.0 * SLOPE_STEP)).abs())
}

/// The maximum of [`theta_objective`] on a t-grid, refined; used to confirm
/// that t_ρ is the maximizer.
pub fn theta_objective_max(rho: f64, grid: usize) -> Result<(f64, f64)> {
    check_open_unit("rho", rho)?;
    let (w, _) = omega_max(rho)?;
    let f = |t: f64| theta_objective(t, rho, w);
    let step = 1.0 / grid as f64;
    let mut best = (0.0, f(0.0));
    for k in 1..grid {
        let t = k as f64 * step;
        let v = f(t);
        if v > best.1 {
            best = (t, v);
        }
    }
    let lo = (best.0 - step).max(0.0);
    let hi = (best.0 + step).min(1.0 - 1e-12);
    Ok(golden_max(f, lo, hi, 1e-12))
}
