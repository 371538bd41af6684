//! Gaussian (Ornstein–Uhlenbeck) counterparts of the profile and Φ bound.

use super::phi::PhiSpec;
use crate::error::{check_unit, Result};
use crate::numeric::{integrate, normal_cdf, normal_quantile, QuadratureOptions};

/// Ψ((Ψ⁻¹(α) − ρΨ⁻¹(β)) / √(1 − ρ²)), with the limits at the endpoints.
pub fn gaussian_theta(alpha: f64, beta: f64, rho: f64) -> Result<f64> {
    check_unit("alpha", alpha)?;
    check_unit("beta", beta)?;
    check_unit("rho", rho)?;
    if alpha == 0.0 || alpha == 1.0 || rho == 0.0 {
        return Ok(alpha);
    }
    if rho == 1.0 {
        return Ok(if beta < alpha { 1.0 } else { 0.0 });
    }
    if beta == 0.0 {
        return Ok(1.0);
    }
    if beta == 1.0 {
        return Ok(0.0);
    }
    let z = (normal_quantile(alpha) - rho * normal_quantile(beta)) / (1.0 - rho * rho).sqrt();
    Ok(normal_cdf(z))
}

/// ∫_0^1 Φ(gaussian_theta(α, β, ρ)) dβ, the Φ-stability of a half-space of
/// Gaussian measure α.
pub fn borell_bound(alpha: f64, rho: f64, phi: &PhiSpec) -> Result<f64> {
    check_unit("alpha", alpha)?;
    check_unit("rho", rho)?;
    phi.ensure_convex()?;
    let cuts = [alpha, 0.5];
    let r = integrate(
        |beta| phi.eval(gaussian_theta(alpha, beta, rho).unwrap_or(f64::NAN)),
        0.0,
        1.0,
        &cuts,
        QuadratureOptions::default(),
    )?;
    Ok(r.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_values() {
        assert_eq!(gaussian_theta(0.3, 0.8, 0.0).unwrap(), 0.3);
        assert_eq!(gaussian_theta(0.5, 0.5, 0.7).unwrap(), 0.5);
        assert_eq!(gaussian_theta(0.3, 0.0, 0.7).unwrap(), 1.0);
        assert_eq!(gaussian_theta(0.3, 1.0, 0.7).unwrap(), 0.0);
    }

    #[test]
    fn borell_limits() {
        let phi = PhiSpec::QAsym(2.0);
        let v = borell_bound(0.3, 0.0, &phi).unwrap();
        assert!((v - phi.eval(0.3)).abs() < 1e-12);
        let v = borell_bound(0.3, 1.0, &phi).unwrap();
        assert!((v - (0.3 * phi.eval(1.0) + 0.7 * phi.eval(0.0))).abs() < 1e-12);
    }
}
