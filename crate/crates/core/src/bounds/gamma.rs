//! Γ-type bounds on Φ-stability in terms of the distance to a dictator.

use super::phi::{h, PhiSpec};
use super::theta::ThetaProfile;
use crate::error::{check_open_unit, check_unit, Error, Result};
use crate::numeric::{bisect, integrate, QuadratureOptions};

/// Γ(ε) with the default quadrature tolerance (1e-9 absolute).
pub fn gamma_phi(eps: f64, rho: f64, phi: &PhiSpec) -> Result<f64> {
    gamma_phi_with(eps, rho, phi, QuadratureOptions::default())
}

/// Γ(ε) = ½∫_0^1 [Φ(aθ_{1−ε} + bθ_ε) + Φ(bθ_{1−ε} + aθ_ε)] dβ with
/// a = (1+ρ)/2, b = (1−ρ)/2.
pub fn gamma_phi_with(eps: f64, rho: f64, phi: &PhiSpec, opts: QuadratureOptions) -> Result<f64> {
    check_unit("eps", eps)?;
    check_unit("rho", rho)?;
    phi.ensure_convex()?;
    let hi = ThetaProfile::new(1.0 - eps, rho)?;
    let lo = ThetaProfile::new(eps, rho)?;
    let a = 0.5 * (1.0 + rho);
    let b = 0.5 * (1.0 - rho);
    let mut cuts = hi.clause_boundaries().to_vec();
    cuts.extend_from_slice(lo.clause_boundaries());
    let r = integrate(
        |beta| {
            let (u, v) = (hi.eval(beta), lo.eval(beta));
            0.5 * (phi.eval(a * u + b * v) + phi.eval(b * u + a * v))
        },
        0.0,
        1.0,
        &cuts,
        opts,
    )?;
    Ok(r.value)
}

/// Γ(ε⃗) for a vector of restriction means indexed by a ∈ {±1}^k (as point
/// masks): 2^{−k} Σ_a ∫ Φ(Σ_b w(a,b) θ_{ε_b}(β)) dβ, with
/// w(a,b) = ((1+ρ)/2)^{k−d} ((1−ρ)/2)^d and d the Hamming distance.
pub fn gamma_vec(eps: &[f64], k: usize, rho: f64, phi: &PhiSpec) -> Result<f64> {
    if eps.len() != 1 << k {
        return Err(Error::LengthMismatch {
            left: eps.len(),
            right: 1 << k,
        });
    }
    check_unit("rho", rho)?;
    phi.ensure_convex()?;
    let a = 0.5 * (1.0 + rho);
    let b = 0.5 * (1.0 - rho);
    let size = eps.len();
    let weights: Vec<Vec<f64>> = (0..size)
        .map(|x| {
            (0..size)
                .map(|y| {
                    let d = (x ^ y).count_ones() as i32;
                    a.powi(k as i32 - d) * b.powi(d)
                })
                .collect()
        })
        .collect();
    for (row, w) in weights.iter().enumerate() {
        let sum: f64 = w.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::WeightsNotStochastic { row, sum });
        }
    }
    let profiles = eps
        .iter()
        .map(|&e| {
            check_unit("eps", e)?;
            ThetaProfile::new(e, rho)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut cuts: Vec<f64> = profiles
        .iter()
        .flat_map(|p| p.clause_boundaries().iter().copied())
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let r = integrate(
        |beta| {
            let th: Vec<f64> = profiles.iter().map(|p| p.eval(beta)).collect();
            weights
                .iter()
                .map(|w| phi.eval(w.iter().zip(&th).map(|(wi, ti)| wi * ti).sum()))
                .sum::<f64>()
                / size as f64
        },
        0.0,
        1.0,
        &cuts,
        QuadratureOptions::default(),
    )?;
    Ok(r.value)
}

fn fold(eps: f64) -> Result<f64> {
    check_unit("eps", eps)?;
    Ok(eps.min(1.0 - eps))
}

/// Γ_q(ε) = ½(ε + a^p(1−2ε))^{q/p} + ½(ε + b^p(1−2ε))^{q/p}, p = 1 + (q−1)ρ².
/// ε is folded to min(ε, 1 − ε) first.
pub fn gamma_q(eps: f64, rho: f64, q: f64) -> Result<f64> {
    let eps = fold(eps)?;
    check_unit("rho", rho)?;
    if !(q > 0.0) {
        return Err(Error::OutOfRange {
            name: "q",
            value: q,
            expected: "(0, inf)",
        });
    }
    let p = 1.0 + (q - 1.0) * rho * rho;
    let a = 0.5 * (1.0 + rho);
    let b = 0.5 * (1.0 - rho);
    let r = 1.0 - 2.0 * eps;
    Ok(0.5 * (eps + a.powf(p) * r).powf(q / p) + 0.5 * (eps + b.powf(p) * r).powf(q / p))
}

/// Γ_1(ε) = ½(1−ρ²) h((1−ρ)/2 + ρε) + (½ − ε) ρ² h((1−ρ)/2), ε folded.
pub fn gamma_one(eps: f64, rho: f64) -> Result<f64> {
    let eps = fold(eps)?;
    check_unit("rho", rho)?;
    let b = 0.5 * (1.0 - rho);
    let r2 = rho * rho;
    Ok(0.5 * (1.0 - r2) * h(b + rho * eps) + (0.5 - eps) * r2 * h(b))
}

/// h(b + ρε) − (1 + 2ρ²ε/(1−ρ²)) h(b), whose root in (0, ½) is ε*(ρ).
pub fn eps_star_residual(eps: f64, rho: f64) -> f64 {
    let b = 0.5 * (1.0 - rho);
    let r2 = rho * rho;
    h(b + rho * eps) - (1.0 + 2.0 * r2 * eps / (1.0 - r2)) * h(b)
}

/// [`eps_star_residual`] divided by ε, with the difference of h expanded
/// through ln_1p. The residual vanishes at ε = 0 and is lost to rounding
/// near it for small ρ; the quotient keeps its (negative) sign there.
fn eps_star_quotient(eps: f64, rho: f64) -> f64 {
    let b = 0.5 * (1.0 - rho);
    let c = 1.0 - b;
    let r2 = rho * rho;
    let d = rho * eps;
    let dh = rho * ((b + d).ln() - (c - d).ln()) + b * (d / b).ln_1p() / eps + c * (-d / c).ln_1p() / eps;
    dh - 2.0 * r2 * h(b) / (1.0 - r2)
}

/// ε*(ρ): the unique root of [`eps_star_residual`] in (0, ½).
pub fn eps_star(rho: f64) -> Result<f64> {
    check_open_unit("rho", rho)?;
    bisect("eps_star", |e| eps_star_quotient(e, rho), 1e-12, 0.5 - 1e-12, 1e-13)
}

/// ½(Φ(a) + Φ(b)) − (ρ/4)(Φ'(a) − Φ'(b)) (2 ln(1/ε))^{3/2} ε.
pub fn gamma_asymptotic(eps: f64, rho: f64, phi: &PhiSpec) -> Result<f64> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::OutOfRange {
            name: "eps",
            value: eps,
            expected: "(0, 1/2)",
        });
    }
    check_open_unit("rho", rho)?;
    let a = 0.5 * (1.0 + rho);
    let b = 0.5 * (1.0 - rho);
    let base = 0.5 * (phi.try_eval(a)? + phi.try_eval(b)?);
    Ok(base - asymptotic_correction(eps, rho, phi)?)
}

/// The correction term (ρ/4)(Φ'(a) − Φ'(b)) (2 ln(1/ε))^{3/2} ε.
pub fn asymptotic_correction(eps: f64, rho: f64, phi: &PhiSpec) -> Result<f64> {
    let a = 0.5 * (1.0 + rho);
    let b = 0.5 * (1.0 - rho);
    let slope = phi.deriv(a)? - phi.deriv(b)?;
    Ok(0.25 * rho * slope * (2.0 * (1.0 / eps).ln()).powf(1.5) * eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn gamma_q_endpoints() {
        let (rho, q) = (0.6, 2.0);
        let p = 1.0 + (q - 1.0) * rho * rho;
        let d = 0.5 * 0.8f64.powf(q) + 0.5 * 0.2f64.powf(q);
        assert!((gamma_q(0.0, rho, q).unwrap() - d).abs() < 1e-15);
        assert!((gamma_q(0.5, rho, q).unwrap() - 2f64.powf(-q / p)).abs() < 1e-15);
        assert!((gamma_q(0.3, rho, q).unwrap() - gamma_q(0.7, rho, q).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn gamma_one_collapses() {
        assert!((gamma_one(0.0, 0.4).unwrap() - 0.5 * h(0.3)).abs() < 1e-15);
        assert!((gamma_one(0.2, 0.0).unwrap() + LN_2 / 2.0).abs() < 1e-15);
    }

    #[test]
    fn eps_star_headline() {
        let e = eps_star(0.914).unwrap();
        assert!((e - 0.195055).abs() < 2e-6);
        assert!(eps_star_residual(e, 0.914).abs() < 1e-10);
        assert!(eps_star(1.0).is_err());
    }

    #[test]
    fn eps_star_small_and_large_rho() {
        for rho in [1e-4, 1e-3, 0.01, 0.99, 0.999] {
            let e = eps_star(rho).unwrap();
            assert!(e > 0.0 && e < 0.5, "rho = {rho}");
            assert!(eps_star_quotient(e, rho).abs() < 1e-9 * rho, "rho = {rho}");
        }
    }

    #[test]
    fn gamma_at_zero_is_dictator() {
        let phi = PhiSpec::OneSym;
        let g = gamma_phi(0.0, 0.7, &phi).unwrap();
        assert!((g - h(0.85)).abs() < 1e-9);
    }

    #[test]
    fn non_convex_phi_rejected() {
        let phi = PhiSpec::custom("concave", |t| -t * t, None, false);
        assert!(matches!(gamma_phi(0.1, 0.5, &phi), Err(Error::NotConvex(_))));
    }
}
