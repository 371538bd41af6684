//! Decreasing rearrangements and the majorization order.

use serde::{Deserialize, Serialize};

use super::field::CubeField;
use crate::error::{check_unit, Error, Result};

/// One level of a decreasing step function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub mass: f64,
    pub value: f64,
}

/// f_↓ as a finite list of steps with strictly decreasing values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepSpectrum {
    steps: Vec<Step>,
}

impl StepSpectrum {
    /// Sorts by value and merges equal values. Zero masses are dropped.
    pub fn from_steps(steps: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut raw: Vec<Step> = Vec::new();
        for (index, (mass, value)) in steps.into_iter().enumerate() {
            if !(value >= 0.0) || !value.is_finite() {
                return Err(Error::NegativeValue { index, value });
            }
            if !(mass >= 0.0) || !mass.is_finite() {
                return Err(Error::OutOfRange {
                    name: "mass",
                    value: mass,
                    expected: "[0, inf)",
                });
            }
            if mass > 0.0 {
                raw.push(Step { mass, value });
            }
        }
        raw.sort_by(|a, b| b.value.total_cmp(&a.value));
        let mut merged: Vec<Step> = Vec::with_capacity(raw.len());
        for s in raw {
            match merged.last_mut() {
                Some(last) if last.value == s.value => last.mass += s.mass,
                _ => merged.push(s),
            }
        }
        Ok(Self { steps: merged })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn total_mass(&self) -> f64 {
        self.steps.iter().map(|s| s.mass).sum()
    }

    /// ∫ f_↓ over the whole space.
    pub fn integral(&self) -> f64 {
        self.steps.iter().map(|s| s.mass * s.value).sum()
    }

    /// ∫ Φ(f_↓).
    pub fn integral_of(&self, phi: impl Fn(f64) -> f64) -> f64 {
        self.steps.iter().map(|s| s.mass * phi(s.value)).sum()
    }

    /// Cumulative masses at the end of each step.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut acc = 0.0;
        self.steps
            .iter()
            .map(|s| {
                acc += s.mass;
                acc
            })
            .collect()
    }

    /// 𝔈(t) = ∫_0^t f_↓, the greedy mass selection of size `t`.
    pub fn concentration(&self, t: f64) -> f64 {
        let mut left = t.max(0.0);
        let mut total = 0.0;
        for s in &self.steps {
            if left <= 0.0 {
                break;
            }
            let take = s.mass.min(left);
            total += take * s.value;
            left -= take;
        }
        total
    }

    /// E_γ = ∫ [f_↓ − γ]⁺.
    pub fn e_gamma(&self, gamma: f64) -> f64 {
        self.steps
            .iter()
            .map(|s| s.mass * (s.value - gamma).max(0.0))
            .sum()
    }
}

/// Anything with a decreasing rearrangement.
pub trait Spectral {
    fn spectrum(&self) -> Result<StepSpectrum>;
}

impl Spectral for StepSpectrum {
    fn spectrum(&self) -> Result<StepSpectrum> {
        Ok(self.clone())
    }
}

impl Spectral for CubeField {
    fn spectrum(&self) -> Result<StepSpectrum> {
        decreasing_rearrangement(self)
    }
}

/// Sorts the field values into a step spectrum with masses `2^{−n}`.
pub fn decreasing_rearrangement(g: &CubeField) -> Result<StepSpectrum> {
    let w = 1.0 / g.values().len() as f64;
    for (index, &value) in g.values().iter().enumerate() {
        if !(value >= 0.0) {
            return Err(Error::NegativeValue { index, value });
        }
    }
    StepSpectrum::from_steps(g.values().iter().map(|&v| (w, v)))
}

pub fn concentration(g: &CubeField, t: f64) -> Result<f64> {
    check_unit("t", t)?;
    Ok(decreasing_rearrangement(g)?.concentration(t))
}

/// 2^{−n} Σ_x max(g(x) − γ, 0).
pub fn e_gamma(g: &CubeField, gamma: f64) -> Result<f64> {
    if !(gamma >= 0.0) {
        return Err(Error::OutOfRange {
            name: "gamma",
            value: gamma,
            expected: "[0, inf)",
        });
    }
    Ok(g.mean_of(|v| (v - gamma).max(0.0)))
}

fn check_means(g: &StepSpectrum, h: &StepSpectrum, tol: f64) -> Result<()> {
    let (left, right) = (g.integral(), h.integral());
    if (left - right).abs() > tol {
        return Err(Error::MeanMismatch { left, right, tol });
    }
    Ok(())
}

/// `g ≺ h`: 𝔈_g ≤ 𝔈_h + tol at every breakpoint of either spectrum.
pub fn is_majorized(g: &impl Spectral, h: &impl Spectral, tol: f64) -> Result<bool> {
    let (g, h) = (g.spectrum()?, h.spectrum()?);
    check_means(&g, &h, tol)?;
    let mut ts = g.breakpoints();
    ts.extend(h.breakpoints());
    Ok(ts.iter().all(|&t| g.concentration(t) <= h.concentration(t) + tol))
}

/// Same order decided by E_γ at every step value of either spectrum.
pub fn is_majorized_e_gamma(g: &impl Spectral, h: &impl Spectral, tol: f64) -> Result<bool> {
    let (g, h) = (g.spectrum()?, h.spectrum()?);
    check_means(&g, &h, tol)?;
    let gammas = g.steps().iter().chain(h.steps()).map(|s| s.value);
    Ok(gammas
        .into_iter()
        .all(|gamma| g.e_gamma(gamma) <= h.e_gamma(gamma) + tol))
}

/// Convex-test criterion: ∫Φ(g) ≤ ∫Φ(h) + tol for every supplied Φ and for
/// the hinges (t − γ)⁺ at all step values, which together span the convex cone
/// on the finite range.
pub fn is_majorized_convex(
    g: &impl Spectral,
    h: &impl Spectral,
    phis: &[&dyn Fn(f64) -> f64],
    tol: f64,
) -> Result<bool> {
    let (g, h) = (g.spectrum()?, h.spectrum()?);
    check_means(&g, &h, tol)?;
    let supplied = phis
        .iter()
        .all(|phi| g.integral_of(phi) <= h.integral_of(phi) + tol);
    let hinges = g.steps().iter().chain(h.steps()).all(|s| {
        let hinge = |t: f64| (t - s.value).max(0.0);
        g.integral_of(hinge) <= h.integral_of(hinge) + tol
    });
    Ok(supplied && hinges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(values: &[f64]) -> CubeField {
        let n = values.len().trailing_zeros() as usize;
        CubeField::new(n, values.to_vec()).unwrap()
    }

    #[test]
    fn dictator_image() {
        let g = field(&[0.2, 0.8]);
        let s = decreasing_rearrangement(&g).unwrap();
        assert_eq!(
            s.steps(),
            &[Step { mass: 0.5, value: 0.8 }, Step { mass: 0.5, value: 0.2 }]
        );
        assert!((s.concentration(0.5) - 0.4).abs() < 1e-15);
        assert!((e_gamma(&g, 0.5).unwrap() - 0.15).abs() < 1e-15);
    }

    #[test]
    fn constant_is_single_step() {
        let s = decreasing_rearrangement(&field(&[0.3; 8])).unwrap();
        assert_eq!(s.steps().len(), 1);
        assert!((s.total_mass() - 1.0).abs() < 1e-15);
        assert!((s.concentration(0.25) - 0.075).abs() < 1e-15);
    }

    #[test]
    fn negative_values_rejected() {
        assert!(matches!(
            decreasing_rearrangement(&field(&[0.1, -0.1])),
            Err(Error::NegativeValue { index: 1, .. })
        ));
    }

    #[test]
    fn constants_are_minimal() {
        let c = field(&[0.5; 4]);
        let g = field(&[0.9, 0.1, 0.6, 0.4]);
        assert!(is_majorized(&c, &g, 1e-12).unwrap());
        assert!(!is_majorized(&g, &c, 1e-12).unwrap());
        assert!(is_majorized(&g, &g, 0.0).unwrap());
    }

    #[test]
    fn mean_mismatch_is_an_error() {
        let g = field(&[0.9, 0.1]);
        let h = field(&[0.9, 0.2]);
        assert!(matches!(is_majorized(&g, &h, 1e-9), Err(Error::MeanMismatch { .. })));
    }
}
