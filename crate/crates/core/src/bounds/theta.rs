//! The small-set-expansion envelope Θ(α, β) and its β-derivative θ_α.

use serde::Serialize;

use crate::cube::spectrum::StepSpectrum;
use crate::error::{check_unit, Error, Result};

const MIN_MASS: f64 = 1e-300;
const MAX_MASS: f64 = 1.0 - 1e-16;
/// Relative tolerance for deciding that the two sides of the min are tied.
const TIE: f64 = 4.0 * f64::EPSILON;

fn clamp_mass(x: f64) -> f64 {
    x.clamp(MIN_MASS, MAX_MASS)
}

/// √(−2 ln x).
fn level(x: f64) -> f64 {
    (-2.0 * x.ln()).sqrt()
}

/// √(−2 ln(1 − x)).
fn level_hat(x: f64) -> f64 {
    (-2.0 * (-x).ln_1p()).sqrt()
}

/// The Gaussian small-set-expansion bound for masses e^{−s²/2}, e^{−t²/2},
/// replaced by the trivial bound outside its range ρs ≤ t ≤ s/ρ.
fn sse(s: f64, t: f64, rho: f64) -> f64 {
    if t < rho * s {
        (-0.5 * s * s).exp()
    } else if t > s / rho {
        (-0.5 * t * t).exp()
    } else {
        (-(s * s + t * t - 2.0 * rho * s * t) / (2.0 * (1.0 - rho * rho))).exp()
    }
}

/// ∂/∂β of [`sse`] with β = e^{−t²/2}.
fn sse_slope(s: f64, t: f64, rho: f64) -> (f64, Clause) {
    if t < rho * s {
        (0.0, Clause::Zero)
    } else if t > s / rho {
        (1.0, Clause::One)
    } else {
        let r2 = 1.0 - rho * rho;
        let exponent = 0.5 * t * t - (s * s + t * t - 2.0 * rho * s * t) / (2.0 * r2);
        ((t - rho * s) / (r2 * t) * exponent.exp(), Clause::Gaussian)
    }
}

/// Which expression of the envelope is active at a given β.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Clause {
    /// Derivative of the Gaussian term in (s, t).
    Gaussian,
    /// Derivative of the complementary term α + β − 1 + G(ŝ, t̂).
    Complement,
    /// θ = 0: the envelope is flat at α.
    Zero,
    /// θ = 1: the envelope equals β.
    One,
    /// Degenerate profile (α ∈ {0, 1}, ρ ∈ {0, 1}).
    Constant,
}

/// Θ(α, β) at correlation ρ.
pub fn big_theta(alpha: f64, beta: f64, rho: f64) -> Result<f64> {
    check_unit("alpha", alpha)?;
    check_unit("beta", beta)?;
    check_unit("rho", rho)?;
    Ok(big_theta_unchecked(alpha, beta, rho))
}

fn big_theta_unchecked(alpha: f64, beta: f64, rho: f64) -> f64 {
    if alpha == 0.0 || beta == 0.0 {
        return 0.0;
    }
    if alpha == 1.0 {
        return beta;
    }
    if beta == 1.0 {
        return alpha;
    }
    if rho == 0.0 {
        return alpha * beta;
    }
    if rho == 1.0 {
        return alpha.min(beta);
    }
    let (a, b) = (clamp_mass(alpha), clamp_mass(beta));
    let direct = sse(level(a), level(b), rho);
    let complement = a + b - 1.0 + sse(level_hat(a), level_hat(b), rho);
    direct.min(complement).clamp(0.0, alpha.min(beta))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
enum Shape {
    Regular,
    /// θ ≡ c.
    Flat(f64),
    /// θ = 1 on [0, α), 0 after.
    Step,
}

/// θ_α(·) for fixed α and ρ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThetaProfile {
    alpha: f64,
    rho: f64,
    s: f64,
    s_hat: f64,
    boundaries: Vec<f64>,
    shape: Shape,
}

impl ThetaProfile {
    pub fn new(alpha: f64, rho: f64) -> Result<Self> {
        check_unit("alpha", alpha)?;
        check_unit("rho", rho)?;
        let a = clamp_mass(alpha);
        let (s, s_hat) = (level(a), level_hat(a));
        let shape = if alpha == 0.0 {
            Shape::Flat(0.0)
        } else if alpha == 1.0 {
            Shape::Flat(1.0)
        } else if rho == 0.0 {
            Shape::Flat(alpha)
        } else if rho == 1.0 {
            Shape::Step
        } else {
            Shape::Regular
        };
        let mut boundaries = match shape {
            Shape::Regular => {
                let r2 = rho * rho;
                vec![
                    a.powf(r2),
                    a.powf(1.0 / r2),
                    -(r2 * (-a).ln_1p()).exp_m1(),
                    -((-a).ln_1p() / r2).exp_m1(),
                    1.0 - a,
                ]
            }
            Shape::Step => vec![alpha],
            Shape::Flat(_) => Vec::new(),
        };
        boundaries.retain(|&b| b > 0.0 && b < 1.0);
        boundaries.sort_by(f64::total_cmp);
        boundaries.dedup();
        Ok(Self {
            alpha,
            rho,
            s,
            s_hat,
            boundaries,
            shape,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn s_hat(&self) -> f64 {
        self.s_hat
    }

    /// β values where the active clause may change, sorted, inside (0, 1).
    pub fn clause_boundaries(&self) -> &[f64] {
        &self.boundaries
    }

    /// θ_α(β), with 0 ≤ β ≤ 1.
    pub fn eval(&self, beta: f64) -> f64 {
        match self.eval_clause(beta) {
            Ok((v, _)) => v,
            Err(_) => f64::NAN,
        }
    }

    /// θ_α(β) and the clause that produced it. At ties between the two sides
    /// of the min the Gaussian side wins.
    pub fn eval_clause(&self, beta: f64) -> Result<(f64, Clause)> {
        if !(0.0..=1.0).contains(&beta) {
            return Err(Error::Unclassified { beta });
        }
        match self.shape {
            Shape::Flat(c) => return Ok((c, Clause::Constant)),
            Shape::Step => return Ok((if beta < self.alpha { 1.0 } else { 0.0 }, Clause::Constant)),
            Shape::Regular => {}
        }
        let rho = self.rho;
        let a = clamp_mass(self.alpha);
        let b = clamp_mass(beta);
        let (t, t_hat) = (level(b), level_hat(b));
        let direct = sse(self.s, t, rho);
        let complement = a + b - 1.0 + sse(self.s_hat, t_hat, rho);
        if !(direct.is_finite() && complement.is_finite()) {
            return Err(Error::Unclassified { beta });
        }
        if direct <= complement + TIE * complement.abs().max(f64::MIN_POSITIVE) {
            Ok(sse_slope(self.s, t, rho))
        } else {
            let (slope, clause) = sse_slope(self.s_hat, t_hat, rho);
            let clause = match clause {
                Clause::Gaussian => Clause::Complement,
                Clause::Zero => Clause::One,
                _ => Clause::Zero,
            };
            Ok((1.0 - slope, clause))
        }
    }

    /// Θ(α, β) for this profile.
    pub fn envelope(&self, beta: f64) -> f64 {
        big_theta_unchecked(self.alpha, beta.clamp(0.0, 1.0), self.rho)
    }

    /// Cell averages of θ_α on `cells` equal cells: a step spectrum whose
    /// concentration matches Θ(α, ·) at every cell edge.
    pub fn to_spectrum(&self, cells: usize) -> Result<StepSpectrum> {
        let w = 1.0 / cells as f64;
        StepSpectrum::from_steps((0..cells).map(|k| {
            let lo = self.envelope(k as f64 * w);
            let hi = self.envelope(if k + 1 == cells { 1.0 } else { (k + 1) as f64 * w });
            (w, ((hi - lo) / w).max(0.0))
        }))
    }
}

/// Σ λ_i θ_{α_i}.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThetaMixture {
    lambdas: Vec<f64>,
    profiles: Vec<ThetaProfile>,
}

impl ThetaMixture {
    pub fn eval(&self, beta: f64) -> f64 {
        self.lambdas
            .iter()
            .zip(&self.profiles)
            .map(|(l, p)| if *l == 0.0 { 0.0 } else { l * p.eval(beta) })
            .sum()
    }

    /// Union of the components' clause boundaries.
    pub fn clause_boundaries(&self) -> Vec<f64> {
        let mut all: Vec<f64> = self
            .profiles
            .iter()
            .flat_map(|p| p.clause_boundaries().iter().copied())
            .collect();
        all.sort_by(f64::total_cmp);
        all.dedup();
        all
    }

    pub fn profiles(&self) -> &[ThetaProfile] {
        &self.profiles
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }
}

pub fn theta_mixture(lambdas: &[f64], alphas: &[f64], rho: f64) -> Result<ThetaMixture> {
    if lambdas.len() != alphas.len() {
        return Err(Error::LengthMismatch {
            left: lambdas.len(),
            right: alphas.len(),
        });
    }
    for &l in lambdas {
        if !(l >= 0.0) {
            return Err(Error::OutOfRange {
                name: "lambda",
                value: l,
                expected: "[0, inf)",
            });
        }
    }
    let profiles = alphas
        .iter()
        .map(|&a| ThetaProfile::new(a, rho))
        .collect::<Result<Vec<_>>>()?;
    Ok(ThetaMixture {
        lambdas: lambdas.to_vec(),
        profiles,
    })
}
