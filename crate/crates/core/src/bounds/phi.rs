//! Convex test functions Φ and the q-logarithm.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Below this distance from 1 the q-logarithm switches to its series in q − 1.
const Q_SERIES: f64 = 1e-9;

/// Inputs this far outside [0, 1] are treated as rounding and clamped.
const ENDPOINT_SLACK: f64 = 1e-9;

/// ln_q(t) = (t^{q−1} − 1)/(q − 1), with ln t at q = 1.
pub fn q_log(t: f64, q: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::OutOfRange {
            name: "t",
            value: t,
            expected: "(0, inf)",
        });
    }
    Ok(q_log_unchecked(t, q))
}

fn q_log_unchecked(t: f64, q: f64) -> f64 {
    let l = t.ln();
    let e = q - 1.0;
    if e.abs() < Q_SERIES {
        // (exp(eL) − 1)/e = L (1 + eL/2 + (eL)²/6 + …)
        l * (1.0 + e * l / 2.0 + (e * l) * (e * l) / 6.0)
    } else {
        (e * l).exp_m1() / e
    }
}

/// t ln_q t with 0 ln_q 0 = 0.
fn phi_q(t: f64, q: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        t * q_log_unchecked(t, q)
    }
}

fn phi_q_deriv(t: f64, q: f64) -> f64 {
    // d/dt t ln_q t = ln_q t + t^{q−1}
    q_log_unchecked(t, q) + (t.ln() * (q - 1.0)).exp()
}

/// h(t) = t ln t + (1 − t) ln(1 − t), the symmetric 1-function.
pub fn h(t: f64) -> f64 {
    phi_q(t, 1.0) + phi_q(1.0 - t, 1.0)
}

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A user-supplied Φ with declared convexity.
#[derive(Clone)]
pub struct CustomPhi {
    pub name: String,
    pub eval: ScalarFn,
    pub deriv: Option<ScalarFn>,
    pub convex: bool,
}

impl fmt::Debug for CustomPhi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomPhi")
            .field("name", &self.name)
            .field("has_deriv", &self.deriv.is_some())
            .field("convex", &self.convex)
            .finish()
    }
}

/// The test function Φ of a Φ-stability.
#[derive(Debug, Clone)]
pub enum PhiSpec {
    /// Φ_q(t) = t ln_q t.
    QAsym(f64),
    /// Φ_q^sym(t) = Φ_q(t) + Φ_q(1 − t).
    QSym(f64),
    /// Φ_1(t) = t ln t.
    OneAsym,
    /// Φ_1^sym = h.
    OneSym,
    Custom(CustomPhi),
}

impl PhiSpec {
    pub fn custom(
        name: impl Into<String>,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
        deriv: Option<ScalarFn>,
        convex: bool,
    ) -> Self {
        PhiSpec::Custom(CustomPhi {
            name: name.into(),
            eval: Arc::new(eval),
            deriv,
            convex,
        })
    }

    /// Φ(t) = t², convex with derivative 2t.
    pub fn square() -> Self {
        Self::custom("t^2", |t| t * t, Some(Arc::new(|t| 2.0 * t)), true)
    }

    pub fn name(&self) -> String {
        match self {
            PhiSpec::QAsym(q) => format!("q-asym({q})"),
            PhiSpec::QSym(q) => format!("q-sym({q})"),
            PhiSpec::OneAsym => "one-asym".into(),
            PhiSpec::OneSym => "one-sym".into(),
            PhiSpec::Custom(c) => c.name.clone(),
        }
    }

    pub fn is_convex(&self) -> bool {
        match self {
            PhiSpec::QAsym(q) | PhiSpec::QSym(q) => *q > 0.0,
            PhiSpec::OneAsym | PhiSpec::OneSym => true,
            PhiSpec::Custom(c) => c.convex,
        }
    }

    pub fn ensure_convex(&self) -> Result<()> {
        if self.is_convex() {
            Ok(())
        } else {
            Err(Error::NotConvex(self.name()))
        }
    }

    /// Evaluates Φ(t), clamping `t` into [0, 1] first.
    pub fn eval(&self, t: f64) -> f64 {
        let t = t.clamp(0.0, 1.0);
        match self {
            PhiSpec::QAsym(q) => phi_q(t, *q),
            PhiSpec::QSym(q) => phi_q(t, *q) + phi_q(1.0 - t, *q),
            PhiSpec::OneAsym => phi_q(t, 1.0),
            PhiSpec::OneSym => h(t),
            PhiSpec::Custom(c) => (c.eval)(t),
        }
    }

    /// Evaluates Φ(t) and reports inputs outside [0, 1] or non-finite output.
    pub fn try_eval(&self, t: f64) -> Result<f64> {
        if !(t >= -ENDPOINT_SLACK && t <= 1.0 + ENDPOINT_SLACK) {
            return Err(Error::PhiUndefined {
                at: t,
                reason: "outside [0, 1]".into(),
            });
        }
        let v = self.eval(t);
        if !v.is_finite() {
            return Err(Error::PhiUndefined {
                at: t,
                reason: format!("{} evaluates to {v}", self.name()),
            });
        }
        Ok(v)
    }

    pub fn has_deriv(&self) -> bool {
        !matches!(self, PhiSpec::Custom(CustomPhi { deriv: None, .. }))
    }

    /// Φ'(t) on (0, 1).
    pub fn deriv(&self, t: f64) -> Result<f64> {
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::PhiUndefined {
                at: t,
                reason: "derivative is evaluated on (0, 1) only".into(),
            });
        }
        Ok(match self {
            PhiSpec::QAsym(q) => phi_q_deriv(t, *q),
            PhiSpec::QSym(q) => phi_q_deriv(t, *q) - phi_q_deriv(1.0 - t, *q),
            PhiSpec::OneAsym => phi_q_deriv(t, 1.0),
            PhiSpec::OneSym => (t / (1.0 - t)).ln(),
            PhiSpec::Custom(c) => match &c.deriv {
                Some(d) => d(t),
                None => return Err(Error::MissingDerivative(c.name.clone())),
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn q_log_values() {
        assert_eq!(q_log(1.0, 3.7).unwrap(), 0.0);
        assert!((q_log(0.3, 2.0).unwrap() - (0.3 - 1.0)).abs() < 1e-15);
        for q in [1.0 + 1e-12, 1.0 - 1e-12, 1.0] {
            assert!((q_log(0.5, q).unwrap() - 0.5f64.ln()).abs() < 1e-9);
        }
        assert!(q_log(0.0, 2.0).is_err());
    }

    #[test]
    fn q_log_continuous_across_series_switch() {
        let below = q_log(0.2, 1.0 + 0.999e-9).unwrap();
        let above = q_log(0.2, 1.0 + 1.001e-9).unwrap();
        assert!((below - above).abs() < 1e-11);
    }

    #[test]
    fn closed_forms() {
        assert!((PhiSpec::OneSym.eval(0.5) + LN_2).abs() < 1e-15);
        assert_eq!(PhiSpec::OneSym.eval(0.0), 0.0);
        assert_eq!(PhiSpec::OneSym.eval(1.0), 0.0);
        assert_eq!(PhiSpec::QAsym(0.5).eval(0.0), 0.0);
        assert!((PhiSpec::QAsym(2.0).eval(0.3) - (0.09 - 0.3)).abs() < 1e-15);
        assert!((PhiSpec::QSym(2.0).eval(0.5) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn derivatives_match_differences() {
        let specs = [
            PhiSpec::QAsym(0.5),
            PhiSpec::QAsym(3.0),
            PhiSpec::QSym(1.5),
            PhiSpec::OneAsym,
            PhiSpec::OneSym,
            PhiSpec::square(),
        ];
        for phi in &specs {
            for t in [0.1, 0.37, 0.8] {
                let fd = (phi.eval(t + 1e-6) - phi.eval(t - 1e-6)) / 2e-6;
                assert!((phi.deriv(t).unwrap() - fd).abs() < 1e-7, "{} at {t}", phi.name());
            }
        }
    }

    #[test]
    fn missing_derivative_reported() {
        let phi = PhiSpec::custom("abs", |t| (t - 0.5).abs(), None, true);
        assert!(matches!(phi.deriv(0.3), Err(Error::MissingDerivative(_))));
        assert!(phi.try_eval(1.5).is_err());
    }
}
