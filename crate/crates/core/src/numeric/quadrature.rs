//! Globally adaptive Gauss–Kronrod (G7/K15) quadrature with forced
//! subdivision points.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5] and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Tolerance and evaluation budget for [`integrate`].
#[derive(Debug, Clone, Copy)]
pub struct QuadratureOptions {
    pub abs_tol: f64,
    pub max_evals: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-9,
            max_evals: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let sum = f(centre - dx) + f(centre + dx);
        kronrod += WGK[j] * sum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * sum;
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs();
    (value, error)
}

/// Integrates `f` over `[a, b]`, splitting first at every breakpoint strictly
/// inside the interval, then bisecting the piece with the largest error
/// estimate until the summed estimate falls below `abs_tol`.
pub fn integrate<F>(f: F, a: f64, b: f64, breakpoints: &[f64], opts: QuadratureOptions) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    if b <= a {
        return Ok(QuadratureResult {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
        });
    }
    let mut cuts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|&x| x.is_finite() && x > a && x < b)
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let mut nodes = Vec::with_capacity(cuts.len() + 2);
    nodes.push(a);
    nodes.extend(cuts);
    nodes.push(b);

    let mut heap = BinaryHeap::new();
    let mut settled_value = 0.0;
    let mut settled_error = 0.0;
    let mut evaluations = 0;
    for w in nodes.windows(2) {
        let (value, error) = kronrod15(&f, w[0], w[1]);
        evaluations += 15;
        heap.push(Piece {
            a: w[0],
            b: w[1],
            value,
            error,
        });
    }

    let mut total_error: f64 = heap.iter().map(|p| p.error).sum();
    let mut iterations = 0usize;
    loop {
        iterations += 1;
        if iterations % 1024 == 0 {
            // Resum to stop the running total drifting.
            total_error = settled_error + heap.iter().map(|p| p.error).sum::<f64>();
        }
        if total_error <= opts.abs_tol {
            break;
        }
        if evaluations + 30 > opts.max_evals {
            return Err(Error::QuadratureBudget {
                tol: opts.abs_tol,
                evaluations,
                estimate: total_error,
            });
        }
        let Some(worst) = heap.pop() else { break };
        total_error -= worst.error;
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) || !worst.error.is_finite() {
            // Interval is at floating-point resolution; nothing left to refine.
            settled_value += worst.value;
            settled_error += worst.error;
            total_error += worst.error;
            if !worst.error.is_finite() {
                return Err(Error::QuadratureBudget {
                    tol: opts.abs_tol,
                    evaluations,
                    estimate: worst.error,
                });
            }
            continue;
        }
        for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
            let (value, error) = kronrod15(&f, lo, hi);
            evaluations += 15;
            total_error += error;
            heap.push(Piece { a: lo, b: hi, value, error });
        }
    }

    // Sum in interval order so the result does not depend on heap layout.
    let mut pieces: Vec<Piece> = heap.into_vec();
    pieces.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value = settled_value + pieces.iter().map(|p| p.value).sum::<f64>();
    let error_estimate = settled_error + pieces.iter().map(|p| p.error).sum::<f64>();
    Ok(QuadratureResult {
        value,
        error_estimate,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(|x| x.powi(9) - 3.0 * x * x, 0.0, 2.0, &[], QuadratureOptions::default()).unwrap();
        assert!((r.value - (102.4 - 8.0)).abs() < 1e-12);
    }

    #[test]
    fn step_with_breakpoint() {
        let f = |x: f64| if x < 0.3 { 1.0 } else { 0.0 };
        let r = integrate(f, 0.0, 1.0, &[0.3], QuadratureOptions::default()).unwrap();
        assert!((r.value - 0.3).abs() < 1e-15);
        assert_eq!(r.evaluations, 30);
    }

    #[test]
    fn sqrt_endpoint_singularity() {
        let opts = QuadratureOptions {
            abs_tol: 1e-12,
            max_evals: 1_000_000,
        };
        let r = integrate(|x| x.sqrt(), 0.0, 1.0, &[], opts).unwrap();
        assert!((r.value - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let opts = QuadratureOptions {
            abs_tol: 1e-15,
            max_evals: 100,
        };
        let err = integrate(|x| (1.0 / x).sin(), 1e-6, 1.0, &[], opts).unwrap_err();
        assert!(matches!(err, Error::QuadratureBudget { .. }));
    }
}
