//! Standard normal CDF and quantile.
//!
//! The complementary error function uses the all-positive Taylor series for
//! small arguments and the Laplace continued fraction (modified Lentz) in the
//! tails, so relative accuracy holds far into the lower tail. The quantile is
//! a rational starting guess polished by Halley steps against that CDF.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

const SERIES_LIMIT: f64 = 2.5;

/// erfc(y) for y >= 0.
fn erfc_nonneg(y: f64) -> f64 {
    if y < SERIES_LIMIT {
        // erf(y) = 2/sqrt(pi) * exp(-y^2) * sum 2^k y^(2k+1) / (2k+1)!!
        let y2 = y * y;
        let mut term = y;
        let mut sum = y;
        let mut k = 0.0;
        loop {
            k += 1.0;
            term *= 2.0 * y2 / (2.0 * k + 1.0);
            sum += term;
            if term <= sum * 1e-17 {
                break;
            }
        }
        1.0 - 2.0 / PI.sqrt() * (-y2).exp() * sum
    } else {
        // erfc(y) = exp(-y^2)/sqrt(pi) * 1/(y + (1/2)/(y + 1/(y + (3/2)/(y + ...))))
        let tiny = 1e-300;
        let mut f = y;
        let mut c = y;
        let mut d = 0.0;
        for k in 1..500 {
            let a = k as f64 * 0.5;
            d = y + a * d;
            if d.abs() < tiny {
                d = tiny;
            }
            c = y + a / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = 1.0 / d;
            let delta = c * d;
            f *= delta;
            if (delta - 1.0).abs() < 1e-16 {
                break;
            }
        }
        (-y * y).exp() / (PI.sqrt() * f)
    }
}

/// Standard normal density.
pub fn normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// Standard normal CDF Ψ(x).
pub fn normal_cdf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 0.0 {
        0.5 * erfc_nonneg(-x * FRAC_1_SQRT_2)
    } else {
        1.0 - 0.5 * erfc_nonneg(x * FRAC_1_SQRT_2)
    }
}

/// Lower-tail inverse for p <= 1/2.
fn lower_quantile(p: f64) -> f64 {
    // Abramowitz & Stegun 26.2.23 as a starting point (|error| < 4.5e-4).
    let t = (-2.0 * p.ln()).sqrt();
    let num = 2.515_517 + t * (0.802_853 + t * 0.010_328);
    let den = 1.0 + t * (1.432_788 + t * (0.189_269 + t * 0.001_308));
    let mut x = -(t - num / den);
    for _ in 0..4 {
        let pdf = normal_pdf(x);
        if pdf == 0.0 {
            break;
        }
        let e = (normal_cdf(x) - p) / pdf;
        let step = e / (1.0 + 0.5 * x * e);
        x -= step;
        if step.abs() <= 1e-16 * x.abs().max(1.0) {
            break;
        }
    }
    x
}

/// Standard normal quantile Ψ⁻¹(p); returns ±∞ at the endpoints.
pub fn normal_quantile(p: f64) -> f64 {
    if p.is_nan() || !(0.0..=1.0).contains(&p) {
        return f64::NAN;
    }
    if p == 0.0 {
        return f64::NEG_INFINITY;
    }
    if p == 1.0 {
        return f64::INFINITY;
    }
    if p == 0.5 {
        return 0.0;
    }
    if p < 0.5 {
        lower_quantile(p)
    } else {
        -lower_quantile(1.0 - p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cdf_symmetry_and_centre() {
        assert_eq!(normal_cdf(0.0), 0.5);
        for &x in &[0.1, 0.7, 1.3, 2.4, 3.9, 6.0] {
            assert!((normal_cdf(x) + normal_cdf(-x) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn series_and_fraction_meet() {
        let y = SERIES_LIMIT;
        let below = erfc_nonneg(y - 1e-12);
        let above = erfc_nonneg(y + 1e-12);
        assert!((below - above).abs() / above < 1e-10);
    }

    #[test]
    fn quantile_endpoints() {
        assert_eq!(normal_quantile(0.0), f64::NEG_INFINITY);
        assert_eq!(normal_quantile(1.0), f64::INFINITY);
        assert_eq!(normal_quantile(0.5), 0.0);
        assert!(normal_quantile(1.5).is_nan());
    }

    // Reference values computed at 40 significant digits.
    #[test]
    fn cdf_matches_reference() {
        let cases = [
            (-20.0, 2.753_624_118_606_233_695_1e-89),
            (-8.0, 6.220_960_574_271_784_123_5e-16),
            (-5.0, 2.866_515_718_791_939_116_7e-7),
            (-3.6, 1.591_085_901_575_338_253_2e-4),
            (-2.0, 0.022_750_131_948_179_207_2),
            (-0.3, 0.382_088_577_811_047_366_93),
            (0.3, 0.617_911_422_188_952_633_07),
            (1.7, 0.955_434_537_241_456_956_34),
            (4.2, 0.999_986_654_250_984_093_67),
        ];
        for (x, want) in cases {
            let got = normal_cdf(x);
            assert!((got - want).abs() < 1e-15, "x={x}: {got} vs {want}");
            assert!((got - want).abs() <= 1e-13 * want, "relative, x={x}: {got} vs {want}");
        }
    }

    #[test]
    fn quantile_matches_reference() {
        let cases = [
            (1e-300, -37.047_096_299_361_199_237),
            (1e-20, -9.262_340_089_798_407_573_7),
            (1e-8, -5.612_001_244_174_788_731_5),
            (0.001, -3.090_232_306_167_813_541_5),
            (0.025, -1.959_963_984_540_054_235_5),
            (0.3, -0.524_400_512_708_040_784_04),
            (0.6, 0.253_347_103_135_799_798_8),
            (0.9, 1.281_551_565_544_600_467),
            // 1 − 2⁻²⁰ is exact, so the reference is not skewed by input rounding.
            (1.0 - 2f64.powi(-20), 4.763_001_034_267_813_957),
        ];
        for (p, want) in cases {
            let got = normal_quantile(p);
            assert!((got - want).abs() < 1e-12 * want.abs().max(1.0), "p={p}: {got} vs {want}");
        }
    }
}
