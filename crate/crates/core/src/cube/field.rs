use serde::{Deserialize, Serialize};

use super::boolean::{chi, BooleanFunction, Subset};
use super::fourier::fourier;
use crate::error::{check_unit, Error, Result};

/// Largest dimension accepted for real-valued fields.
pub const FIELD_MAX_DIM: usize = 16;

/// A real-valued function on `{±1}^n`, indexed like [`BooleanFunction`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CubeField {
    n: usize,
    values: Vec<f64>,
}

impl CubeField {
    /// `n = 0` is allowed and gives a single value.
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        if n > FIELD_MAX_DIM {
            return Err(Error::DimensionOverflow { n, max: FIELD_MAX_DIM });
        }
        if values.len() != 1 << n {
            return Err(Error::LengthMismatch {
                left: values.len(),
                right: 1 << n,
            });
        }
        Ok(Self { n, values })
    }

    pub fn constant(n: usize, c: f64) -> Result<Self> {
        Self::new(n, vec![c; 1usize.checked_shl(n as u32).unwrap_or(0)])
    }

    pub fn from_boolean(f: &BooleanFunction) -> Self {
        Self {
            n: f.n(),
            values: f.values(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// 2^{−n} Σ_x Φ(g(x)).
    pub fn mean_of(&self, phi: impl Fn(f64) -> f64) -> f64 {
        self.values.iter().map(|&v| phi(v)).sum::<f64>() / self.values.len() as f64
    }

    pub fn max_abs_diff(&self, other: &CubeField) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Applies the one-coordinate kernel [[a, b], [b, a]] on every coordinate in `s`.
fn kernel_in_place(values: &mut [f64], n: usize, s: Subset, rho: f64) {
    let a = 0.5 * (1.0 + rho);
    let b = 0.5 * (1.0 - rho);
    for i in 0..n {
        if !s.contains(i) {
            continue;
        }
        let bit = 1 << i;
        for x in 0..values.len() {
            if x & bit == 0 {
                let (lo, hi) = (values[x], values[x | bit]);
                values[x] = a * lo + b * hi;
                values[x | bit] = b * lo + a * hi;
            }
        }
    }
}

/// T_ρ applied to a real field.
pub fn noise_field(g: &CubeField, rho: f64) -> Result<CubeField> {
    partial_noise(g, Subset::full(g.n), rho)
}

/// T_ρ^S: noise on the coordinates in `s` only.
pub fn partial_noise(g: &CubeField, s: Subset, rho: f64) -> Result<CubeField> {
    check_unit("rho", rho)?;
    s.check(g.n)?;
    let mut values = g.values.clone();
    kernel_in_place(&mut values, g.n, s, rho);
    Ok(CubeField { n: g.n, values })
}

/// T_ρf by the product kernel, one coordinate at a time.
pub fn noise_apply(f: &BooleanFunction, rho: f64) -> Result<CubeField> {
    noise_field(&CubeField::from_boolean(f), rho)
}

/// T_ρf(x) = Σ_y ((1+ρ)/2)^{n−d} ((1−ρ)/2)^d f(y), d = Hamming distance.
pub fn noise_apply_kernel(f: &BooleanFunction, rho: f64) -> Result<CubeField> {
    check_unit("rho", rho)?;
    let n = f.n();
    let a = 0.5 * (1.0 + rho);
    let b = 0.5 * (1.0 - rho);
    let weights: Vec<f64> = (0..=n).map(|d| a.powi((n - d) as i32) * b.powi(d as i32)).collect();
    let support = f.support();
    let values = (0..f.size())
        .map(|x| support.iter().map(|&y| weights[(x ^ y).count_ones() as usize]).sum())
        .collect();
    Ok(CubeField { n, values })
}

/// T_ρf = Σ_S ρ^{|S|} f̂_S χ_S.
pub fn noise_apply_fourier(f: &BooleanFunction, rho: f64) -> Result<CubeField> {
    check_unit("rho", rho)?;
    let coeffs = fourier(f);
    let damped: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .map(|(s, c)| c * rho.powi(s.count_ones() as i32))
        .collect();
    let values = (0..f.size())
        .map(|x| {
            damped
                .iter()
                .enumerate()
                .map(|(s, c)| c * chi(s, x) as f64)
                .sum()
        })
        .collect();
    Ok(CubeField { n: f.n(), values })
}
