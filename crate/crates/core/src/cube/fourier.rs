//! Walsh–Fourier coefficients with f̂_S = E[f(X) χ_S(X)].

use super::boolean::{chi, BooleanFunction};

/// Integer numerators `2^n · f̂_S`, indexed by the subset mask `S`.
///
/// Computed by an in-place Walsh–Hadamard butterfly, then signed by
/// `(−1)^{|S|}` because χ_S counts the coordinates equal to −1 (clear bits).
pub fn fourier_numerators(f: &BooleanFunction) -> Vec<i64> {
    let size = f.size();
    let mut v: Vec<i64> = (0..size).map(|x| f.value(x) as i64).collect();
    let mut h = 1;
    while h < size {
        for block in (0..size).step_by(2 * h) {
            for x in block..block + h {
                let (a, b) = (v[x], v[x + h]);
                v[x] = a + b;
                v[x + h] = a - b;
            }
        }
        h *= 2;
    }
    for (s, c) in v.iter_mut().enumerate() {
        if s.count_ones() % 2 == 1 {
            *c = -*c;
        }
    }
    v
}

/// All `2^n` coefficients f̂_S as floats.
pub fn fourier(f: &BooleanFunction) -> Vec<f64> {
    let scale = f.size() as f64;
    fourier_numerators(f).into_iter().map(|c| c as f64 / scale).collect()
}

/// Sum of squared numerators; Parseval says it equals `2^n · |support|`.
pub fn parseval_numerator(f: &BooleanFunction) -> i64 {
    fourier_numerators(f).iter().map(|c| c * c).sum()
}

/// Evaluates Σ_S c_S χ_S(x) at every point.
pub fn inverse(coefficients: &[f64]) -> Vec<f64> {
    let size = coefficients.len();
    (0..size)
        .map(|x| {
            coefficients
                .iter()
                .enumerate()
                .map(|(s, c)| c * chi(s, x) as f64)
                .sum()
        })
        .collect()
}
