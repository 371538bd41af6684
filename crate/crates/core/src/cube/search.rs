//! Exhaustive enumeration and seeded sampling of Boolean functions.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::boolean::{check_dim, BooleanFunction};
use super::field::noise_apply;
use crate::error::{check_unit, Error, Result};

/// Largest dimension for exhaustive sweeps; 2^16 truth tables at n = 4.
pub const EXHAUSTIVE_MAX_DIM: usize = 4;

/// Truth tables on `bits` points with exactly `k` ones, in increasing order
/// (Gosper's hack).
pub struct FixedWeight {
    next: Option<u64>,
    limit: u64,
}

impl FixedWeight {
    pub fn new(bits: u32, k: u32) -> Self {
        assert!(bits < 64 && k <= bits);
        let first = if k == 0 { 0 } else { (1u64 << k) - 1 };
        Self {
            next: Some(first),
            limit: 1u64 << bits,
        }
    }
}

impl Iterator for FixedWeight {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let x = self.next?;
        self.next = if x == 0 {
            None
        } else {
            let c = x & x.wrapping_neg();
            let r = x + c;
            let y = (((r ^ x) >> 2) / c) | r;
            (y < self.limit).then_some(y)
        };
        Some(x)
    }
}

/// Every function on the n-cube with `count` support points.
pub fn functions_with_count(n: usize, count: usize) -> Result<Vec<BooleanFunction>> {
    check_dim(n, EXHAUSTIVE_MAX_DIM)?;
    if count > 1 << n {
        return Err(Error::PointOutOfCube { index: count - 1, n });
    }
    FixedWeight::new(1 << n, count as u32)
        .map(|t| BooleanFunction::from_table(n, t))
        .collect()
}

/// All C(2^n, 2^{n−1}) balanced functions.
pub fn balanced_functions(n: usize) -> Result<Vec<BooleanFunction>> {
    check_dim(n, EXHAUSTIVE_MAX_DIM)?;
    functions_with_count(n, 1 << (n - 1))
}

/// `count` balanced functions drawn uniformly (with replacement between draws)
/// from a ChaCha8 stream seeded by `seed`.
pub fn sample_balanced(n: usize, count: usize, seed: u64) -> Result<Vec<BooleanFunction>> {
    check_dim(n, super::boolean::MAX_DIM)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = 1usize << n;
    (0..count)
        .map(|_| {
            let support = sample(&mut rng, size, size / 2).into_vec();
            BooleanFunction::from_support(n, &support)
        })
        .collect()
}

fn dyadic_count(name: &'static str, value: f64, n: usize) -> Result<usize> {
    check_unit(name, value)?;
    let scaled = value * (1u64 << n) as f64;
    if scaled.fract() != 0.0 {
        return Err(Error::NonDyadic { name, value, n });
    }
    Ok(scaled as usize)
}

/// Sorted-descending partial sums of T_ρf, scaled by 2^{−n}; entry k is the
/// best ∫φ T_ρf over indicators φ with k points.
fn top_sums(f: &BooleanFunction, rho: f64) -> Result<Vec<f64>> {
    let mut v = noise_apply(f, rho)?.into_values();
    v.sort_by(|a, b| b.total_cmp(a));
    let w = 1.0 / v.len() as f64;
    let mut acc = 0.0;
    let mut out = Vec::with_capacity(v.len() + 1);
    out.push(0.0);
    for x in v {
        acc += x * w;
        out.push(acc);
    }
    Ok(out)
}

/// max over Boolean φ, f with μ(f) = α, μ(φ) = β of ∫ φ T_ρf.
pub fn max_noise_stability(n: usize, alpha: f64, beta: f64, rho: f64) -> Result<f64> {
    check_dim(n, EXHAUSTIVE_MAX_DIM)?;
    check_unit("rho", rho)?;
    let a = dyadic_count("alpha", alpha, n)?;
    let b = dyadic_count("beta", beta, n)?;
    let fs = functions_with_count(n, a)?;
    fs.par_iter()
        .map(|f| top_sums(f, rho).map(|s| s[b]))
        .try_reduce(|| f64::NEG_INFINITY, |x, y| Ok(x.max(y)))
}

/// S_n(a/2^n, b/2^n) for every pair of counts, as `table[a][b]`.
pub fn max_noise_stability_table(n: usize, rho: f64) -> Result<Vec<Vec<f64>>> {
    check_dim(n, EXHAUSTIVE_MAX_DIM)?;
    check_unit("rho", rho)?;
    let size = 1usize << n;
    (0..=size)
        .map(|a| {
            let fs = functions_with_count(n, a)?;
            fs.par_iter().map(|f| top_sums(f, rho)).try_reduce(
                || vec![f64::NEG_INFINITY; size + 1],
                |x, y| Ok(x.iter().zip(&y).map(|(p, q)| p.max(*q)).collect()),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gosper_counts() {
        assert_eq!(FixedWeight::new(16, 8).count(), 12_870);
        assert_eq!(FixedWeight::new(4, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(FixedWeight::new(4, 4).collect::<Vec<_>>(), vec![15]);
        assert_eq!(FixedWeight::new(4, 2).collect::<Vec<_>>(), vec![3, 5, 6, 9, 10, 12]);
    }

    #[test]
    fn balanced_counts() {
        assert_eq!(balanced_functions(1).unwrap().len(), 2);
        assert_eq!(balanced_functions(2).unwrap().len(), 6);
        assert_eq!(balanced_functions(4).unwrap().len(), 12_870);
        assert!(balanced_functions(5).is_err());
    }

    #[test]
    fn sampling_is_seeded() {
        let a = sample_balanced(5, 20, 7).unwrap();
        let b = sample_balanced(5, 20, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|f| f.is_balanced()));
        assert_ne!(a, sample_balanced(5, 20, 8).unwrap());
    }

    #[test]
    fn small_maxima() {
        assert!((max_noise_stability(1, 0.5, 0.5, 0.5).unwrap() - 0.375).abs() < 1e-15);
        assert!((max_noise_stability(3, 0.25, 1.0, 0.3).unwrap() - 0.25).abs() < 1e-15);
        assert!((max_noise_stability(3, 0.375, 0.375, 1.0).unwrap() - 0.375).abs() < 1e-15);
        assert!(matches!(
            max_noise_stability(2, 0.3, 0.5, 0.5),
            Err(Error::NonDyadic { .. })
        ));
    }

    #[test]
    fn table_matches_single_queries() {
        let t = max_noise_stability_table(3, 0.4).unwrap();
        for (a, b) in [(1, 3), (4, 4), (2, 7)] {
            let single = max_noise_stability(3, a as f64 / 8.0, b as f64 / 8.0, 0.4).unwrap();
            assert_eq!(t[a][b], single);
        }
    }
}
