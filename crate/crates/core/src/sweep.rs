//! Brute-force cross-checks of the analytic bounds over balanced functions.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::gamma::{eps_star, gamma_phi, gamma_q};
use crate::bounds::phi::{h, PhiSpec};
use crate::bounds::theta::big_theta;
use crate::cube::boolean::{BooleanFunction, Subset};
use crate::cube::field::noise_apply;
use crate::cube::rearrange::check_rearrangement_bound;
use crate::cube::search::{balanced_functions, max_noise_stability_table, sample_balanced, EXHAUSTIVE_MAX_DIM};
use crate::cube::spectrum::decreasing_rearrangement;
use crate::cube::stability::{dictator_distance, field_phi_mean};
use crate::error::{check_unit, Error, Result};

/// Largest dimension accepted by the suite (sampled above [`EXHAUSTIVE_MAX_DIM`]).
pub const SWEEP_MAX_DIM: usize = 5;

/// The Φ used by the Γ(ε) check.
pub fn gamma_check_phis() -> [PhiSpec; 3] {
    [PhiSpec::OneSym, PhiSpec::QAsym(2.0), PhiSpec::QAsym(3.0)]
}

/// Exponents of the q-stability check; the last one is checked from below.
pub const Q_UPPER: [f64; 3] = [1.5, 2.0, 3.0];
pub const Q_LOWER: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// 𝔈_{T_ρf}(β) ≤ Θ(½, β) on a β-grid.
    Majorization,
    /// Stab_Φ[f] ≤ min_i Γ(d̃_i).
    Gamma,
    /// E[(T_ρf)^q] against Γ_q(d̃_i) in both directions.
    QStability,
    /// Stab_1^sym[f] ≤ Φ_1^sym((1+ρ)/2).
    CourtadeKumar,
    /// Stab_1[f] ≤ ½ h((1−ρ)/2) whenever min_i d̃_i ≤ ε*(ρ).
    Optimality,
    /// The lexicographic rearrangement bound for S = {0} and {0, 1}.
    Rearrangement,
    /// S_n(α, β) ≤ Θ(α, β) for all dyadic α, β.
    Envelope,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Majorization,
        Check::Gamma,
        Check::QStability,
        Check::CourtadeKumar,
        Check::Optimality,
        Check::Rearrangement,
        Check::Envelope,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Majorization => "majorization",
            Check::Gamma => "gamma",
            Check::QStability => "q-stability",
            Check::CourtadeKumar => "courtade-kumar",
            Check::Optimality => "optimality",
            Check::Rearrangement => "rearrangement",
            Check::Envelope => "envelope",
        }
    }

    /// Allowed excess of the left side over the bound.
    pub fn slack(self) -> f64 {
        match self {
            Check::Majorization => 1e-9,
            Check::Gamma => 1e-7,
            Check::QStability => 1e-10,
            Check::CourtadeKumar => 1e-9,
            Check::Optimality => 1e-9,
            Check::Rearrangement => 1e-12,
            Check::Envelope => 1e-12,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown check `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BruteConfig {
    pub n: usize,
    pub rhos: Vec<f64>,
    pub checks: Vec<Check>,
    /// Number of sampled functions; required above the exhaustive limit.
    pub sample: Option<usize>,
    pub seed: u64,
    /// Number of β cells for the majorization check.
    pub beta_grid: usize,
}

impl BruteConfig {
    pub fn new(n: usize, rhos: Vec<f64>) -> Self {
        Self {
            n,
            rhos,
            checks: Check::ALL.to_vec(),
            sample: None,
            seed: 0,
            beta_grid: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: Check,
    pub slack: f64,
    /// Number of individual inequalities evaluated.
    pub tested: usize,
    pub violations: usize,
    /// Largest (left side − bound); negative means every instance had room.
    pub max_excess: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BruteReport {
    pub n: usize,
    pub functions: usize,
    pub sampled: bool,
    pub seed: Option<u64>,
    pub rhos: Vec<f64>,
    pub checks: Vec<CheckReport>,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy)]
struct Acc {
    tested: usize,
    violations: usize,
    max_excess: f64,
}

impl Acc {
    const EMPTY: Acc = Acc {
        tested: 0,
        violations: 0,
        max_excess: f64::NEG_INFINITY,
    };

    fn push(&mut self, excess: f64, slack: f64) {
        self.tested += 1;
        if !(excess <= slack) {
            self.violations += 1;
        }
        if excess > self.max_excess || excess.is_nan() {
            self.max_excess = excess;
        }
    }

    fn merge(self, other: Acc) -> Acc {
        Acc {
            tested: self.tested + other.tested,
            violations: self.violations + other.violations,
            max_excess: if self.max_excess.is_nan() || other.max_excess.is_nan() {
                f64::NAN
            } else {
                self.max_excess.max(other.max_excess)
            },
        }
    }
}

/// Everything that depends on ρ but not on f.
struct RhoTables {
    rho: f64,
    theta_half: Vec<f64>,
    /// gamma[φ][k] = Γ(k/2^n) for k ≤ 2^{n−1}.
    gamma: Vec<Vec<f64>>,
    eps_star: f64,
}

fn rho_tables(cfg: &BruteConfig, rho: f64, need: &[bool; 7]) -> Result<RhoTables> {
    let m = cfg.beta_grid;
    let theta_half = if need[0] {
        (0..=m)
            .map(|k| big_theta(0.5, k as f64 / m as f64, rho))
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    let size = 1usize << cfg.n;
    let gamma = if need[1] {
        gamma_check_phis()
            .iter()
            .map(|phi| {
                (0..=size / 2)
                    .into_par_iter()
                    .map(|k| gamma_phi(k as f64 / size as f64, rho, phi))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    let eps_star = if need[4] && rho > 0.0 && rho < 1.0 {
        eps_star(rho)?
    } else {
        f64::NAN
    };
    Ok(RhoTables {
        rho,
        theta_half,
        gamma,
        eps_star,
    })
}

fn check_function(f: &BooleanFunction, t: &RhoTables, cfg: &BruteConfig, need: &[bool; 7]) -> Result<[Acc; 7]> {
    let mut acc = [Acc::EMPTY; 7];
    let rho = t.rho;
    let n = f.n();
    let size = f.size();
    let field = noise_apply(f, rho)?;
    let mut counts = Vec::with_capacity(n);
    let mut tilde = Vec::with_capacity(n);
    for i in 0..n {
        let (_, dt) = dictator_distance(f, i)?;
        tilde.push(dt);
        counts.push((dt * size as f64).round() as usize);
    }
    let a = 0.5 * (1.0 + rho);
    let b = 0.5 * (1.0 - rho);

    if need[0] {
        let spec = decreasing_rearrangement(&field)?;
        let m = cfg.beta_grid;
        for (k, bound) in t.theta_half.iter().enumerate() {
            let c = spec.concentration(k as f64 / m as f64);
            acc[0].push(c - bound, Check::Majorization.slack());
        }
    }
    if need[1] {
        for (j, phi) in gamma_check_phis().iter().enumerate() {
            let stab = field_phi_mean(&field, phi)?;
            let bound = counts.iter().map(|&k| t.gamma[j][k]).fold(f64::INFINITY, f64::min);
            acc[1].push(stab - bound, Check::Gamma.slack());
        }
    }
    if need[2] {
        for q in Q_UPPER {
            let moment = field.mean_of(|v| v.max(0.0).powf(q));
            for &d in &tilde {
                acc[2].push(moment - gamma_q(d, rho, q)?, Check::QStability.slack());
            }
        }
        let moment = field.mean_of(|v| v.max(0.0).powf(Q_LOWER));
        for &d in &tilde {
            acc[2].push(gamma_q(d, rho, Q_LOWER)? - moment, Check::QStability.slack());
        }
    }
    if need[3] {
        let stab = field_phi_mean(&field, &PhiSpec::OneSym)?;
        acc[3].push(stab - h(a), Check::CourtadeKumar.slack());
    }
    if need[4] && !t.eps_star.is_nan() {
        let min_d = tilde.iter().copied().fold(f64::INFINITY, f64::min);
        if min_d <= t.eps_star {
            let stab = field_phi_mean(&field, &PhiSpec::OneAsym)?;
            acc[4].push(stab - 0.5 * h(b), Check::Optimality.slack());
        }
    }
    if need[5] {
        let mut subsets = vec![Subset::from_coords(&[0])];
        if n >= 2 {
            subsets.push(Subset::from_coords(&[0, 1]));
        }
        for s in subsets {
            for q in Q_UPPER {
                let (lhs, rhs) = check_rearrangement_bound(f, s, rho, q)?;
                acc[5].push(lhs - rhs, Check::Rearrangement.slack());
            }
        }
    }
    Ok(acc)
}

fn envelope_acc(n: usize, rho: f64) -> Result<Acc> {
    let mut acc = Acc::EMPTY;
    let table = max_noise_stability_table(n, rho)?;
    let size = 1usize << n;
    for (a, row) in table.iter().enumerate() {
        for (b, &s) in row.iter().enumerate() {
            let bound = big_theta(a as f64 / size as f64, b as f64 / size as f64, rho)?;
            acc.push(s - bound, Check::Envelope.slack());
        }
    }
    Ok(acc)
}

fn index(c: Check) -> usize {
    Check::ALL.iter().position(|&x| x == c).expect("every check is listed")
}

/// Runs the selected checks over all balanced functions (n ≤ 4) or a seeded
/// sample (n = 5, `sample` required) at every ρ of the config.
pub fn run_brute(cfg: &BruteConfig) -> Result<BruteReport> {
    if cfg.n == 0 || cfg.n > SWEEP_MAX_DIM {
        return Err(Error::DimensionOverflow {
            n: cfg.n,
            max: SWEEP_MAX_DIM,
        });
    }
    for &rho in &cfg.rhos {
        check_unit("rho", rho)?;
    }
    if cfg.beta_grid == 0 {
        return Err(Error::Invalid("beta grid needs at least one cell".into()));
    }
    let functions = match cfg.sample {
        Some(count) => sample_balanced(cfg.n, count, cfg.seed)?,
        None if cfg.n <= EXHAUSTIVE_MAX_DIM => balanced_functions(cfg.n)?,
        None => {
            return Err(Error::Invalid(format!(
                "n = {} is above the exhaustive limit {EXHAUSTIVE_MAX_DIM}; sampling is required",
                cfg.n
            )))
        }
    };
    let mut need = [false; 7];
    for &c in &cfg.checks {
        need[index(c)] = true;
    }

    let mut total = [Acc::EMPTY; 7];
    for &rho in &cfg.rhos {
        let tables = rho_tables(cfg, rho, &need)?;
        let per_rho = functions
            .par_iter()
            .map(|f| check_function(f, &tables, cfg, &need))
            .try_reduce(
                || [Acc::EMPTY; 7],
                |x, y| Ok(std::array::from_fn(|i| x[i].merge(y[i]))),
            )?;
        for i in 0..7 {
            total[i] = total[i].merge(per_rho[i]);
        }
        if need[6] && cfg.n <= EXHAUSTIVE_MAX_DIM {
            total[6] = total[6].merge(envelope_acc(cfg.n, rho)?);
        }
    }

    let checks: Vec<CheckReport> = cfg
        .checks
        .iter()
        .map(|&c| {
            let a = total[index(c)];
            CheckReport {
                check: c,
                slack: c.slack(),
                tested: a.tested,
                violations: a.violations,
                max_excess: a.max_excess,
                pass: a.violations == 0,
            }
        })
        .collect();
    Ok(BruteReport {
        n: cfg.n,
        functions: functions.len(),
        sampled: cfg.sample.is_some(),
        seed: cfg.sample.map(|_| cfg.seed),
        rhos: cfg.rhos.clone(),
        pass: checks.iter().all(|c| c.pass),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_checks() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert!("nope".parse::<Check>().is_err());
    }

    #[test]
    fn one_dimensional_suite() {
        let report = run_brute(&BruteConfig::new(1, vec![0.3, 0.8])).unwrap();
        assert_eq!(report.functions, 2);
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn five_needs_sampling() {
        assert!(run_brute(&BruteConfig::new(5, vec![0.5])).is_err());
        assert!(run_brute(&BruteConfig::new(6, vec![0.5])).is_err());
    }
}
