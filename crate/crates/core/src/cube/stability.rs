use super::boolean::BooleanFunction;
use super::field::{noise_apply, CubeField};
use super::fourier::fourier_numerators;
use crate::bounds::phi::PhiSpec;
use crate::error::{check_unit, Error, Result};

/// E[Φ(g(X))] for a field, reporting the first point where Φ fails.
pub fn field_phi_mean(g: &CubeField, phi: &PhiSpec) -> Result<f64> {
    let mut total = 0.0;
    for &v in g.values() {
        total += phi.try_eval(v)?;
    }
    Ok(total / g.values().len() as f64)
}

/// Stab_Φ[f] = E[Φ(T_ρf(X))].
pub fn phi_stability(f: &BooleanFunction, rho: f64, phi: &PhiSpec) -> Result<f64> {
    field_phi_mean(&noise_apply(f, rho)?, phi)
}

/// The moment E[(T_ρf)^q], which is the q-stability used by the Γ_q bounds.
pub fn q_moment(f: &BooleanFunction, rho: f64, q: f64) -> Result<f64> {
    if !(q > 0.0) {
        return Err(Error::OutOfRange {
            name: "q",
            value: q,
            expected: "(0, inf)",
        });
    }
    Ok(noise_apply(f, rho)?.mean_of(|v| v.max(0.0).powf(q)))
}

/// (d_i, d̃_i) for the 0-based coordinate `i`: the distance to the dictator
/// 1{x_i = 1} by direct count, confirmed against ½ − f̂_{i}.
pub fn dictator_distance(f: &BooleanFunction, i: usize) -> Result<(f64, f64)> {
    let n = f.n();
    let dictator = BooleanFunction::dictator(n, i, true)?;
    let count = (f.table() ^ dictator.table()).count_ones() as i64;
    let via_fourier = (1i64 << (n - 1)) - fourier_numerators(f)[1 << i];
    if count != via_fourier {
        return Err(Error::Invalid(format!(
            "dictator distance mismatch at coordinate {i}: count {count}, Fourier {via_fourier}"
        )));
    }
    let d = count as f64 / f.size() as f64;
    Ok((d, d.min(1.0 - d)))
}

/// min_i d̃_i(f).
pub fn min_tilde_distance(f: &BooleanFunction) -> Result<f64> {
    let mut best = f64::INFINITY;
    for i in 0..f.n() {
        best = best.min(dictator_distance(f, i)?.1);
    }
    Ok(best)
}

/// Stab_Φ of the dictator, ½(Φ((1+ρ)/2) + Φ((1−ρ)/2)).
pub fn dictator_stability(rho: f64, phi: &PhiSpec) -> Result<f64> {
    check_unit("rho", rho)?;
    Ok(0.5 * (phi.try_eval(0.5 * (1.0 + rho))? + phi.try_eval(0.5 * (1.0 - rho))?))
}
