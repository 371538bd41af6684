//! Subcube masses, restrictions and the lexicographic rearrangement.

use super::boolean::{chi, BooleanFunction, Subset};
use super::field::{noise_field, partial_noise, CubeField};
use super::fourier::fourier_numerators;
use super::stability::q_moment;
use crate::error::{Error, Result};

/// Scatters the low bits of `y` into the set bits of `mask`, lowest first.
fn deposit(mut y: usize, mask: usize) -> usize {
    let mut out = 0;
    let mut m = mask;
    while m != 0 {
        let low = m & m.wrapping_neg();
        if y & 1 == 1 {
            out |= low;
        }
        y >>= 1;
        m &= m - 1;
    }
    out
}

/// Points of the subcube {x : x_S = a}, ordered by their free coordinates.
fn subcube_points(n: usize, s: Subset, a: usize) -> impl Iterator<Item = usize> {
    let fixed = s.0 as usize;
    let free = ((1usize << n) - 1) & !fixed;
    let base = a & fixed;
    (0..1usize << (n - s.len())).map(move |y| base | deposit(y, free))
}

/// Enumerates the assignments `a` to the coordinates of `s` as point masks.
pub fn assignments(s: Subset) -> impl Iterator<Item = usize> {
    let fixed = s.0 as usize;
    (0..1usize << s.len()).map(move |y| deposit(y, fixed))
}

/// p_{S→a}(f) = μ(A ∩ {x_S = a}) by direct count. `a` is a point mask whose
/// bits on `s` give the signs (set = +1); other bits are ignored.
pub fn subcube_mass(f: &BooleanFunction, s: Subset, a: usize) -> Result<f64> {
    s.check(f.n())?;
    let count = subcube_points(f.n(), s, a).filter(|&x| f.value(x)).count();
    Ok(count as f64 / f.size() as f64)
}

/// p_{S→a}(f) = 2^{−|S|} Σ_{T⊆S} a_T f̂_T, summed over exact numerators.
pub fn subcube_mass_fourier(f: &BooleanFunction, s: Subset, a: usize) -> Result<f64> {
    s.check(f.n())?;
    let num = fourier_numerators(f);
    let total: i64 = assignments(s).map(|t| chi(t, a) * num[t]).sum();
    Ok(total as f64 / ((1u64 << s.len()) as f64 * f.size() as f64))
}

/// Means of the restrictions f_{S→a}, i.e. 2^{|S|} p_{S→a}, indexed by the
/// assignment packed into the low |S| bits.
pub fn restriction_means(f: &BooleanFunction, s: Subset) -> Result<Vec<f64>> {
    assignments(s)
        .map(|a| subcube_mass(f, s, a).map(|p| p * (1u64 << s.len()) as f64))
        .collect()
}

/// f_{S→a} as a function on the remaining coordinates, in increasing order.
pub fn restriction(f: &BooleanFunction, s: Subset, a: usize) -> Result<BooleanFunction> {
    s.check(f.n())?;
    let m = f.n() - s.len();
    let points: Vec<usize> = subcube_points(f.n(), s, a).collect();
    BooleanFunction::from_fn(m, |y| f.value(points[y]))
}

/// f_S^*: every restriction f_{S→a} replaced by the lexicographic function
/// (initial segment in ascending index order) with the same mean.
pub fn lex_rearrange(f: &BooleanFunction, s: Subset) -> Result<BooleanFunction> {
    s.check(f.n())?;
    let n = f.n();
    let mut table = 0u64;
    for a in assignments(s) {
        let points: Vec<usize> = subcube_points(n, s, a).collect();
        let count = points.iter().filter(|&&x| f.value(x)).count();
        for &x in &points[..count] {
            table |= 1 << x;
        }
    }
    BooleanFunction::from_table(n, table)
}

/// The two sides of the rearrangement bound for q > 1:
/// lhs = E[(T_ρf)^q], rhs = E_{X_S}[ E_{X_{S^c}}[(T_ρ^S f_S^*)^p]^{q/p} ] with
/// p = 1 + (q − 1)ρ².
pub fn check_rearrangement_bound(f: &BooleanFunction, s: Subset, rho: f64, q: f64) -> Result<(f64, f64)> {
    if !(q > 1.0) {
        return Err(Error::OutOfRange {
            name: "q",
            value: q,
            expected: "(1, inf)",
        });
    }
    let lhs = q_moment(f, rho, q)?;
    let p = 1.0 + (q - 1.0) * rho * rho;
    let star = lex_rearrange(f, s)?;
    let g = partial_noise(&CubeField::from_boolean(&star), s, rho)?;
    let n = f.n();
    let cells = assignments(s).count() as f64;
    let rhs = assignments(s)
        .map(|a| {
            let pts: Vec<usize> = subcube_points(n, s, a).collect();
            let inner = pts.iter().map(|&x| g.values()[x].max(0.0).powf(p)).sum::<f64>() / pts.len() as f64;
            inner.powf(q / p)
        })
        .sum::<f64>()
        / cells;
    Ok((lhs, rhs))
}

/// g_± = (1±ρ)/2 · f_+ + (1∓ρ)/2 · f_− on the cube without coordinate `i`,
/// where f_± are the restrictions to x_i = ±1.
pub fn restrict_and_mix(f: &BooleanFunction, i: usize, rho: f64) -> Result<(CubeField, CubeField)> {
    if i >= f.n() {
        return Err(Error::CoordinateOutOfCube { index: i, n: f.n() });
    }
    crate::error::check_unit("rho", rho)?;
    let s = Subset(1 << i);
    let n = f.n();
    let plus: Vec<usize> = subcube_points(n, s, 1 << i).collect();
    let minus: Vec<usize> = subcube_points(n, s, 0).collect();
    let a = 0.5 * (1.0 + rho);
    let b = 0.5 * (1.0 - rho);
    let val = |x: usize| if f.value(x) { 1.0 } else { 0.0 };
    let g_plus = plus.iter().zip(&minus).map(|(&p, &m)| a * val(p) + b * val(m)).collect();
    let g_minus = plus.iter().zip(&minus).map(|(&p, &m)| b * val(p) + a * val(m)).collect();
    Ok((CubeField::new(n - 1, g_plus)?, CubeField::new(n - 1, g_minus)?))
}

/// Rebuilds T_ρf from the mixed restrictions: T_ρf(x) = T_ρ^{(n−1)} g_{x_i}(x_{∖i}).
pub fn recombine(g_plus: &CubeField, g_minus: &CubeField, i: usize, rho: f64) -> Result<CubeField> {
    let n = g_plus.n() + 1;
    let tp = noise_field(g_plus, rho)?;
    let tm = noise_field(g_minus, rho)?;
    let s = Subset(1 << i);
    let mut values = vec![0.0; 1 << n];
    for (y, (x_plus, x_minus)) in subcube_points(n, s, 1 << i)
        .zip(subcube_points(n, s, 0))
        .enumerate()
    {
        values[x_plus] = tp.values()[y];
        values[x_minus] = tm.values()[y];
    }
    CubeField::new(n, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::field::noise_apply;

    #[test]
    fn deposit_scatters() {
        assert_eq!(deposit(0b11, 0b1010), 0b1010);
        assert_eq!(deposit(0b01, 0b1010), 0b0010);
        assert_eq!(deposit(0b10, 0b1010), 0b1000);
    }

    #[test]
    fn dictator_masses() {
        let d = BooleanFunction::dictator(2, 0, true).unwrap();
        let s = Subset::from_coords(&[0]);
        assert_eq!(subcube_mass(&d, s, 1).unwrap(), 0.5);
        assert_eq!(subcube_mass(&d, s, 0).unwrap(), 0.0);
        assert_eq!(subcube_mass_fourier(&d, s, 1).unwrap(), 0.5);
        assert_eq!(subcube_mass(&d, Subset::EMPTY, 0).unwrap(), d.mean());
    }

    #[test]
    fn dictator_is_already_rearranged() {
        let d = BooleanFunction::dictator(3, 0, true).unwrap();
        assert_eq!(lex_rearrange(&d, Subset::from_coords(&[0])).unwrap(), d);
        let lex = BooleanFunction::lexicographic(3, 5).unwrap();
        assert_eq!(lex_rearrange(&lex, Subset::EMPTY).unwrap(), lex);
    }

    #[test]
    fn full_subset_is_equality() {
        let f = BooleanFunction::from_support(3, &[1, 2, 4, 7]).unwrap();
        let (lhs, rhs) = check_rearrangement_bound(&f, Subset::full(3), 0.6, 2.0).unwrap();
        assert!((lhs - rhs).abs() < 1e-14);
    }

    #[test]
    fn dictator_restrictions() {
        let d = BooleanFunction::dictator(3, 1, true).unwrap();
        let (gp, gm) = restrict_and_mix(&d, 1, 0.3).unwrap();
        assert!(gp.values().iter().all(|v| (v - 0.65).abs() < 1e-15));
        assert!(gm.values().iter().all(|v| (v - 0.35).abs() < 1e-15));
        let back = recombine(&gp, &gm, 1, 0.3).unwrap();
        assert!(back.max_abs_diff(&noise_apply(&d, 0.3).unwrap()) < 1e-15);
    }

    #[test]
    fn one_dimensional_restriction() {
        let d = BooleanFunction::dictator(1, 0, false).unwrap();
        let (gp, gm) = restrict_and_mix(&d, 0, 0.5).unwrap();
        assert_eq!(gp.values(), &[0.25]);
        assert_eq!(gm.values(), &[0.75]);
    }
}
