use boolstab_core::bounds::{big_theta, gamma_phi, gamma_q, PhiSpec, ThetaProfile};
use boolstab_core::cube::rearrange::recombine;
use boolstab_core::cube::{
    check_rearrangement_bound, dictator_distance, fourier, is_majorized, is_majorized_convex, is_majorized_e_gamma,
    noise_apply, noise_apply_fourier, noise_apply_kernel, q_moment, restrict_and_mix, sample_balanced,
    BooleanFunction, CubeField, Subset,
};
use boolstab_core::numeric::{integrate, QuadratureOptions};
use proptest::prelude::*;

fn boolean(max_n: usize) -> impl Strategy<Value = BooleanFunction> {
    (1..=max_n).prop_flat_map(|n| {
        let size = 1u64 << n;
        let mask = if size == 64 { u64::MAX } else { (1u64 << size) - 1 };
        any::<u64>().prop_map(move |t| BooleanFunction::from_table(n, t & mask).unwrap())
    })
}

fn balanced(max_n: usize) -> impl Strategy<Value = BooleanFunction> {
    (1..=max_n, any::<u64>()).prop_map(|(n, seed)| sample_balanced(n, 1, seed).unwrap().remove(0))
}

/// Two fields on {±1}^3 with values in (1/8)ℤ ∩ [0, 4] and equal sums.
fn dyadic_pair() -> impl Strategy<Value = (CubeField, CubeField)> {
    (prop::collection::vec(0u32..=32, 8), prop::collection::vec(0u32..=32, 8)).prop_filter_map(
        "sums differ too much to repair",
        |(g, mut h)| {
            let (sg, sh): (i64, i64) = (g.iter().map(|&v| v as i64).sum(), h.iter().map(|&v| v as i64).sum());
            let last = h[7] as i64 + sg - sh;
            if !(0..=32).contains(&last) {
                return None;
            }
            h[7] = last as u32;
            let f = |v: Vec<u32>| CubeField::new(3, v.into_iter().map(|x| x as f64 / 8.0).collect()).unwrap();
            Some((f(g), f(h)))
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn noise_preserves_mean(f in boolean(6), rho in 0.0..=1.0f64) {
        let g = noise_apply(&f, rho).unwrap();
        prop_assert!((g.mean() - f.mean()).abs() < 1e-12);
    }

    #[test]
    fn noise_routes_agree(f in boolean(5), rho in 0.0..=1.0f64) {
        let a = noise_apply(&f, rho).unwrap();
        prop_assert!(a.max_abs_diff(&noise_apply_kernel(&f, rho).unwrap()) < 1e-12);
        prop_assert!(a.max_abs_diff(&noise_apply_fourier(&f, rho).unwrap()) < 1e-12);
    }

    #[test]
    fn parseval(f in boolean(3)) {
        let energy: f64 = fourier(&f).iter().map(|c| c * c).sum();
        prop_assert!((energy - f.mean()).abs() < 1e-14);
    }

    #[test]
    fn majorization_criteria_agree((g, h) in dyadic_pair()) {
        let by_concentration = is_majorized(&g, &h, 1e-12).unwrap();
        prop_assert_eq!(by_concentration, is_majorized_e_gamma(&g, &h, 1e-12).unwrap());
        prop_assert_eq!(by_concentration, is_majorized_convex(&g, &h, &[], 1e-12).unwrap());
    }

    #[test]
    fn theta_is_symmetric_and_bounded(a in 0.0..=1.0f64, b in 0.0..=1.0f64, rho in 0.0..=1.0f64) {
        let t = big_theta(a, b, rho).unwrap();
        prop_assert!((t - big_theta(b, a, rho).unwrap()).abs() < 1e-12);
        prop_assert!(t <= a.min(b) + 1e-15);
        prop_assert!(t >= a * b - 1e-15);
    }

    #[test]
    fn theta_is_monotone_in_beta(a in 0.0..=1.0f64, b1 in 0.0..=1.0f64, b2 in 0.0..=1.0f64, rho in 0.0..=1.0f64) {
        let (lo, hi) = if b1 <= b2 { (b1, b2) } else { (b2, b1) };
        prop_assert!(big_theta(a, lo, rho).unwrap() <= big_theta(a, hi, rho).unwrap() + 1e-15);
    }

    #[test]
    fn profile_is_the_beta_derivative(a in 0.02..0.98f64, b in 0.02..0.98f64, rho in 0.05..0.95f64) {
        let p = ThetaProfile::new(a, rho).unwrap();
        let step = 1e-6;
        prop_assume!(p.clause_boundaries().iter().all(|&c| (c - b).abs() > 1e-4));
        let fd = (big_theta(a, b + step, rho).unwrap() - big_theta(a, b - step, rho).unwrap()) / (2.0 * step);
        prop_assert!((fd - p.eval(b)).abs() < 1e-5 * (1.0 + fd.abs()), "fd {} vs {}", fd, p.eval(b));
    }

    #[test]
    fn profile_mass_and_shape(a in 0.01..0.99f64, rho in 0.0..1.0f64, b1 in 0.0..=1.0f64, b2 in 0.0..=1.0f64) {
        let p = ThetaProfile::new(a, rho).unwrap();
        let r = integrate(|b| p.eval(b), 0.0, 1.0, p.clause_boundaries(), QuadratureOptions::default()).unwrap();
        prop_assert!((r.value - a).abs() < 1e-7);
        let (lo, hi) = if b1 <= b2 { (b1, b2) } else { (b2, b1) };
        prop_assert!(p.eval(lo) + 1e-12 >= p.eval(hi));
    }

    #[test]
    fn gamma_is_symmetric(eps in 0.0..=1.0f64, rho in 0.0..=1.0f64) {
        let phi = PhiSpec::OneSym;
        let g = gamma_phi(eps, rho, &phi).unwrap();
        prop_assert!((g - gamma_phi(1.0 - eps, rho, &phi).unwrap()).abs() < 1e-8);
    }

    #[test]
    fn gamma_is_at_least_its_linear_bound(eps in 0.0..0.5f64, rho in 0.05..0.95f64) {
        // Convexity of Φ and ∫θ_α = α give Γ(ε) ≥ Γ(0) − (ρ/2)(Φ'(a) − Φ'(b))ε.
        let phi = PhiSpec::QAsym(2.0);
        let (a, b) = (0.5 * (1.0 + rho), 0.5 * (1.0 - rho));
        let lower = gamma_phi(0.0, rho, &phi).unwrap()
            - 0.5 * rho * (phi.deriv(a).unwrap() - phi.deriv(b).unwrap()) * eps;
        prop_assert!(gamma_phi(eps, rho, &phi).unwrap() >= lower - 1e-8);
    }

    #[test]
    fn q_stability_bounds(f in balanced(4), rho in 0.0..=1.0f64, q_hi in 1.0..4.0f64, q_lo in 0.1..1.0f64) {
        for i in 0..f.n() {
            let (_, d) = dictator_distance(&f, i).unwrap();
            prop_assert!(q_moment(&f, rho, q_hi).unwrap() <= gamma_q(d, rho, q_hi).unwrap() + 1e-10);
            prop_assert!(q_moment(&f, rho, q_lo).unwrap() >= gamma_q(d, rho, q_lo).unwrap() - 1e-10);
        }
    }

    #[test]
    fn rearrangement_bound(f in boolean(4), rho in 0.0..=1.0f64, q in 1.01..4.0f64, pick in 0usize..2) {
        let s = if pick == 1 && f.n() >= 2 { Subset::from_coords(&[0, 1]) } else { Subset::from_coords(&[0]) };
        let (lhs, rhs) = check_rearrangement_bound(&f, s, rho, q).unwrap();
        prop_assert!(lhs <= rhs + 1e-12);
    }

    #[test]
    fn restrict_then_recombine(f in boolean(5), rho in 0.0..=1.0f64, i in 0usize..5) {
        prop_assume!(f.n() >= 2 && i < f.n());
        let (gp, gm) = restrict_and_mix(&f, i, rho).unwrap();
        let back = recombine(&gp, &gm, i, rho).unwrap();
        prop_assert!(back.max_abs_diff(&noise_apply(&f, rho).unwrap()) < 1e-12);
    }
}
