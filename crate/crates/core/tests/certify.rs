use boolstab_core::bounds::eps_star;
use boolstab_core::certify::{
    certificate_grid, theta_rho, upsilon_2d, upsilon_bar, verify_interval, verify_interval_with, Certificate,
    VerifyOptions,
};

fn coarse(delta: f64, lipschitz_m: f64, step: f64, parallel: bool) -> Certificate {
    verify_interval_with(
        0.46,
        0.914,
        delta,
        lipschitz_m,
        VerifyOptions {
            step: Some(step),
            parallel,
            per_point: true,
            check_slope: true,
        },
    )
    .unwrap()
}

#[test]
fn grid_includes_both_endpoints() {
    let g = certificate_grid(0.46, 0.914, 0.05);
    assert_eq!(g.first(), Some(&0.46));
    assert_eq!(g.last(), Some(&0.914));
    assert!(g.windows(2).all(|w| w[1] > w[0] && w[1] - w[0] <= 0.05 + 1e-15));
    assert_eq!(certificate_grid(0.5, 0.5, 0.1), vec![0.5]);
}

#[test]
fn desk_scale_certificate_passes() {
    // Δ = 0.05 needs M ≤ δ/Δ; with δ = 0.0016 that is M = 0.032, too small
    // for the slope check, so this only exercises the θ < −δ part.
    let c = verify_interval_with(
        0.46,
        0.914,
        0.0016,
        0.032,
        VerifyOptions {
            step: Some(0.05),
            check_slope: false,
            ..VerifyOptions::default()
        },
    )
    .unwrap();
    assert!(c.pass, "{:?}", c.reason);
    assert_eq!(c.n_points, 11);
    assert!((c.worst_rho - 0.914).abs() < 1e-15);
}

#[test]
fn deterministic_and_thread_independent() {
    let a = coarse(0.0016, 0.032, 0.05, false);
    let b = coarse(0.0016, 0.032, 0.05, true);
    let c = coarse(0.0016, 0.032, 0.05, true);
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(b.to_json(), c.to_json());
}

#[test]
fn slope_check_rejects_small_lipschitz_constant() {
    let c = coarse(0.0016, 0.032, 0.05, false);
    assert!(!c.pass);
    assert!(c.reason.unwrap().contains("theta'"));
    assert!(c.max_abs_slope > 0.032 && c.max_abs_slope <= 20.0);
}

#[test]
fn json_round_trip() {
    let c = coarse(0.0016, 0.032, 0.05, false);
    let back = Certificate::from_json(&c.to_json()).unwrap();
    assert_eq!(back.to_json(), c.to_json());
    assert_eq!(back.per_point, c.per_point);
}

#[test]
fn tighter_delta_is_monotone() {
    // At a fixed grid, failing for δ implies failing for every larger δ.
    let opts = VerifyOptions {
        step: Some(0.05),
        check_slope: false,
        ..VerifyOptions::default()
    };
    let mut failed = false;
    for delta in [0.0005, 0.001, 0.0016, 0.0017, 0.002, 0.005] {
        let c = verify_interval_with(0.46, 0.914, delta, delta / 0.05, opts).unwrap();
        if failed {
            assert!(!c.pass, "delta = {delta}");
        }
        failed |= !c.pass;
    }
    assert!(failed);
}

#[test]
fn delta_above_worst_theta_fails() {
    let c = verify_interval(0.9, 0.914, 0.002, 20.0, None).unwrap();
    assert!(!c.pass);
    assert!(c.reason.unwrap().contains("not below"));
}

#[test]
fn step_above_delta_over_m_fails() {
    let c = verify_interval(0.9, 0.914, 0.0016, 20.0, Some(0.001)).unwrap();
    assert!(!c.pass);
    assert!(c.reason.unwrap().contains("exceeds"));
}

#[test]
fn invalid_interval_is_an_error() {
    assert!(verify_interval(0.9, 0.8, 0.0016, 20.0, None).is_err());
    assert!(verify_interval(0.5, 1.0, 0.0016, 20.0, None).is_err());
    assert!(verify_interval(0.5, 0.6, -1.0, 20.0, None).is_err());
}

#[test]
fn theta_negative_on_coarse_scan() {
    for k in 0..=91 {
        let rho = (0.46 + 0.005 * k as f64).min(0.914);
        assert!(theta_rho(rho).unwrap() < -0.0016, "rho = {rho}");
    }
}

#[test]
fn relaxation_dominates_two_dimensional_program() {
    for rho in [0.6, 0.8] {
        let (bar, _) = upsilon_bar(rho).unwrap();
        // The reduction covers β in [0, ½ − ε*].
        let hi = 0.5 - eps_star(rho).unwrap();
        for beta in [0.0, 0.3 * hi, 0.6 * hi, hi] {
            let v = upsilon_2d(beta, rho, 200).unwrap();
            assert!(v <= bar + 1e-9, "rho = {rho}, beta = {beta}: {v} > {bar}");
        }
    }
}
