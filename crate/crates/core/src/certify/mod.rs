//! The Courtade–Kumar certificate: ω, ω_max, t_ρ, θ(ρ), Ῡ_ρ, the relaxed
//! two-dimensional program and the grid/Lipschitz verification.

pub mod certificate;
pub mod ck;
pub mod upsilon;

pub use certificate::{
    certificate_grid, verify_interval, verify_interval_with, Certificate, PointRecord, VerifyOptions,
    DEFAULT_DELTA, DEFAULT_LIPSCHITZ, DEFAULT_RHO_HI, DEFAULT_RHO_LO,
};
pub use ck::{
    ck_point, dictator_one_sym, lipschitz_margin, omega, omega_max, phi_ratio, phi_ratio_prime, t_rho,
    theta_prime_analytic, theta_rho, upsilon_bar, varphi, CkPoint,
};
pub use upsilon::{upsilon_2d, upsilon_gamma, upsilon_weights};
