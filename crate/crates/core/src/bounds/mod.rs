//! Closed-form and quadrature evaluation of the analytic bounds.

pub mod gamma;
pub mod gaussian;
pub mod phi;
pub mod theta;

pub use gamma::{
    asymptotic_correction, eps_star, eps_star_residual, gamma_asymptotic, gamma_one, gamma_phi, gamma_phi_with,
    gamma_q, gamma_vec,
};
pub use gaussian::{borell_bound, gaussian_theta};
pub use phi::{h, q_log, CustomPhi, PhiSpec};
pub use theta::{big_theta, theta_mixture, Clause, ThetaMixture, ThetaProfile};
