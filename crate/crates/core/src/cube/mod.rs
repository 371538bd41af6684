//! Exact computations on the discrete cube `{±1}^n`.

pub mod boolean;
pub mod field;
pub mod fourier;
pub mod rearrange;
pub mod search;
pub mod spectrum;
pub mod stability;

pub use boolean::{chi, BooleanFunction, Subset, MAX_DIM};
pub use field::{noise_apply, noise_apply_fourier, noise_apply_kernel, noise_field, partial_noise, CubeField};
pub use fourier::{fourier, fourier_numerators};
pub use rearrange::{
    check_rearrangement_bound, lex_rearrange, restrict_and_mix, restriction, restriction_means, subcube_mass,
    subcube_mass_fourier,
};
pub use search::{balanced_functions, max_noise_stability, max_noise_stability_table, sample_balanced};
pub use spectrum::{
    concentration, decreasing_rearrangement, e_gamma, is_majorized, is_majorized_convex, is_majorized_e_gamma,
    Spectral, Step, StepSpectrum,
};
pub use stability::{dictator_distance, dictator_stability, min_tilde_distance, phi_stability, q_moment};
