//! Noise-stability bounds for Boolean functions on the discrete cube.
//!
//! * [`cube`] holds exact computations on `{±1}^n`: the noise operator,
//!   Fourier coefficients, rearrangements and exhaustive searches.
//! * [`bounds`] evaluates the analytic envelopes (Θ, θ_α, Γ, Γ_q, Γ_1, ε*)
//!   and their Gaussian counterparts.
//! * [`certify`] runs the grid/Lipschitz certificate for the Courtade–Kumar
//!   inequality on a correlation interval.
//! * [`sweep`] cross-checks the bounds against every balanced function on a
//!   small cube.

pub mod bounds;
pub mod certify;
pub mod cube;
pub mod error;
pub mod numeric;
pub mod sweep;

pub use error::{Error, Result};
