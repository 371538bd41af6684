//! Numerical building blocks: quadrature, bracketing roots, the normal CDF.

pub mod normal;
pub mod quadrature;
pub mod roots;

pub use normal::{normal_cdf, normal_pdf, normal_quantile};
pub use quadrature::{integrate, QuadratureOptions, QuadratureResult};
pub use roots::{bisect, golden_max, grid_then_golden_max};
