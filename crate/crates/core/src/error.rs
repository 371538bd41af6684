use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cube dimension {n} exceeds the supported maximum {max}")]
    DimensionOverflow { n: usize, max: usize },

    #[error("{name} = {value} is outside {expected}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("point index {index} is not on the {n}-cube")]
    PointOutOfCube { index: usize, n: usize },

    #[error("coordinate {index} is not a coordinate of the {n}-cube")]
    CoordinateOutOfCube { index: usize, n: usize },

    #[error("field value {value} at point {index} is negative")]
    NegativeValue { index: usize, value: f64 },

    #[error("means differ: {left} vs {right} (tolerance {tol})")]
    MeanMismatch { left: f64, right: f64, tol: f64 },

    #[error("{name} = {value} is not a multiple of 2^-{n}")]
    NonDyadic {
        name: &'static str,
        value: f64,
        n: usize,
    },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("no sign change for {what} on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NoSignChange {
        what: &'static str,
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("quadrature did not reach tolerance {tol} within {evaluations} evaluations (error estimate {estimate})")]
    QuadratureBudget {
        tol: f64,
        evaluations: usize,
        estimate: f64,
    },

    #[error("profile clause could not be classified at beta = {beta}")]
    Unclassified { beta: f64 },

    #[error("phi is not defined at {at}: {reason}")]
    PhiUndefined { at: f64, reason: String },

    #[error("phi `{0}` is not declared convex")]
    NotConvex(String),

    #[error("phi `{0}` has no derivative")]
    MissingDerivative(String),

    #[error("weights for row {row} sum to {sum}, not 1")]
    WeightsNotStochastic { row: usize, sum: f64 },

    #[error("no feasible grid point for beta = {beta}, rho = {rho} at resolution {resolution}")]
    EmptyFeasibleSet {
        beta: f64,
        rho: f64,
        resolution: usize,
    },

    #[error("{0}")]
    Invalid(String),
}

pub(crate) fn check_unit(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name,
            value,
            expected: "[0, 1]",
        })
    }
}

pub(crate) fn check_open_unit(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name,
            value,
            expected: "(0, 1)",
        })
    }
}
