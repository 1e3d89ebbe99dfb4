use thiserror::Error;

/// Validation and solver errors.
#[derive(Debug, Error)]
pub enum Error {
    #[error("route set must contain at least one route")]
    EmptyRouteSet,
    #[error("route duration must be finite, got {0}")]
    NonFiniteDuration(f64),
    #[error("period must be positive and finite, got {0}")]
    InvalidPeriod(f64),
    #[error("beta must be positive and finite, got {0}")]
    InvalidBeta(f64),
    #[error("expected {expected} departures, got {actual}")]
    DepartureCountMismatch { expected: usize, actual: usize },
    #[error("departure {value} of route {index} lies outside [0, {period})")]
    DepartureOutOfRange {
        index: usize,
        value: f64,
        period: f64,
    },
    #[error("value must be finite, got {0}")]
    NonFinite(f64),
    #[error("time {value} lies outside [0, {period})")]
    TimeOutOfRange { value: f64, period: f64 },
    #[error("probabilities must be nonnegative and sum to one, got sum {sum}")]
    InvalidProbabilities { sum: f64 },
    #[error("weighting must contain at least one entry")]
    EmptyWeighting,
    #[error("weights must be nonnegative with a positive sum")]
    InvalidWeights,
    #[error("spacing value must be positive, got {0}")]
    NonPositiveSpacing(f64),
    #[error("negative spacing value {0}")]
    NegativeSpacing(f64),
    #[error("order must be a permutation of 0..{expected}")]
    InvalidOrder { expected: usize },
    #[error("allocation is not stationary (derivative spread {spread} exceeds {tolerance})")]
    NotStationary { spread: f64, tolerance: f64 },
    #[error("integration step {step} too coarse for period {period} with {routes} routes")]
    StepTooCoarse {
        step: f64,
        period: f64,
        routes: usize,
    },
    #[error("exhaustive search supports at most 3 routes, got {0}")]
    TooManyRoutes(usize),
    #[error("at least {minimum} samples required, got {actual}")]
    TooFewSamples { minimum: usize, actual: usize },
    #[error("grid step must be positive and divide the period, got {0}")]
    InvalidGrid(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
