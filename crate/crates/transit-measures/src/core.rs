//! Domain types and cyclic arithmetic shared by all measures.
//!
//! All times are in minutes. Durations may be any finite real (generalized
//! times can net out negative after calibration), so no positivity check is
//! applied to them.

use crate::error::{Error, Result};

/// Absolute tolerance on the probability simplex constraint.
pub const SIMPLEX_TOLERANCE: f64 = 1e-12;

/// A finite, indexed set of routes with real durations in minutes.
#[derive(Debug, Clone, PartialEq)]
pub struct RouteSet {
    durations: Vec<f64>,
}

impl RouteSet {
    pub fn new(durations: Vec<f64>) -> Result<Self> {
        if durations.is_empty() {
            return Err(Error::EmptyRouteSet);
        }
        if let Some(&bad) = durations.iter().find(|d| !d.is_finite()) {
            return Err(Error::NonFiniteDuration(bad));
        }
        Ok(Self { durations })
    }

    pub fn len(&self) -> usize {
        self.durations.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn durations(&self) -> &[f64] {
        &self.durations
    }

    pub fn min_duration(&self) -> f64 {
        self.durations.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn mean_duration(&self) -> f64 {
        self.durations.iter().sum::<f64>() / self.len() as f64
    }
}

/// Logit sensitivity parameter, in 1/minutes. Strictly positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Beta(f64);

impl Beta {
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value <= 0.0 {
            return Err(Error::InvalidBeta(value));
        }
        Ok(Self(value))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// A route set operated periodically with cycle time `period` and departure
/// times in `[0, period)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicTimetable {
    routes: RouteSet,
    period: f64,
    departures: Vec<f64>,
}

impl PeriodicTimetable {
    pub fn new(routes: RouteSet, period: f64, departures: Vec<f64>) -> Result<Self> {
        if !period.is_finite() || period <= 0.0 {
            return Err(Error::InvalidPeriod(period));
        }
        if departures.len() != routes.len() {
            return Err(Error::DepartureCountMismatch {
                expected: routes.len(),
                actual: departures.len(),
            });
        }
        for (index, &value) in departures.iter().enumerate() {
            if !value.is_finite() || value < 0.0 || value >= period {
                return Err(Error::DepartureOutOfRange {
                    index,
                    value,
                    period,
                });
            }
        }
        Ok(Self {
            routes,
            period,
            departures,
        })
    }

    pub fn routes(&self) -> &RouteSet {
        &self.routes
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn departures(&self) -> &[f64] {
        &self.departures
    }

    pub fn len(&self) -> usize {
        self.routes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// A probability vector over the routes, simplex-constrained.
#[derive(Debug, Clone, PartialEq)]
pub struct RoutingProbabilities(Vec<f64>);

impl RoutingProbabilities {
    pub fn new(probabilities: Vec<f64>) -> Result<Self> {
        let sum: f64 = probabilities.iter().sum();
        if probabilities.iter().any(|&p| !p.is_finite() || p < 0.0)
            || (sum - 1.0).abs() > SIMPLEX_TOLERANCE
        {
            return Err(Error::InvalidProbabilities { sum });
        }
        Ok(Self(probabilities))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Per-OD measure values with nonnegative weights, for multi-OD aggregation.
#[derive(Debug, Clone, PartialEq)]
pub struct OdWeighting {
    entries: Vec<(f64, f64)>,
}

impl OdWeighting {
    /// Entries are `(measure value in minutes, weight)` pairs.
    pub fn new(entries: Vec<(f64, f64)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyWeighting);
        }
        let mut total = 0.0;
        for &(value, weight) in &entries {
            if !value.is_finite() || !weight.is_finite() || weight < 0.0 {
                return Err(Error::InvalidWeights);
            }
            total += weight;
        }
        if total <= 0.0 {
            return Err(Error::InvalidWeights);
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[(f64, f64)] {
        &self.entries
    }
}

/// Maps `x` onto `[0, period)` by adding or subtracting a multiple of the
/// period.
pub fn mod_period(x: f64, period: f64) -> Result<f64> {
    if !period.is_finite() || period <= 0.0 {
        return Err(Error::InvalidPeriod(period));
    }
    if !x.is_finite() {
        return Err(Error::NonFinite(x));
    }
    Ok(mod_period_unchecked(x, period))
}

/// `mod_period` without validation, for hot loops over already-checked data.
pub(crate) fn mod_period_unchecked(x: f64, period: f64) -> f64 {
    let mut r = x % period;
    if r < 0.0 {
        r += period;
    }
    // x % period can return exactly `period` after the correction when
    // x is a tiny negative value.
    if r >= period {
        r = 0.0;
    }
    r
}

/// Weighted average of per-OD measure values.
pub fn aggregate_weighted(weighting: &OdWeighting) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for &(value, weight) in weighting.entries() {
        num += weight * value;
        den += weight;
    }
    num / den
}
