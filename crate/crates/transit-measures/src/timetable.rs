//! Observed route sets and timetable measures.
//!
//! The measure of a periodic timetable is the time average of the observed
//! route set measure over one period. Because the retained base measures are
//! translation invariant between departures, the average collapses to a
//! finite sum over either the inter-departure gaps (delta form) or the jumps
//! at departures (Delta form); both are exposed through [`Representation`].

use crate::core::{mod_period_unchecked, Beta, PeriodicTimetable, RouteSet};
use crate::error::{Error, Result};
use crate::numeric::log_sum_exp_neg;

/// The two route set measures retained for timetable evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BaseMeasure {
    /// Shortest path routing with travel time evaluation.
    SpTravelTime,
    /// Logit routing with perceived travel time evaluation.
    LogitPerceived(Beta),
}

/// Routes ordered cyclically by departure time, ties broken by input index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicOrder {
    order: Vec<usize>,
    predecessor: Vec<usize>,
    successor: Vec<usize>,
}

impl CyclicOrder {
    /// Route indices in departure order.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn predecessor(&self, route: usize) -> usize {
        self.predecessor[route]
    }

    pub fn successor(&self, route: usize) -> usize {
        self.successor[route]
    }
}

/// Stable sort by `(departure, input index)`.
pub fn departure_order(timetable: &PeriodicTimetable) -> CyclicOrder {
    let n = timetable.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        timetable.departures()[a]
            .partial_cmp(&timetable.departures()[b])
            .unwrap()
            .then(a.cmp(&b))
    });
    let mut predecessor = vec![0; n];
    let mut successor = vec![0; n];
    for k in 0..n {
        let route = order[k];
        predecessor[route] = order[(k + n - 1) % n];
        successor[route] = order[(k + 1) % n];
    }
    CyclicOrder {
        order,
        predecessor,
        successor,
    }
}

/// The route set seen by a traveler arriving at time `t`: durations are
/// augmented by the cyclic waiting time until each departure.
pub fn observed_route_set(timetable: &PeriodicTimetable, t: f64) -> Result<RouteSet> {
    if !t.is_finite() || t < 0.0 || t >= timetable.period() {
        return Err(Error::TimeOutOfRange {
            value: t,
            period: timetable.period(),
        });
    }
    RouteSet::new(observed_durations(timetable, t))
}

fn observed_durations(timetable: &PeriodicTimetable, t: f64) -> Vec<f64> {
    let period = timetable.period();
    timetable
        .routes()
        .durations()
        .iter()
        .zip(timetable.departures())
        .map(|(&l, &theta)| l + mod_period_unchecked(theta - t, period))
        .collect()
}

fn base_value(durations: &[f64], base: &BaseMeasure) -> f64 {
    match base {
        BaseMeasure::SpTravelTime => durations.iter().cloned().fold(f64::INFINITY, f64::min),
        BaseMeasure::LogitPerceived(beta) => {
            -log_sum_exp_neg(beta.value(), durations) / beta.value()
        }
    }
}

/// Base measure of the observed route set at time `t`.
pub fn observed_measure(timetable: &PeriodicTimetable, t: f64, base: &BaseMeasure) -> Result<f64> {
    if !t.is_finite() || t < 0.0 || t >= timetable.period() {
        return Err(Error::TimeOutOfRange {
            value: t,
            period: timetable.period(),
        });
    }
    Ok(base_value(&observed_durations(timetable, t), base))
}

/// The `(delta, tau, Delta)` triple describing the observed-measure sawtooth
/// of a timetable. All vectors are indexed by route.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    delta: Vec<f64>,
    tau: Vec<f64>,
    jump: Vec<f64>,
    period: f64,
}

impl Representation {
    /// Gap between each route's departure and its predecessor's; the first
    /// route in the order wraps through the period.
    pub fn deltas(&self) -> &[f64] {
        &self.delta
    }

    /// Base measure observed just before each route departs.
    pub fn taus(&self) -> &[f64] {
        &self.tau
    }

    /// Jump of the observed measure when each route departs (the Delta
    /// values).
    pub fn jumps(&self) -> &[f64] {
        &self.jump
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    /// Timetable measure from the gaps: `(1/T) sum(delta^2/2 + delta*tau)`.
    pub fn measure_delta_form(&self) -> f64 {
        self.delta
            .iter()
            .zip(&self.tau)
            .map(|(&d, &t)| 0.5 * d * d + d * t)
            .sum::<f64>()
            / self.period
    }

    /// Timetable measure from the jumps: `(1/T) sum(Delta^2/2 + Delta*tau)`.
    pub fn measure_jump_form(&self) -> f64 {
        self.jump
            .iter()
            .zip(&self.tau)
            .map(|(&d, &t)| 0.5 * d * d + d * t)
            .sum::<f64>()
            / self.period
    }
}

/// Computes the `(delta, tau, Delta)` representation of a timetable.
///
/// Simultaneous departures are processed one by one in the cyclic order:
/// when evaluating tau for a route, every co-departing route that was already
/// processed has the period added to its duration. This makes both the deltas
/// and the jumps distribute exactly the period.
pub fn representation(timetable: &PeriodicTimetable, base: &BaseMeasure) -> Representation {
    let n = timetable.len();
    let period = timetable.period();
    let theta = timetable.departures();
    let cyclic = departure_order(timetable);
    let order = cyclic.order();

    let mut position = vec![0; n];
    for (k, &route) in order.iter().enumerate() {
        position[route] = k;
    }

    let mut delta = vec![0.0; n];
    for (k, &route) in order.iter().enumerate() {
        delta[route] = if k == 0 {
            let gap = mod_period_unchecked(theta[route] - theta[order[n - 1]], period);
            if gap == 0.0 {
                period
            } else {
                gap
            }
        } else {
            theta[route] - theta[order[k - 1]]
        };
    }

    let mut tau = vec![0.0; n];
    let mut durations = vec![0.0; n];
    for (k, &route) in order.iter().enumerate() {
        for j in 0..n {
            durations[j] = timetable.routes().durations()[j]
                + mod_period_unchecked(theta[j] - theta[route], period);
            if theta[j] == theta[route] && position[j] < k {
                durations[j] += period;
            }
        }
        tau[route] = base_value(&durations, base);
    }

    let mut jump = vec![0.0; n];
    for route in 0..n {
        let next = cyclic.successor(route);
        jump[route] = tau[next] + delta[next] - tau[route];
    }

    Representation {
        delta,
        tau,
        jump,
        period,
    }
}

/// Time-averaged observed measure of the timetable (delta form).
pub fn timetable_measure(timetable: &PeriodicTimetable, base: &BaseMeasure) -> f64 {
    representation(timetable, base).measure_delta_form()
}
