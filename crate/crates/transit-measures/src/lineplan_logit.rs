//! Line plan measure under logit routing with perceived travel time
//! evaluation.
//!
//! Optimizing over the jump (Delta) parametrization yields a convex,
//! separable allocation problem. It is solved by an outer bisection on the
//! Lagrange multiplier with a nested bisection inverting each route's
//! derivative, which is increasing with range all of R.

use crate::core::{Beta, PeriodicTimetable, RouteSet, RoutingProbabilities};
use crate::error::{Error, Result};
use crate::numeric::{ln_one_minus_exp_neg, one_minus_exp_neg};

/// Relative tolerance on the outer budget equation `sum y = T`. Any budget
/// residual shifts the measure of a constructed timetable by about
/// `mu * residual / T`, so this must sit well below the 1e-9 round-trip
/// tolerance.
const OUTER_TOLERANCE: f64 = 5e-13;
/// Relative tolerance on the inner stationarity equation `f'(y) = mu`.
const INNER_TOLERANCE: f64 = 1e-14;
/// Derivative spread above which an allocation is rejected as non-stationary.
const STATIONARITY_TOLERANCE: f64 = 1e-6;

/// Solver output: optimal jumps, multiplier, measure and induced routing.
#[derive(Debug, Clone, PartialEq)]
pub struct LogitAllocation {
    spacing: Vec<f64>,
    multiplier: f64,
    measure: f64,
    probabilities: RoutingProbabilities,
}

impl LogitAllocation {
    /// Optimal jump allocated to each route (the y variables), in minutes.
    /// All strictly positive.
    pub fn spacing(&self) -> &[f64] {
        &self.spacing
    }

    /// Lagrange multiplier: common value of `f'(y_i)` at the optimum.
    pub fn multiplier(&self) -> f64 {
        self.multiplier
    }

    /// Optimal line plan measure, in minutes.
    pub fn measure(&self) -> f64 {
        self.measure
    }

    /// Probability that a random traveler uses each route (spacing / period).
    pub fn probabilities(&self) -> &RoutingProbabilities {
        &self.probabilities
    }
}

/// Observed measure at a route's departure, as a function of its jump:
/// `tau(y) = l + (1/beta) log((1 - e^(-beta y)) / (1 - e^(-beta T)))`.
pub fn tau_of_y(y: f64, duration: f64, period: f64, beta: Beta) -> Result<f64> {
    if !period.is_finite() || period <= 0.0 {
        return Err(Error::InvalidPeriod(period));
    }
    if y <= 0.0 || y.is_nan() {
        return Err(Error::NonPositiveSpacing(y));
    }
    Ok(tau_unchecked(y, duration, period, beta.value()))
}

fn tau_unchecked(y: f64, duration: f64, period: f64, beta: f64) -> f64 {
    duration + (ln_one_minus_exp_neg(beta * y) - ln_one_minus_exp_neg(beta * period)) / beta
}

/// Objective term `f(y) = y^2/2 + y*tau(y)` and its derivative
/// `f'(y) = tau(y) + y / (1 - e^(-beta y))`.
///
/// At `y = 0` the removable singularity of `f` is 0 and the derivative
/// diverges to negative infinity.
pub fn f_and_fprime(y: f64, duration: f64, period: f64, beta: Beta) -> Result<(f64, f64)> {
    if y < 0.0 {
        return Err(Error::NegativeSpacing(y));
    }
    if y == 0.0 {
        return Ok((0.0, f64::NEG_INFINITY));
    }
    let b = beta.value();
    let tau = tau_unchecked(y, duration, period, b);
    let value = 0.5 * y * y + y * tau;
    let derivative = tau + y / one_minus_exp_neg(b * y);
    Ok((value, derivative))
}

fn fprime(y: f64, duration: f64, period: f64, beta: f64) -> f64 {
    tau_unchecked(y, duration, period, beta) + y / one_minus_exp_neg(beta * y)
}

/// Inverts `f'` by bisection: returns the `y > 0` with `f'(y) = mu`.
pub fn g_inverse(mu: f64, duration: f64, period: f64, beta: Beta) -> f64 {
    let b = beta.value();
    let tolerance = INNER_TOLERANCE * mu.abs().max(1.0);

    // f' is increasing with range all of R; halve the lower end and double
    // the upper end until the root is bracketed.
    let mut lo = period;
    while fprime(lo, duration, period, b) > mu {
        lo *= 0.5;
        if lo < f64::MIN_POSITIVE {
            return lo.max(f64::MIN_POSITIVE);
        }
    }
    let mut hi = period;
    while fprime(hi, duration, period, b) < mu {
        hi *= 2.0;
    }

    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let value = fprime(mid, duration, period, b);
        if (value - mu).abs() <= tolerance {
            return mid;
        }
        if value < mu {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Solves the jump allocation problem: minimize `(1/T) sum f_i(y_i)` subject
/// to `sum y = T`, `y >= 0`. Convexity guarantees global optimality.
pub fn solve_logit_allocation(
    routes: &RouteSet,
    period: f64,
    beta: Beta,
) -> Result<LogitAllocation> {
    if !period.is_finite() || period <= 0.0 {
        return Err(Error::InvalidPeriod(period));
    }
    let b = beta.value();
    let n = routes.len();
    let durations = routes.durations();
    let even = period / n as f64;

    // The route with the smallest (largest) duration has the smallest
    // (largest) derivative at the even split, which brackets the optimal
    // multiplier; expand geometrically as a safeguard.
    let mut mu_lo = durations
        .iter()
        .map(|&l| fprime(even, l, period, b))
        .fold(f64::INFINITY, f64::min);
    let mut mu_hi = durations
        .iter()
        .map(|&l| fprime(even, l, period, b))
        .fold(f64::NEG_INFINITY, f64::max);

    let total_spacing = |mu: f64| -> f64 {
        durations
            .iter()
            .map(|&l| g_inverse(mu, l, period, beta))
            .sum()
    };

    let mut step = (mu_hi - mu_lo).max(1.0);
    while total_spacing(mu_lo) > period {
        mu_lo -= step;
        step *= 2.0;
    }
    step = (mu_hi - mu_lo).max(1.0);
    while total_spacing(mu_hi) < period {
        mu_hi += step;
        step *= 2.0;
    }

    let tolerance = OUTER_TOLERANCE * period;
    let mut multiplier = 0.5 * (mu_lo + mu_hi);
    for _ in 0..200 {
        multiplier = 0.5 * (mu_lo + mu_hi);
        let total = total_spacing(multiplier);
        if (total - period).abs() <= tolerance {
            break;
        }
        if total < period {
            mu_lo = multiplier;
        } else {
            mu_hi = multiplier;
        }
    }

    let spacing: Vec<f64> = durations
        .iter()
        .map(|&l| g_inverse(multiplier, l, period, beta))
        .collect();
    let measure = spacing
        .iter()
        .zip(durations)
        .map(|(&y, &l)| f_and_fprime(y, l, period, beta).expect("y > 0").0)
        .sum::<f64>()
        / period;
    let total: f64 = spacing.iter().sum();
    let probabilities = RoutingProbabilities::new(spacing.iter().map(|&y| y / total).collect())?;

    Ok(LogitAllocation {
        spacing,
        multiplier,
        measure,
        probabilities,
    })
}

/// Best achievable timetable measure over all departure times.
pub fn logit_lineplan_measure(routes: &RouteSet, period: f64, beta: Beta) -> Result<f64> {
    Ok(solve_logit_allocation(routes, period, beta)?.measure())
}

/// Builds an optimal timetable from an allocation along the given route
/// order, first route departing at 0.
///
/// Refuses allocations whose derivative values are spread wider than the
/// stationarity tolerance, since the gap formula is only valid at an optimum.
pub fn construct_logit_timetable(
    routes: &RouteSet,
    period: f64,
    beta: Beta,
    allocation: &LogitAllocation,
    order: &[usize],
) -> Result<PeriodicTimetable> {
    if !period.is_finite() || period <= 0.0 {
        return Err(Error::InvalidPeriod(period));
    }
    let n = routes.len();
    if order.len() != n {
        return Err(Error::InvalidOrder { expected: n });
    }
    let mut seen = vec![false; n];
    for &route in order {
        if route >= n || seen[route] {
            return Err(Error::InvalidOrder { expected: n });
        }
        seen[route] = true;
    }

    let b = beta.value();
    let derivatives: Vec<f64> = allocation
        .spacing()
        .iter()
        .zip(routes.durations())
        .map(|(&y, &l)| fprime(y, l, period, b))
        .collect();
    let spread = derivatives
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max)
        - derivatives.iter().cloned().fold(f64::INFINITY, f64::min);
    let tolerance = STATIONARITY_TOLERANCE * allocation.multiplier().abs().max(1.0);
    if spread > tolerance || spread.is_nan() {
        return Err(Error::NotStationary { spread, tolerance });
    }

    let tau: Vec<f64> = allocation
        .spacing()
        .iter()
        .zip(routes.durations())
        .map(|(&y, &l)| tau_unchecked(y, l, period, b))
        .collect();

    // delta to the next route: tau_i(y_i) - tau_next(y_next) + y_i.
    let mut departures = vec![0.0; n];
    let mut current = 0.0;
    for window in order.windows(2) {
        let (prev, next) = (window[0], window[1]);
        current += tau[prev] - tau[next] + allocation.spacing()[prev];
        // Guard against rounding pushing the last departure onto the period.
        departures[next] = current.clamp(0.0, period - period * 1e-15);
    }
    departures[order[0]] = 0.0;
    PeriodicTimetable::new(routes.clone(), period, departures)
}
