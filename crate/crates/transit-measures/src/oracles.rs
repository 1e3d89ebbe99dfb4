//! Independent, slow, obviously-correct reference computations.
//!
//! Everything here validates the analytic modules at desk scale: midpoint
//! quadrature for the timetable integral, exhaustive grid search for small
//! line plans, seeded Monte Carlo for route shares and the random travel
//! time model.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::core::{Beta, PeriodicTimetable, RouteSet};
use crate::error::{Error, Result};
use crate::routeset::{evaluate, logit_probabilities, measure, EvaluationFunction, RoutingModel};
use crate::timetable::{observed_route_set, timetable_measure, BaseMeasure};

/// Euler-Mascheroni constant, the mean of the standard Gumbel distribution.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Empirical route-use frequencies from a seeded simulation.
#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloReport {
    shares: Vec<f64>,
    std_errors: Vec<f64>,
    samples: usize,
    seed: u64,
    mean_observed_duration: Option<f64>,
    mean_duration_std_error: Option<f64>,
}

impl MonteCarloReport {
    pub fn shares(&self) -> &[f64] {
        &self.shares
    }

    /// Binomial standard error `sqrt(p(1-p)/N)` per route.
    pub fn std_errors(&self) -> &[f64] {
        &self.std_errors
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Mean chosen observed duration; estimates the timetable measure under
    /// shortest path routing. Only reported for that model.
    pub fn mean_observed_duration(&self) -> Option<f64> {
        self.mean_observed_duration
    }

    /// Standard error of [`Self::mean_observed_duration`].
    pub fn mean_duration_std_error(&self) -> Option<f64> {
        self.mean_duration_std_error
    }
}

/// Composite midpoint quadrature of the observed measure over one period.
///
/// The integrand jumps at departures, so the integral is split there and
/// each smooth segment gets its own midpoint grid with sub-intervals of at
/// most `step`. Between departures the integrand is linear (shortest path)
/// or smooth (logit), so the rule is exact or O(step^2) per segment.
pub fn integrate_timetable_measure(
    timetable: &PeriodicTimetable,
    base: &BaseMeasure,
    step: f64,
) -> Result<f64> {
    let period = timetable.period();
    let n = timetable.len();
    if step <= 0.0 || step.is_nan() || step > period / (10.0 * n as f64) {
        return Err(Error::StepTooCoarse {
            step,
            period,
            routes: n,
        });
    }
    let mut knots: Vec<f64> = timetable.departures().to_vec();
    knots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    knots.dedup();
    if knots.first() != Some(&0.0) {
        knots.insert(0, 0.0);
    }
    knots.push(period);

    let mut total = 0.0;
    for segment in knots.windows(2) {
        let (lo, hi) = (segment[0], segment[1]);
        if hi <= lo {
            continue;
        }
        let bins = ((hi - lo) / step).ceil().max(1.0) as usize;
        let width = (hi - lo) / bins as f64;
        for k in 0..bins {
            let t = lo + (k as f64 + 0.5) * width;
            total += width
                * crate::timetable::observed_measure(timetable, t, base)
                    .expect("midpoint in range");
        }
    }
    Ok(total / period)
}

/// Exhaustive grid search over timetables with the first departure fixed at
/// zero (rotation invariance). Returns the best departures and measure.
///
/// Limited to three routes; the grid must divide the period.
pub fn brute_force_lineplan(
    routes: &RouteSet,
    period: f64,
    base: &BaseMeasure,
    grid: f64,
) -> Result<(Vec<f64>, f64)> {
    if routes.len() > 3 {
        return Err(Error::TooManyRoutes(routes.len()));
    }
    if grid <= 0.0 || !grid.is_finite() {
        return Err(Error::InvalidGrid(grid));
    }
    let points = (period / grid).round() as usize;
    if points == 0 || (points as f64 * grid - period).abs() > 1e-9 * period {
        return Err(Error::InvalidGrid(grid));
    }

    let n = routes.len();
    let mut best_theta = vec![0.0; n];
    let mut best_value = f64::INFINITY;
    let mut candidate = vec![0.0; n];
    let outer = if n >= 2 { points } else { 1 };
    let inner = if n >= 3 { points } else { 1 };
    for i in 0..outer {
        if n >= 2 {
            candidate[1] = i as f64 * grid;
        }
        for j in 0..inner {
            if n >= 3 {
                candidate[2] = j as f64 * grid;
            }
            let tt = PeriodicTimetable::new(routes.clone(), period, candidate.clone())?;
            let value = timetable_measure(&tt, base);
            if value < best_value {
                best_value = value;
                best_theta.copy_from_slice(&candidate);
            }
        }
    }
    Ok((best_theta, best_value))
}

/// Simulates travelers arriving uniformly over the period and choosing from
/// the observed route set according to the routing model.
pub fn monte_carlo_shares(
    timetable: &PeriodicTimetable,
    model: &RoutingModel,
    samples: usize,
    seed: u64,
) -> Result<MonteCarloReport> {
    if samples < 10_000 {
        return Err(Error::TooFewSamples {
            minimum: 10_000,
            actual: samples,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = timetable.len();
    let period = timetable.period();
    let mut counts = vec![0u64; n];
    let mut duration_sum = 0.0;
    let mut duration_sum_sq = 0.0;
    let sp_model = matches!(model, RoutingModel::ShortestPath);
    for _ in 0..samples {
        let t = rng.gen::<f64>() * period;
        let observed = observed_route_set(timetable, t).expect("t in range");
        let chosen = match model {
            RoutingModel::Uniform => rng.gen_range(0..n),
            RoutingModel::ShortestPath => {
                let durations = observed.durations();
                let mut best = 0;
                for (i, &d) in durations.iter().enumerate().skip(1) {
                    if d < durations[best] {
                        best = i;
                    }
                }
                best
            }
            RoutingModel::Logit(beta) => {
                let p = logit_probabilities(observed.durations(), beta.value());
                sample_index(&p, rng.gen::<f64>())
            }
        };
        counts[chosen] += 1;
        if sp_model {
            let d = observed.durations()[chosen];
            duration_sum += d;
            duration_sum_sq += d * d;
        }
    }
    let shares: Vec<f64> = counts.iter().map(|&c| c as f64 / samples as f64).collect();
    let std_errors = shares
        .iter()
        .map(|&p| (p * (1.0 - p) / samples as f64).sqrt())
        .collect();
    let mean_duration = duration_sum / samples as f64;
    let duration_variance =
        (duration_sum_sq / samples as f64 - mean_duration * mean_duration).max(0.0);
    Ok(MonteCarloReport {
        shares,
        std_errors,
        samples,
        seed,
        mean_observed_duration: sp_model.then_some(mean_duration),
        mean_duration_std_error: sp_model.then(|| (duration_variance / samples as f64).sqrt()),
    })
}

fn sample_index(probabilities: &[f64], u: f64) -> usize {
    let mut acc = 0.0;
    for (i, &p) in probabilities.iter().enumerate() {
        acc += p;
        if u < acc {
            return i;
        }
    }
    probabilities.len() - 1
}

/// Sampled estimate of the logit perceived travel time measure via the
/// random travel time model.
#[derive(Debug, Clone, PartialEq)]
pub struct GumbelEstimate {
    estimate: f64,
    std_error: f64,
    argmin_shares: Vec<f64>,
    samples: usize,
    seed: u64,
}

impl GumbelEstimate {
    /// Estimate of the logit perceived travel time measure, in minutes.
    pub fn estimate(&self) -> f64 {
        self.estimate
    }

    pub fn std_error(&self) -> f64 {
        self.std_error
    }

    /// How often each route attained the minimal perceived duration; these
    /// converge to the logit probabilities.
    pub fn argmin_shares(&self) -> &[f64] {
        &self.argmin_shares
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Draws perceived durations `l_i - eps_i / beta` with standard Gumbel noise
/// and averages the minimum. With standard Gumbel errors the expectation is
/// the logit measure minus gamma/beta, so that correction is added back.
pub fn gumbel_ptt_estimate(
    routes: &RouteSet,
    beta: Beta,
    samples: usize,
    seed: u64,
) -> Result<GumbelEstimate> {
    if samples < 100_000 {
        return Err(Error::TooFewSamples {
            minimum: 100_000,
            actual: samples,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = beta.value();
    let n = routes.len();
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    let mut counts = vec![0u64; n];
    for _ in 0..samples {
        let mut min = f64::INFINITY;
        let mut argmin = 0;
        for (i, &l) in routes.durations().iter().enumerate() {
            let u: f64 = rng.gen();
            let gumbel = -(-u.ln()).ln();
            let perceived = l - gumbel / b;
            if perceived < min {
                min = perceived;
                argmin = i;
            }
        }
        sum += min;
        sum_sq += min * min;
        counts[argmin] += 1;
    }
    let mean = sum / samples as f64;
    let variance = (sum_sq / samples as f64 - mean * mean).max(0.0);
    Ok(GumbelEstimate {
        estimate: mean + EULER_GAMMA / b,
        std_error: (variance / samples as f64).sqrt(),
        argmin_shares: counts.iter().map(|&c| c as f64 / samples as f64).collect(),
        samples,
        seed,
    })
}

/// Samples random points of the probability simplex and returns the minimum
/// of `evaluate(r, p, e) - measure(r, m, e)` over the samples.
///
/// A consistent routing/evaluation pair never goes below -1e-12; a negative
/// gap witnesses inconsistency.
pub fn simplex_consistency_probe(
    routes: &RouteSet,
    evaluation: &EvaluationFunction,
    model: &RoutingModel,
    trials: usize,
    seed: u64,
) -> Result<f64> {
    if trials < 1_000 {
        return Err(Error::TooFewSamples {
            minimum: 1_000,
            actual: trials,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let reference = measure(routes, model, evaluation);
    let n = routes.len();
    let mut min_gap = f64::INFINITY;
    for _ in 0..trials {
        // Symmetric Dirichlet(1) via normalized exponentials.
        let mut p: Vec<f64> = (0..n).map(|_| -rng.gen::<f64>().ln()).collect();
        let total: f64 = p.iter().sum();
        for v in &mut p {
            *v /= total;
        }
        let point = crate::core::RoutingProbabilities::new(p)
            .unwrap_or_else(|_| crate::routeset::routing(routes, &RoutingModel::Uniform));
        let gap = evaluate(routes, &point, evaluation) - reference;
        min_gap = min_gap.min(gap);
    }
    Ok(min_gap)
}
