//! Route set measures: routings, evaluation functions, their nine
//! combinations, and route set dominance.
//!
//! A routing assigns a probability vector to the routes; an evaluation
//! function scores the route set for given probabilities; a measure evaluates
//! at the probabilities the routing produces. Closed forms for all nine
//! measures are available through [`measure_closed_form`].

use crate::core::{Beta, RouteSet, RoutingProbabilities};
use crate::numeric::{log_sum_exp_neg, xlogx};

/// The three route choice models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RoutingModel {
    Uniform,
    ShortestPath,
    Logit(Beta),
}

/// The three evaluation functions (lower is better).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EvaluationFunction {
    Dispersion,
    TravelTime,
    PerceivedTravelTime(Beta),
}

/// Outcome of a dominance comparison between two route sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DominanceResult {
    Strict,
    Weak,
    None,
}

/// Index of the shortest route, ties broken by lowest index.
fn argmin(durations: &[f64]) -> usize {
    let mut best = 0;
    for (i, &l) in durations.iter().enumerate().skip(1) {
        if l < durations[best] {
            best = i;
        }
    }
    best
}

/// Probabilities assigned to the routes by the given routing model.
pub fn routing(routes: &RouteSet, model: &RoutingModel) -> RoutingProbabilities {
    let n = routes.len();
    let probabilities = match model {
        RoutingModel::Uniform => vec![1.0 / n as f64; n],
        RoutingModel::ShortestPath => {
            let mut p = vec![0.0; n];
            p[argmin(routes.durations())] = 1.0;
            p
        }
        RoutingModel::Logit(beta) => logit_probabilities(routes.durations(), beta.value()),
    };
    RoutingProbabilities::new(probabilities).expect("routing produces a valid simplex point")
}

/// Multinomial logit probabilities, shift-stabilized by the minimum duration.
pub(crate) fn logit_probabilities(durations: &[f64], beta: f64) -> Vec<f64> {
    let min = durations.iter().cloned().fold(f64::INFINITY, f64::min);
    let weights: Vec<f64> = durations
        .iter()
        .map(|&l| (-beta * (l - min)).exp())
        .collect();
    let total: f64 = weights.iter().sum();
    weights.into_iter().map(|w| w / total).collect()
}

/// Scores the route set for the given probabilities.
pub fn evaluate(
    routes: &RouteSet,
    probabilities: &RoutingProbabilities,
    evaluation: &EvaluationFunction,
) -> f64 {
    let p = probabilities.as_slice();
    let l = routes.durations();
    let travel_time = || l.iter().zip(p).map(|(&li, &pi)| li * pi).sum::<f64>();
    let dispersion = || p.iter().map(|&pi| xlogx(pi)).sum::<f64>();
    match evaluation {
        EvaluationFunction::Dispersion => dispersion(),
        EvaluationFunction::TravelTime => travel_time(),
        EvaluationFunction::PerceivedTravelTime(beta) => {
            travel_time() + dispersion() / beta.value()
        }
    }
}

/// The evaluation function applied at the routing's probabilities.
pub fn measure(routes: &RouteSet, model: &RoutingModel, evaluation: &EvaluationFunction) -> f64 {
    evaluate(routes, &routing(routes, model), evaluation)
}

/// Closed-form value of the measure for each routing/evaluation pair.
///
/// This is an algebraically independent route from [`measure`]; the two agree
/// to 1e-10 on all nine combinations.
pub fn measure_closed_form(
    routes: &RouteSet,
    model: &RoutingModel,
    evaluation: &EvaluationFunction,
) -> f64 {
    let n = routes.len() as f64;
    let l = routes.durations();
    match (model, evaluation) {
        (RoutingModel::Uniform, EvaluationFunction::Dispersion) => -n.ln(),
        (RoutingModel::Uniform, EvaluationFunction::TravelTime) => routes.mean_duration(),
        (RoutingModel::Uniform, EvaluationFunction::PerceivedTravelTime(beta)) => {
            routes.mean_duration() - n.ln() / beta.value()
        }
        (RoutingModel::ShortestPath, EvaluationFunction::Dispersion) => 0.0,
        (RoutingModel::ShortestPath, EvaluationFunction::TravelTime)
        | (RoutingModel::ShortestPath, EvaluationFunction::PerceivedTravelTime(_)) => {
            routes.min_duration()
        }
        (RoutingModel::Logit(beta), EvaluationFunction::Dispersion) => {
            let b = beta.value();
            let p = logit_probabilities(l, b);
            let expected: f64 = l.iter().zip(&p).map(|(&li, &pi)| li * pi).sum();
            -b * expected - log_sum_exp_neg(b, l)
        }
        (RoutingModel::Logit(beta), EvaluationFunction::TravelTime) => {
            let p = logit_probabilities(l, beta.value());
            l.iter().zip(&p).map(|(&li, &pi)| li * pi).sum()
        }
        (RoutingModel::Logit(_), EvaluationFunction::PerceivedTravelTime(beta)) => {
            -log_sum_exp_neg(beta.value(), l) / beta.value()
        }
    }
}

/// Whether `routes` dominates `other`: every route of `other` can be matched
/// injectively to a route of `routes` that is at least as short.
///
/// Strictness follows the convention that proper supersets count as strict,
/// as does any matching with a strictly shorter pair.
pub fn dominance(routes: &RouteSet, other: &RouteSet) -> DominanceResult {
    if routes.len() < other.len() {
        return DominanceResult::None;
    }
    let mut a: Vec<f64> = routes.durations().to_vec();
    let mut b: Vec<f64> = other.durations().to_vec();
    a.sort_by(|x, y| x.partial_cmp(y).unwrap());
    b.sort_by(|x, y| x.partial_cmp(y).unwrap());
    // Matching the k-th smallest routes pairwise is optimal: if any valid
    // matching exists, this one is valid too.
    let mut strict_pair = false;
    for (ai, bi) in a.iter().zip(&b) {
        if ai > bi {
            return DominanceResult::None;
        }
        if ai < bi {
            strict_pair = true;
        }
    }
    if strict_pair || routes.len() > other.len() {
        DominanceResult::Strict
    } else {
        DominanceResult::Weak
    }
}
