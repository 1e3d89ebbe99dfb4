//! Line plan measure under shortest path routing with travel time
//! evaluation.
//!
//! Minimizing the timetable measure over all departure times reduces to a
//! continuous quadratic resource allocation problem over the inter-departure
//! gaps, solved exactly by a breakpoint sweep over the sorted durations
//! (O(n log n) for unsorted data).

use crate::core::{mod_period_unchecked, PeriodicTimetable, RouteSet, RoutingProbabilities};
use crate::error::{Error, Result};
use crate::timetable::{representation, BaseMeasure};

/// Solver output: optimal gaps, multiplier, measure and induced routing.
#[derive(Debug, Clone, PartialEq)]
pub struct SpAllocation {
    spacing: Vec<f64>,
    multiplier: f64,
    measure: f64,
    probabilities: RoutingProbabilities,
}

impl SpAllocation {
    /// Optimal gap allocated to each route (the x variables), in minutes.
    pub fn spacing(&self) -> &[f64] {
        &self.spacing
    }

    /// Lagrange multiplier; equals duration plus worst-case waiting time for
    /// every route that is used.
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

fn validate_period(period: f64) -> Result<()> {
    if !period.is_finite() || period <= 0.0 {
        return Err(Error::InvalidPeriod(period));
    }
    Ok(())
}

/// Solves the gap allocation problem: minimize `(1/T) sum(x^2/2 + x*l)`
/// subject to `sum x = T`, `x >= 0`.
pub fn solve_sp_allocation(routes: &RouteSet, period: f64) -> Result<SpAllocation> {
    validate_period(period)?;
    let n = routes.len();
    let mut sorted: Vec<f64> = routes.durations().to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());

    // Sweep mu over the sorted breakpoints; sum([mu - l]+) is piecewise
    // linear with slope k when k routes are active.
    let mut prefix = 0.0;
    let mut multiplier = None;
    for k in 1..n {
        prefix += sorted[k - 1];
        let supply_at_breakpoint = k as f64 * sorted[k] - prefix;
        if supply_at_breakpoint >= period {
            multiplier = Some((period + prefix) / k as f64);
            break;
        }
    }
    let multiplier = multiplier.unwrap_or_else(|| {
        // All routes active: extrapolate past the largest breakpoint.
        let total: f64 = sorted.iter().sum();
        (period + total) / n as f64
    });

    let spacing: Vec<f64> = routes
        .durations()
        .iter()
        .map(|&l| (multiplier - l).max(0.0))
        .collect();
    let measure = spacing
        .iter()
        .zip(routes.durations())
        .map(|(&x, &l)| 0.5 * x * x + x * l)
        .sum::<f64>()
        / period;
    let total: f64 = spacing.iter().sum();
    let probabilities = RoutingProbabilities::new(spacing.iter().map(|&x| x / total).collect())?;

    Ok(SpAllocation {
        spacing,
        multiplier,
        measure,
        probabilities,
    })
}

/// Best achievable timetable measure over all departure times.
pub fn sp_lineplan_measure(routes: &RouteSet, period: f64) -> Result<f64> {
    Ok(solve_sp_allocation(routes, period)?.measure())
}

fn validate_order(order: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if order.len() != n {
        return Err(Error::InvalidOrder { expected: n });
    }
    for &route in order {
        if route >= n || seen[route] {
            return Err(Error::InvalidOrder { expected: n });
        }
        seen[route] = true;
    }
    Ok(())
}

/// Builds an optimal timetable from an allocation by accumulating the gaps
/// along the given route order, first route departing at 0.
pub fn construct_sp_timetable(
    routes: &RouteSet,
    period: f64,
    allocation: &SpAllocation,
    order: &[usize],
) -> Result<PeriodicTimetable> {
    validate_period(period)?;
    validate_order(order, routes.len())?;
    let mut departures = vec![0.0; routes.len()];
    let mut current = 0.0;
    for window in order.windows(2) {
        current = mod_period_unchecked(current + allocation.spacing()[window[1]], period);
        // The gaps sum to the period, so the tail of the sequence wraps back
        // to the first departure; snap rounding residue to an exact
        // co-departure so the tie convention sees it.
        if current < 1e-12 * period || current > period * (1.0 - 1e-12) {
            current = 0.0;
        }
        departures[window[1]] = current;
    }
    departures[order[0]] = 0.0;
    PeriodicTimetable::new(routes.clone(), period, departures)
}

/// Whether every route is either the best option at its own departure
/// (`tau = l`) or departs simultaneously with its predecessor (`delta = 0`),
/// under the shortest path base measure.
///
/// Simultaneous departures may be sequenced in any order, so a route
/// carrying a gap also passes when a co-departing route attains the observed
/// minimum: swapping the two within the tie restores the standard form.
pub fn is_standard(timetable: &PeriodicTimetable) -> bool {
    let repr = representation(timetable, &BaseMeasure::SpTravelTime);
    let durations = timetable.routes().durations();
    let departures = timetable.departures();
    (0..timetable.len()).all(|k| {
        repr.deltas()[k] <= 1e-9
            || (repr.taus()[k] - durations[k]).abs() <= 1e-9
            || departures
                .iter()
                .zip(durations)
                .any(|(&theta, &l)| theta == departures[k] && (l - repr.taus()[k]).abs() <= 1e-9)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::timetable::timetable_measure;
    use approx::assert_abs_diff_eq;

    fn rs(l: &[f64]) -> RouteSet {
        RouteSet::new(l.to_vec()).unwrap()
    }

    #[test]
    fn symmetric_worst_case_instance() {
        let alloc = solve_sp_allocation(&rs(&[30.0, 20.0, 30.0, 20.0]), 60.0).unwrap();
        assert_abs_diff_eq!(alloc.multiplier(), 40.0, epsilon = 1e-9);
        let expected = [10.0, 20.0, 10.0, 20.0];
        for (x, e) in alloc.spacing().iter().zip(&expected) {
            assert_abs_diff_eq!(x, e, epsilon = 1e-9);
        }
    }

    #[test]
    fn fig3_route_set_allocation() {
        let alloc = solve_sp_allocation(&rs(&[20.0, 30.0, 15.0, 10.0]), 60.0).unwrap();
        assert_abs_diff_eq!(alloc.multiplier(), 33.75, epsilon = 1e-9);
        let expected = [13.75, 3.75, 18.75, 23.75];
        for (x, e) in alloc.spacing().iter().zip(&expected) {
            assert_abs_diff_eq!(x, e, epsilon = 1e-9);
        }
        assert_abs_diff_eq!(alloc.measure(), 1465.625 / 60.0, epsilon = 1e-9);
    }

    #[test]
    fn unused_route() {
        let alloc = solve_sp_allocation(&rs(&[0.0, 100.0]), 10.0).unwrap();
        assert_abs_diff_eq!(alloc.multiplier(), 10.0, epsilon = 1e-9);
        assert_abs_diff_eq!(alloc.spacing()[0], 10.0, epsilon = 1e-9);
        assert_abs_diff_eq!(alloc.spacing()[1], 0.0, epsilon = 1e-9);
    }

    #[test]
    fn trivial_measures() {
        assert_abs_diff_eq!(
            sp_lineplan_measure(&rs(&[7.0]), 10.0).unwrap(),
            12.0,
            epsilon = 1e-9
        );
        assert_abs_diff_eq!(
            sp_lineplan_measure(&rs(&[0.0, 0.0]), 1.0).unwrap(),
            0.25,
            epsilon = 1e-9
        );
    }

    #[test]
    fn construction_reproduces_measure_and_is_standard() {
        let routes = rs(&[30.0, 20.0, 30.0, 20.0]);
        let alloc = solve_sp_allocation(&routes, 60.0).unwrap();
        let tt = construct_sp_timetable(&routes, 60.0, &alloc, &[0, 1, 2, 3]).unwrap();
        assert_eq!(tt.departures(), &[0.0, 20.0, 30.0, 50.0]);
        assert_abs_diff_eq!(
            timetable_measure(&tt, &BaseMeasure::SpTravelTime),
            alloc.measure(),
            epsilon = 1e-9
        );
        assert!(is_standard(&tt));

        let reversed = construct_sp_timetable(&routes, 60.0, &alloc, &[3, 2, 1, 0]).unwrap();
        assert_ne!(reversed.departures(), tt.departures());
        assert_abs_diff_eq!(
            timetable_measure(&reversed, &BaseMeasure::SpTravelTime),
            alloc.measure(),
            epsilon = 1e-9
        );
    }

    #[test]
    fn single_route_construction() {
        let routes = rs(&[7.0]);
        let alloc = solve_sp_allocation(&routes, 10.0).unwrap();
        let tt = construct_sp_timetable(&routes, 10.0, &alloc, &[0]).unwrap();
        assert_eq!(tt.departures(), &[0.0]);
        assert!(is_standard(&tt));
    }

    #[test]
    fn fig3_timetable_not_standard() {
        let routes = rs(&[20.0, 30.0, 15.0, 10.0]);
        let tt = PeriodicTimetable::new(routes, 60.0, vec![5.0, 10.0, 20.0, 50.0]).unwrap();
        assert!(!is_standard(&tt));
    }

    #[test]
    fn invalid_order_rejected() {
        let routes = rs(&[1.0, 2.0]);
        let alloc = solve_sp_allocation(&routes, 10.0).unwrap();
        assert!(construct_sp_timetable(&routes, 10.0, &alloc, &[0, 0]).is_err());
        assert!(construct_sp_timetable(&routes, 10.0, &alloc, &[0]).is_err());
        assert!(construct_sp_timetable(&routes, 10.0, &alloc, &[0, 2]).is_err());
    }

    #[test]
    fn simpson_index_reformulation() {
        let routes = rs(&[20.0, 30.0, 15.0, 10.0]);
        let period = 60.0;
        let alloc = solve_sp_allocation(&routes, period).unwrap();
        let p = alloc.probabilities().as_slice();
        let rewritten: f64 = routes
            .durations()
            .iter()
            .zip(p)
            .map(|(&l, &pi)| l * pi)
            .sum::<f64>()
            + 0.5 * period * p.iter().map(|&pi| pi * pi).sum::<f64>();
        assert_abs_diff_eq!(alloc.measure(), rewritten, epsilon = 1e-12);
    }

    #[test]
    fn small_period_limit() {
        let routes = rs(&[20.0, 30.0, 15.0, 10.0]);
        let m = sp_lineplan_measure(&routes, 1e-6).unwrap();
        assert_abs_diff_eq!(m, 10.0, epsilon = 1e-6);
    }
}
