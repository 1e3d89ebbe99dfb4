//! Acceptance gate: one test per criterion, each printing a PASS line on
//! success (a failed assertion marks the criterion FAIL).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use transit_measures::{
    construct_logit_timetable, construct_sp_timetable, is_standard, measure, measure_closed_form,
    observed_measure, representation, routing, solve_logit_allocation, solve_sp_allocation,
    timetable_measure, BaseMeasure, Beta, DominanceResult, EvaluationFunction, PeriodicTimetable,
    RouteSet, RoutingModel,
};
use transit_measures::{dominance, oracles};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_routes(rng: &mut ChaCha8Rng, n_max: usize) -> RouteSet {
    let n = rng.gen_range(1..=n_max);
    RouteSet::new((0..n).map(|_| rng.gen_range(0.0..60.0)).collect()).unwrap()
}

fn random_beta(rng: &mut ChaCha8Rng) -> Beta {
    Beta::new(rng.gen_range(0.05..1.0)).unwrap()
}

fn fig3() -> PeriodicTimetable {
    let routes = RouteSet::new(vec![20.0, 30.0, 15.0, 10.0]).unwrap();
    PeriodicTimetable::new(routes, 60.0, vec![5.0, 10.0, 20.0, 50.0]).unwrap()
}

#[test]
fn criterion_01_closed_forms_match_generic_measures() {
    let mut rng = rng(101);
    for _ in 0..1000 {
        let routes = random_routes(&mut rng, 8);
        let beta = random_beta(&mut rng);
        let models = [
            RoutingModel::Uniform,
            RoutingModel::ShortestPath,
            RoutingModel::Logit(beta),
        ];
        let evals = [
            EvaluationFunction::Dispersion,
            EvaluationFunction::TravelTime,
            EvaluationFunction::PerceivedTravelTime(beta),
        ];
        for model in &models {
            for eval in &evals {
                let generic = measure(&routes, model, eval);
                let closed = measure_closed_form(&routes, model, eval);
                assert!(
                    (generic - closed).abs() <= 1e-10,
                    "cell ({model:?}, {eval:?}) on {:?}: {generic} vs {closed}",
                    routes.durations()
                );
            }
        }
    }
    println!("PASS criterion 1: nine closed forms match generic evaluation on 1000 instances");
}

#[test]
fn criterion_02_four_route_example_reproduction() {
    let tt = fig3();
    let sp = BaseMeasure::SpTravelTime;
    assert_eq!(observed_measure(&tt, 5.0, &sp).unwrap(), 20.0);
    assert_eq!(observed_measure(&tt, 55.0, &sp).unwrap(), 30.0);
    let closed = timetable_measure(&tt, &sp);
    assert!((closed - 25.0).abs() <= 1e-9);
    let quad = oracles::integrate_timetable_measure(&tt, &sp, 60.0 * 1e-4).unwrap();
    assert!((quad - closed).abs() <= 1e-3);
    println!(
        "PASS criterion 2: observed measures 20/30, timetable measure 25.0, quadrature agrees"
    );
}

#[test]
fn criterion_03_gap_jump_duality() {
    let mut rng = rng(103);
    for _ in 0..1000 {
        let routes = random_routes(&mut rng, 8);
        let period = rng.gen_range(10.0..120.0);
        let departures = (0..routes.len())
            .map(|_| rng.gen_range(0.0..period))
            .collect();
        let tt = PeriodicTimetable::new(routes, period, departures).unwrap();
        let bases = [
            BaseMeasure::SpTravelTime,
            BaseMeasure::LogitPerceived(random_beta(&mut rng)),
        ];
        for base in &bases {
            let repr = representation(&tt, base);
            assert!((repr.measure_delta_form() - repr.measure_jump_form()).abs() <= 1e-9);
            assert!((repr.deltas().iter().sum::<f64>() - period).abs() <= 1e-9);
            assert!((repr.jumps().iter().sum::<f64>() - period).abs() <= 1e-9);
            assert!(repr.jumps().iter().all(|&d| d >= -1e-9));
        }
    }
    println!("PASS criterion 3: gap and jump forms agree on 1000 random timetables");
}

#[test]
fn criterion_04_sp_lineplan_exact_values_and_grid_search() {
    let worst =
        solve_sp_allocation(&RouteSet::new(vec![30.0, 20.0, 30.0, 20.0]).unwrap(), 60.0).unwrap();
    assert!((worst.multiplier() - 40.0).abs() <= 1e-9);

    let alloc =
        solve_sp_allocation(&RouteSet::new(vec![20.0, 30.0, 15.0, 10.0]).unwrap(), 60.0).unwrap();
    assert!((alloc.multiplier() - 33.75).abs() <= 1e-9);
    for (x, e) in alloc.spacing().iter().zip([13.75, 3.75, 18.75, 23.75]) {
        assert!((x - e).abs() <= 1e-9);
    }
    assert!((alloc.measure() - 1465.625 / 60.0).abs() <= 1e-9);

    let instances: [(&[f64], f64); 5] = [
        (&[20.0, 30.0, 15.0], 60.0),
        (&[10.0, 10.0, 50.0], 60.0),
        (&[5.0, 40.0, 20.0], 60.0),
        (&[0.0, 3.0, 7.0], 10.0),
        (&[2.0, 2.0, 2.0], 10.0),
    ];
    for (durations, period) in instances {
        let routes = RouteSet::new(durations.to_vec()).unwrap();
        let solver = solve_sp_allocation(&routes, period).unwrap().measure();
        let (_, brute) =
            oracles::brute_force_lineplan(&routes, period, &BaseMeasure::SpTravelTime, 0.05)
                .unwrap();
        assert!(
            brute >= solver - 1e-9,
            "grid search undercuts solver on {durations:?}: {brute} < {solver}"
        );
        assert!(
            brute <= solver + 0.05,
            "grid search misses solver on {durations:?}: {brute} > {solver}"
        );
    }
    println!("PASS criterion 4: exact multipliers 40 and 33.75; grid search brackets the optimum");
}

#[test]
fn criterion_05_standard_form_and_monte_carlo_shares() {
    let mut rng = rng(105);
    for _ in 0..50 {
        let routes = random_routes(&mut rng, 6);
        let period = rng.gen_range(10.0..120.0);
        let alloc = solve_sp_allocation(&routes, period).unwrap();
        let mut order: Vec<usize> = (0..routes.len()).collect();
        for i in (1..order.len()).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        let tt = construct_sp_timetable(&routes, period, &alloc, &order).unwrap();
        assert!(
            is_standard(&tt),
            "non-standard construction for {:?}",
            routes.durations()
        );
    }

    let routes = RouteSet::new(vec![30.0, 20.0, 30.0, 20.0]).unwrap();
    let alloc = solve_sp_allocation(&routes, 60.0).unwrap();
    let tt = construct_sp_timetable(&routes, 60.0, &alloc, &[0, 1, 2, 3]).unwrap();
    let report =
        oracles::monte_carlo_shares(&tt, &RoutingModel::ShortestPath, 1_000_000, 105).unwrap();
    for ((share, sigma), p) in report
        .shares()
        .iter()
        .zip(report.std_errors())
        .zip(alloc.probabilities().as_slice())
    {
        assert!(
            (share - p).abs() <= 3.0 * sigma.max(1e-6),
            "share {share} vs probability {p}"
        );
    }
    println!("PASS criterion 5: constructions are standard; million-sample shares match x/T");
}

#[test]
fn criterion_06_logit_lineplan_values_and_nonconvexity() {
    let beta = Beta::new(20.0).unwrap();
    let routes = RouteSet::new(vec![0.0, 0.0]).unwrap();
    let alloc = solve_logit_allocation(&routes, 1.0, beta).unwrap();
    assert!((alloc.spacing()[0] - 0.5).abs() <= 1e-8);
    assert!((alloc.spacing()[1] - 0.5).abs() <= 1e-8);
    assert!((alloc.measure() - 0.2499977).abs() <= 1e-6);

    // Parametrize the two-route timetable by the gap before route 1 and look
    // for a negative second difference of the measure.
    let base = BaseMeasure::LogitPerceived(beta);
    let h = 1e-3;
    let values: Vec<f64> = (1..1000)
        .map(|k| {
            let delta1 = k as f64 * h;
            let tt = PeriodicTimetable::new(routes.clone(), 1.0, vec![0.0, 1.0 - delta1]).unwrap();
            timetable_measure(&tt, &base)
        })
        .collect();
    let violation = values.windows(3).any(|w| w[0] + w[2] - 2.0 * w[1] < -1e-12);
    assert!(violation, "no convexity violation found on the grid");
    println!("PASS criterion 6: symmetric optimum (0.5, 0.5); gap parametrization is non-convex");
}

#[test]
fn criterion_07_logit_construction_round_trip() {
    let mut rng = rng(107);
    for _ in 0..100 {
        let routes = random_routes(&mut rng, 6);
        let period = rng.gen_range(10.0..120.0);
        let beta = random_beta(&mut rng);
        let alloc = solve_logit_allocation(&routes, period, beta).unwrap();
        let order: Vec<usize> = (0..routes.len()).collect();
        let tt = construct_logit_timetable(&routes, period, beta, &alloc, &order).unwrap();
        let repr = representation(&tt, &BaseMeasure::LogitPerceived(beta));
        for (jump, y) in repr.jumps().iter().zip(alloc.spacing()) {
            assert!((jump - y).abs() <= 1e-7, "jump {jump} vs spacing {y}");
        }
        let value = timetable_measure(&tt, &BaseMeasure::LogitPerceived(beta));
        assert!((value - alloc.measure()).abs() <= 1e-7);
        assert!(repr.deltas().iter().all(|&d| d > 0.0));
    }
    println!("PASS criterion 7: logit constructions reproduce jumps, measure and positive gaps");
}

#[test]
fn criterion_08_limit_behavior() {
    let mut rng = rng(108);
    for _ in 0..20 {
        let routes = random_routes(&mut rng, 5);
        let period = rng.gen_range(10.0..120.0);

        let sharp = Beta::new(1e3).unwrap();
        let logit = solve_logit_allocation(&routes, period, sharp)
            .unwrap()
            .measure();
        let sp = solve_sp_allocation(&routes, period).unwrap().measure();
        assert!((logit - sp).abs() <= 1e-3, "beta=1e3: {logit} vs {sp}");

        let beta = random_beta(&mut rng);
        let tiny = 1e-6;
        let sp_limit = solve_sp_allocation(&routes, tiny).unwrap().measure();
        let sp_target = measure_closed_form(
            &routes,
            &RoutingModel::ShortestPath,
            &EvaluationFunction::TravelTime,
        );
        assert!((sp_limit - sp_target).abs() <= 1e-6);

        let logit_limit = solve_logit_allocation(&routes, tiny, beta)
            .unwrap()
            .measure();
        let logit_target = measure_closed_form(
            &routes,
            &RoutingModel::Logit(beta),
            &EvaluationFunction::PerceivedTravelTime(beta),
        );
        assert!((logit_limit - logit_target).abs() <= 1e-6);
    }
    println!("PASS criterion 8: beta and period limits recover the sp and route set measures");
}

#[test]
fn criterion_09_order_invariance() {
    let mut rng = rng(109);
    for _ in 0..100 {
        let routes = random_routes(&mut rng, 6);
        let period = rng.gen_range(10.0..120.0);
        let beta = random_beta(&mut rng);
        let sp = solve_sp_allocation(&routes, period).unwrap();
        let logit = solve_logit_allocation(&routes, period, beta).unwrap();
        for _ in 0..10 {
            let mut order: Vec<usize> = (0..routes.len()).collect();
            for i in (1..order.len()).rev() {
                order.swap(i, rng.gen_range(0..=i));
            }
            let tt = construct_sp_timetable(&routes, period, &sp, &order).unwrap();
            let value = timetable_measure(&tt, &BaseMeasure::SpTravelTime);
            assert!((value - sp.measure()).abs() <= 1e-9);

            let tt = construct_logit_timetable(&routes, period, beta, &logit, &order).unwrap();
            let value = timetable_measure(&tt, &BaseMeasure::LogitPerceived(beta));
            assert!((value - logit.measure()).abs() <= 1e-9);
        }
    }
    println!("PASS criterion 9: constructed measures are order invariant to 1e-9");
}

#[test]
fn criterion_10_monotonicity_and_consistency() {
    let mut rng = rng(110);
    for _ in 0..1000 {
        // Build a pair where `better` dominates `worse`: same routes with
        // durations decreased, plus optional extra routes.
        let n = rng.gen_range(1..=5);
        let worse_durations: Vec<f64> = (0..n).map(|_| rng.gen_range(5.0..60.0)).collect();
        let mut better_durations: Vec<f64> = worse_durations
            .iter()
            .map(|&l| l - rng.gen_range(0.0..l))
            .collect();
        for _ in 0..rng.gen_range(0..=3) {
            better_durations.push(rng.gen_range(0.0..60.0));
        }
        let worse = RouteSet::new(worse_durations).unwrap();
        let better = RouteSet::new(better_durations).unwrap();
        assert_ne!(dominance(&better, &worse), DominanceResult::None);

        let beta = random_beta(&mut rng);
        let monotone_cells = [
            (RoutingModel::ShortestPath, EvaluationFunction::TravelTime),
            (
                RoutingModel::ShortestPath,
                EvaluationFunction::PerceivedTravelTime(beta),
            ),
            (RoutingModel::ShortestPath, EvaluationFunction::Dispersion),
            (RoutingModel::Uniform, EvaluationFunction::Dispersion),
            (
                RoutingModel::Logit(beta),
                EvaluationFunction::PerceivedTravelTime(beta),
            ),
        ];
        for (model, eval) in &monotone_cells {
            let gap = measure(&better, model, eval) - measure(&worse, model, eval);
            assert!(
                gap <= 1e-12,
                "monotonicity violated in ({model:?}, {eval:?}): {gap}"
            );
        }
    }

    let routes = RouteSet::new(vec![12.0, 19.0, 31.0]).unwrap();
    let beta = Beta::new(0.22).unwrap();
    let consistent = [
        (RoutingModel::Uniform, EvaluationFunction::Dispersion),
        (RoutingModel::ShortestPath, EvaluationFunction::TravelTime),
        (
            RoutingModel::Logit(beta),
            EvaluationFunction::PerceivedTravelTime(beta),
        ),
    ];
    for (model, eval) in &consistent {
        let gap = oracles::simplex_consistency_probe(&routes, eval, model, 2_000, 110).unwrap();
        assert!(
            gap >= -1e-12,
            "consistency violated in ({model:?}, {eval:?}): {gap}"
        );
    }
    let witness = oracles::simplex_consistency_probe(
        &routes,
        &EvaluationFunction::TravelTime,
        &RoutingModel::Logit(beta),
        2_000,
        110,
    )
    .unwrap();
    assert!(
        witness < 0.0,
        "expected an inconsistency witness, gap = {witness}"
    );
    println!("PASS criterion 10: five monotone cells, three consistent pairs, one witness");
}

#[test]
fn criterion_11_random_travel_time_model() {
    let routes = RouteSet::new(vec![12.0, 19.0, 31.0]).unwrap();
    let beta = Beta::new(0.3).unwrap();
    let est = oracles::gumbel_ptt_estimate(&routes, beta, 1_000_000, 111).unwrap();
    let closed = measure_closed_form(
        &routes,
        &RoutingModel::Logit(beta),
        &EvaluationFunction::PerceivedTravelTime(beta),
    );
    assert!(
        (est.estimate() - closed).abs() <= 3.0 * est.std_error(),
        "estimate {} vs closed form {closed} (sigma {})",
        est.estimate(),
        est.std_error()
    );
    let probabilities = routing(&routes, &RoutingModel::Logit(beta));
    for (share, p) in est.argmin_shares().iter().zip(probabilities.as_slice()) {
        let sigma = (p * (1.0 - p) / est.samples() as f64).sqrt();
        assert!((share - p).abs() <= 3.0 * sigma.max(1e-6));
    }
    println!("PASS criterion 11: Gumbel sampling recovers the logit measure and probabilities");
}
