//! Command line interface: parse an instance file, run a computation, print
//! text for humans or CSV for plots.
//!
//! Exit codes: 0 success, 1 validation error, 2 verification failure.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::core::{Beta, RouteSet};
use crate::instance::{parse_instance, InstanceFile};
use crate::lineplan_logit::{construct_logit_timetable, solve_logit_allocation};
use crate::lineplan_sp::{construct_sp_timetable, is_standard, solve_sp_allocation};
use crate::oracles::{
    brute_force_lineplan, gumbel_ptt_estimate, integrate_timetable_measure, monte_carlo_shares,
    simplex_consistency_probe,
};
use crate::routeset::{measure, measure_closed_form, EvaluationFunction, RoutingModel};
use crate::timetable::{representation, timetable_measure, BaseMeasure};

#[derive(Parser)]
#[command(
    name = "transit-measure",
    version,
    about = "Service quality measures for route sets, timetables and line plans"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a route set measure.
    Routeset(RoutesetArgs),
    /// Evaluate a periodic timetable and print its gap/jump representation.
    Timetable(TimetableArgs),
    /// Solve for the best achievable timetable measure.
    Lineplan(LineplanArgs),
    /// Build an optimal timetable from the line plan solution.
    Construct(ConstructArgs),
    /// Evaluate a measure over a parameter range and emit CSV.
    Sweep(SweepArgs),
    /// Run the oracle suite against an instance.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Uniform,
    Sp,
    Logit,
}

#[derive(Clone, Copy, ValueEnum)]
enum EvalArg {
    Disp,
    Tt,
    Ptt,
}

#[derive(Args)]
struct RoutesetArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value = "sp")]
    model: ModelArg,
    #[arg(long, value_enum, default_value = "tt")]
    eval: EvalArg,
    /// Print all nine model/evaluation combinations.
    #[arg(long)]
    all: bool,
    #[arg(long)]
    beta: Option<f64>,
}

#[derive(Args)]
struct TimetableArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value = "sp")]
    model: ModelArg,
    #[arg(long)]
    beta: Option<f64>,
}

#[derive(Args)]
struct LineplanArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value = "sp")]
    model: ModelArg,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    period: Option<f64>,
}

#[derive(Args)]
struct ConstructArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value = "sp")]
    model: ModelArg,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    period: Option<f64>,
    /// Departure order as comma-separated zero-based route indices.
    #[arg(long)]
    order: Option<String>,
}

#[derive(Args)]
struct SweepArgs {
    file: PathBuf,
    /// Parameter to vary: `l<i>` (one-based route index), `beta`, or `period`.
    #[arg(long)]
    param: String,
    /// Range as `lo:hi:step`.
    #[arg(long)]
    range: String,
    /// Measure: `<model>_<eval>` over the nine route set cells, or
    /// `lineplan_sp` / `lineplan_logit`.
    #[arg(long)]
    measure: String,
    /// Write CSV here instead of standard output.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    period: Option<f64>,
}

#[derive(Args)]
struct VerifyArgs {
    file: Option<PathBuf>,
    /// Use the built-in four-route example instead of a file.
    #[arg(long, conflicts_with = "file")]
    builtin: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200_000)]
    samples: usize,
}

/// Everything that ends the run with exit code 1.
#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Instance(#[from] crate::instance::InstanceError),
    #[error("{0}")]
    Domain(#[from] crate::error::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

/// Runs the CLI against explicit arguments and writers; returns the exit
/// code. The binary is a thin wrapper around this.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // Help/version are successful terminations, not errors.
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 1;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    let result = match cli.command {
        Command::Routeset(a) => cmd_routeset(&a, out),
        Command::Timetable(a) => cmd_timetable(&a, out),
        Command::Lineplan(a) => cmd_lineplan(&a, out),
        Command::Construct(a) => cmd_construct(&a, out),
        Command::Sweep(a) => cmd_sweep(&a, out),
        Command::Verify(a) => return cmd_verify(&a, out, err),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn load(path: &PathBuf) -> Result<InstanceFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    Ok(parse_instance(&text)?)
}

fn resolve_beta(flag: Option<f64>, instance: &InstanceFile) -> Result<Beta, CliError> {
    let value = flag
        .or(instance.beta)
        .ok_or_else(|| usage("logit requires --beta or a `beta` field in the instance"))?;
    Ok(Beta::new(value)?)
}

fn resolve_period(flag: Option<f64>, instance: &InstanceFile) -> Result<f64, CliError> {
    flag.or(instance.period_min)
        .ok_or_else(|| usage("this command requires --period or a `period_min` field"))
}

fn routing_model(
    model: ModelArg,
    flag_beta: Option<f64>,
    instance: &InstanceFile,
) -> Result<RoutingModel, CliError> {
    Ok(match model {
        ModelArg::Uniform => RoutingModel::Uniform,
        ModelArg::Sp => RoutingModel::ShortestPath,
        ModelArg::Logit => RoutingModel::Logit(resolve_beta(flag_beta, instance)?),
    })
}

fn base_measure(
    model: ModelArg,
    flag_beta: Option<f64>,
    instance: &InstanceFile,
) -> Result<BaseMeasure, CliError> {
    Ok(match model {
        ModelArg::Sp => BaseMeasure::SpTravelTime,
        ModelArg::Logit => BaseMeasure::LogitPerceived(resolve_beta(flag_beta, instance)?),
        ModelArg::Uniform => return Err(usage("timetable measures support sp or logit only")),
    })
}

fn evaluation(
    eval: EvalArg,
    flag_beta: Option<f64>,
    instance: &InstanceFile,
) -> Result<EvaluationFunction, CliError> {
    Ok(match eval {
        EvalArg::Disp => EvaluationFunction::Dispersion,
        EvalArg::Tt => EvaluationFunction::TravelTime,
        EvalArg::Ptt => EvaluationFunction::PerceivedTravelTime(resolve_beta(flag_beta, instance)?),
    })
}

fn cmd_routeset(args: &RoutesetArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let instance = load(&args.file)?;
    let routes = instance.route_set()?;
    if args.all {
        let beta = resolve_beta(args.beta, &instance)?;
        let models = [
            ("uniform", RoutingModel::Uniform),
            ("sp", RoutingModel::ShortestPath),
            ("logit", RoutingModel::Logit(beta)),
        ];
        let evals = [
            ("disp", EvaluationFunction::Dispersion),
            ("tt", EvaluationFunction::TravelTime),
            ("ptt", EvaluationFunction::PerceivedTravelTime(beta)),
        ];
        writeln!(out, "{:<10}{:>14}{:>14}{:>14}", "", "disp", "tt", "ptt").ok();
        for (mname, model) in &models {
            let mut line = format!("{mname:<10}");
            for (_, eval) in &evals {
                write!(line, "{:>14.6}", measure(&routes, model, eval)).ok();
            }
            writeln!(out, "{line}").ok();
        }
    } else {
        let model = routing_model(args.model, args.beta, &instance)?;
        let eval = evaluation(args.eval, args.beta, &instance)?;
        writeln!(out, "{}", format_value(measure(&routes, &model, &eval))).ok();
    }
    Ok(())
}

fn cmd_timetable(args: &TimetableArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let instance = load(&args.file)?;
    let timetable = instance.timetable()?;
    let base = base_measure(args.model, args.beta, &instance)?;
    let value = timetable_measure(&timetable, &base);
    let repr = representation(&timetable, &base);
    writeln!(out, "measure: {}", format_value(value)).ok();
    writeln!(
        out,
        "{:<10}{:>12}{:>12}{:>12}{:>12}",
        "route", "theta", "delta", "tau", "jump"
    )
    .ok();
    for (k, id) in instance.ids().iter().enumerate() {
        writeln!(
            out,
            "{:<10}{:>12.6}{:>12.6}{:>12.6}{:>12.6}",
            id,
            timetable.departures()[k],
            repr.deltas()[k],
            repr.taus()[k],
            repr.jumps()[k]
        )
        .ok();
    }
    Ok(())
}

fn cmd_lineplan(args: &LineplanArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let instance = load(&args.file)?;
    let routes = instance.route_set()?;
    let period = resolve_period(args.period, &instance)?;
    let (measure, multiplier, spacing, probabilities) = match args.model {
        ModelArg::Sp => {
            let a = solve_sp_allocation(&routes, period)?;
            (
                a.measure(),
                a.multiplier(),
                a.spacing().to_vec(),
                a.probabilities().as_slice().to_vec(),
            )
        }
        ModelArg::Logit => {
            let beta = resolve_beta(args.beta, &instance)?;
            let a = solve_logit_allocation(&routes, period, beta)?;
            (
                a.measure(),
                a.multiplier(),
                a.spacing().to_vec(),
                a.probabilities().as_slice().to_vec(),
            )
        }
        ModelArg::Uniform => return Err(usage("line plans support sp or logit only")),
    };
    writeln!(out, "measure: {}", format_value(measure)).ok();
    writeln!(out, "multiplier: {}", format_value(multiplier)).ok();
    writeln!(out, "{:<10}{:>12}{:>14}", "route", "spacing", "probability").ok();
    for ((id, x), p) in instance.ids().iter().zip(&spacing).zip(&probabilities) {
        writeln!(out, "{:<10}{:>12.6}{:>14.6}", id, x, p).ok();
    }
    Ok(())
}

fn parse_order(text: &str, n: usize) -> Result<Vec<usize>, CliError> {
    let order: Vec<usize> = text
        .split(',')
        .map(|s| s.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| {
            usage(format!(
                "--order must be comma-separated indices, got `{text}`"
            ))
        })?;
    if order.len() != n {
        return Err(usage(format!(
            "--order must list all {n} routes exactly once"
        )));
    }
    Ok(order)
}

fn cmd_construct(args: &ConstructArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let instance = load(&args.file)?;
    let routes = instance.route_set()?;
    let period = resolve_period(args.period, &instance)?;
    let order = match &args.order {
        Some(text) => parse_order(text, routes.len())?,
        None => (0..routes.len()).collect(),
    };
    let (timetable, value) = match args.model {
        ModelArg::Sp => {
            let a = solve_sp_allocation(&routes, period)?;
            (
                construct_sp_timetable(&routes, period, &a, &order)?,
                a.measure(),
            )
        }
        ModelArg::Logit => {
            let beta = resolve_beta(args.beta, &instance)?;
            let a = solve_logit_allocation(&routes, period, beta)?;
            (
                construct_logit_timetable(&routes, period, beta, &a, &order)?,
                a.measure(),
            )
        }
        ModelArg::Uniform => return Err(usage("line plans support sp or logit only")),
    };
    writeln!(out, "measure: {}", format_value(value)).ok();
    writeln!(out, "period: {}", format_value(period)).ok();
    writeln!(out, "{:<10}{:>12}", "route", "departure").ok();
    for (id, theta) in instance.ids().iter().zip(timetable.departures()) {
        writeln!(out, "{:<10}{:>12.6}", id, theta).ok();
    }
    Ok(())
}

fn parse_range(text: &str) -> Result<(f64, f64, f64), CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || {
        usage(format!(
            "--range must be lo:hi:step with lo < hi, step > 0, got `{text}`"
        ))
    };
    if parts.len() != 3 {
        return Err(bad());
    }
    let values: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    let (lo, hi, step) = (values[0], values[1], values[2]);
    if lo >= hi || step <= 0.0 || !lo.is_finite() || !hi.is_finite() || !step.is_finite() {
        return Err(bad());
    }
    Ok((lo, hi, step))
}

enum SweepMeasure {
    Cell(ModelArg, EvalArg),
    LineplanSp,
    LineplanLogit,
}

fn parse_sweep_measure(name: &str) -> Result<SweepMeasure, CliError> {
    let model = |s| match s {
        "uniform" => Some(ModelArg::Uniform),
        "sp" => Some(ModelArg::Sp),
        "logit" => Some(ModelArg::Logit),
        _ => None,
    };
    let eval = |s| match s {
        "disp" => Some(EvalArg::Disp),
        "tt" => Some(EvalArg::Tt),
        "ptt" => Some(EvalArg::Ptt),
        _ => None,
    };
    match name {
        "lineplan_sp" => return Ok(SweepMeasure::LineplanSp),
        "lineplan_logit" => return Ok(SweepMeasure::LineplanLogit),
        _ => {}
    }
    if let Some((m, e)) = name.split_once('_') {
        if let (Some(m), Some(e)) = (model(m), eval(e)) {
            return Ok(SweepMeasure::Cell(m, e));
        }
    }
    Err(usage(format!(
        "unknown measure `{name}`; use <model>_<eval>, lineplan_sp or lineplan_logit"
    )))
}

enum SweepParam {
    Duration(usize),
    Beta,
    Period,
}

fn parse_sweep_param(name: &str, n: usize) -> Result<SweepParam, CliError> {
    match name {
        "beta" => return Ok(SweepParam::Beta),
        "period" => return Ok(SweepParam::Period),
        _ => {}
    }
    if let Some(index) = name.strip_prefix('l').and_then(|s| s.parse::<usize>().ok()) {
        if (1..=n).contains(&index) {
            return Ok(SweepParam::Duration(index - 1));
        }
    }
    Err(usage(format!(
        "unknown parameter `{name}`; use l1..l{n}, beta or period"
    )))
}

fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let instance = load(&args.file)?;
    let param = parse_sweep_param(&args.param, instance.routes.len())?;
    let measure_spec = parse_sweep_measure(&args.measure)?;
    let (lo, hi, step) = parse_range(&args.range)?;

    let base_durations = instance.durations();
    let mut csv = String::from("param,value\n");
    let points = ((hi - lo) / step).round() as usize;
    for k in 0..=points {
        let value = (lo + k as f64 * step).min(hi);
        if value > hi + 1e-9 * step {
            break;
        }
        let mut durations = base_durations.clone();
        let mut beta_flag = args.beta;
        let mut period_flag = args.period;
        match param {
            SweepParam::Duration(i) => durations[i] = value,
            SweepParam::Beta => beta_flag = Some(value),
            SweepParam::Period => period_flag = Some(value),
        }
        let routes = RouteSet::new(durations)?;
        let y = match &measure_spec {
            SweepMeasure::Cell(m, e) => {
                let model = routing_model(*m, beta_flag, &instance)?;
                let eval = evaluation(*e, beta_flag, &instance)?;
                measure(&routes, &model, &eval)
            }
            SweepMeasure::LineplanSp => {
                let period = resolve_period(period_flag, &instance)?;
                solve_sp_allocation(&routes, period)?.measure()
            }
            SweepMeasure::LineplanLogit => {
                let period = resolve_period(period_flag, &instance)?;
                let beta = resolve_beta(beta_flag, &instance)?;
                solve_logit_allocation(&routes, period, beta)?.measure()
            }
        };
        writeln!(csv, "{value},{y}").ok();
    }
    match &args.csv {
        Some(path) => std::fs::write(path, csv).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?,
        None => {
            out.write_all(csv.as_bytes()).ok();
        }
    }
    Ok(())
}

fn format_value(v: f64) -> String {
    // Full precision without trailing zero noise.
    let text = format!("{v}");
    if text.contains('.') || text.contains('e') || !v.is_finite() {
        text
    } else {
        format!("{v}.0")
    }
}

fn builtin_instance() -> InstanceFile {
    parse_instance(
        r#"{
            "routes": [
                {"id": "r1", "duration_min": 20.0},
                {"id": "r2", "duration_min": 30.0},
                {"id": "r3", "duration_min": 15.0},
                {"id": "r4", "duration_min": 10.0}
            ],
            "period_min": 60.0,
            "departures_min": {"r1": 5.0, "r2": 10.0, "r3": 20.0, "r4": 50.0},
            "beta": 0.22
        }"#,
    )
    .expect("builtin instance is valid")
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let instance = if args.builtin {
        builtin_instance()
    } else {
        match &args.file {
            Some(path) => match load(path) {
                Ok(i) => i,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    return 1;
                }
            },
            None => {
                let _ = writeln!(err, "error: verify needs an instance file or --builtin");
                return 1;
            }
        }
    };
    match verify_suite(&instance, args.seed, args.samples, out) {
        Ok(all_passed) => {
            if all_passed {
                0
            } else {
                2
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

/// Oracle checks against one instance. Returns whether every check passed;
/// each check prints one `PASS`/`FAIL` line.
fn verify_suite(
    instance: &InstanceFile,
    seed: u64,
    samples: usize,
    out: &mut dyn Write,
) -> Result<bool, CliError> {
    if samples < 100_000 {
        return Err(usage("--samples must be at least 100000"));
    }
    let routes = instance.route_set()?;
    let beta = instance.beta.map(Beta::new).transpose()?;
    let mut all = true;
    let mut check = |name: &str, passed: bool| {
        all &= passed;
        let verdict = if passed { "PASS" } else { "FAIL" };
        writeln!(out, "{verdict} {name}").ok();
    };

    // Closed forms against the generic evaluation path, all nine cells.
    if let Some(beta) = beta {
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
        let ok = models.iter().all(|m| {
            evals.iter().all(|e| {
                (measure(&routes, m, e) - measure_closed_form(&routes, m, e)).abs() <= 1e-10
            })
        });
        check("closed-form measures match generic evaluation", ok);

        // Consistent pairings never beaten on the simplex; logit routing
        // under plain travel time must be beaten.
        let pairs = [
            (RoutingModel::Uniform, EvaluationFunction::Dispersion),
            (RoutingModel::ShortestPath, EvaluationFunction::TravelTime),
            (
                RoutingModel::Logit(beta),
                EvaluationFunction::PerceivedTravelTime(beta),
            ),
        ];
        let consistent = pairs.iter().all(|(m, e)| {
            simplex_consistency_probe(&routes, e, m, 2_000, seed)
                .map(|gap| gap >= -1e-12)
                .unwrap_or(false)
        });
        check("consistency probes stay nonnegative", consistent);
        if routes.len() > 1 && spread(routes.durations()) > 1e-9 {
            let witness = simplex_consistency_probe(
                &routes,
                &EvaluationFunction::TravelTime,
                &RoutingModel::Logit(beta),
                2_000,
                seed,
            )
            .map(|gap| gap < 0.0)
            .unwrap_or(false);
            check("travel time under logit routing is inconsistent", witness);
        }

        // Random travel time model recovers the logit measure.
        let est = gumbel_ptt_estimate(&routes, beta, samples, seed)?;
        let closed = measure_closed_form(
            &routes,
            &RoutingModel::Logit(beta),
            &EvaluationFunction::PerceivedTravelTime(beta),
        );
        check(
            "random travel time estimate matches logit measure",
            (est.estimate() - closed).abs() <= 3.0 * est.std_error() + 1e-9,
        );
    }

    if let Ok(timetable) = instance.timetable() {
        let mut bases = vec![("sp", BaseMeasure::SpTravelTime)];
        if let Some(beta) = beta {
            bases.push(("logit", BaseMeasure::LogitPerceived(beta)));
        }
        for (name, base) in &bases {
            let closed = timetable_measure(&timetable, base);
            let step = timetable.period() * 1e-4;
            let quad = integrate_timetable_measure(&timetable, base, step)?;
            check(
                &format!("{name} measure matches midpoint quadrature"),
                (closed - quad).abs() <= 1e-3,
            );
            let repr = representation(&timetable, base);
            let dual = (repr.measure_delta_form() - repr.measure_jump_form()).abs() <= 1e-9;
            let sums = (repr.deltas().iter().sum::<f64>() - timetable.period()).abs() <= 1e-9
                && (repr.jumps().iter().sum::<f64>() - timetable.period()).abs() <= 1e-9;
            check(
                &format!("{name} gap and jump representations agree"),
                dual && sums && repr.jumps().iter().all(|&d| d >= -1e-9),
            );
        }
        // The mean chosen duration of simulated travelers estimates the
        // sp timetable measure on any timetable.
        let report = monte_carlo_shares(&timetable, &RoutingModel::ShortestPath, samples, seed)?;
        let closed = timetable_measure(&timetable, &BaseMeasure::SpTravelTime);
        let mean = report.mean_observed_duration().unwrap_or(f64::NAN);
        let sigma = report.mean_duration_std_error().unwrap_or(f64::NAN);
        check(
            "simulated mean sp duration matches timetable measure",
            (mean - closed).abs() <= 3.0 * sigma + 1e-9,
        );
    }

    if let Some(period) = instance.period_min {
        let sp = solve_sp_allocation(&routes, period)?;
        let order: Vec<usize> = (0..routes.len()).collect();
        let constructed = construct_sp_timetable(&routes, period, &sp, &order)?;
        let value = timetable_measure(&constructed, &BaseMeasure::SpTravelTime);
        check(
            "sp construction is standard and reproduces the optimum",
            is_standard(&constructed) && (value - sp.measure()).abs() <= 1e-9,
        );
        // On the optimal timetable, simulated shares match the allocation
        // probabilities.
        let report = monte_carlo_shares(&constructed, &RoutingModel::ShortestPath, samples, seed)?;
        let shares_ok = report
            .shares()
            .iter()
            .zip(report.std_errors())
            .zip(sp.probabilities().as_slice())
            .all(|((share, sigma), p)| (share - p).abs() <= 3.0 * sigma.max(1e-6));
        check(
            "simulated sp shares match allocation probabilities",
            shares_ok,
        );
        if routes.len() <= 3 {
            let (_, brute) =
                brute_force_lineplan(&routes, period, &BaseMeasure::SpTravelTime, period / 600.0)?;
            check(
                "grid search confirms the sp optimum",
                brute >= sp.measure() - 1e-9 && brute <= sp.measure() + period / 600.0,
            );
        }
        if let Some(beta) = beta {
            let logit = solve_logit_allocation(&routes, period, beta)?;
            let constructed = construct_logit_timetable(&routes, period, beta, &logit, &order)?;
            let value = timetable_measure(&constructed, &BaseMeasure::LogitPerceived(beta));
            let repr = representation(&constructed, &BaseMeasure::LogitPerceived(beta));
            let jumps_ok = repr
                .jumps()
                .iter()
                .zip(logit.spacing())
                .all(|(jump, y)| (jump - y).abs() <= 1e-7);
            check(
                "logit construction reproduces the optimum",
                jumps_ok && (value - logit.measure()).abs() <= 1e-7,
            );
        }
    }
    Ok(all)
}

fn spread(values: &[f64]) -> f64 {
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    max - min
}
