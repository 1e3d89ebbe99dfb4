//! Service quality measures for public transport from the passenger's point
//! of view.
//!
//! The library evaluates a single origin-destination relation at three
//! levels of planning detail:
//!
//! - **Route sets** ([`routeset`]): a finite set of travel options with
//!   scalar durations, scored under uniform, shortest path or logit route
//!   choice by dispersion, travel time or perceived travel time.
//! - **Periodic timetables** ([`timetable`]): departure times on a cyclic
//!   schedule; the measure averages the observed route set measure over one
//!   period and evaluates in closed form via a gap/jump representation.
//! - **Line plans** ([`lineplan_sp`], [`lineplan_logit`]): departure times
//!   left free; exact solvers find the best achievable timetable measure and
//!   construct optimal timetables.
//!
//! Every analytic result is cross-checked by slow, independent computations
//! in [`oracles`]: quadrature, grid search and seeded Monte Carlo.
//!
//! ```
//! use transit_measures::{
//!     measure, EvaluationFunction, RouteSet, RoutingModel,
//! };
//!
//! let routes = RouteSet::new(vec![20.0, 30.0, 15.0, 10.0])?;
//! let tt = measure(
//!     &routes,
//!     &RoutingModel::ShortestPath,
//!     &EvaluationFunction::TravelTime,
//! );
//! assert_eq!(tt, 10.0);
//! # Ok::<(), transit_measures::Error>(())
//! ```

pub mod cli;
pub mod core;
pub mod error;
pub mod instance;
pub mod lineplan_logit;
pub mod lineplan_sp;
mod numeric;
pub mod oracles;
pub mod routeset;
pub mod timetable;

pub use crate::core::{
    mod_period, Beta, OdWeighting, PeriodicTimetable, RouteSet, RoutingProbabilities,
};
pub use crate::error::{Error, Result};
pub use crate::instance::{parse_instance, InstanceFile};
pub use crate::lineplan_logit::{
    construct_logit_timetable, logit_lineplan_measure, solve_logit_allocation, LogitAllocation,
};
pub use crate::lineplan_sp::{
    construct_sp_timetable, is_standard, solve_sp_allocation, sp_lineplan_measure, SpAllocation,
};
pub use crate::routeset::{
    dominance, evaluate, measure, measure_closed_form, routing, DominanceResult,
    EvaluationFunction, RoutingModel,
};
pub use crate::timetable::{
    departure_order, observed_measure, observed_route_set, representation, timetable_measure,
    BaseMeasure, CyclicOrder, Representation,
};

// Run the guide's code snippets as doc-tests so the book stays in sync with
// the library.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/route-sets.md")]
    pub struct RouteSets;
    #[doc = include_str!("../../../book/src/timetables.md")]
    pub struct Timetables;
    #[doc = include_str!("../../../book/src/line-plans.md")]
    pub struct LinePlans;
    #[doc = include_str!("../../../book/src/verification.md")]
    pub struct Verification;
}
