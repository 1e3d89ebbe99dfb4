//! JSON instance files for the command line interface.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::core::{PeriodicTimetable, RouteSet};
use crate::error::Result;

/// One travel option between the origin and destination.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RouteEntry {
    pub id: String,
    pub duration_min: f64,
}

/// A single origin-destination instance.
///
/// `departures_min` requires `period_min`; logit commands require `beta`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceFile {
    pub routes: Vec<RouteEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period_min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub departures_min: Option<serde_json::Map<String, serde_json::Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub od_weight: Option<f64>,
}

/// Instance-level problems that JSON deserialization cannot catch.
#[derive(Debug, thiserror::Error)]
pub enum InstanceError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("instance has no routes")]
    NoRoutes,
    #[error("duplicate route id `{0}`")]
    DuplicateId(String),
    #[error("route `{id}` has non-finite duration {duration}")]
    BadDuration { id: String, duration: f64 },
    #[error("period_min must be finite and positive, got {0}")]
    BadPeriod(f64),
    #[error("departures_min given without period_min")]
    DeparturesWithoutPeriod,
    #[error("departures_min names unknown route `{0}`")]
    UnknownDeparture(String),
    #[error("departures_min missing route `{0}`")]
    MissingDeparture(String),
    #[error("departure for `{id}` must be a number in [0, {period}), got {value}")]
    BadDeparture {
        id: String,
        value: serde_json::Value,
        period: f64,
    },
    #[error("beta must be finite and positive, got {0}")]
    BadBeta(f64),
    #[error("od_weight must be finite and positive, got {0}")]
    BadWeight(f64),
    #[error("instance has no {0}, and none was given on the command line")]
    MissingField(&'static str),
    #[error(transparent)]
    Domain(#[from] crate::error::Error),
}

impl InstanceFile {
    /// Route durations in file order.
    pub fn durations(&self) -> Vec<f64> {
        self.routes.iter().map(|r| r.duration_min).collect()
    }

    /// Route ids in file order.
    pub fn ids(&self) -> Vec<&str> {
        self.routes.iter().map(|r| r.id.as_str()).collect()
    }

    pub fn route_set(&self) -> Result<RouteSet> {
        RouteSet::new(self.durations())
    }

    /// Builds the timetable described by the file; errors if the file lacks
    /// a period or departures.
    pub fn timetable(&self) -> std::result::Result<PeriodicTimetable, InstanceError> {
        let period = self
            .period_min
            .ok_or(InstanceError::MissingField("period_min"))?;
        let map = self
            .departures_min
            .as_ref()
            .ok_or(InstanceError::MissingField("departures_min"))?;
        let mut departures = Vec::with_capacity(self.routes.len());
        for route in &self.routes {
            let value = map
                .get(&route.id)
                .ok_or_else(|| InstanceError::MissingDeparture(route.id.clone()))?;
            departures.push(value.as_f64().ok_or_else(|| InstanceError::BadDeparture {
                id: route.id.clone(),
                value: value.clone(),
                period,
            })?);
        }
        Ok(PeriodicTimetable::new(
            self.route_set()?,
            period,
            departures,
        )?)
    }
}

/// Parses and validates an instance file, reporting line/column positions on
/// malformed JSON.
pub fn parse_instance(text: &str) -> std::result::Result<InstanceFile, InstanceError> {
    let instance: InstanceFile = serde_json::from_str(text)?;
    if instance.routes.is_empty() {
        return Err(InstanceError::NoRoutes);
    }
    let mut seen = HashSet::new();
    for route in &instance.routes {
        if !seen.insert(route.id.as_str()) {
            return Err(InstanceError::DuplicateId(route.id.clone()));
        }
        if !route.duration_min.is_finite() {
            return Err(InstanceError::BadDuration {
                id: route.id.clone(),
                duration: route.duration_min,
            });
        }
    }
    if let Some(period) = instance.period_min {
        if !period.is_finite() || period <= 0.0 {
            return Err(InstanceError::BadPeriod(period));
        }
    }
    if let Some(map) = &instance.departures_min {
        let period = instance
            .period_min
            .ok_or(InstanceError::DeparturesWithoutPeriod)?;
        for (id, value) in map {
            if !seen.contains(id.as_str()) {
                return Err(InstanceError::UnknownDeparture(id.clone()));
            }
            let theta = value.as_f64();
            if !matches!(theta, Some(t) if t.is_finite() && (0.0..period).contains(&t)) {
                return Err(InstanceError::BadDeparture {
                    id: id.clone(),
                    value: value.clone(),
                    period,
                });
            }
        }
        for route in &instance.routes {
            if !map.contains_key(&route.id) {
                return Err(InstanceError::MissingDeparture(route.id.clone()));
            }
        }
    }
    if let Some(beta) = instance.beta {
        if !beta.is_finite() || beta <= 0.0 {
            return Err(InstanceError::BadBeta(beta));
        }
    }
    if let Some(w) = instance.od_weight {
        if !w.is_finite() || w <= 0.0 {
            return Err(InstanceError::BadWeight(w));
        }
    }
    Ok(instance)
}
