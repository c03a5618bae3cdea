//! JSON document form of a metric space.
//!
//! ```json
//! {"labels": ["a", "b"], "distances": [["0", "3/2"], ["3/2", "0"]], "meta": {}}
//! ```
//!
//! Distances are strings holding exact rationals (`"3/2"`) or decimals
//! (`"0.25"`); bare JSON integers are accepted on input. A document may carry
//! `"points"` (Euclidean coordinates) instead of `"distances"`; those are
//! quantized at `"precision"` decimal digits (default 12).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::metric::{rational, FiniteMetricSpace, MetricError};

pub const DEFAULT_PRECISION: u32 = 12;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceDocument {
    pub labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distances: Option<Vec<Vec<Value>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
    #[serde(default)]
    pub meta: BTreeMap<String, String>,
}

impl SpaceDocument {
    pub fn from_space(space: &FiniteMetricSpace) -> Self {
        let n = space.len();
        let distances = (0..n)
            .map(|i| (0..n).map(|j| Value::String(rational::format(space.dist(i, j)))).collect())
            .collect();
        SpaceDocument {
            labels: space.labels().to_vec(),
            distances: Some(distances),
            points: None,
            precision: None,
            meta: space.meta().clone(),
        }
    }

    pub fn into_space(self) -> Result<FiniteMetricSpace, MetricError> {
        let space = match (self.distances, self.points) {
            (Some(rows), None) => {
                let rows = rows
                    .iter()
                    .map(|r| r.iter().map(parse_cell).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                FiniteMetricSpace::new(self.labels, rows)?
            }
            (None, Some(points)) => FiniteMetricSpace::from_points(
                self.labels,
                &points,
                self.precision.unwrap_or(DEFAULT_PRECISION),
            )?,
            _ => {
                return Err(MetricError::Format(
                    "exactly one of \"distances\" or \"points\" is required".into(),
                ))
            }
        };
        Ok(self.meta.into_iter().fold(space, |s, (k, v)| s.with_meta(k, v)))
    }
}

fn parse_cell(v: &Value) -> Result<num_rational::BigRational, MetricError> {
    match v {
        Value::String(s) => rational::parse(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => rational::parse(&n.to_string()),
        other => Err(MetricError::ParseRational(other.to_string())),
    }
}

pub fn to_json(space: &FiniteMetricSpace) -> String {
    serde_json::to_string_pretty(&SpaceDocument::from_space(space)).expect("serializable")
}

pub fn from_json(text: &str) -> Result<FiniteMetricSpace, MetricError> {
    let doc: SpaceDocument =
        serde_json::from_str(text).map_err(|e| MetricError::Format(e.to_string()))?;
    doc.into_space()
}
