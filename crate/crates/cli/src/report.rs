//! The JSON run report emitted by `solve --json`.
//!
//! Serialization is lossless: every numeric field carries the exact rational
//! alongside a decimal rendering with an explicit digit count. The shape is
//! documented in `schema/run-report.schema.json` at the repository root and
//! versioned through `schema_version`.

use serde::{Deserialize, Serialize};

use einstein_randers::{Rational, SolutionTuple, SolvePipeline};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct RunReport {
    pub schema_version: u32,
    pub space: String,
    pub digits: usize,
    /// Refinement tolerance, exact.
    pub eps: String,
    /// The derived generator system f1, f2, f3 in canonical text form.
    pub system: Vec<String>,
    /// The univariate elimination polynomial, canonical text form.
    pub elimination_polynomial: String,
    pub expected_solutions: usize,
    pub used_shape_fallback: bool,
    pub root_boxes: Vec<BoxReport>,
    pub solutions: Vec<SolutionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<Timings>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct BoxReport {
    pub lower: String,
    pub upper: String,
    pub estimate: String,
    pub estimate_decimal: String,
    pub error_bound: String,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct SolutionReport {
    pub index: usize,
    pub params: Vec<ValueReport>,
    pub einstein_constant: ValueReport,
}

/// One exact value: `rational` is lossless, `decimal` carries `digits`
/// significant digits, `error_bound` is an exact bound on `rational`'s
/// distance to the true value.
#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct ValueReport {
    pub name: String,
    pub rational: String,
    pub decimal: String,
    pub digits: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error_bound: Option<String>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct Timings {
    pub total: u128,
}

impl ValueReport {
    fn new(name: &str, value: &Rational, digits: usize, error: Option<&Rational>) -> Self {
        ValueReport {
            name: name.to_string(),
            rational: value.to_string(),
            decimal: value.to_decimal(digits),
            digits,
            error_bound: error.map(|e| e.to_string()),
        }
    }
}

fn solution_report(index: usize, sol: &SolutionTuple, digits: usize) -> SolutionReport {
    let names = sol.space().parameter_names();
    let params = names
        .iter()
        .zip(sol.params.values())
        .zip(&sol.param_errors)
        .map(|((name, value), err)| ValueReport::new(name, value, digits, Some(err)))
        .collect();
    SolutionReport {
        index,
        params,
        einstein_constant: ValueReport::new("K", &sol.einstein_constant, digits, None),
    }
}

pub fn build_report(
    pipe: &SolvePipeline,
    digits: usize,
    eps: &Rational,
    timings_ms: Option<Timings>,
) -> RunReport {
    let (_, order) = pipe.space.system_ring();
    let system = pipe
        .system
        .iter()
        .map(|f| einstein_randers::format_polynomial(f, &order))
        .collect();
    let elimination_polynomial = pipe.elimination.format_with_var("x2");
    let root_boxes = pipe
        .refined
        .iter()
        .map(|b| BoxReport {
            lower: b.lower.to_string(),
            upper: b.upper.to_string(),
            estimate: b.value_estimate.to_string(),
            estimate_decimal: b.value_estimate.to_decimal(digits),
            error_bound: b.error_bound.to_string(),
        })
        .collect();
    let solutions = pipe
        .solutions
        .iter()
        .enumerate()
        .map(|(i, s)| solution_report(i, s, digits))
        .collect();
    RunReport {
        schema_version: SCHEMA_VERSION,
        space: pipe.space.key().to_string(),
        digits,
        eps: eps.to_string(),
        system,
        elimination_polynomial,
        expected_solutions: pipe.space.expected_solutions(),
        used_shape_fallback: pipe.used_shape_fallback,
        root_boxes,
        solutions,
        timings_ms,
    }
}

