//! Versioned JSON reports.

use serde::Serialize;
use tbspan_core::{BuildTrace, StretchReport};

pub const SCHEMA: u32 = 1;

/// Where the decomposition behind a build came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Decomposition supplied by the user.
    Decomposition,
    /// Layering decomposition computed by the tool; no breadth guarantee.
    Heuristic,
    /// Decomposition derived from a supplied multiplicative tree spanner.
    MultiplicativeSpanner,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphSummary {
    pub n: usize,
    pub m: usize,
}

/// Stretch figures with witnesses given as input labels.
#[derive(Debug, Clone, Serialize)]
pub struct Stretch {
    #[serde(flatten)]
    pub report: StretchReport,
    pub witness_add_labels: [String; 2],
    pub witness_mult_labels: [String; 2],
}

impl Stretch {
    pub fn new(report: StretchReport, labels: &[String]) -> Self {
        let pair = |(u, v): (usize, usize)| [labels[u].clone(), labels[v].clone()];
        Stretch { witness_add_labels: pair(report.witness_add), witness_mult_labels: pair(report.witness_mult), report }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Timings {
    pub decomposition_ms: f64,
    pub build_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BuildReport {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub seed: u64,
    pub provenance: Provenance,
    pub check_level: tbspan_core::CheckLevel,
    pub graph: GraphSummary,
    /// `8ρ(2d + 1)`, or `8⌈k/2⌉(2d + 1)` for multiplicative input.
    pub bound: u32,
    pub bound_holds: bool,
    pub stretch: Stretch,
    pub trace: BuildTrace,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub seed: u64,
    pub graph: GraphSummary,
    pub stretch: Stretch,
}

pub const TOOL: &str = "tbspan";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
