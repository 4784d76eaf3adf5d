//! Machine-readable output documents. Every rational is a `"p/q"` string
//! and each document fits on one line.

use lelong_core::chainbound::PathBound;
use lelong_core::coneopt::SharpConstantResult;
use lelong_core::invariants::{InvariantReport, OrdStep};
use lelong_core::{Divisor, Rat, ValidGraph, ValidationReport};
use serde::{Deserialize, Serialize};

fn rat(x: &Rat) -> String {
    x.to_string()
}

fn rats(xs: &[Rat]) -> Vec<String> {
    xs.iter().map(rat).collect()
}

fn parse_rat(s: &str) -> Result<Rat, String> {
    s.parse().map_err(|_| format!("`{s}` is not a rational"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDoc {
    pub slope: String,
    pub lelong: String,
    pub multiplicity: String,
    pub ratio: Option<String>,
    pub in_cone: bool,
    pub slack: Vec<String>,
}

impl From<&InvariantReport> for ReportDoc {
    fn from(r: &InvariantReport) -> Self {
        ReportDoc {
            slope: rat(&r.slope),
            lelong: rat(&r.lelong),
            multiplicity: rat(&r.multiplicity),
            ratio: r.ratio.as_ref().map(rat),
            in_cone: r.in_cone,
            slack: rats(&r.slack),
        }
    }
}

impl TryFrom<&ReportDoc> for InvariantReport {
    type Error = String;

    fn try_from(d: &ReportDoc) -> Result<Self, String> {
        Ok(InvariantReport {
            slope: parse_rat(&d.slope)?,
            lelong: parse_rat(&d.lelong)?,
            multiplicity: parse_rat(&d.multiplicity)?,
            ratio: d.ratio.as_deref().map(parse_rat).transpose()?,
            in_cone: d.in_cone,
            slack: d
                .slack
                .iter()
                .map(|s| parse_rat(s))
                .collect::<Result<_, _>>()?,
        })
    }
}

/// Parses one report line back into the exact report.
pub fn parse_report(line: &str) -> Result<InvariantReport, String> {
    let doc: ReportDoc = serde_json::from_str(line).map_err(|e| e.to_string())?;
    InvariantReport::try_from(&doc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientDoc {
    pub order: u64,
    pub dim: u32,
    pub bound: String,
}

/// Comparison of a quotient bound `|G|^(n-1)` with `c_sharp * mult`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientComparison {
    pub order: u64,
    pub bound: String,
    pub sharp_times_mult: String,
    /// One of `<`, `=`, `>`: how the quotient bound compares.
    pub relation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharpDoc {
    pub c_sharp: String,
    pub extremal: Vec<String>,
    pub active: Vec<String>,
    /// `null` when the vertex count exceeds the enumeration capacity.
    pub rays: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub quotient: Option<QuotientComparison>,
}

impl SharpDoc {
    pub fn new(g: &ValidGraph, res: &SharpConstantResult, rays: Option<&[Divisor]>) -> Self {
        SharpDoc {
            c_sharp: rat(&res.c_sharp),
            extremal: rats(res.extremal.coefficients()),
            active: res.active_constraints.iter().map(|c| c.label(g)).collect(),
            rays: rays.map(|rs| rs.iter().map(|r| rats(r.coefficients())).collect()),
            quotient: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainDoc {
    pub from: String,
    pub to: String,
    pub path: Vec<String>,
    pub factors: Vec<String>,
    pub product: String,
}

impl From<&PathBound> for ChainDoc {
    fn from(p: &PathBound) -> Self {
        ChainDoc {
            from: p.path.first().cloned().unwrap_or_default(),
            to: p.path.last().cloned().unwrap_or_default(),
            path: p.path.clone(),
            factors: rats(&p.factors),
            product: rat(&p.product),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RaysDoc {
    pub rays: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleDoc {
    pub index: usize,
    pub divisor: Vec<String>,
    pub report: ReportDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleSummary {
    pub count: usize,
    pub seed: u64,
    pub max_ratio: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrdDoc {
    pub k: u64,
    pub ord: String,
    pub lower: String,
    pub upper: String,
}

impl From<&OrdStep> for OrdDoc {
    fn from(s: &OrdStep) -> Self {
        OrdDoc {
            k: s.k,
            ord: s.order.to_string(),
            lower: rat(&s.lower),
            upper: rat(&s.upper),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationDoc {
    pub valid: bool,
    pub violations: Vec<String>,
}

impl From<&ValidationReport> for ValidationDoc {
    fn from(r: &ValidationReport) -> Self {
        ValidationDoc {
            valid: r.is_valid(),
            violations: r.violations.iter().map(|v| v.to_string()).collect(),
        }
    }
}

/// One JSON document on one line.
pub fn to_line<T: Serialize>(doc: &T) -> String {
    serde_json::to_string(doc).expect("output documents always serialize")
}
