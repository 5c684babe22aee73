//! Serializable report records.

use schottky_core::config::{CircleSystem, Genus, HandlebodySummary, Side, ValidationReport};
use schottky_core::moebius::SpherePoint;
use schottky_core::orbit::{Census, DiameterProfile, NestedChain, TranslatedCircle};
use schottky_core::Complex64;
use serde::Serialize;

use crate::config::RunOptions;
use crate::error::{CliError, Result};
use crate::format::float;

/// A point of the sphere: `[x, y]` or the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum PointOut {
    Finite([f64; 2]),
    Infinity(&'static str),
}

impl From<SpherePoint> for PointOut {
    fn from(p: SpherePoint) -> Self {
        match p {
            SpherePoint::Finite(z) => PointOut::Finite([z.re, z.im]),
            SpherePoint::Infinity => PointOut::Infinity("inf"),
        }
    }
}

pub fn points(ps: &[SpherePoint]) -> Vec<PointOut> {
    ps.iter().map(|&p| p.into()).collect()
}

fn xy(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

/// Every report: the schema version, the command, the fully resolved options
/// and the command's result.
#[derive(Debug, Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub version: u32,
    pub command: &'a str,
    pub source: &'a str,
    pub options: &'a RunOptions,
    pub result: T,
}

#[derive(Debug, Serialize)]
pub struct ViolationOut {
    pub kind: &'static str,
    pub indices: [usize; 2],
    pub measured: f64,
}

#[derive(Debug, Serialize)]
pub struct ValidationOut {
    pub admissible: bool,
    pub pairs: usize,
    pub min_pair_gap: f64,
    pub min_plane_distance: f64,
    pub purely_loxodromic: bool,
    pub truncation_limited: bool,
    pub violations: Vec<ViolationOut>,
}

impl ValidationOut {
    pub fn new(sys: &CircleSystem, r: &ValidationReport) -> Self {
        ValidationOut {
            admissible: r.admissible,
            pairs: sys.rank(),
            min_pair_gap: r.min_pair_gap,
            min_plane_distance: r.min_plane_distance,
            purely_loxodromic: r.purely_loxodromic,
            truncation_limited: r.truncation_limited,
            violations: r
                .violations
                .iter()
                .map(|v| ViolationOut {
                    kind: v.kind(),
                    indices: v.indices(),
                    measured: v.measured(),
                })
                .collect(),
        }
    }
}

/// `C_3` or `C_3'` (1-based).
pub fn circle_name(pair: usize, side: Side) -> String {
    match side {
        Side::C => format!("C_{}", pair + 1),
        Side::CPrime => format!("C_{}'", pair + 1),
    }
}

#[derive(Debug, Serialize)]
pub struct TranslatedOut {
    pub word: String,
    pub base: String,
    pub depth: usize,
    pub center: [f64; 2],
    pub radius: f64,
    pub spherical_diameter: f64,
}

impl From<&TranslatedCircle> for TranslatedOut {
    fn from(t: &TranslatedCircle) -> Self {
        TranslatedOut {
            word: t.word.to_string(),
            base: circle_name(t.base.pair, t.base.side),
            depth: t.depth,
            center: xy(t.circle.center()),
            radius: t.circle.radius(),
            spherical_diameter: t.circle.spherical_diameter(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ChainOut {
    /// The prefix word of the deepest circle.
    pub word: String,
    pub nested: bool,
    pub diameters: Vec<f64>,
}

impl From<&NestedChain> for ChainOut {
    fn from(c: &NestedChain) -> Self {
        ChainOut {
            word: c.circles.last().map_or_else(String::new, |t| t.word.to_string()),
            nested: c.is_nested(),
            diameters: c.diameters(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RowOut {
    pub depth: usize,
    pub count: u64,
    pub max_diam: f64,
    pub mean_diam: f64,
}

#[derive(Debug, Serialize)]
pub struct ProfileOut {
    pub rows: Vec<RowOut>,
    pub decay_rate: Option<f64>,
    pub fundamental_domain_plausible: bool,
    pub heuristic: bool,
    pub threshold: f64,
    pub decreasing_tail: bool,
    pub final_max: f64,
}

impl From<&DiameterProfile> for ProfileOut {
    fn from(p: &DiameterProfile) -> Self {
        ProfileOut {
            rows: p
                .rows
                .iter()
                .map(|r| RowOut {
                    depth: r.depth,
                    count: r.count,
                    max_diam: r.max_diam,
                    mean_diam: r.mean_diam,
                })
                .collect(),
            decay_rate: p.decay_rate(),
            fundamental_domain_plausible: p.verdict.fundamental_domain_plausible,
            heuristic: p.verdict.heuristic,
            threshold: p.verdict.threshold,
            decreasing_tail: p.verdict.decreasing_tail,
            final_max: p.verdict.final_max,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct OrbitOut {
    pub depth: usize,
    pub translated: Vec<TranslatedOut>,
    pub chains: Vec<ChainOut>,
    pub profile: ProfileOut,
}

#[derive(Debug, Serialize)]
pub struct CensusRowOut {
    pub depth: usize,
    pub count: u64,
    pub total: u64,
    pub cumulative: u64,
    pub max_diam: f64,
    pub mean_diam: f64,
}

#[derive(Debug, Serialize)]
pub struct CensusOut {
    pub threshold: f64,
    pub plateau_depth: Option<usize>,
    pub rows: Vec<CensusRowOut>,
}

impl From<&Census> for CensusOut {
    fn from(c: &Census) -> Self {
        CensusOut {
            threshold: c.threshold,
            plateau_depth: c.plateau_depth,
            rows: c
                .rows
                .iter()
                .map(|r| CensusRowOut {
                    depth: r.depth,
                    count: r.count,
                    total: r.total,
                    cumulative: r.cumulative,
                    max_diam: r.max_diam,
                    mean_diam: r.mean_diam,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct LimitOut {
    pub depth: usize,
    pub points: Vec<PointOut>,
}

#[derive(Debug, Serialize)]
pub struct SummaryOut {
    /// A count, or `"infinite"`.
    pub genus: serde_json::Value,
    pub end_count_at_truncation: usize,
    pub accumulation: Vec<PointOut>,
}

impl From<&HandlebodySummary> for SummaryOut {
    fn from(s: &HandlebodySummary) -> Self {
        SummaryOut {
            genus: match s.genus {
                Genus::Finite(g) => g.into(),
                Genus::Infinite => "infinite".into(),
            },
            end_count_at_truncation: s.end_count_at_truncation,
            accumulation: points(&s.accumulation),
        }
    }
}

/// CSV with a header row; floats use 17 significant digits.
pub fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| CliError::Validation(e.to_string());
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.write_record(&r).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Validation(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}

pub fn profile_csv(p: &DiameterProfile) -> Result<String> {
    csv_table(
        &["depth", "count", "max_diam", "mean_diam"],
        p.rows
            .iter()
            .map(|r| vec![r.depth.to_string(), r.count.to_string(), float(r.max_diam), float(r.mean_diam)]),
    )
}

pub fn census_csv(c: &Census) -> Result<String> {
    csv_table(
        &["depth", "count", "total", "cumulative", "max_diam", "mean_diam"],
        c.rows.iter().map(|r| {
            vec![
                r.depth.to_string(),
                r.count.to_string(),
                r.total.to_string(),
                r.cumulative.to_string(),
                float(r.max_diam),
                float(r.mean_diam),
            ]
        }),
    )
}

pub fn points_csv(ps: &[SpherePoint]) -> Result<String> {
    csv_table(
        &["x", "y"],
        ps.iter().map(|p| match p {
            SpherePoint::Finite(z) => vec![float(z.re), float(z.im)],
            SpherePoint::Infinity => vec!["inf".to_owned(), "inf".to_owned()],
        }),
    )
}
