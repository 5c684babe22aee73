//! The versioned JSON configuration document.
//!
//! ```json
//! {
//!   "version": 1,
//!   "source": { "system": { "pairs": [
//!     { "c": { "cx": -2.0, "cy": 0.0, "r": 1.0 },
//!       "c_prime": { "cx": 2.0, "cy": 0.0, "r": 1.0 },
//!       "map": "canonical", "twist": 0.0 } ] } },
//!   "options": { "depth": 4 }
//! }
//! ```
//!
//! Unknown fields are rejected everywhere. Omitted options take their
//! defaults, and serialization always writes every field, so
//! `serialize ∘ parse` is idempotent.

use std::path::Path;

use schottky_core::config::{CirclePair, CircleSystem, ConjugatedFamily, FamilySpec, TailFamily};
use schottky_core::construct::{
    build_fat_limit_set, build_nested_counterexample, realize_end_space, CounterexampleRecipe,
    EndSetSpec, EndSpaceRealization, LengthRule, NestedCounterexample,
};
use schottky_core::moebius::{Moebius, OrientedCircle, SpherePoint};
use schottky_core::orbit::{Budget, DEFAULT_PLAUSIBILITY_THRESHOLD};
use schottky_core::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::format::to_json;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    pub version: u32,
    pub source: Source,
    #[serde(default)]
    pub options: RunOptions,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    System(SystemDoc),
    Family(FamilyDoc),
    Ends(EndsDoc),
    Counterexample(CounterexampleDoc),
    Fatset(FatsetDoc),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDoc {
    pub pairs: Vec<PairDoc>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircleDoc {
    pub cx: f64,
    pub cy: f64,
    pub r: f64,
}

/// A complex number as `[re, im]`.
pub type ComplexDoc = [f64; 2];

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapDoc {
    /// The canonical pairing along the common perpendicular.
    #[default]
    Canonical,
    /// Entries `[a, b, c, d]` of `(az + b)/(cz + d)`.
    Matrix([ComplexDoc; 4]),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDoc {
    pub c: CircleDoc,
    pub c_prime: CircleDoc,
    #[serde(default)]
    pub map: MapDoc,
    /// Rotation of the canonical pairing, in radians.
    #[serde(default)]
    pub twist: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConjugatorDoc {
    Matrix([ComplexDoc; 4]),
    FixedPoints {
        attracting: ComplexDoc,
        repelling: ComplexDoc,
        multiplier: ComplexDoc,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConjugatedDoc {
    pub base: PairDoc,
    pub conjugator: ConjugatorDoc,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TailDoc {
    pub limit: ComplexDoc,
    pub direction: ComplexDoc,
    pub scale: f64,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDoc {
    #[serde(default)]
    pub explicit: Vec<PairDoc>,
    #[serde(default)]
    pub families: Vec<ConjugatedDoc>,
    #[serde(default)]
    pub tails: Vec<TailDoc>,
    /// Truncation radius.
    #[serde(default = "default_radius")]
    pub radius: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndsDoc {
    #[serde(default)]
    pub points: Vec<f64>,
    #[serde(default)]
    pub cantor_depth: Option<u32>,
    #[serde(default)]
    pub handles: usize,
    #[serde(default = "default_margin")]
    pub margin: f64,
    #[serde(default = "default_radius")]
    pub radius: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleDoc {
    Geometric { scale: f64, ratio: f64 },
    Power { scale: f64, exponent: f64 },
    Explicit { lengths: Vec<f64>, tail: f64 },
}

impl Default for RuleDoc {
    fn default() -> Self {
        RuleDoc::Geometric {
            scale: 1.0,
            ratio: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CounterexampleDoc {
    pub pairs: usize,
    #[serde(default)]
    pub rule: RuleDoc,
    #[serde(default = "default_ce_radius")]
    pub radius: f64,
    #[serde(default = "default_pair_distance")]
    pub pair_distance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FatsetDoc {
    pub n: usize,
    pub delta: f64,
}

/// Run options shared by every subcommand; command-line flags override them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunOptions {
    pub depth: usize,
    pub budget: u64,
    /// Diameter threshold of the fundamental-domain verdict.
    pub threshold: f64,
    pub census_threshold: f64,
    /// Depth of the condition (∗) check for infinite sources.
    pub star_depth: u32,
    pub seed: u64,
    pub trials: usize,
    pub samples: usize,
    pub grid: [usize; 2],
    pub amplitude: f64,
    pub collar_radius: f64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            depth: 4,
            budget: Budget::DEFAULT_CAP,
            threshold: DEFAULT_PLAUSIBILITY_THRESHOLD,
            census_threshold: 1e-2,
            star_depth: 5,
            seed: 1,
            trials: 1000,
            samples: 64,
            grid: [64, 64],
            amplitude: 0.5,
            collar_radius: std::f64::consts::E,
        }
    }
}

fn default_radius() -> u32 {
    3
}

fn default_margin() -> f64 {
    3.0
}

fn default_ce_radius() -> f64 {
    0.5
}

fn default_pair_distance() -> f64 {
    2.0
}

/// The geometric objects a document describes.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub system: CircleSystem,
    /// Present for infinite sources; `system` is its truncation.
    pub family: Option<FamilySpec>,
    pub realization: Option<EndSpaceRealization>,
    pub counterexample: Option<NestedCounterexample>,
}

fn schema(path: impl Into<String>, err: impl std::fmt::Display) -> CliError {
    CliError::Schema {
        path: path.into(),
        message: err.to_string(),
    }
}

fn complex([re, im]: ComplexDoc) -> Complex64 {
    Complex64::new(re, im)
}

impl CircleDoc {
    pub fn from_circle(c: &OrientedCircle) -> Self {
        CircleDoc {
            cx: c.center().re,
            cy: c.center().im,
            r: c.radius(),
        }
    }

    fn build(&self, path: &str) -> Result<OrientedCircle> {
        OrientedCircle::new(Complex64::new(self.cx, self.cy), self.r)
            .map_err(|e| schema(format!("{path}.r"), e))
    }
}

fn matrix(entries: &[ComplexDoc; 4], path: &str) -> Result<Moebius> {
    let [a, b, c, d] = entries.map(complex);
    Moebius::new(a, b, c, d).map_err(|e| schema(path, e))
}

fn matrix_doc(m: &Moebius) -> [ComplexDoc; 4] {
    m.entries().map(|z| [z.re, z.im])
}

impl PairDoc {
    /// An explicit-matrix record of `pair`.
    pub fn from_pair(pair: &CirclePair) -> Self {
        PairDoc {
            c: CircleDoc::from_circle(&pair.c),
            c_prime: CircleDoc::from_circle(&pair.c_prime),
            map: MapDoc::Matrix(matrix_doc(&pair.map)),
            twist: 0.0,
        }
    }

    fn build(&self, label: usize, path: &str) -> Result<CirclePair> {
        let c = self.c.build(&format!("{path}.c"))?;
        let c_prime = self.c_prime.build(&format!("{path}.c_prime"))?;
        match &self.map {
            MapDoc::Canonical => {
                CirclePair::canonical(label, c, c_prime, self.twist).map_err(|e| schema(path, e))
            }
            MapDoc::Matrix(m) => Ok(CirclePair::new(label, c, c_prime, matrix(m, &format!("{path}.map"))?)),
        }
    }
}

impl FamilyDoc {
    fn build(&self, path: &str) -> Result<FamilySpec> {
        let explicit = self
            .explicit
            .iter()
            .enumerate()
            .map(|(i, p)| p.build(i, &format!("{path}.explicit[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        let families = self
            .families
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let p = format!("{path}.families[{i}]");
                let base = f.base.build(0, &format!("{p}.base"))?;
                let conjugator = match &f.conjugator {
                    ConjugatorDoc::Matrix(m) => matrix(m, &format!("{p}.conjugator"))?,
                    ConjugatorDoc::FixedPoints {
                        attracting,
                        repelling,
                        multiplier,
                    } => Moebius::with_fixed_points(
                        SpherePoint::finite(complex(*attracting)),
                        SpherePoint::finite(complex(*repelling)),
                        complex(*multiplier),
                    )
                    .map_err(|e| schema(format!("{p}.conjugator"), e))?,
                };
                Ok(ConjugatedFamily { base, conjugator })
            })
            .collect::<Result<Vec<_>>>()?;
        let tails = self
            .tails
            .iter()
            .enumerate()
            .map(|(i, t)| {
                TailFamily::new(complex(t.limit), complex(t.direction), t.scale, t.margin)
                    .map_err(|e| schema(format!("{path}.tails[{i}]"), e))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FamilySpec {
            explicit,
            families,
            tails,
        })
    }
}

impl CounterexampleDoc {
    pub fn recipe(&self) -> CounterexampleRecipe {
        let rule = match &self.rule {
            RuleDoc::Geometric { scale, ratio } => LengthRule::Geometric {
                scale: *scale,
                ratio: *ratio,
            },
            RuleDoc::Power { scale, exponent } => LengthRule::Power {
                scale: *scale,
                exponent: *exponent,
            },
            RuleDoc::Explicit { lengths, tail } => LengthRule::Explicit {
                lengths: lengths.clone(),
                tail: *tail,
            },
        };
        CounterexampleRecipe {
            pairs: self.pairs,
            rule,
            radius: self.radius,
            pair_distance: self.pair_distance,
        }
    }
}

impl EndsDoc {
    pub fn spec(&self) -> Result<EndSetSpec> {
        Ok(EndSetSpec::new(self.points.clone(), self.cantor_depth)
            .map_err(|e| schema("source.ends.points", e))?
            .with_handles(self.handles))
    }
}

impl Source {
    /// Builds the described configuration; infinite sources are truncated at
    /// their declared radius.
    pub fn resolve(&self) -> Result<Resolved> {
        let plain = |system| Resolved {
            system,
            family: None,
            realization: None,
            counterexample: None,
        };
        match self {
            Source::System(doc) => {
                let pairs = doc
                    .pairs
                    .iter()
                    .enumerate()
                    .map(|(i, p)| p.build(i, &format!("source.system.pairs[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                Ok(plain(CircleSystem::new(pairs)))
            }
            Source::Family(doc) => {
                let fam = doc.build("source.family")?;
                let system = fam.materialize(doc.radius).map_err(|e| schema("source.family", e))?;
                Ok(Resolved {
                    family: Some(fam),
                    ..plain(system)
                })
            }
            Source::Ends(doc) => {
                let r = realize_end_space(&doc.spec()?, doc.margin)
                    .map_err(|e| schema("source.ends.margin", e))?;
                let system = r.family.materialize(doc.radius).map_err(|e| schema("source.ends", e))?;
                Ok(Resolved {
                    family: Some(r.family.clone()),
                    realization: Some(r),
                    ..plain(system)
                })
            }
            Source::Counterexample(doc) => {
                let ce = build_nested_counterexample(&doc.recipe())
                    .map_err(|e| schema("source.counterexample", e))?;
                Ok(Resolved {
                    counterexample: Some(ce.clone()),
                    ..plain(ce.sys)
                })
            }
            Source::Fatset(doc) => {
                let sys = build_fat_limit_set(doc.n, doc.delta).map_err(|e| schema("source.fatset", e))?;
                Ok(plain(sys))
            }
        }
    }
}

impl ConfigDocument {
    /// An explicit-system document recording every pairing matrix.
    pub fn from_system(sys: &CircleSystem, options: RunOptions) -> Self {
        ConfigDocument {
            version: SCHEMA_VERSION,
            source: Source::System(SystemDoc {
                pairs: sys.pairs().iter().map(PairDoc::from_pair).collect(),
            }),
            options,
        }
    }

    /// Canonical serialization: every field written, 17 significant digits.
    pub fn to_canonical_json(&self) -> String {
        to_json(self)
    }
}

/// Parses and checks a document. Syntax errors carry line and column; schema
/// errors carry the path of the offending field.
pub fn parse_config(text: &str) -> Result<ConfigDocument> {
    let mut de = serde_json::Deserializer::from_str(text);
    let doc: ConfigDocument = serde_path_to_error::deserialize(&mut de).map_err(|err| {
        let path = err.path().to_string();
        let inner = err.into_inner();
        if inner.is_syntax() || inner.is_eof() {
            CliError::Parse {
                line: inner.line(),
                column: inner.column(),
                message: inner.to_string(),
            }
        } else {
            CliError::Schema {
                path,
                message: inner.to_string(),
            }
        }
    })?;
    de.end().map_err(|inner| CliError::Parse {
        line: inner.line(),
        column: inner.column(),
        message: inner.to_string(),
    })?;
    if doc.version != SCHEMA_VERSION {
        return Err(schema("version", format!("unsupported version {}, expected {SCHEMA_VERSION}", doc.version)));
    }
    doc.source.resolve()?;
    Ok(doc)
}

pub fn load_config(path: &Path) -> Result<ConfigDocument> {
    parse_config(&crate::io::read_to_string(path)?)
}
