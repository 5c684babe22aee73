//! Argument parsing and command dispatch for the `schottky` binary.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use schottky_core::config::{handlebody_summary, handlebody_summary_family, validate, CircleSystem};
use schottky_core::construct::{center_approach, EndSetSpec};
use schottky_core::orbit::{min_plane_distance, Budget};
use schottky_core::qcmod::{collar_interpolation, inner_annulus, mu, mu_inv, BoundaryProfile};
use serde::Serialize;

use crate::config::{
    load_config, ConfigDocument, CounterexampleDoc, EndsDoc, FatsetDoc, Resolved, RuleDoc, RunOptions, Source,
    SCHEMA_VERSION,
};
use crate::error::{CliError, Result};
use crate::format::{float, to_json};
use crate::report::{self, csv_table, Envelope, LimitOut, OrbitOut, PointOut, SummaryOut, ValidationOut};
use crate::svg::{render_svg, Extras};
use crate::{parallel, trials};

#[derive(Debug, Parser)]
#[command(name = "schottky", version, about = "Truncated Schottky configurations: validation, orbits, constructions and modulus checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Configuration document (JSON, version 1).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Maximum number of enumerated items.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Output file, written atomically; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for the enumerations; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Admissibility report.
    Validate,
    /// Translated circles, maximal chains and the diameter profile.
    Orbit,
    /// Counts of translated circles above a spherical-diameter threshold.
    Census {
        #[arg(long)]
        threshold: Option<f64>,
    },
    /// Attracting fixed points of the words of length `depth`.
    Limitset,
    /// Build one of the named configurations from flags.
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Ring moduli, the annulus derivative bound and collar maps.
    #[command(subcommand)]
    Qc(QcCommand),
    /// SVG figure of the system, its translates, limit samples and ends.
    Render,
    /// Genus and end space of the uniformized handlebody.
    Summary,
}

#[derive(Debug, Subcommand)]
pub enum ConstructCommand {
    /// Conjugated families realizing a closed subset of [0, 1] as end space.
    Ends {
        /// Comma-separated isolated end points in [0, 1].
        #[arg(long, value_delimiter = ',')]
        points: Option<Vec<f64>>,
        #[arg(long)]
        cantor_depth: Option<u32>,
        #[arg(long)]
        handles: Option<usize>,
        #[arg(long)]
        margin: Option<f64>,
        /// Truncation radius of each family.
        #[arg(long)]
        radius: Option<u32>,
    },
    /// Pairs whose axes accumulate on a geodesic, with lengths `ratio^i`.
    Counterexample {
        #[arg(long)]
        pairs: Option<usize>,
        #[arg(long)]
        ratio: Option<f64>,
    },
    /// `n` pairs of circles orthogonal to the unit circle, planes `delta` apart.
    Fatset {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        delta: Option<f64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum QcCommand {
    /// The ring modulus `mu(r)`, or its inverse with `--modulus`.
    Mu {
        #[arg(long)]
        r: Option<f64>,
        #[arg(long)]
        modulus: Option<f64>,
    },
    /// Seeded random trials of the annulus derivative bound.
    Bound {
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Collar interpolation of the profile `1 + amplitude·cos θ`.
    Collar {
        #[arg(long)]
        amplitude: Option<f64>,
        /// Outer radius of the collar.
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long)]
        grid_t: Option<usize>,
        #[arg(long)]
        grid_theta: Option<usize>,
    },
}

/// Rendered command output. `ok` is false when the command ran but its
/// check failed (exit status 2).
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub body: String,
    pub ok: bool,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome { body, ok: true }
    }
}

struct Context {
    doc: Option<ConfigDocument>,
    options: RunOptions,
    format: Option<Format>,
}

impl Context {
    fn new(common: &Common, needs_config: bool) -> Result<Self> {
        let doc = match &common.config {
            Some(p) => Some(load_config(p)?),
            None if needs_config => return Err(CliError::Usage("this command needs --config".into())),
            None => None,
        };
        let mut options = doc.as_ref().map(|d| d.options.clone()).unwrap_or_default();
        if let Some(d) = common.depth {
            options.depth = d;
        }
        if let Some(b) = common.budget {
            options.budget = b;
        }
        if let Some(s) = common.seed {
            options.seed = s;
        }
        Ok(Context {
            doc,
            options,
            format: common.format,
        })
    }

    fn source(&self) -> &Source {
        &self.doc.as_ref().expect("checked in Context::new").source
    }

    fn source_kind(&self) -> &'static str {
        match self.doc.as_ref().map(|d| &d.source) {
            None => "none",
            Some(Source::System(_)) => "system",
            Some(Source::Family(_)) => "family",
            Some(Source::Ends(_)) => "ends",
            Some(Source::Counterexample(_)) => "counterexample",
            Some(Source::Fatset(_)) => "fatset",
        }
    }

    fn resolve(&self) -> Result<Resolved> {
        self.source().resolve()
    }

    fn budget(&self) -> Budget {
        Budget::new(self.options.budget)
    }

    fn format(&self, default: Format, allowed: &[Format]) -> Result<Format> {
        let f = self.format.unwrap_or(default);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            Err(CliError::Usage(format!("format {f:?} is not available for this command")))
        }
    }

    fn json<T: Serialize>(&self, command: &str, result: T) -> String {
        to_json(&Envelope {
            version: SCHEMA_VERSION,
            command,
            source: self.source_kind(),
            options: &self.options,
            result,
        })
    }
}

/// Runs a parsed command line, on a dedicated thread pool when `--threads`
/// is given.
pub fn run(cli: &Cli) -> Result<Outcome> {
    match cli.common.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            pool.install(|| dispatch(cli))
        }
        None => dispatch(cli),
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let needs_config = !matches!(cli.command, Command::Construct(_) | Command::Qc(_));
    let mut ctx = Context::new(&cli.common, needs_config)?;
    match &cli.command {
        Command::Validate => cmd_validate(&ctx),
        Command::Orbit => cmd_orbit(&ctx),
        Command::Census { threshold } => {
            if let Some(t) = threshold {
                ctx.options.census_threshold = *t;
            }
            cmd_census(&ctx)
        }
        Command::Limitset => cmd_limitset(&ctx),
        Command::Construct(c) => cmd_construct(&mut ctx, c),
        Command::Qc(q) => cmd_qc(&mut ctx, q),
        Command::Render => cmd_render(&ctx),
        Command::Summary => cmd_summary(&ctx),
    }
}

fn cmd_validate(ctx: &Context) -> Result<Outcome> {
    ctx.format(Format::Json, &[Format::Json])?;
    let r = ctx.resolve()?;
    let report = validate(&r.system);
    Ok(Outcome {
        body: ctx.json("validate", ValidationOut::new(&r.system, &report)),
        ok: report.admissible,
    })
}

fn cmd_orbit(ctx: &Context) -> Result<Outcome> {
    let format = ctx.format(Format::Json, &[Format::Json, Format::Csv])?;
    let sys = ctx.resolve()?.system;
    let depth = ctx.options.depth;
    let profile = parallel::diameter_profile(&sys, depth, ctx.options.threshold, ctx.budget())?;
    if format == Format::Csv {
        return Ok(Outcome::ok(report::profile_csv(&profile)?));
    }
    let translated = parallel::translated_circles(&sys, depth, ctx.budget())?;
    let chains = parallel::maximal_chains(&sys, depth, ctx.budget())?;
    Ok(Outcome::ok(ctx.json(
        "orbit",
        OrbitOut {
            depth,
            translated: translated.iter().map(Into::into).collect(),
            chains: chains.iter().map(Into::into).collect(),
            profile: (&profile).into(),
        },
    )))
}

fn cmd_census(ctx: &Context) -> Result<Outcome> {
    let format = ctx.format(Format::Json, &[Format::Json, Format::Csv])?;
    let sys = ctx.resolve()?.system;
    let census = parallel::census_large(&sys, ctx.options.depth, ctx.options.census_threshold, ctx.budget())?;
    Ok(Outcome::ok(match format {
        Format::Csv => report::census_csv(&census)?,
        _ => ctx.json("census", report::CensusOut::from(&census)),
    }))
}

fn cmd_limitset(ctx: &Context) -> Result<Outcome> {
    let format = ctx.format(Format::Json, &[Format::Json, Format::Csv])?;
    let sys = ctx.resolve()?.system;
    let pts = parallel::limit_set_sample(&sys, ctx.options.depth, ctx.budget())?;
    Ok(Outcome::ok(match format {
        Format::Csv => report::points_csv(&pts)?,
        _ => ctx.json(
            "limitset",
            LimitOut {
                depth: ctx.options.depth,
                points: report::points(&pts),
            },
        ),
    }))
}

fn cmd_render(ctx: &Context) -> Result<Outcome> {
    ctx.format(Format::Svg, &[Format::Svg])?;
    let r = ctx.resolve()?;
    let sys = &r.system;
    if !validate(sys).admissible {
        return Err(schottky_core::Error::NotAdmissible.into());
    }
    let depth = ctx.options.depth;
    let extras = Extras {
        translated: parallel::translated_circles(sys, depth, ctx.budget())?,
        limit: parallel::limit_set_sample(sys, depth, ctx.budget())?,
        accumulation: r.family.as_ref().map(|f| f.accumulation_points()).unwrap_or_default(),
    };
    Ok(Outcome::ok(render_svg(sys, &extras)))
}

fn cmd_summary(ctx: &Context) -> Result<Outcome> {
    ctx.format(Format::Json, &[Format::Json])?;
    let r = ctx.resolve()?;
    let summary = match (ctx.source(), &r.family) {
        (Source::Family(doc), Some(f)) => handlebody_summary_family(f, doc.radius)?,
        (Source::Ends(doc), Some(f)) => handlebody_summary_family(f, doc.radius)?,
        _ => handlebody_summary(&r.system)?,
    };
    Ok(Outcome::ok(ctx.json("summary", SummaryOut::from(&summary))))
}

#[derive(Debug, Serialize)]
struct ConstructOut<T: Serialize> {
    details: T,
    admissible: bool,
    min_plane_distance: f64,
    /// The materialized system as a loadable document.
    system: ConfigDocument,
}

fn construct_out<T: Serialize>(ctx: &Context, command: &str, sys: &CircleSystem, details: T) -> Outcome {
    let report = validate(sys);
    let body = ctx.json(
        command,
        ConstructOut {
            details,
            admissible: report.admissible,
            min_plane_distance: report.min_plane_distance,
            system: ConfigDocument::from_system(sys, ctx.options.clone()),
        },
    );
    Outcome {
        body,
        ok: report.admissible,
    }
}

#[derive(Debug, Serialize)]
struct EndsOut {
    spec: EndsDoc,
    delta: f64,
    radius_ratio: f64,
    families: usize,
    intervals: Vec<[f64; 2]>,
    tails: Vec<[f64; 2]>,
    accumulation: Vec<PointOut>,
    /// Largest distance from an accumulation point to the nearest circle
    /// centre, for truncation radii `0..=radius`.
    center_approach: Vec<f64>,
    star_passed: bool,
    genus: serde_json::Value,
}

#[derive(Debug, Serialize)]
struct CounterexampleOut {
    recipe: CounterexampleDoc,
    limit_radius_lower_bound: f64,
    tail_bound: f64,
    schottky_like_only: bool,
    chain_radii: Vec<f64>,
    chain_nested: bool,
    fundamental_domain_plausible: bool,
}

fn cmd_construct(ctx: &mut Context, c: &ConstructCommand) -> Result<Outcome> {
    ctx.format(Format::Json, &[Format::Json])?;
    let from_config = ctx.doc.as_ref().map(|d| d.source.clone());
    match c {
        ConstructCommand::Ends {
            points,
            cantor_depth,
            handles,
            margin,
            radius,
        } => {
            let mut doc = match from_config {
                Some(Source::Ends(d)) => d,
                _ => EndsDoc {
                    points: vec![0.0, 1.0],
                    cantor_depth: None,
                    handles: 0,
                    margin: 3.0,
                    radius: 3,
                },
            };
            if let Some(p) = points {
                doc.points = p.clone();
            }
            if cantor_depth.is_some() {
                doc.cantor_depth = *cantor_depth;
            }
            if let Some(h) = handles {
                doc.handles = *h;
            }
            if let Some(m) = margin {
                doc.margin = *m;
            }
            if let Some(r) = radius {
                doc.radius = *r;
            }
            let spec: EndSetSpec = doc.spec()?;
            let real = schottky_core::construct::realize_end_space(&spec, doc.margin)?;
            let sys = real.family.materialize(doc.radius)?;
            let acc = real.family.accumulation_points();
            let approach = (0..=doc.radius)
                .map(|n| real.family.materialize(n).map(|s| center_approach(&s, &acc)))
                .collect::<schottky_core::Result<Vec<_>>>()?;
            let summary = handlebody_summary_family(&real.family, doc.radius)?;
            let details = EndsOut {
                delta: real.delta,
                radius_ratio: real.radius_ratio,
                families: real.family.families.len(),
                intervals: real.intervals.iter().map(|&(a, b)| [a, b]).collect(),
                tails: real.tails.iter().map(|&(a, b)| [a, b]).collect(),
                accumulation: report::points(&acc),
                center_approach: approach,
                star_passed: real.family.check_star(ctx.options.star_depth).passed,
                genus: SummaryOut::from(&summary).genus,
                spec: doc,
            };
            Ok(construct_out(ctx, "construct ends", &sys, details))
        }
        ConstructCommand::Counterexample { pairs, ratio } => {
            let mut doc = match from_config {
                Some(Source::Counterexample(d)) => d,
                _ => CounterexampleDoc {
                    pairs: 12,
                    rule: RuleDoc::default(),
                    radius: 0.5,
                    pair_distance: 2.0,
                },
            };
            if let Some(n) = pairs {
                doc.pairs = *n;
            }
            if let Some(q) = ratio {
                doc.rule = RuleDoc::Geometric { scale: 1.0, ratio: *q };
            }
            let ce = schottky_core::construct::build_nested_counterexample(&doc.recipe())?;
            let depth = ctx.options.depth.min(4);
            let profile = parallel::diameter_profile(&ce.sys, depth, ctx.options.threshold, ctx.budget())?;
            let details = CounterexampleOut {
                limit_radius_lower_bound: ce.limit_radius_lower_bound,
                tail_bound: ce.tail_bound,
                schottky_like_only: ce.schottky_like_only,
                chain_radii: ce.chain.circles.iter().map(|t| t.circle.radius()).collect(),
                chain_nested: ce.chain.is_nested(),
                fundamental_domain_plausible: profile.verdict.fundamental_domain_plausible,
                recipe: doc,
            };
            Ok(construct_out(ctx, "construct counterexample", &ce.sys, details))
        }
        ConstructCommand::Fatset { n, delta } => {
            let mut doc = match from_config {
                Some(Source::Fatset(d)) => d,
                _ => FatsetDoc { n: 8, delta: 1.0 },
            };
            if let Some(n) = n {
                doc.n = *n;
            }
            if let Some(d) = delta {
                doc.delta = *d;
            }
            let sys = schottky_core::construct::build_fat_limit_set(doc.n, doc.delta)?;
            let details = serde_json::json!({ "n": doc.n, "delta": doc.delta, "separation": min_plane_distance(&sys)? });
            Ok(construct_out(ctx, "construct fatset", &sys, details))
        }
    }
}

#[derive(Debug, Serialize)]
struct MuOut {
    r: f64,
    modulus: f64,
    /// Inner radius of the largest round annulus inside a ring of this
    /// modulus bounded by the unit circle.
    inner_annulus: f64,
}

#[derive(Debug, Serialize)]
struct CollarOut {
    amplitude: f64,
    radius: f64,
    radial_points: usize,
    angular_points: usize,
    max_beltrami: f64,
    dilatation: f64,
    beltrami_discrepancy: f64,
    min_jacobian: f64,
    inner_boundary_error: f64,
    outer_boundary_error: f64,
}

fn cmd_qc(ctx: &mut Context, q: &QcCommand) -> Result<Outcome> {
    match q {
        QcCommand::Mu { r, modulus } => {
            ctx.format(Format::Json, &[Format::Json])?;
            let (r, m) = match (r, modulus) {
                (Some(r), None) => (*r, mu(*r)?),
                (None, Some(m)) => (mu_inv(*m)?, *m),
                (None, None) => (std::f64::consts::FRAC_1_SQRT_2, mu(std::f64::consts::FRAC_1_SQRT_2)?),
                (Some(_), Some(_)) => return Err(CliError::Usage("give either --r or --modulus".into())),
            };
            Ok(Outcome::ok(ctx.json(
                "qc mu",
                MuOut {
                    r,
                    modulus: m,
                    inner_annulus: inner_annulus(m)?,
                },
            )))
        }
        QcCommand::Bound { trials, samples } => {
            let format = ctx.format(Format::Json, &[Format::Json, Format::Csv])?;
            if let Some(t) = trials {
                ctx.options.trials = *t;
            }
            if let Some(s) = samples {
                ctx.options.samples = *s;
            }
            let (summary, reports) =
                trials::derivative_bound_trials(ctx.options.seed, ctx.options.trials, ctx.options.samples)?;
            let ok = summary.violations == 0 && summary.hypothesis_failures == 0;
            let body = match format {
                Format::Csv => csv_table(
                    &["trial", "max_derivative", "bound", "source_modulus", "target_modulus", "passed"],
                    reports.iter().enumerate().map(|(i, r)| {
                        vec![
                            i.to_string(),
                            float(r.max_derivative),
                            float(r.bound),
                            float(r.source_modulus),
                            float(r.target_modulus),
                            r.passed.to_string(),
                        ]
                    }),
                )?,
                _ => ctx.json("qc bound", summary),
            };
            Ok(Outcome { body, ok })
        }
        QcCommand::Collar {
            amplitude,
            radius,
            grid_t,
            grid_theta,
        } => {
            let format = ctx.format(Format::Json, &[Format::Json, Format::Csv])?;
            if let Some(a) = amplitude {
                ctx.options.amplitude = *a;
            }
            if let Some(r) = radius {
                ctx.options.collar_radius = *r;
            }
            if let Some(n) = grid_t {
                ctx.options.grid[0] = *n;
            }
            if let Some(n) = grid_theta {
                ctx.options.grid[1] = *n;
            }
            let o = &ctx.options;
            let profile = BoundaryProfile::cosine(o.amplitude)?;
            let (_, rep) = collar_interpolation(&profile, o.collar_radius, o.grid[0], o.grid[1])?;
            let body = match format {
                Format::Csv => csv_table(
                    &["t", "theta", "beltrami_abs", "jacobian"],
                    rep.samples
                        .iter()
                        .map(|s| vec![float(s.t), float(s.theta), float(s.beltrami_abs), float(s.jacobian)]),
                )?,
                _ => ctx.json(
                    "qc collar",
                    CollarOut {
                        amplitude: o.amplitude,
                        radius: o.collar_radius,
                        radial_points: rep.radial_points,
                        angular_points: rep.angular_points,
                        max_beltrami: rep.max_beltrami,
                        dilatation: rep.dilatation,
                        beltrami_discrepancy: rep.beltrami_discrepancy,
                        min_jacobian: rep.min_jacobian,
                        inner_boundary_error: rep.inner_boundary_error,
                        outer_boundary_error: rep.outer_boundary_error,
                    },
                ),
            };
            Ok(Outcome::ok(body))
        }
    }
}

/// Writes `outcome` to `--out` (atomically) or standard output.
pub fn emit(cli: &Cli, outcome: &Outcome) -> Result<()> {
    match &cli.common.out {
        Some(path) => crate::io::write_atomic(path, outcome.body.as_bytes()),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(outcome.body.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::io("<stdout>", e))
        }
    }
}
