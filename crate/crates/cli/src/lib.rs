//! The `systole-lab` command line, as a library so that it can be driven in
//! process by tests.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use systole_core::covering::{deck_lattice, homotopy_systole, CoverError, DistanceModel};
use systole_core::entropy::{
    check_burago_hebda, check_constants_surface, check_constants_torus, check_lemma_orbit_equality,
    check_pu_trend, check_sabourau_lemma, fit_entropy, growth_series_lattice, length_grid,
    series_from_distances, CheckReport, EntropyError, GrowthSeries, SabourauOptions, GATE_NOTE,
};
use systole_core::generators::{generate, Builtin, GeneratorError, GeneratorParams};
use systole_core::homology::homology_systole_z2;
use systole_core::lattice::{FlatTorus, LatticeError, ModuliPoint};
use systole_core::optimize::{
    optimize_edge_lengths, optimize_moduli, optimize_moduli_many, random_starts, OptimizeError,
    OptimizeOptions,
};
use systole_core::packing::{
    build_nerve, default_r0, greedy_ball_system, maximal_admissible_system, realize_nerve_edges,
    AdmissibilityParams, BallSystem, PackingError, DEFAULT_NERVE_DIMENSION,
};
use systole_core::Surface;

pub mod cache;
pub mod emit;
pub mod input;

use emit::{canonical_json, csv, Format};
use input::{Object, Raw};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("unsupported format `{0}` (expected json or csv)")]
    UnsupportedFormat(String),
    #[error("{0}")]
    Resource(String),
    #[error("no convergence: {0}")]
    Convergence(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Resource(_) | CliError::Convergence(_) => 2,
            _ => 1,
        }
    }
}

impl From<CoverError> for CliError {
    fn from(e: CoverError) -> Self {
        match e {
            CoverError::ResourceLimit { .. } | CoverError::Surface(systole_core::SurfaceError::ResourceLimit { .. }) => {
                CliError::Resource(e.to_string())
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::ResourceLimit { .. } => CliError::Resource(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<PackingError> for CliError {
    fn from(e: PackingError) -> Self {
        match e {
            PackingError::Cover(c) => c.into(),
            PackingError::NoAdmissibleBall { .. } => CliError::Resource(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<EntropyError> for CliError {
    fn from(e: EntropyError) -> Self {
        match e {
            EntropyError::Cover(c) => c.into(),
            EntropyError::Lattice(l) => l.into(),
            EntropyError::Packing(p) => p.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<OptimizeError> for CliError {
    fn from(e: OptimizeError) -> Self {
        match e {
            OptimizeError::MaxIterations(_) => CliError::Convergence(e.to_string()),
            OptimizeError::Cover(c) => c.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<GeneratorError> for CliError {
    fn from(e: GeneratorError) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(name = "systole-lab", version, about = "Systoles, packings and volume entropy on flat tori and surfaces")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Write a builtin surface as JSON.
    Gen {
        /// torus-square, torus-hex, torus-rect, genus2-octagon, rp2-icosa or sphere-tetra
        name: String,
        #[command(flatten)]
        opts: Opts,
    },
    /// Check a surface or torus file.
    Validate(Opts),
    /// Shortest noncontractible loop.
    Systole(Opts),
    /// Systolic ratio area/sys².
    Ratio(Opts),
    /// Greedy maximal packing by balls of one radius.
    Pack(Opts),
    /// Nerve of a greedy or admissible ball system.
    Nerve(Opts),
    /// Maximal system of (α, r)-admissible balls.
    Admissible(Opts),
    /// Growth series of loop classes and a fitted entropy.
    Entropy(Opts),
    /// Run a suite of inequality checks.
    Check(Opts),
    /// Minimize the systolic ratio.
    Optimize(Opts),
}

#[derive(Args, Debug, Clone)]
struct Opts {
    /// Surface or torus JSON file, or a builtin name.
    #[arg(long)]
    input: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "json")]
    format: String,
    /// Subdivision rounds.
    #[arg(short = 'k', long = "k", default_value_t = 0)]
    k: usize,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    radius: Option<f64>,
    /// Length window as Lmin:Lmax.
    #[arg(long)]
    window: Option<String>,
    /// constants, sabourau, burago-hebda, orbit or pu.
    #[arg(long)]
    suite: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    threads: Option<usize>,
    /// The regularity constant A_n.
    #[arg(long, allow_negative_numbers = true)]
    an: Option<f64>,
    /// Include the wall time in the report.
    #[arg(long)]
    timing: bool,
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line on `args`, which exclude the program name.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(std::iter::once("systole-lab".to_string()).chain(args.iter().cloned())) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let (verb, opts) = match &cli.verb {
        Verb::Gen { opts, .. } => ("gen", opts),
        Verb::Validate(o) => ("validate", o),
        Verb::Systole(o) => ("systole", o),
        Verb::Ratio(o) => ("ratio", o),
        Verb::Pack(o) => ("pack", o),
        Verb::Nerve(o) => ("nerve", o),
        Verb::Admissible(o) => ("admissible", o),
        Verb::Entropy(o) => ("entropy", o),
        Verb::Check(o) => ("check", o),
        Verb::Optimize(o) => ("optimize", o),
    };
    let result = match opts.threads {
        Some(0) => Err(CliError::Usage("--threads must be at least 1".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli.verb, verb, opts, &args)),
            Err(e) => Err(CliError::Resource(format!("cannot start {n} threads: {e}"))),
        },
        None => execute(&cli.verb, verb, opts, &args),
    };
    match result {
        Ok(out) => out,
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("systole-lab {verb}: error: {e}\n"),
        },
    }
}

/// What a verb produced, before serialization.
struct Produced {
    results: Value,
    warnings: Vec<String>,
    csv: Option<String>,
    /// Exit code for a report that is still worth printing.
    code: i32,
}

impl Produced {
    fn new(results: Value) -> Self {
        Produced {
            results,
            warnings: Vec::new(),
            csv: None,
            code: 0,
        }
    }
}

fn execute(cmd: &Verb, verb: &str, opts: &Opts, args: &[String]) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let format: Format = opts.format.parse()?;
    let parsed = Parsed::new(verb, opts)?;
    let produced = match cmd {
        Verb::Gen { name, .. } => return gen(name, opts, format, args),
        Verb::Validate(_) => validate(opts)?,
        Verb::Systole(_) => systole(opts)?,
        Verb::Ratio(_) => ratio(opts)?,
        Verb::Pack(_) => pack(opts, &parsed)?,
        Verb::Nerve(_) => nerve(opts, &parsed)?,
        Verb::Admissible(_) => admissible(opts, &parsed)?,
        Verb::Entropy(_) => entropy(opts, &parsed)?,
        Verb::Check(_) => check(opts, &parsed)?,
        Verb::Optimize(_) => optimize(opts)?,
    };
    let mut warnings = parsed.warnings;
    warnings.extend(produced.warnings);
    let bytes = match format {
        Format::Csv => produced
            .csv
            .ok_or_else(|| CliError::UnsupportedFormat(format!("csv (no tabular output for {verb})")))?,
        Format::Json => {
            let mut report = json!({
                "command": { "verb": verb, "args": args },
                "version": env!("CARGO_PKG_VERSION"),
                "results": produced.results,
                "warnings": warnings,
            });
            if opts.timing {
                report["wall_time_s"] = json!(start.elapsed().as_secs_f64());
            }
            canonical_json(&report)
        }
    };
    let stderr = if produced.code != 0 {
        format!("systole-lab {verb}: error: see report\n")
    } else {
        String::new()
    };
    emit_to(opts, bytes, produced.code, stderr)
}

fn emit_to(opts: &Opts, bytes: String, code: i32, stderr: String) -> Result<Outcome, CliError> {
    match &opts.out {
        Some(path) => {
            std::fs::write(path, bytes).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
            Ok(Outcome {
                code,
                stdout: String::new(),
                stderr,
            })
        }
        None => Ok(Outcome {
            code,
            stdout: bytes,
            stderr,
        }),
    }
}

/// Flag values checked before any computation.
struct Parsed {
    window: Option<(f64, f64)>,
    warnings: Vec<String>,
}

impl Parsed {
    fn new(verb: &str, opts: &Opts) -> Result<Self, CliError> {
        let used: &[&str] = match verb {
            "gen" | "validate" | "systole" | "ratio" => &[],
            "pack" => &["radius"],
            "nerve" | "admissible" => &["radius", "alpha", "an"],
            "entropy" => &["window"],
            "check" => &["suite", "alpha", "beta", "window"],
            "optimize" => &["seed"],
            _ => &[],
        };
        let given = [
            ("alpha", opts.alpha.is_some()),
            ("beta", opts.beta.is_some()),
            ("radius", opts.radius.is_some()),
            ("window", opts.window.is_some()),
            ("suite", opts.suite.is_some()),
            ("an", opts.an.is_some()),
            ("seed", opts.seed != 0),
        ];
        let warnings = given
            .iter()
            .filter(|(name, set)| *set && !used.contains(name))
            .map(|(name, _)| format!("--{name} is ignored by {verb}"))
            .collect();
        for (name, value) in [("alpha", opts.alpha), ("beta", opts.beta), ("radius", opts.radius), ("an", opts.an)] {
            if let Some(x) = value {
                if !(x.is_finite() && x > 0.0) {
                    return Err(CliError::Usage(format!("--{name} must be a positive number, got {x}")));
                }
            }
        }
        let window = opts.window.as_deref().map(parse_window).transpose()?;
        if verb != "gen" && verb != "check" && verb != "optimize" && opts.input.is_none() {
            return Err(CliError::Usage(format!("{verb} needs --input")));
        }
        Ok(Parsed { window, warnings })
    }
}

fn parse_window(s: &str) -> Result<(f64, f64), CliError> {
    let bad = || CliError::Usage(format!("--window expects Lmin:Lmax with 0 ≤ Lmin < Lmax, got {s:?}"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let (a, b): (f64, f64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if !(a >= 0.0 && b > a && b.is_finite()) {
        return Err(bad());
    }
    Ok((a, b))
}

fn require_input(opts: &Opts) -> Result<Object, CliError> {
    let input = opts.input.as_deref().ok_or_else(|| CliError::Usage("missing --input".into()))?;
    input::load(input, opts.k)
}

fn require_surface(opts: &Opts, verb: &str) -> Result<Surface, CliError> {
    match require_input(opts)? {
        Object::Surface(s) => Ok(s),
        Object::Torus(_) => Err(CliError::Input(format!("{verb} needs a triangulated surface, not a lattice"))),
    }
}

fn gen(name: &str, opts: &Opts, format: Format, args: &[String]) -> Result<Outcome, CliError> {
    if format != Format::Json {
        return Err(CliError::UnsupportedFormat("csv (surfaces are written as JSON)".into()));
    }
    let which: Builtin = name.parse()?;
    let s = generate(which, &GeneratorParams { k: opts.k, ..Default::default() })?;
    let body = serde_json::to_value(s.to_spec()).expect("surface specs serialize");
    let mut text = serde_json::to_string(&body).expect("values serialize");
    text.push('\n');
    match &opts.out {
        None => Ok(Outcome {
            code: 0,
            stdout: text,
            stderr: String::new(),
        }),
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
            let report = json!({
                "command": { "verb": "gen", "args": args },
                "version": env!("CARGO_PKG_VERSION"),
                "results": surface_summary(&s)?,
                "warnings": Vec::<String>::new(),
            });
            Ok(Outcome {
                code: 0,
                stdout: canonical_json(&report),
                stderr: String::new(),
            })
        }
    }
}

fn surface_summary(s: &Surface) -> Result<Value, CliError> {
    let topo = s.topology();
    Ok(json!({
        "kind": "surface",
        "valid": true,
        "vertices": s.vertex_count(),
        "edges": s.edges().len(),
        "triangles": s.triangle_count(),
        "euler_characteristic": topo.euler_characteristic,
        "genus": topo.genus,
        "orientable": topo.orientable,
        "area": s.area().map_err(|e| CliError::Validation(e.to_string()))?,
        "flat": s.is_flat(),
    }))
}

fn validate(opts: &Opts) -> Result<Produced, CliError> {
    let input = opts.input.as_deref().ok_or_else(|| CliError::Usage("missing --input".into()))?;
    let raw = input::load_raw(input, opts.k)?;
    match raw {
        Raw::Surface(spec) => match Surface::from_spec(spec) {
            Ok(s) => Ok(Produced::new(surface_summary(&s)?)),
            Err(e) => {
                let violations: Vec<String> = if e.violations().is_empty() {
                    vec![e.to_string()]
                } else {
                    e.violations().iter().map(ToString::to_string).collect()
                };
                Ok(Produced {
                    code: 1,
                    ..Produced::new(json!({ "kind": "surface", "valid": false, "violations": violations }))
                })
            }
        },
        Raw::Torus(spec) => match spec.build() {
            Ok(t) => Ok(Produced::new(json!({
                "kind": "torus",
                "valid": true,
                "dimension": t.dim(),
                "volume": t.volume(),
                "basis": t.basis_rows(),
            }))),
            Err(e) => Ok(Produced {
                code: 1,
                ..Produced::new(json!({ "kind": "torus", "valid": false, "violations": [e.to_string()] }))
            }),
        },
    }
}

fn systole(opts: &Opts) -> Result<Produced, CliError> {
    match require_input(opts)? {
        Object::Surface(s) => {
            let h = homotopy_systole(&s)?;
            let z = homology_systole_z2(&s)?;
            Ok(Produced::new(json!({
                "systole": h.length,
                "kind": h.kind,
                "certified": h.certified,
                "representative": h.representative,
                "search_radius": h.search_radius,
                "homology_z2_systole": z.length,
                "model": "graph",
            })))
        }
        Object::Torus(t) => {
            let v = t.shortest_vector()?;
            Ok(Produced::new(json!({
                "systole": v.norm,
                "kind": "homotopy",
                "certified": true,
                "coefficients": v.coefficients,
                "vector": v.vector,
            })))
        }
    }
}

/// τ of a 2-torus, in the fundamental domain.
fn tau_of(t: &FlatTorus) -> Option<ModuliPoint> {
    let rows = t.reduce_basis().basis_rows();
    if rows.len() != 2 {
        return None;
    }
    let (a, b) = (&rows[0], &rows[1]);
    let n = a[0] * a[0] + a[1] * a[1];
    let x = (a[0] * b[0] + a[1] * b[1]) / n;
    let y = ((a[0] * b[1] - a[1] * b[0]) / n).abs();
    Some(ModuliPoint { x, y }.to_fundamental_domain())
}

fn ratio(opts: &Opts) -> Result<Produced, CliError> {
    match require_input(opts)? {
        Object::Surface(s) => {
            let sys = homotopy_systole(&s)?.length;
            let area = s.area().map_err(|e| CliError::Validation(e.to_string()))?;
            Ok(Produced::new(json!({ "area": area, "systole": sys, "ratio": area / (sys * sys) })))
        }
        Object::Torus(t) => {
            let mut results = json!({
                "volume": t.volume(),
                "systole": t.systole()?,
                "ratio": t.systolic_ratio()?,
                "dimension": t.dim(),
            });
            if let Some(tau) = tau_of(&t) {
                results["tau"] = json!([tau.x, tau.y]);
            }
            Ok(Produced::new(results))
        }
    }
}

fn balls_csv(system: &BallSystem) -> String {
    let rows: Vec<Vec<Value>> = system.balls.iter().map(|b| vec![json!(b.center), json!(b.radius)]).collect();
    csv(&["center", "radius"], &rows)
}

fn pack(opts: &Opts, _: &Parsed) -> Result<Produced, CliError> {
    let s = require_surface(opts, "pack")?;
    let radius = opts.radius.ok_or_else(|| CliError::Usage("pack needs --radius".into()))?;
    let system = greedy_ball_system(&s, radius)?;
    let uncovered = system.uncovered(&s, 2.0);
    Ok(Produced {
        csv: Some(balls_csv(&system)),
        ..Produced::new(json!({
            "radius": radius,
            "count": system.len(),
            "balls": system.balls,
            "disjoint": system.is_disjoint(&s),
            "doubled_cover": uncovered.is_empty(),
        }))
    })
}

fn admissibility_params(s: &Surface, opts: &Opts) -> Result<(AdmissibilityParams, f64), CliError> {
    let alpha = opts.alpha.ok_or_else(|| CliError::Usage("--alpha is required".into()))?;
    let r0 = default_r0(s)?;
    let mut params = AdmissibilityParams::new(alpha, opts.radius.unwrap_or(r0 / 25.0), DistanceModel::auto(s));
    if let Some(a_n) = opts.an {
        params.a_n = a_n;
    }
    Ok((params, r0))
}

fn nerve(opts: &Opts, _: &Parsed) -> Result<Produced, CliError> {
    let s = require_surface(opts, "nerve")?;
    let betti = s.topology().betti_z2();
    let (system, source) = if opts.alpha.is_some() {
        let (params, _) = admissibility_params(&s, opts)?;
        (maximal_admissible_system(&s, &params)?.system, "admissible")
    } else {
        let radius = opts
            .radius
            .ok_or_else(|| CliError::Usage("nerve needs --radius or --alpha".into()))?;
        (greedy_ball_system(&s, radius)?, "greedy")
    };
    let nerve = build_nerve(&s, &system, 2.0, DEFAULT_NERVE_DIMENSION);
    let counts = nerve.counts();
    let mut results = nerve.to_json();
    results["source"] = json!(source);
    results["betti_z2"] = json!(betti);
    results["dominates_betti"] = json!((0..3).all(|k| betti[k] <= counts.get(k).copied().unwrap_or(0)));
    let sys = homotopy_systole(&s)?.length;
    if system.balls.iter().all(|b| b.radius < sys / 6.0) {
        let real = realize_nerve_edges(&s, &system, sys)?;
        let longest = real.triangles.iter().map(|t| t.boundary_length).fold(0.0, f64::max);
        results["realization"] = json!({
            "systole": sys,
            "edges": real.edges.len(),
            "triangles": real.triangles.len(),
            "longest_boundary": longest,
            "boundaries_below_systole": real.boundaries_below_systole(),
        });
    }
    Ok(Produced {
        csv: Some(balls_csv(&system)),
        ..Produced::new(results)
    })
}

fn admissible(opts: &Opts, _: &Parsed) -> Result<Produced, CliError> {
    let s = require_surface(opts, "admissible")?;
    let (params, _) = admissibility_params(&s, opts)?;
    let system = maximal_admissible_system(&s, &params)?;
    let area = s.area().map_err(|e| CliError::Validation(e.to_string()))?;
    let lhs = system.system.len() as f64 * system.c_n * system.r0 * system.r0;
    Ok(Produced {
        csv: Some(balls_csv(&system.system)),
        ..Produced::new(json!({
            "alpha": params.alpha,
            "r": params.r,
            "r0": system.r0,
            "a_n": params.a_n,
            "model": params.model,
            "m0": system.m0,
            "c_n": system.c_n,
            "grid": system.grid,
            "count": system.system.len(),
            "balls": system.system.balls,
            "doubled_cover": system.doubled_cover,
            "count_bound": { "lhs": lhs, "rhs": area, "verdict": lhs <= area },
        }))
    })
}

const SERIES_POINTS: usize = 13;

fn series_csv(series: &GrowthSeries) -> String {
    let rows: Vec<Vec<Value>> = series
        .lengths
        .iter()
        .zip(&series.counts)
        .map(|(l, c)| vec![json!(l), json!(c)])
        .collect();
    csv(&["L", "count"], &rows)
}

fn entropy(opts: &Opts, parsed: &Parsed) -> Result<Produced, CliError> {
    let (series, sys): (GrowthSeries, f64) = match require_input(opts)? {
        Object::Surface(s) => {
            let sys = homotopy_systole(&s)?.length;
            let (lo, hi) = parsed.window.unwrap_or((2.0 * sys, 5.0 * sys));
            let ls = length_grid(lo, hi, SERIES_POINTS);
            let model = DistanceModel::auto(&s);
            let dir = std::env::var_os(cache::ENV).map(PathBuf::from);
            let (d, _) = cache::cached_lift_distances(dir, &s, 0, hi, model)?;
            (series_from_distances(0, &d, &ls), sys)
        }
        Object::Torus(t) => {
            let sys = t.systole()?;
            let (lo, hi) = parsed.window.unwrap_or((2.0 * sys, 5.0 * sys));
            (growth_series_lattice(&t, &length_grid(lo, hi, SERIES_POINTS))?, sys)
        }
    };
    let window = (series.lengths[0], *series.lengths.last().unwrap());
    let fit = fit_entropy(&series, window)?;
    Ok(Produced {
        csv: Some(series_csv(&series)),
        warnings: vec!["entropy is a finite-window estimate, not the limit".into()],
        ..Produced::new(json!({ "series": series, "fit": fit, "systole": sys }))
    })
}

fn check(opts: &Opts, parsed: &Parsed) -> Result<Produced, CliError> {
    let suite = opts.suite.as_deref().unwrap_or("constants");
    let mut warnings = Vec::new();
    let checks: Vec<CheckReport> = match suite {
        "pu" => {
            let max_k = if opts.k == 0 { 3 } else { opts.k };
            vec![check_pu_trend(max_k, 0.1)?]
        }
        "constants" => match require_input(opts)? {
            Object::Surface(s) => check_constants_surface(&s)?,
            Object::Torus(t) => check_constants_torus(&t)?,
        },
        "sabourau" => {
            let s = require_surface(opts, "the sabourau suite")?;
            let alphas = opts.alpha.map_or(vec![0.02, 0.05], |a| vec![a]);
            let betas = opts.beta.map_or(vec![0.05, 0.1], |b| vec![b]);
            warnings.push(GATE_NOTE.to_string());
            let mut out = Vec::new();
            for &a in &alphas {
                for &b in &betas {
                    out.push(check_sabourau_lemma(&s, a, b, &SabourauOptions::default())?);
                }
            }
            out
        }
        "burago-hebda" => vec![check_burago_hebda(&require_surface(opts, "the burago-hebda suite")?)?],
        "orbit" => {
            let s = require_surface(opts, "the orbit suite")?;
            let torus = deck_lattice(&s)?;
            let (lo, hi) = parsed.window.unwrap_or((0.0, 6.0));
            let ls = length_grid(lo, hi, SERIES_POINTS);
            vec![check_lemma_orbit_equality(&s, &torus, 0, &ls, DistanceModel::Developed)?]
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown suite `{other}` (expected constants, sabourau, burago-hebda, orbit or pu)"
            )))
        }
    };
    let passed = checks.iter().all(|c| c.verdict);
    Ok(Produced {
        warnings,
        ..Produced::new(json!({ "suite": suite, "checks": checks, "passed": passed }))
    })
}

fn optimize(opts: &Opts) -> Result<Produced, CliError> {
    let options = OptimizeOptions {
        seed: opts.seed,
        ..OptimizeOptions::default()
    };
    let trace_csv = |trace: &[systole_core::optimize::TracePoint]| {
        let rows: Vec<Vec<Value>> = trace.iter().map(|p| vec![json!(p.x), json!(p.y), json!(p.value)]).collect();
        csv(&["x", "y", "value"], &rows)
    };
    let Some(input) = opts.input.as_deref() else {
        let starts = random_starts(50, opts.seed);
        let runs = optimize_moduli_many(&starts, &options)
            .into_iter()
            .collect::<Result<Vec<_>, _>>()?;
        let best = runs
            .iter()
            .min_by(|a, b| a.ratio.total_cmp(&b.ratio))
            .expect("fifty runs");
        let summary: Vec<Value> = runs
            .iter()
            .map(|r| json!({ "start": r.start, "tau": r.tau, "ratio": r.ratio, "iterations": r.iterations }))
            .collect();
        return Ok(Produced {
            csv: Some(trace_csv(&best.trace)),
            ..Produced::new(json!({ "seed": opts.seed, "runs": summary, "best": best }))
        });
    };
    match input::load(input, opts.k)? {
        Object::Torus(t) => {
            let tau = tau_of(&t).ok_or_else(|| CliError::Input("moduli search needs a 2-torus".into()))?;
            let r = optimize_moduli(tau, &options)?;
            Ok(Produced {
                csv: Some(trace_csv(&r.trace)),
                ..Produced::new(serde_json::to_value(&r).expect("results serialize"))
            })
        }
        Object::Surface(s) => {
            let r = optimize_edge_lengths(&s, &OptimizeOptions::edge_search())?;
            let rows: Vec<Vec<Value>> = r.trace.iter().enumerate().map(|(i, v)| vec![json!(i), json!(v)]).collect();
            Ok(Produced {
                csv: Some(csv(&["step", "ratio"], &rows)),
                warnings: vec!["ratios use the edge-graph systole, which is at least the geodesic systole".into()],
                ..Produced::new(serde_json::to_value(&r).expect("results serialize"))
            })
        }
    }
}
