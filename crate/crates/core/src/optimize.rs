//! Derivative-free minimization of systolic ratios.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::covering::{homology_detects_systole, homotopy_systole, CoverError};
use crate::homology::has_nontrivial_cycle_below;
use crate::lattice::{moduli_ratio, ModuliPoint};
use crate::par;
use crate::surface::{Surface, SurfaceSpec};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OptimizeError {
    #[error("start must lie in the upper half-plane, got y = {0}")]
    InvalidStart(f64),
    #[error("no convergence within {0} iterations")]
    MaxIterations(usize),
    #[error("surface is simply connected")]
    SimplyConnected,
    #[error("no valid perturbation of the starting metric")]
    DegenerateMetric,
    #[error(transparent)]
    Cover(CoverError),
}

impl From<CoverError> for OptimizeError {
    fn from(e: CoverError) -> Self {
        match e {
            CoverError::SimplyConnected => OptimizeError::SimplyConnected,
            other => OptimizeError::Cover(other),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OptimizeOptions {
    pub max_iter: usize,
    /// Simplex diameter for the moduli search, smallest step for the edge search.
    pub tol: f64,
    pub restarts: usize,
    pub seed: u64,
    /// First relative step of the edge search.
    pub initial_step: f64,
}

impl Default for OptimizeOptions {
    fn default() -> Self {
        OptimizeOptions {
            max_iter: 2000,
            tol: 1e-8,
            restarts: 3,
            seed: 0,
            initial_step: 0.1,
        }
    }
}

impl OptimizeOptions {
    pub fn edge_search() -> Self {
        OptimizeOptions {
            max_iter: 200,
            tol: 1e-2,
            restarts: 0,
            seed: 0,
            initial_step: 0.2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TracePoint {
    pub x: f64,
    pub y: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModuliResult {
    pub tau: ModuliPoint,
    pub ratio: f64,
    pub start: ModuliPoint,
    pub iterations: usize,
    pub converged: bool,
    pub trace: Vec<TracePoint>,
}

fn objective(x: f64, y: f64) -> f64 {
    if !(y > 0.0) || !x.is_finite() || !y.is_finite() {
        return f64::INFINITY;
    }
    moduli_ratio(ModuliPoint { x, y }).unwrap_or(f64::INFINITY)
}

/// Nelder–Mead on ratio(τ) = y / sv((1,0),(x,y))², restarted from the best
/// vertex `options.restarts` times. The result is reduced to the fundamental
/// domain.
pub fn optimize_moduli(start: ModuliPoint, options: &OptimizeOptions) -> Result<ModuliResult, OptimizeError> {
    if !(start.y > 0.0) || !start.y.is_finite() || !start.x.is_finite() {
        return Err(OptimizeError::InvalidStart(start.y));
    }
    // The objective is modular invariant, so search from the reduced start.
    let reduced = start.to_fundamental_domain();
    let mut best = [reduced.x, reduced.y];
    let mut trace = vec![TracePoint {
        x: best[0],
        y: best[1],
        value: objective(best[0], best[1]),
    }];
    let mut iterations = 0;
    let mut converged = false;
    for _ in 0..=options.restarts {
        let step = 0.1 * best[1].min(1.0);
        let (point, its, done) = nelder_mead(best, step, options, &mut trace, options.max_iter - iterations.min(options.max_iter));
        iterations += its;
        let improved = objective(point[0], point[1]) < objective(best[0], best[1]) - 1e-15;
        best = point;
        converged = done;
        if !improved && done {
            break;
        }
    }
    if !converged {
        return Err(OptimizeError::MaxIterations(options.max_iter));
    }
    let tau = boundary_representative(ModuliPoint { x: best[0], y: best[1] }.to_fundamental_domain());
    Ok(ModuliResult {
        tau,
        ratio: objective(tau.x, tau.y),
        start,
        iterations,
        converged,
        trace,
    })
}

/// Points within the search accuracy of the domain's left edges are moved to
/// their x ≥ 0 partners.
fn boundary_representative(tau: ModuliPoint) -> ModuliPoint {
    const SNAP: f64 = 1e-6;
    let ModuliPoint { mut x, y } = tau;
    if x < 0.0 && (x + 0.5).abs() < SNAP {
        x += 1.0;
    }
    if x < 0.0 && (x * x + y * y - 1.0).abs() < SNAP {
        x = -x;
    }
    ModuliPoint { x, y }
}

/// `count` starts uniform in [−2, 2] × (0, 3], reproducible from `seed`.
pub fn random_starts(count: usize, seed: u64) -> Vec<ModuliPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| ModuliPoint {
            x: rng.gen_range(-2.0..=2.0),
            y: 3.0 - rng.gen_range(0.0..3.0),
        })
        .collect()
}

/// Runs `optimize_moduli` from each start in parallel.
pub fn optimize_moduli_many(
    starts: &[ModuliPoint],
    options: &OptimizeOptions,
) -> Vec<Result<ModuliResult, OptimizeError>> {
    par::map(starts, |s| optimize_moduli(*s, options))
}

fn nelder_mead(
    start: [f64; 2],
    step: f64,
    options: &OptimizeOptions,
    trace: &mut Vec<TracePoint>,
    budget: usize,
) -> ([f64; 2], usize, bool) {
    let f = |p: [f64; 2]| objective(p[0], p[1]);
    let mut simplex = [
        start,
        [start[0] + step, start[1]],
        [start[0], start[1] + step],
    ];
    let mut values = simplex.map(f);
    let mut iterations = 0;
    loop {
        let mut order = [0, 1, 2];
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.map(|i| simplex[i]);
        values = order.map(|i| values[i]);
        let diameter = (0..3)
            .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
            .map(|(i, j)| ((simplex[i][0] - simplex[j][0]).powi(2) + (simplex[i][1] - simplex[j][1]).powi(2)).sqrt())
            .fold(0.0, f64::max);
        if diameter < options.tol {
            return (simplex[0], iterations, true);
        }
        if iterations >= budget {
            return (simplex[0], iterations, false);
        }
        iterations += 1;
        let centroid = [
            0.5 * (simplex[0][0] + simplex[1][0]),
            0.5 * (simplex[0][1] + simplex[1][1]),
        ];
        let along = |t: f64| {
            [
                centroid[0] + t * (simplex[2][0] - centroid[0]),
                centroid[1] + t * (simplex[2][1] - centroid[1]),
            ]
        };
        let reflected = along(-1.0);
        let fr = f(reflected);
        if fr < values[0] {
            let expanded = along(-2.0);
            let fe = f(expanded);
            if fe < fr {
                simplex[2] = expanded;
                values[2] = fe;
            } else {
                simplex[2] = reflected;
                values[2] = fr;
            }
        } else if fr < values[1] {
            simplex[2] = reflected;
            values[2] = fr;
        } else {
            let (contracted, fc) = if fr < values[2] {
                let c = along(-0.5);
                (c, f(c))
            } else {
                let c = along(0.5);
                (c, f(c))
            };
            if fc < values[2].min(fr) {
                simplex[2] = contracted;
                values[2] = fc;
            } else {
                for i in 1..3 {
                    simplex[i] = [
                        0.5 * (simplex[0][0] + simplex[i][0]),
                        0.5 * (simplex[0][1] + simplex[i][1]),
                    ];
                    values[i] = f(simplex[i]);
                }
            }
        }
        let lead = if values[2] < values[0] { 2 } else { 0 };
        if values[lead] < trace.last().map_or(f64::INFINITY, |t| t.value) {
            trace.push(TracePoint {
                x: simplex[lead][0],
                y: simplex[lead][1],
                value: values[lead],
            });
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeStep {
    pub edge: usize,
    pub factor: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeLengthResult {
    pub surface: SurfaceSpec,
    pub initial_ratio: f64,
    pub ratio: f64,
    /// Accepted objective values, starting with the initial one.
    pub trace: Vec<f64>,
    pub steps: Vec<EdgeStep>,
    pub evaluations: usize,
    pub final_step: f64,
}

fn edge_ratio(surface: &Surface) -> Result<(f64, f64), OptimizeError> {
    let sys = homotopy_systole(surface)?.length;
    let area = surface.area().map_err(CoverError::from)?;
    Ok((area / (sys * sys), sys))
}

/// Coordinate pattern search on per-edge factors 1 ± s, accepting strict
/// decreases of area/sys² and rescaling to sys = 1 after each acceptance.
/// The step halves after a sweep without acceptance and the search stops
/// below `options.tol` or after `options.max_iter` sweeps.
pub fn optimize_edge_lengths(surface: &Surface, options: &OptimizeOptions) -> Result<EdgeLengthResult, OptimizeError> {
    if surface.topology().is_sphere() {
        return Err(OptimizeError::SimplyConnected);
    }
    let (r0, sys0) = edge_ratio(surface)?;
    let mut lengths: Vec<f64> = surface.edge_lengths().iter().map(|l| l / sys0).collect();
    let mut current = surface.with_edge_lengths(&lengths).map_err(CoverError::from)?;
    let mut ratio = r0;
    let mut step = options.initial_step;
    let perturb = |lengths: &[f64], e: usize, factor: f64| {
        let mut l = lengths.to_vec();
        l[e] *= factor;
        l
    };
    let any_valid = (0..lengths.len()).any(|e| {
        [1.0 + step, 1.0 - step]
            .iter()
            .any(|&f| current.with_edge_lengths(&perturb(&lengths, e, f)).is_ok())
    });
    if !any_valid {
        return Err(OptimizeError::DegenerateMetric);
    }
    let shortcut = homology_detects_systole(surface);
    let mut trace = vec![ratio];
    let mut steps = Vec::new();
    let mut evaluations = 0;
    let mut sweeps = 0;
    while step >= options.tol && sweeps < options.max_iter {
        sweeps += 1;
        let mut accepted = false;
        for e in 0..lengths.len() {
            for factor in [1.0 - step, 1.0 + step] {
                let candidate = perturb(&lengths, e, factor);
                let Ok(s) = current.with_edge_lengths(&candidate) else {
                    continue;
                };
                evaluations += 1;
                if shortcut {
                    // Rejection test: a nontrivial cycle of length ≤ √(area/ratio).
                    let area = s.area().map_err(CoverError::from)?;
                    let threshold = (area / ratio).sqrt() * (1.0 + 1e-9);
                    if has_nontrivial_cycle_below(&s, threshold, &current.edges()[e])? {
                        continue;
                    }
                }
                let (r, sys) = edge_ratio(&s)?;
                if r < ratio {
                    lengths = candidate.iter().map(|l| l / sys).collect();
                    current = current.with_edge_lengths(&lengths).map_err(CoverError::from)?;
                    ratio = r;
                    trace.push(r);
                    steps.push(EdgeStep { edge: e, factor, ratio: r });
                    accepted = true;
                    break;
                }
            }
        }
        if !accepted {
            step *= 0.5;
        }
    }
    Ok(EdgeLengthResult {
        surface: current.to_spec(),
        initial_ratio: r0,
        ratio,
        trace,
        steps,
        evaluations,
        final_step: step,
    })
}
