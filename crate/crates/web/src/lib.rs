//! Browser bindings. Every function returns a JSON string so the page stays
//! plain JavaScript.

use serde::Serialize;
use systole_core::covering::{lift_distances, DistanceModel};
use systole_core::entropy::{fit_entropy, growth_series_lattice, length_grid, series_from_distances};
use systole_core::generators::{genus2_octagon, torus_grid};
use systole_core::lattice::{moduli_ratio, FlatTorus, ModuliPoint};
use systole_core::optimize::{optimize_moduli, OptimizeOptions, TracePoint};
use systole_core::packing::greedy_ball_system;
use wasm_bindgen::prelude::*;

/// Genus-2 growth is only developed this far; the cover grows like e^{2L}.
pub const OCTAGON_MAX_LENGTH: f64 = 5.0;

fn to_js<T: Serialize>(value: &Result<T, String>) -> String {
    match value {
        Ok(v) => serde_json::to_string(v).unwrap_or_else(|e| error_json(&e.to_string())),
        Err(e) => error_json(e),
    }
}

fn error_json(message: &str) -> String {
    serde_json::json!({ "error": message }).to_string()
}

#[derive(Serialize)]
pub struct Heatmap {
    pub x: [f64; 2],
    pub y: [f64; 2],
    pub nx: usize,
    pub ny: usize,
    /// Row-major from the bottom row, `None` where y ≤ 0.
    pub ratio: Vec<Option<f64>>,
    pub trace: Vec<TracePoint>,
    pub tau: [f64; 2],
    pub best_ratio: f64,
}

pub fn heatmap(x0: f64, y0: f64, nx: usize, ny: usize) -> Result<Heatmap, String> {
    let (x, y) = ([-1.0, 1.0], [0.25, 2.0]);
    let (nx, ny) = (nx.clamp(2, 400), ny.clamp(2, 400));
    let mut ratio = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        let yy = y[0] + (y[1] - y[0]) * (j as f64 + 0.5) / ny as f64;
        for i in 0..nx {
            let xx = x[0] + (x[1] - x[0]) * (i as f64 + 0.5) / nx as f64;
            ratio.push(ModuliPoint::new(xx, yy).ok().and_then(|t| moduli_ratio(t).ok()));
        }
    }
    let start = ModuliPoint::new(x0, y0).map_err(|e| e.to_string())?;
    let run = optimize_moduli(start, &OptimizeOptions::default()).map_err(|e| e.to_string())?;
    Ok(Heatmap {
        x,
        y,
        nx,
        ny,
        ratio,
        trace: run.trace,
        tau: [run.tau.x, run.tau.y],
        best_ratio: run.ratio,
    })
}

#[derive(Serialize)]
pub struct Curve {
    pub label: String,
    pub lengths: Vec<f64>,
    pub counts: Vec<u64>,
    pub slope: Option<f64>,
}

#[derive(Serialize)]
pub struct Growth {
    pub torus: Curve,
    pub octagon: Curve,
}

pub fn growth(x: f64, y: f64, l_max: f64) -> Result<Growth, String> {
    if !(l_max > 0.0) || !l_max.is_finite() {
        return Err("the maximal length must be positive".into());
    }
    let torus = FlatTorus::from_tau(ModuliPoint::new(x, y).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let ls = length_grid(0.0, l_max, 41);
    let lattice = growth_series_lattice(&torus, &ls).map_err(|e| e.to_string())?;
    let top = l_max.min(OCTAGON_MAX_LENGTH);
    let ls_oct = length_grid(0.0, top, 41);
    let d = lift_distances(&genus2_octagon(), 0, top, DistanceModel::Graph).map_err(|e| e.to_string())?;
    let octagon = series_from_distances(0, &d, &ls_oct);
    let slope_torus = fit_entropy(&lattice, (0.5 * l_max, l_max)).ok().map(|f| f.slope);
    let slope_oct = fit_entropy(&octagon, (0.5 * top, top)).ok().map(|f| f.slope);
    Ok(Growth {
        torus: Curve {
            label: format!("flat torus τ = {x:.3} + {y:.3}i"),
            lengths: lattice.lengths,
            counts: lattice.counts,
            slope: slope_torus,
        },
        octagon: Curve {
            label: "genus-2 octagon".into(),
            lengths: octagon.lengths,
            counts: octagon.counts,
            slope: slope_oct,
        },
    })
}

#[derive(Serialize)]
pub struct Packing {
    pub basis: [[f64; 2]; 2],
    pub radius: f64,
    pub centers: Vec<[f64; 2]>,
    pub vertices: Vec<[f64; 2]>,
}

pub fn packing(x: f64, y: f64, radius: f64, cells: usize) -> Result<Packing, String> {
    let tau = ModuliPoint::new(x, y).map_err(|e| e.to_string())?;
    // Unit-area torus with basis (s, 0), (s x, s y).
    let s = 1.0 / tau.y.sqrt();
    let basis = [[s, 0.0], [s * tau.x, s * tau.y]];
    let n = cells.clamp(3, 40);
    let (surface, coords) = torus_grid(basis, n, n).map_err(|e| e.to_string())?;
    let system = greedy_ball_system(&surface, radius).map_err(|e| e.to_string())?;
    Ok(Packing {
        basis,
        radius,
        centers: system.balls.iter().map(|b| coords[b.center]).collect(),
        vertices: coords,
    })
}

/// Ratio heatmap over the moduli strip with the optimizer trace from (x0, y0).
#[wasm_bindgen(js_name = moduliHeatmap)]
pub fn moduli_heatmap_js(x0: f64, y0: f64, nx: usize, ny: usize) -> String {
    to_js(&heatmap(x0, y0, nx, ny))
}

/// Orbit counts of the torus τ = x + iy against lift counts on the octagon.
#[wasm_bindgen(js_name = growthCurves)]
pub fn growth_curves_js(x: f64, y: f64, l_max: f64) -> String {
    to_js(&growth(x, y, l_max))
}

/// Greedy packing by balls of the given radius on a unit-area torus.
#[wasm_bindgen(js_name = torusPacking)]
pub fn torus_packing_js(x: f64, y: f64, radius: f64, cells: usize) -> String {
    to_js(&packing(x, y, radius, cells))
}
