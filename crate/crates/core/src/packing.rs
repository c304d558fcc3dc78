//! Ball systems on a surface: greedy packings, Čech nerves, (α, r)-admissible
//! balls and the realization of nerve edges by shortest paths.
//!
//! Centers are vertices and distances between centers are edge-graph
//! distances. Ball areas for admissibility come from [`crate::balls`] in the
//! chosen distance model and are used with the side of the bracket that
//! makes each verdict conservative.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::balls::{ball_vertices, BallProfile};
use crate::covering::{homotopy_systole, CoverError, DistanceModel};
use crate::par;
use crate::surface::Surface;

/// Surfaces are two-dimensional.
const DIM: i32 = 2;

/// Default dimension cap for nerve simplices.
pub const DEFAULT_NERVE_DIMENSION: usize = 4;

/// Default number of grid points per factor 5 when sampling radii.
pub const DEFAULT_GRID_STEPS: usize = 8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PackingError {
    #[error("alpha must exceed 5^n = 25, got {0}")]
    InvalidAlpha(f64),
    #[error("invalid radii: {0}")]
    InvalidRadii(String),
    #[error("vertex {vertex} has no ({alpha}, {r})-admissible ball on the sampled grid ({without} vertices lack one)")]
    NoAdmissibleBall {
        vertex: usize,
        alpha: f64,
        r: f64,
        without: usize,
    },
    #[error("ball radius {radius} is not below sys/6 = {limit}")]
    RadiusTooLarge { radius: f64, limit: f64 },
    #[error(transparent)]
    Cover(#[from] CoverError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Ball {
    pub center: usize,
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BallSystem {
    pub balls: Vec<Ball>,
}

impl BallSystem {
    pub fn len(&self) -> usize {
        self.balls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.balls.is_empty()
    }

    /// The concentric system with every radius multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> BallSystem {
        BallSystem {
            balls: self
                .balls
                .iter()
                .map(|b| Ball {
                    center: b.center,
                    radius: factor * b.radius,
                })
                .collect(),
        }
    }

    /// Whether d(cᵢ, cⱼ) ≥ Rᵢ + Rⱼ for every pair.
    pub fn is_disjoint(&self, surface: &Surface) -> bool {
        self.balls.iter().enumerate().all(|(i, a)| {
            let d = surface.graph_distances(a.center, f64::INFINITY);
            self.balls[i + 1..]
                .iter()
                .all(|b| d[b.center] >= (a.radius + b.radius) * (1.0 - 1e-12))
        })
    }

    /// Vertices not within `factor`·Rⱼ of any center.
    pub fn uncovered(&self, surface: &Surface, factor: f64) -> Vec<usize> {
        let mut covered = vec![false; surface.vertex_count()];
        for b in &self.balls {
            for w in ball_vertices(surface, b.center, factor * b.radius) {
                covered[w] = true;
            }
        }
        (0..covered.len()).filter(|&w| !covered[w]).collect()
    }
}

/// Scan vertices by increasing id and keep each one at distance ≥ 2R from
/// all centers kept so far.
pub fn greedy_ball_system(surface: &Surface, radius: f64) -> Result<BallSystem, PackingError> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(PackingError::InvalidRadii(format!("radius {radius} must be positive")));
    }
    let n = surface.vertex_count();
    let mut blocked = vec![false; n];
    let mut balls = Vec::new();
    let reach = 2.0 * radius;
    for v in 0..n {
        if blocked[v] {
            continue;
        }
        balls.push(Ball { center: v, radius });
        for (w, d) in surface.graph_distances(v, reach).into_iter().enumerate() {
            if d < reach * (1.0 - 1e-12) {
                blocked[w] = true;
            }
        }
    }
    Ok(BallSystem { balls })
}

/// Čech nerve of a ball system realized on the vertex set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NerveComplex {
    pub factor: f64,
    pub balls: Vec<Ball>,
    /// Simplices by dimension, each a sorted list of ball indices.
    pub simplices: Vec<Vec<Vec<usize>>>,
}

impl NerveComplex {
    /// Number of k-simplices for k = 0, 1, …, up to the dimension cap.
    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    /// Export as {"balls": [...], "simplices": {"0": N₀, ...}, "factor": f}.
    pub fn to_json(&self) -> serde_json::Value {
        let counts: BTreeMap<String, usize> = self
            .counts()
            .into_iter()
            .enumerate()
            .map(|(k, c)| (k.to_string(), c))
            .collect();
        serde_json::json!({
            "balls": self.balls,
            "simplices": counts,
            "factor": self.factor,
        })
    }
}

/// Nerve of the balls of radius `factor`·Rᵢ in the edge graph viewed as a
/// metric graph: a set of balls spans a simplex when some point of some edge
/// lies in all of them.
pub fn build_nerve(
    surface: &Surface,
    system: &BallSystem,
    factor: f64,
    max_dimension: usize,
) -> NerveComplex {
    let dist = par::map(&system.balls, |b| {
        surface.graph_distances(b.center, factor * b.radius * (1.0 + 1e-12))
    });
    let radii: Vec<f64> = system.balls.iter().map(|b| factor * b.radius).collect();
    let mut found: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); max_dimension + 1];
    let mut subset = Vec::new();
    let mut seen = BTreeSet::new();
    for (e, &[a, b]) in surface.edges().iter().enumerate() {
        let len = surface.edge_lengths()[e];
        // Reach of each ball into the edge from either end.
        let reach: Vec<(usize, f64, f64)> = dist
            .iter()
            .enumerate()
            .filter_map(|(i, d)| {
                let (from_a, from_b) = (radii[i] - d[a], radii[i] - d[b]);
                (from_a >= 0.0 || from_b >= 0.0).then_some((i, from_a, from_b))
            })
            .collect();
        if reach.is_empty() {
            continue;
        }
        // Any common point can be slid to an interval endpoint.
        let mut points = vec![0.0, len];
        for &(_, from_a, from_b) in &reach {
            if from_a >= 0.0 && from_a < len {
                points.push(from_a);
            }
            if from_b >= 0.0 && from_b < len {
                points.push(len - from_b);
            }
        }
        let tol = 1e-12 * len.max(1.0);
        for t in points {
            let members: Vec<usize> = reach
                .iter()
                .filter(|&&(_, from_a, from_b)| t <= from_a + tol || len - t <= from_b + tol)
                .map(|r| r.0)
                .collect();
            if !members.is_empty() && seen.insert(members.clone()) {
                collect_subsets(&members, 0, &mut subset, &mut found, max_dimension + 1);
            }
        }
    }
    NerveComplex {
        factor,
        balls: system.balls.clone(),
        simplices: found.into_iter().map(|s| s.into_iter().collect()).collect(),
    }
}

fn collect_subsets(
    items: &[usize],
    start: usize,
    current: &mut Vec<usize>,
    out: &mut [BTreeSet<Vec<usize>>],
    max_size: usize,
) {
    if !current.is_empty() {
        out[current.len() - 1].insert(current.clone());
    }
    if current.len() == max_size {
        return;
    }
    for i in start..items.len() {
        current.push(items[i]);
        collect_subsets(items, i + 1, current, out, max_size);
        current.pop();
    }
}

/// Parameters of (α, r)-admissibility.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdmissibilityParams {
    pub alpha: f64,
    pub r: f64,
    /// Upper radius R₀; `None` means sys/12.
    pub r0: Option<f64>,
    /// Configured value of the regularity constant A_n.
    pub a_n: f64,
    pub grid_steps: usize,
    pub model: DistanceModel,
}

impl AdmissibilityParams {
    pub fn new(alpha: f64, r: f64, model: DistanceModel) -> Self {
        AdmissibilityParams {
            alpha,
            r,
            r0: None,
            a_n: 0.1,
            grid_steps: DEFAULT_GRID_STEPS,
            model,
        }
    }

    fn validate(&self) -> Result<(), PackingError> {
        if !(self.alpha > 25.0) || !self.alpha.is_finite() {
            return Err(PackingError::InvalidAlpha(self.alpha));
        }
        if !(self.r > 0.0) {
            return Err(PackingError::InvalidRadii(format!("r = {} must be positive", self.r)));
        }
        if !(self.a_n > 0.0) {
            return Err(PackingError::InvalidRadii(format!("A_n = {} must be positive", self.a_n)));
        }
        if self.grid_steps == 0 {
            return Err(PackingError::InvalidRadii("grid needs at least one step".into()));
        }
        Ok(())
    }
}

/// R₀ = sys/12 with the edge-graph homotopy systole.
pub fn default_r0(surface: &Surface) -> Result<f64, PackingError> {
    Ok(homotopy_systole(surface)?.length / 12.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DoublingCheck {
    pub radius: f64,
    /// Bound on the area of the 5× ball used by the check.
    pub area_5r: f64,
    /// Bound on the area of the ball itself used by the check.
    pub area_r: f64,
    pub verdict: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdmissibilityReport {
    pub center: usize,
    pub radius: f64,
    pub alpha: f64,
    pub r: f64,
    pub r0: f64,
    pub a_n: f64,
    pub model: DistanceModel,
    /// Upper bound of the 5R ball against α times the lower bound of the R ball.
    pub condition1: DoublingCheck,
    /// Lower bound of the 5R′ ball against α times the upper bound of the R′
    /// ball, for R′ on the grid R·5^{k/q} inside (R, R₀].
    pub condition2: Vec<DoublingCheck>,
    pub condition2_verdict: bool,
    pub admissible: bool,
    pub m0: f64,
    pub c_n: f64,
}

/// m₀(α) for the given total area, R₀ and A_n.
pub fn m0(area: f64, r0: f64, alpha: f64, a_n: f64) -> f64 {
    (area.ln() - f64::from(DIM) * r0.ln() - a_n.ln()) / (alpha.ln() - f64::from(DIM) * 5f64.ln())
}

/// C_n(α) = 5^{−m₀ n} A_n.
pub fn c_n(m0: f64, a_n: f64) -> f64 {
    5f64.powf(-m0 * f64::from(DIM)) * a_n
}

fn condition1(profile: &BallProfile, radius: f64, alpha: f64) -> DoublingCheck {
    let big = profile.area(5.0 * radius).upper;
    let small = profile.area(radius).lower;
    DoublingCheck {
        radius,
        area_5r: big,
        area_r: small,
        verdict: big <= alpha * small,
    }
}

fn condition2(profile: &BallProfile, radius: f64, alpha: f64) -> DoublingCheck {
    let big = profile.area(5.0 * radius).lower;
    let small = profile.area(radius).upper;
    DoublingCheck {
        radius,
        area_5r: big,
        area_r: small,
        verdict: big >= alpha * small,
    }
}

fn resolve_r0(surface: &Surface, params: &AdmissibilityParams) -> Result<f64, PackingError> {
    let r0 = match params.r0 {
        Some(r0) => r0,
        None => default_r0(surface)?,
    };
    if !(r0 > 0.0 && r0.is_finite()) {
        return Err(PackingError::InvalidRadii(format!("R0 = {r0} must be positive")));
    }
    if params.r > r0 * (1.0 + 1e-12) {
        return Err(PackingError::InvalidRadii(format!(
            "r = {} exceeds R0 = {r0}",
            params.r
        )));
    }
    Ok(r0)
}

/// Whether B(v, R) is (α, r)-admissible.
///
/// Condition 2 is sampled on R′ = R·5^{k/q}, k ≥ 1, below R₀, together with
/// R₀ itself; a ball of radius R₀ only needs condition 1.
pub fn is_admissible(
    surface: &Surface,
    v: usize,
    radius: f64,
    params: &AdmissibilityParams,
) -> Result<AdmissibilityReport, PackingError> {
    params.validate()?;
    surface.check_vertex(v).map_err(CoverError::from)?;
    let r0 = resolve_r0(surface, params)?;
    let tol = 1e-12 * r0;
    if !(radius >= params.r - tol && radius <= r0 + tol) {
        return Err(PackingError::InvalidRadii(format!(
            "need r ≤ R ≤ R0, got r = {}, R = {radius}, R0 = {r0}",
            params.r
        )));
    }
    let profile = BallProfile::new(surface, v, 5.0 * r0, params.model)?;
    let c1 = condition1(&profile, radius, params.alpha);
    let mut c2 = Vec::new();
    if radius < r0 - tol {
        let step = 5f64.powf(1.0 / params.grid_steps as f64);
        let mut k = 1;
        loop {
            let rp = radius * step.powi(k);
            if rp >= r0 - tol {
                break;
            }
            c2.push(condition2(&profile, rp, params.alpha));
            k += 1;
        }
        c2.push(condition2(&profile, r0, params.alpha));
    }
    let c2_ok = c2.iter().all(|c| c.verdict);
    let area = surface.area().map_err(CoverError::from)?;
    let m = m0(area, r0, params.alpha, params.a_n);
    Ok(AdmissibilityReport {
        center: v,
        radius,
        alpha: params.alpha,
        r: params.r,
        r0,
        a_n: params.a_n,
        model: params.model,
        condition1: c1,
        condition2: c2,
        condition2_verdict: c2_ok,
        admissible: c1.verdict && c2_ok,
        m0: m,
        c_n: c_n(m, params.a_n),
    })
}

/// A maximal system of disjoint admissible balls.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdmissibleSystem {
    pub system: BallSystem,
    pub r0: f64,
    pub alpha: f64,
    pub r: f64,
    pub m0: f64,
    pub c_n: f64,
    /// Radii sampled, from R₀ downwards.
    pub grid: Vec<f64>,
    /// Largest admissible grid radius at each vertex.
    pub largest_radius: Vec<f64>,
    /// Whether the doubled balls cover every vertex.
    pub doubled_cover: bool,
}

/// Greedy system of disjoint admissible balls, largest radius first and
/// lowest vertex id among equal radii, over the grid R₀·5^{−j/q} ≥ r.
pub fn maximal_admissible_system(
    surface: &Surface,
    params: &AdmissibilityParams,
) -> Result<AdmissibleSystem, PackingError> {
    params.validate()?;
    let r0 = resolve_r0(surface, params)?;
    let step = 5f64.powf(1.0 / params.grid_steps as f64);
    let mut grid = vec![r0];
    loop {
        let next = grid.last().unwrap() / step;
        if next < params.r * (1.0 - 1e-12) {
            break;
        }
        grid.push(next);
    }
    let vertices: Vec<usize> = (0..surface.vertex_count()).collect();
    let per_vertex = par::map(&vertices, |&v| -> Result<Vec<bool>, CoverError> {
        let profile = BallProfile::new(surface, v, 5.0 * r0, params.model)?;
        let mut admissible = Vec::with_capacity(grid.len());
        let mut larger_ok = true;
        for (j, &rad) in grid.iter().enumerate() {
            let c1 = condition1(&profile, rad, params.alpha).verdict;
            admissible.push(c1 && (j == 0 || larger_ok));
            larger_ok &= condition2(&profile, rad, params.alpha).verdict;
        }
        Ok(admissible)
    });
    let mut admissible = Vec::with_capacity(vertices.len());
    for r in per_vertex {
        admissible.push(r?);
    }
    let without: Vec<usize> = admissible
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.iter().any(|&x| x))
        .map(|(v, _)| v)
        .collect();
    if let Some(&vertex) = without.first() {
        return Err(PackingError::NoAdmissibleBall {
            vertex,
            alpha: params.alpha,
            r: params.r,
            without: without.len(),
        });
    }
    let largest_radius: Vec<f64> = admissible
        .iter()
        .map(|a| grid[a.iter().position(|&x| x).unwrap()])
        .collect();

    let mut balls: Vec<Ball> = Vec::new();
    let mut center_dist: Vec<Vec<f64>> = Vec::new();
    for (j, &rad) in grid.iter().enumerate() {
        for v in 0..vertices.len() {
            if !admissible[v][j] {
                continue;
            }
            let clear = balls
                .iter()
                .zip(&center_dist)
                .all(|(b, d)| d[v] >= (rad + b.radius) * (1.0 - 1e-12));
            if clear {
                balls.push(Ball { center: v, radius: rad });
                center_dist.push(surface.graph_distances(v, 2.0 * r0 * (1.0 + 1e-9)));
            }
        }
    }
    let system = BallSystem { balls };
    let doubled_cover = system.uncovered(surface, 2.0).is_empty();
    let area = surface.area().map_err(CoverError::from)?;
    let m = m0(area, r0, params.alpha, params.a_n);
    Ok(AdmissibleSystem {
        system,
        r0,
        alpha: params.alpha,
        r: params.r,
        m0: m,
        c_n: c_n(m, params.a_n),
        grid,
        largest_radius,
        doubled_cover,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealizedEdge {
    pub balls: [usize; 2],
    pub path: Vec<usize>,
    pub length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealizedTriangle {
    pub balls: [usize; 3],
    pub boundary_length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NerveRealization {
    pub systole: f64,
    pub edges: Vec<RealizedEdge>,
    pub triangles: Vec<RealizedTriangle>,
}

impl NerveRealization {
    /// Whether every realized triangle boundary is shorter than the systole.
    pub fn boundaries_below_systole(&self) -> bool {
        self.triangles.iter().all(|t| t.boundary_length < self.systole)
    }
}

/// Map every edge of the factor-1 nerve to a shortest path between the two
/// centers and measure the image of every 2-simplex boundary.
pub fn realize_nerve_edges(
    surface: &Surface,
    system: &BallSystem,
    systole: f64,
) -> Result<NerveRealization, PackingError> {
    let limit = systole / 6.0;
    if let Some(b) = system.balls.iter().find(|b| b.radius >= limit) {
        return Err(PackingError::RadiusTooLarge {
            radius: b.radius,
            limit,
        });
    }
    let nerve = build_nerve(surface, system, 1.0, 2);
    let mut edges = Vec::new();
    let mut length_of = BTreeMap::new();
    for e in &nerve.simplices[1] {
        let (a, b) = (system.balls[e[0]].center, system.balls[e[1]].center);
        let (length, path) = surface
            .shortest_path(a, b)
            .expect("closed surfaces are connected");
        length_of.insert((e[0], e[1]), length);
        edges.push(RealizedEdge {
            balls: [e[0], e[1]],
            path,
            length,
        });
    }
    let triangles = nerve.simplices[2]
        .iter()
        .map(|t| RealizedTriangle {
            balls: [t[0], t[1], t[2]],
            boundary_length: length_of[&(t[0], t[1])]
                + length_of[&(t[1], t[2])]
                + length_of[&(t[0], t[2])],
        })
        .collect();
    Ok(NerveRealization {
        systole,
        edges,
        triangles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use std::f64::consts::PI;

    /// Pairs whose centers are within the sum of the radii, and triples
    /// sharing a vertex.
    fn brute_nerve(
        surface: &Surface,
        system: &BallSystem,
        factor: f64,
    ) -> (BTreeSet<Vec<usize>>, BTreeSet<Vec<usize>>) {
        let sets: Vec<BTreeSet<usize>> = system
            .balls
            .iter()
            .map(|b| ball_vertices(surface, b.center, factor * b.radius).into_iter().collect())
            .collect();
        let n = sets.len();
        let (mut pairs, mut triples) = (BTreeSet::new(), BTreeSet::new());
        for i in 0..n {
            let d = surface.graph_distances(system.balls[i].center, f64::INFINITY);
            for j in i + 1..n {
                let reach = factor * (system.balls[i].radius + system.balls[j].radius);
                if d[system.balls[j].center] <= reach * (1.0 + 1e-12) {
                    pairs.insert(vec![i, j]);
                }
                for k in j + 1..n {
                    if sets[i].iter().any(|x| sets[j].contains(x) && sets[k].contains(x)) {
                        triples.insert(vec![i, j, k]);
                    }
                }
            }
        }
        (pairs, triples)
    }

    #[test]
    fn greedy_system_is_maximal_packing() {
        let s = generators::torus_square(1.0).subdivide(3).unwrap();
        let sys = greedy_ball_system(&s, 0.15).unwrap();
        assert!(sys.is_disjoint(&s));
        // No vertex can be added.
        for v in 0..s.vertex_count() {
            let d = s.graph_distances(v, f64::INFINITY);
            assert!(sys.balls.iter().any(|b| d[b.center] < 0.3 - 1e-12));
        }
        assert!(sys.uncovered(&s, 2.0).is_empty());
        let one = greedy_ball_system(&s, s.diameter()).unwrap();
        assert_eq!(one.len(), 1);
        assert!(greedy_ball_system(&s, 0.0).is_err());
    }

    #[test]
    fn nerve_counts_match_brute_force() {
        let s = generators::torus_square(1.0).subdivide(3).unwrap();
        let sys = greedy_ball_system(&s, 0.15).unwrap();
        let nerve = build_nerve(&s, &sys, 2.0, DEFAULT_NERVE_DIMENSION);
        let (pairs, shared) = brute_nerve(&s, &sys, 2.0);
        assert_eq!(nerve.simplices[1].iter().cloned().collect::<BTreeSet<_>>(), pairs);
        for t in &nerve.simplices[2] {
            assert!(pairs.contains(&vec![t[0], t[1]]) && pairs.contains(&vec![t[1], t[2]]));
            assert!(pairs.contains(&vec![t[0], t[2]]));
        }
        assert!(shared.iter().all(|t| nerve.simplices[2].contains(t)));
        let single = BallSystem {
            balls: vec![Ball { center: 0, radius: 0.1 }],
        };
        assert_eq!(build_nerve(&s, &single, 1.0, 4).counts(), vec![1, 0, 0, 0, 0]);
        let json = nerve.to_json();
        assert_eq!(json["simplices"]["0"], sys.len());
    }

    #[test]
    fn nerve_is_downward_closed() {
        let s = generators::genus2_octagon().subdivide(1).unwrap();
        let sys = greedy_ball_system(&s, 0.3).unwrap();
        let nerve = build_nerve(&s, &sys, 2.0, 3);
        let all: BTreeSet<Vec<usize>> = nerve.simplices.iter().flatten().cloned().collect();
        for simplex in &all {
            for skip in 0..simplex.len() {
                if simplex.len() > 1 {
                    let mut face = simplex.clone();
                    face.remove(skip);
                    assert!(all.contains(&face));
                }
            }
        }
        let n0 = nerve.counts()[0];
        assert!(nerve.counts()[1] <= n0 * (n0 - 1) / 2);
    }

    #[test]
    fn flat_admissibility_matches_closed_form() {
        let s = generators::torus_square(1.0).subdivide(2).unwrap();
        let mut params = AdmissibilityParams::new(26.0, 1.0 / 120.0, DistanceModel::Developed);
        params.r0 = Some(1.0 / 12.0);
        let top = is_admissible(&s, 0, 1.0 / 12.0, &params).unwrap();
        assert!(top.admissible);
        assert!((top.condition1.area_5r - PI * 25.0 / 144.0).abs() < 1e-12);
        assert!((top.condition1.area_r - PI / 144.0).abs() < 1e-12);
        let fifth = is_admissible(&s, 0, 1.0 / 60.0, &params).unwrap();
        assert!(fifth.condition1.verdict);
        assert!(!fifth.condition2_verdict);
        params.alpha = 25.0;
        assert!(matches!(
            is_admissible(&s, 0, 1.0 / 12.0, &params),
            Err(PackingError::InvalidAlpha(_))
        ));
    }

    #[test]
    fn flat_maximal_system_uses_r0() {
        let s = generators::torus_square(1.0).subdivide(2).unwrap();
        let mut params = AdmissibilityParams::new(26.0, 1.0 / 120.0, DistanceModel::Developed);
        params.r0 = Some(1.0 / 12.0);
        let result = maximal_admissible_system(&s, &params).unwrap();
        assert!(result.system.balls.iter().all(|b| b.radius == 1.0 / 12.0));
        assert!(result.doubled_cover);
        assert!(result.system.is_disjoint(&s));
    }

    #[test]
    fn realization_bounds() {
        let s = generators::torus_square(1.0).subdivide(3).unwrap();
        let packing = greedy_ball_system(&s, 0.07).unwrap();
        let cover = packing.scaled(2.0);
        let real = realize_nerve_edges(&s, &cover, 1.0).unwrap();
        assert!(!real.edges.is_empty());
        for e in &real.edges {
            assert!(e.length <= 0.28 + 1e-12);
            assert!((s.walk_length(&e.path).unwrap() - e.length).abs() < 1e-12);
        }
        assert!(real.boundaries_below_systole());
        assert!(realize_nerve_edges(&s, &packing.scaled(3.0), 1.0).is_err());
        let apart = BallSystem {
            balls: vec![Ball { center: 0, radius: 0.05 }, Ball { center: 10, radius: 0.05 }],
        };
        let d = s.graph_distances(0, f64::INFINITY)[10];
        if d > 0.1 {
            assert!(realize_nerve_edges(&s, &apart, 1.0).unwrap().edges.is_empty());
        }
    }
}
