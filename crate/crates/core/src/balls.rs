//! Geodesic balls on a surface and two-sided bounds on their areas.
//!
//! In the graph model a ball is the set of vertices within edge-path
//! distance R; its area is bracketed by the triangles lying entirely inside
//! and the triangles touching it. In the developed model the cover is laid
//! out in the plane, each developed triangle is intersected exactly with the
//! disk of radius R, and the pieces are pushed down to the base triangles.

use serde::Serialize;

use crate::covering::{develop, CoverError, DistanceModel};
use crate::surface::{Surface, SurfaceError};

/// Lower and upper bounds for the area of a ball.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AreaBounds {
    pub lower: f64,
    pub upper: f64,
}

impl AreaBounds {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn contains(&self, x: f64, tol: f64) -> bool {
        self.lower - tol <= x && x <= self.upper + tol
    }
}

/// Surface distances from `v` to every vertex, `f64::INFINITY` beyond `cutoff`.
///
/// In the developed model the distance to `w` is the smallest Euclidean
/// distance to any of its lifts.
pub fn surface_distances(
    surface: &Surface,
    v: usize,
    cutoff: f64,
    model: DistanceModel,
) -> Result<Vec<f64>, CoverError> {
    surface.check_vertex(v)?;
    match model {
        DistanceModel::Graph => Ok(surface.graph_distances(v, cutoff)),
        DistanceModel::Developed => {
            let region = develop(surface, v, cutoff, model)?;
            let mut d = vec![f64::INFINITY; surface.vertex_count()];
            for x in region.vertices() {
                let w = region.projection(x);
                let dx = region.distance(x);
                if dx <= cutoff && dx < d[w] {
                    d[w] = dx;
                }
            }
            Ok(d)
        }
    }
}

/// Vertices within graph distance `radius` of `v`, sorted.
pub fn ball_vertices(surface: &Surface, v: usize, radius: f64) -> Vec<usize> {
    surface
        .graph_distances(v, radius)
        .iter()
        .enumerate()
        .filter(|(_, d)| **d <= radius * (1.0 + 1e-12))
        .map(|(w, _)| w)
        .collect()
}

/// Area of the intersection of a triangle with the disk of radius `r`
/// centred at the origin.
pub fn disk_triangle_area(r: f64, tri: [[f64; 2]; 3]) -> f64 {
    if r <= 0.0 {
        return 0.0;
    }
    let mut total = 0.0;
    for i in 0..3 {
        total += disk_wedge_area(r, tri[i], tri[(i + 1) % 3]);
    }
    total.abs()
}

/// Signed area of the disk intersected with the triangle (0, p, q).
fn disk_wedge_area(r: f64, p: [f64; 2], q: [f64; 2]) -> f64 {
    let d = [q[0] - p[0], q[1] - p[1]];
    let a = d[0] * d[0] + d[1] * d[1];
    let mut cuts = vec![0.0];
    if a > 0.0 {
        let b = p[0] * d[0] + p[1] * d[1];
        let c = p[0] * p[0] + p[1] * p[1] - r * r;
        let disc = b * b - a * c;
        if disc > 0.0 {
            let s = disc.sqrt();
            for t in [(-b - s) / a, (-b + s) / a] {
                if t > 0.0 && t < 1.0 {
                    cuts.push(t);
                }
            }
        }
    }
    cuts.push(1.0);
    let at = |t: f64| [p[0] + t * d[0], p[1] + t * d[1]];
    let mut area = 0.0;
    for w in cuts.windows(2) {
        let (u, v) = (at(w[0]), at(w[1]));
        let m = at(0.5 * (w[0] + w[1]));
        let cross = u[0] * v[1] - u[1] * v[0];
        if m[0] * m[0] + m[1] * m[1] <= r * r {
            area += 0.5 * cross;
        } else {
            let dot = u[0] * v[0] + u[1] * v[1];
            area += 0.5 * r * r * cross.atan2(dot);
        }
    }
    area
}

enum Profile {
    Graph {
        /// Triangle areas sorted by the largest vertex distance, as prefix sums.
        by_max: Vec<(f64, f64)>,
        /// Same, sorted by the smallest vertex distance.
        by_min: Vec<(f64, f64)>,
    },
    Developed {
        triangles: Vec<([[f64; 2]; 3], usize)>,
        base_areas: Vec<f64>,
        /// Disks up to this radius embed in the surface.
        embed_radius: f64,
    },
}

/// Area bounds of balls around one vertex for all radii up to a maximum.
pub struct BallProfile {
    center: usize,
    max_radius: f64,
    model: DistanceModel,
    profile: Profile,
}

impl BallProfile {
    pub fn new(
        surface: &Surface,
        v: usize,
        max_radius: f64,
        model: DistanceModel,
    ) -> Result<Self, CoverError> {
        surface.check_vertex(v)?;
        if !(max_radius >= 0.0) {
            return Err(SurfaceError::InvalidArgument(format!(
                "radius {max_radius} must be ≥ 0"
            ))
            .into());
        }
        let areas = surface.triangle_areas()?;
        let profile = match model {
            DistanceModel::Graph => {
                let d = surface.graph_distances(v, max_radius * (1.0 + 1e-12));
                let mut by_max = Vec::new();
                let mut by_min = Vec::new();
                for (t, tri) in surface.triangles().iter().enumerate() {
                    let ds = tri.map(|x| d[x]);
                    let hi = ds.iter().copied().fold(0.0, f64::max);
                    let lo = ds.iter().copied().fold(f64::INFINITY, f64::min);
                    if hi.is_finite() {
                        by_max.push((hi, areas[t]));
                    }
                    if lo.is_finite() {
                        by_min.push((lo, areas[t]));
                    }
                }
                Profile::Graph {
                    by_max: prefix_sums(by_max),
                    by_min: prefix_sums(by_min),
                }
            }
            DistanceModel::Developed => {
                let region = develop(surface, v, max_radius, model)?;
                let reach = max_radius * (1.0 + 1e-12);
                let mut triangles = Vec::new();
                for ct in region.triangles() {
                    let pts = ct.vertices.map(|x| region.position(x).unwrap());
                    if point_triangle_distance(pts) <= reach {
                        triangles.push((pts, ct.base_triangle));
                    }
                }
                // Fixed-point-free orientation-preserving isometries of the
                // plane are translations.
                let orientable = surface.topology().orientable;
                let embed_radius = if orientable {
                    let mut lifts = region.lift_distances(v);
                    if lifts.len() < 2 {
                        lifts = develop(surface, v, 2.0 * max_radius, model)?.lift_distances(v);
                    }
                    // Without a second lift in reach every translation is
                    // longer than 2·max_radius.
                    lifts.get(1).map_or(max_radius, |g| 0.5 * g)
                } else {
                    0.0
                };
                Profile::Developed {
                    triangles,
                    base_areas: areas,
                    embed_radius,
                }
            }
        };
        Ok(BallProfile {
            center: v,
            max_radius,
            model,
            profile,
        })
    }

    pub fn center(&self) -> usize {
        self.center
    }

    pub fn max_radius(&self) -> f64 {
        self.max_radius
    }

    pub fn model(&self) -> DistanceModel {
        self.model
    }

    /// Bounds on the area of the ball of radius `r` (clamped to the profile range).
    pub fn area(&self, r: f64) -> AreaBounds {
        let r = r.min(self.max_radius).max(0.0);
        match &self.profile {
            Profile::Graph { by_max, by_min } => AreaBounds {
                lower: sum_up_to(by_max, r),
                upper: sum_up_to(by_min, r),
            },
            Profile::Developed {
                triangles,
                base_areas,
                embed_radius,
            } => {
                let mut pieces: Vec<(usize, f64)> = triangles
                    .iter()
                    .map(|(pts, t)| (*t, disk_triangle_area(r, *pts)))
                    .filter(|(_, a)| *a > 0.0)
                    .collect();
                pieces.sort_by_key(|p| p.0);
                let (mut lower, mut upper) = (0.0, 0.0);
                let mut i = 0;
                while i < pieces.len() {
                    let t = pieces[i].0;
                    let (mut sum, mut max) = (0.0, 0.0f64);
                    while i < pieces.len() && pieces[i].0 == t {
                        sum += pieces[i].1;
                        max = max.max(pieces[i].1);
                        i += 1;
                    }
                    upper += sum.min(base_areas[t]);
                    lower += max;
                }
                // A disk shorter than every translation embeds in the surface.
                if r <= *embed_radius {
                    lower = upper;
                }
                AreaBounds { lower, upper }
            }
        }
    }
}

/// Bounds on the area of the ball of radius `r` about `v`.
pub fn ball_area(
    surface: &Surface,
    v: usize,
    r: f64,
    model: DistanceModel,
) -> Result<AreaBounds, CoverError> {
    Ok(BallProfile::new(surface, v, r, model)?.area(r))
}

fn prefix_sums(mut items: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    items.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut acc = 0.0;
    items
        .into_iter()
        .map(|(d, a)| {
            acc += a;
            (d, acc)
        })
        .collect()
}

fn sum_up_to(sorted: &[(f64, f64)], r: f64) -> f64 {
    let limit = r * (1.0 + 1e-12);
    let k = sorted.partition_point(|(d, _)| *d <= limit);
    if k == 0 {
        0.0
    } else {
        sorted[k - 1].1
    }
}

/// Distance from the origin to a planar triangle.
fn point_triangle_distance(t: [[f64; 2]; 3]) -> f64 {
    let cross = |a: [f64; 2], b: [f64; 2]| a[0] * b[1] - a[1] * b[0];
    let s: Vec<f64> = (0..3).map(|i| cross(t[i], t[(i + 1) % 3])).collect();
    if s.iter().all(|&x| x >= 0.0) || s.iter().all(|&x| x <= 0.0) {
        return 0.0;
    }
    (0..3)
        .map(|i| {
            let (a, b) = (t[i], t[(i + 1) % 3]);
            let d = [b[0] - a[0], b[1] - a[1]];
            let len2 = d[0] * d[0] + d[1] * d[1];
            let u = if len2 > 0.0 {
                (-(a[0] * d[0] + a[1] * d[1]) / len2).clamp(0.0, 1.0)
            } else {
                0.0
            };
            (a[0] + u * d[0]).hypot(a[1] + u * d[1])
        })
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use std::f64::consts::PI;

    #[test]
    fn disk_triangle_cases() {
        let big = [[-10.0, -10.0], [10.0, -10.0], [0.0, 10.0]];
        assert!((disk_triangle_area(1.0, big) - PI).abs() < 1e-12);
        let small = [[0.1, 0.1], [0.2, 0.1], [0.1, 0.2]];
        assert!((disk_triangle_area(5.0, small) - 0.005).abs() < 1e-15);
        let far = [[3.0, 3.0], [4.0, 3.0], [3.0, 4.0]];
        assert_eq!(disk_triangle_area(1.0, far), 0.0);
        // Quarter disk from the right triangle at the centre.
        let corner = [[0.0, 0.0], [5.0, 0.0], [0.0, 5.0]];
        assert!((disk_triangle_area(1.0, corner) - PI / 4.0).abs() < 1e-12);
        // Half disk cut by a line through the centre.
        let half = [[-10.0, 0.0], [10.0, 0.0], [0.0, 10.0]];
        assert!((disk_triangle_area(1.0, half) - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn disk_triangle_matches_monte_carlo_grid() {
        let tri = [[-0.3, -0.8], [1.1, 0.2], [-0.2, 0.9]];
        let r = 0.75;
        let n = 2000;
        let mut inside = 0usize;
        let cross = |a: [f64; 2], b: [f64; 2], p: [f64; 2]| {
            (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
        };
        for i in 0..n {
            for j in 0..n {
                let p = [
                    -1.0 + 2.0 * (i as f64 + 0.5) / n as f64,
                    -1.0 + 2.0 * (j as f64 + 0.5) / n as f64,
                ];
                let s = [
                    cross(tri[0], tri[1], p),
                    cross(tri[1], tri[2], p),
                    cross(tri[2], tri[0], p),
                ];
                let in_tri = s.iter().all(|&x| x >= 0.0) || s.iter().all(|&x| x <= 0.0);
                if in_tri && p[0].hypot(p[1]) <= r {
                    inside += 1;
                }
            }
        }
        let grid = inside as f64 * 4.0 / (n * n) as f64;
        assert!((disk_triangle_area(r, tri) - grid).abs() < 2e-3);
    }

    #[test]
    fn flat_torus_disks_are_exact() {
        let s = generators::torus_square(1.0);
        for r in [0.1, 0.3, 0.5] {
            let a = ball_area(&s, 0, r, DistanceModel::Developed).unwrap();
            assert!((a.lower - PI * r * r).abs() < 1e-12, "r={r}: {a:?}");
            assert!((a.upper - PI * r * r).abs() < 1e-12);
        }
        // Past the injectivity radius the disk overlaps itself.
        let a = ball_area(&s, 0, 0.6, DistanceModel::Developed).unwrap();
        assert!(a.upper < PI * 0.36 && a.lower < a.upper);
        let whole = ball_area(&s, 0, 2.0, DistanceModel::Developed).unwrap();
        assert!((whole.upper - 1.0).abs() < 1e-12 && (whole.lower - 1.0).abs() < 1e-12);
    }

    #[test]
    fn graph_bracket_is_ordered_and_monotone() {
        let s = generators::genus2_octagon().subdivide(1).unwrap();
        let profile = BallProfile::new(&s, 0, 3.0, DistanceModel::Graph).unwrap();
        let mut prev = AreaBounds { lower: 0.0, upper: 0.0 };
        for i in 0..=30 {
            let a = profile.area(0.1 * i as f64);
            assert!(a.lower <= a.upper);
            assert!(a.lower >= prev.lower && a.upper >= prev.upper);
            prev = a;
        }
        assert!((profile.area(100.0).lower - s.area().unwrap()).abs() < 1e-9 || prev.lower <= s.area().unwrap());
    }

    #[test]
    fn developed_distances_are_euclidean() {
        let s = generators::torus_square(1.0);
        let d = surface_distances(&s, 0, 2.0, DistanceModel::Developed).unwrap();
        // Vertex 4 is the grid point (1/3, 1/3).
        let expected = (2.0f64).sqrt() / 3.0;
        assert!(d.iter().any(|x| (x - expected).abs() < 1e-12));
        assert_eq!(ball_vertices(&s, 0, 0.0), vec![0]);
    }
}
