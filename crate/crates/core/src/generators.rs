//! Builtin surfaces used by the tests, the CLI and the demo.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::surface::{Surface, SurfaceError};

/// Names accepted by [`generate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Builtin {
    TorusSquare,
    TorusHex,
    TorusRect,
    Genus2Octagon,
    Rp2Icosa,
    SphereTetra,
}

impl Builtin {
    pub const ALL: [Builtin; 6] = [
        Builtin::TorusSquare,
        Builtin::TorusHex,
        Builtin::TorusRect,
        Builtin::Genus2Octagon,
        Builtin::Rp2Icosa,
        Builtin::SphereTetra,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::TorusSquare => "torus-square",
            Builtin::TorusHex => "torus-hex",
            Builtin::TorusRect => "torus-rect",
            Builtin::Genus2Octagon => "genus2-octagon",
            Builtin::Rp2Icosa => "rp2-icosa",
            Builtin::SphereTetra => "sphere-tetra",
        }
    }

    /// Lattice basis for the flat-torus builtins.
    pub fn lattice(self, params: &GeneratorParams) -> Option<[[f64; 2]; 2]> {
        match self {
            Builtin::TorusSquare => Some([[1.0, 0.0], [0.0, 1.0]]),
            Builtin::TorusHex => Some([[1.0, 0.0], [0.5, 3f64.sqrt() / 2.0]]),
            Builtin::TorusRect => Some([[1.0, 0.0], [0.0, params.aspect]]),
            _ => None,
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeneratorError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

impl FromStr for Builtin {
    type Err = GeneratorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| GeneratorError::UnknownGenerator(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorParams {
    /// Subdivision rounds (geodesic refinement for `rp2-icosa`).
    pub k: usize,
    /// Height/width ratio of `torus-rect`.
    pub aspect: f64,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        GeneratorParams { k: 0, aspect: 2.0 }
    }
}

pub fn generate(which: Builtin, params: &GeneratorParams) -> Result<Surface, GeneratorError> {
    if params.k > 8 {
        return Err(GeneratorError::InvalidParams(format!(
            "subdivision level {} exceeds 8",
            params.k
        )));
    }
    let base = match which {
        Builtin::TorusSquare => torus_square(1.0),
        Builtin::TorusHex => torus_hex(1.0),
        Builtin::TorusRect => {
            if !(params.aspect.is_finite() && params.aspect > 0.0) {
                return Err(GeneratorError::InvalidParams(format!(
                    "aspect must be positive, got {}",
                    params.aspect
                )));
            }
            torus_rect(params.aspect)
        }
        Builtin::Genus2Octagon => genus2_octagon(),
        Builtin::Rp2Icosa => return Ok(rp2_icosa(params.k)?),
        Builtin::SphereTetra => tetrahedron(1.0),
    };
    Ok(base.subdivide(params.k)?)
}

/// Regular tetrahedron with the given edge length.
pub fn tetrahedron(edge: f64) -> Surface {
    Surface::from_edge_lengths(vec![[0, 1, 2], [0, 3, 1], [0, 2, 3], [1, 3, 2]], |_, _| edge)
        .expect("tetrahedron is a valid surface")
}

/// Flat torus ℝ²/Λ for the lattice spanned by `basis`, triangulated by an
/// `n1 × n2` grid of the fundamental parallelogram cut along one diagonal.
///
/// Returns the surface together with planar coordinates of every vertex in
/// the fundamental domain. Both grid sizes must be at least 3.
pub fn torus_grid(
    basis: [[f64; 2]; 2],
    n1: usize,
    n2: usize,
) -> Result<(Surface, Vec<[f64; 2]>), SurfaceError> {
    if n1 < 3 || n2 < 3 {
        return Err(SurfaceError::InvalidArgument(
            "torus grids need at least 3 cells per direction".into(),
        ));
    }
    let id = |i: usize, j: usize| (i % n1) + n1 * (j % n2);
    let point = |i: usize, j: usize| {
        let (s, t) = (i as f64 / n1 as f64, j as f64 / n2 as f64);
        [
            s * basis[0][0] + t * basis[1][0],
            s * basis[0][1] + t * basis[1][1],
        ]
    };
    let dist = |p: [f64; 2], q: [f64; 2]| ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt();
    let mut triangles = Vec::with_capacity(2 * n1 * n2);
    let mut lengths = Vec::with_capacity(2 * n1 * n2);
    let mut push = |corners: [(usize, usize); 3]| {
        let p = corners.map(|(i, j)| point(i, j));
        triangles.push(corners.map(|(i, j)| id(i, j)));
        lengths.push([dist(p[1], p[2]), dist(p[2], p[0]), dist(p[0], p[1])]);
    };
    let orientation = basis[0][0] * basis[1][1] - basis[0][1] * basis[1][0];
    for j in 0..n2 {
        for i in 0..n1 {
            if orientation > 0.0 {
                push([(i, j), (i + 1, j), (i, j + 1)]);
                push([(i + 1, j), (i + 1, j + 1), (i, j + 1)]);
            } else {
                push([(i, j), (i, j + 1), (i + 1, j)]);
                push([(i + 1, j), (i, j + 1), (i + 1, j + 1)]);
            }
        }
    }
    let coords = (0..n1 * n2).map(|v| point(v % n1, v / n1)).collect();
    Ok((Surface::new(triangles, lengths)?, coords))
}

/// Square flat torus of the given side on a 3×3 grid (18 triangles).
pub fn torus_square(side: f64) -> Surface {
    torus_grid([[side, 0.0], [0.0, side]], 3, 3)
        .expect("square grid torus is valid")
        .0
}

/// Hexagonal flat torus (rhombus with 60° angle) tiled by 18 equilateral triangles.
pub fn torus_hex(side: f64) -> Surface {
    torus_grid([[side, 0.0], [0.5 * side, 0.5 * 3f64.sqrt() * side]], 3, 3)
        .expect("hexagonal grid torus is valid")
        .0
}

/// Rectangular flat torus 1 × `aspect`.
pub fn torus_rect(aspect: f64) -> Surface {
    let n2 = ((3.0 * aspect).round() as usize).max(3);
    torus_grid([[1.0, 0.0], [0.0, aspect]], 3, n2)
        .expect("rectangular grid torus is valid")
        .0
}

/// Genus-2 surface glued from the regular flat octagon of unit side with
/// side pairing a₁b₁a₁⁻¹b₁⁻¹a₂b₂a₂⁻¹b₂⁻¹.
///
/// All eight corners become vertex 0 (a cone point of total angle 6π).
/// Sides are cut in thirds and an inner ring of 24 vertices plus a center
/// make the quotient simplicial: 34 vertices, 72 triangles.
pub fn genus2_octagon() -> Surface {
    let circumradius = 1.0 / (2.0 * (PI / 8.0).sin());
    let corner = |i: usize| {
        let a = PI / 8.0 + (i % 8) as f64 * PI / 4.0;
        [circumradius * a.cos(), circumradius * a.sin()]
    };
    // Boundary positions b_0..b_23, counter-clockwise.
    let boundary: Vec<[f64; 2]> = (0..24)
        .map(|i| {
            let side = i / 3;
            let t = (i % 3) as f64 / 3.0;
            let (p, q) = (corner(side), corner(side + 1));
            [p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]
        })
        .collect();
    // Side s is identified with side partner(s), traversed backwards.
    let partner = |s: usize| match s {
        0 => 2,
        1 => 3,
        4 => 6,
        5 => 7,
        2 => 0,
        3 => 1,
        6 => 4,
        7 => 5,
        _ => unreachable!(),
    };
    // Vertex ids: 0 = corner, 1..=8 = side thirds, 9..=32 = inner ring, 33 = center.
    let mut boundary_id = [0usize; 24];
    let mut next = 1;
    for s in 0..8 {
        let p = partner(s);
        if p > s {
            boundary_id[3 * s + 1] = next;
            boundary_id[3 * s + 2] = next + 1;
            boundary_id[3 * p + 2] = next;
            boundary_id[3 * p + 1] = next + 1;
            next += 2;
        }
    }
    debug_assert_eq!(next, 9);
    let ring = |i: usize| 9 + (i % 24);
    let center = 33;
    let shrink = 0.5;
    let inner = |i: usize| [shrink * boundary[i % 24][0], shrink * boundary[i % 24][1]];
    let dist = |p: [f64; 2], q: [f64; 2]| ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt();
    let mut triangles = Vec::with_capacity(72);
    let mut lengths = Vec::with_capacity(72);
    for i in 0..24 {
        let (b0, b1) = (boundary[i], boundary[(i + 1) % 24]);
        let (t0, t1) = (inner(i), inner(i + 1));
        let c = [0.0, 0.0];
        let id_b0 = boundary_id[i];
        let id_b1 = boundary_id[(i + 1) % 24];
        let mut push = |ids: [usize; 3], p: [[f64; 2]; 3]| {
            triangles.push(ids);
            lengths.push([dist(p[1], p[2]), dist(p[2], p[0]), dist(p[0], p[1])]);
        };
        push([id_b0, id_b1, ring(i)], [b0, b1, t0]);
        push([id_b1, ring(i + 1), ring(i)], [b1, t1, t0]);
        push([center, ring(i), ring(i + 1)], [c, t0, t1]);
    }
    Surface::new(triangles, lengths).expect("octagon gluing is a valid surface")
}

fn normalize(p: [f64; 3]) -> [f64; 3] {
    let n = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
    [p[0] / n, p[1] / n, p[2] / n]
}

fn dot(p: [f64; 3], q: [f64; 3]) -> f64 {
    p[0] * q[0] + p[1] * q[1] + p[2] * q[2]
}

/// Icosahedron inscribed in the unit sphere, refined `k` times by projected
/// edge midpoints. Faces are oriented outward.
pub fn icosphere(k: usize) -> (Vec<[f64; 3]>, Vec<[usize; 3]>) {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut points: Vec<[f64; 3]> = Vec::new();
    for &s1 in &[-1.0, 1.0] {
        for &s2 in &[-1.0, 1.0] {
            points.push(normalize([0.0, s1, s2 * phi]));
            points.push(normalize([s1, s2 * phi, 0.0]));
            points.push(normalize([s2 * phi, 0.0, s1]));
        }
    }
    let adjacent = |a: [f64; 3], b: [f64; 3]| {
        let d = dot(a, b);
        // Neighbors on the icosahedron have the largest non-unit inner product.
        d > 0.4 && d < 0.99
    };
    let mut faces = Vec::new();
    for a in 0..12 {
        for b in a + 1..12 {
            for c in b + 1..12 {
                if adjacent(points[a], points[b])
                    && adjacent(points[b], points[c])
                    && adjacent(points[a], points[c])
                {
                    let (pa, pb, pc) = (points[a], points[b], points[c]);
                    let cross = [
                        (pb[1] - pa[1]) * (pc[2] - pa[2]) - (pb[2] - pa[2]) * (pc[1] - pa[1]),
                        (pb[2] - pa[2]) * (pc[0] - pa[0]) - (pb[0] - pa[0]) * (pc[2] - pa[2]),
                        (pb[0] - pa[0]) * (pc[1] - pa[1]) - (pb[1] - pa[1]) * (pc[0] - pa[0]),
                    ];
                    if dot(cross, pa) > 0.0 {
                        faces.push([a, b, c]);
                    } else {
                        faces.push([a, c, b]);
                    }
                }
            }
        }
    }
    debug_assert_eq!(faces.len(), 20);
    for _ in 0..k {
        let mut mid: HashMap<(usize, usize), usize> = HashMap::new();
        let mut midpoint = |a: usize, b: usize, points: &mut Vec<[f64; 3]>| {
            let key = (a.min(b), a.max(b));
            *mid.entry(key).or_insert_with(|| {
                let (p, q) = (points[a], points[b]);
                points.push(normalize([p[0] + q[0], p[1] + q[1], p[2] + q[2]]));
                points.len() - 1
            })
        };
        let mut refined = Vec::with_capacity(faces.len() * 4);
        for &[a, b, c] in &faces {
            let ab = midpoint(a, b, &mut points);
            let bc = midpoint(b, c, &mut points);
            let ca = midpoint(c, a, &mut points);
            refined.push([a, ab, ca]);
            refined.push([ab, b, bc]);
            refined.push([ca, bc, c]);
            refined.push([ab, bc, ca]);
        }
        faces = refined;
    }
    (points, faces)
}

/// Projective plane as the antipodal quotient of a refined icosphere.
///
/// Triangles are flat with side lengths equal to the great-circle arcs of
/// the unit sphere; `k = 0` gives the 6-vertex, 10-triangle projective plane.
pub fn rp2_icosa(k: usize) -> Result<Surface, SurfaceError> {
    let (points, faces) = icosphere(k);
    let n = points.len();
    let mut antipode = vec![usize::MAX; n];
    let key = |p: [f64; 3]| {
        [
            (p[0] * 1e9).round() as i64,
            (p[1] * 1e9).round() as i64,
            (p[2] * 1e9).round() as i64,
        ]
    };
    let index: HashMap<[i64; 3], usize> = points.iter().enumerate().map(|(i, &p)| (key(p), i)).collect();
    for (i, &p) in points.iter().enumerate() {
        antipode[i] = *index
            .get(&key([-p[0], -p[1], -p[2]]))
            .expect("icosphere is antipodally symmetric");
    }
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for i in 0..n {
        if label[i] == usize::MAX {
            label[i] = next;
            label[antipode[i]] = next;
            next += 1;
        }
    }
    let arc = |a: usize, b: usize| dot(points[a], points[b]).clamp(-1.0, 1.0).acos();
    let mut seen = std::collections::HashSet::new();
    let mut triangles = Vec::new();
    let mut lengths = Vec::new();
    for &[a, b, c] in &faces {
        let mut key = [label[a], label[b], label[c]];
        key.sort_unstable();
        if seen.insert(key) {
            triangles.push([label[a], label[b], label[c]]);
            lengths.push([arc(b, c), arc(c, a), arc(a, b)]);
        }
    }
    Surface::new(triangles, lengths)
}

/// The 6-vertex projective plane with every edge of unit length.
pub fn rp2_hemi_icosahedron_unit() -> Surface {
    let s = rp2_icosa(0).expect("hemi-icosahedron is valid");
    Surface::from_edge_lengths(s.triangles().to_vec(), |_, _| 1.0).expect("unit lengths are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate_with_expected_topology() {
        for b in Builtin::ALL {
            for k in 0..=2 {
                let s = generate(b, &GeneratorParams { k, aspect: 2.0 }).unwrap();
                let t = s.topology();
                let expected = match b {
                    Builtin::TorusSquare | Builtin::TorusHex | Builtin::TorusRect => (0, true),
                    Builtin::Genus2Octagon => (-2, true),
                    Builtin::Rp2Icosa => (1, false),
                    Builtin::SphereTetra => (2, true),
                };
                assert_eq!((t.euler_characteristic, t.orientable), expected, "{b} k={k}");
            }
        }
    }

    #[test]
    fn octagon_counts_and_area() {
        let s = genus2_octagon();
        assert_eq!(s.vertex_count(), 34);
        assert_eq!(s.triangle_count(), 72);
        let expected = 2.0 * (1.0 + 2f64.sqrt());
        assert!((s.area().unwrap() - expected).abs() < 1e-12);
        assert!((s.angle_sum(0) - 6.0 * PI).abs() < 1e-9);
        for v in 1..34 {
            assert!((s.angle_sum(v) - 2.0 * PI).abs() < 1e-9, "vertex {v}");
        }
    }

    #[test]
    fn rp2_counts() {
        let s = rp2_icosa(0).unwrap();
        assert_eq!((s.vertex_count(), s.edges().len(), s.triangle_count()), (6, 15, 10));
        let s1 = rp2_icosa(1).unwrap();
        assert_eq!(s1.triangle_count(), 40);
    }

    #[test]
    fn unknown_names_are_rejected() {
        assert!(matches!(
            "klein-bottle".parse::<Builtin>(),
            Err(GeneratorError::UnknownGenerator(_))
        ));
        assert_eq!("torus-hex".parse::<Builtin>().unwrap(), Builtin::TorusHex);
    }
}
