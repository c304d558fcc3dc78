//! Closed triangulated surfaces with piecewise-flat metrics.
//!
//! A [`Surface`] is a validated simplicial closed surface together with a
//! per-edge length assignment that makes every triangle a flat Euclidean
//! triangle. Vertices may carry cone singularities (angle sums different
//! from 2π); nothing here assumes flatness at vertices.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};
use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative tolerance for lengths of a shared edge seen from its two faces.
pub const LENGTH_TOLERANCE: f64 = 1e-9;

/// Tolerance used when deciding whether a vertex is flat (angle sum 2π).
pub const FLATNESS_TOLERANCE: f64 = 1e-9;

/// Default cap on the number of faces produced by [`Surface::subdivide`].
pub const DEFAULT_MAX_FACES: usize = 1 << 22;

/// A single reason a triangle list fails to describe a closed surface.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum Violation {
    /// An edge lies in a number of triangles other than two.
    NotClosed { edge: [usize; 2], faces: usize },
    /// The triangles split into several edge-connected components.
    Disconnected { components: usize },
    /// The link of a vertex is not a single cycle.
    NonManifoldVertex { vertex: usize },
    /// A triangle mentions the same vertex twice.
    RepeatedVertex { triangle: usize },
    /// Two triangles share the same vertex set.
    DuplicateTriangle { first: usize, second: usize },
    /// A vertex id below the maximum id is never used.
    IsolatedVertex { vertex: usize },
    /// A length is not a positive finite number.
    NonPositiveLength { triangle: usize },
    /// Lengths of a triangle violate the strict triangle inequality.
    TriangleInequality { triangle: usize },
    /// The two faces of an edge disagree about its length.
    EdgeLengthMismatch { edge: [usize; 2], lengths: [f64; 2] },
    /// The length list and the triangle list have different sizes.
    LengthCount { triangles: usize, lengths: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotClosed { edge, faces } => {
                write!(f, "edge {:?} lies in {faces} triangles (expected 2)", edge)
            }
            Violation::Disconnected { components } => {
                write!(f, "surface has {components} connected components")
            }
            Violation::NonManifoldVertex { vertex } => {
                write!(f, "link of vertex {vertex} is not a single cycle")
            }
            Violation::RepeatedVertex { triangle } => {
                write!(f, "triangle {triangle} repeats a vertex")
            }
            Violation::DuplicateTriangle { first, second } => {
                write!(f, "triangles {first} and {second} have the same vertices")
            }
            Violation::IsolatedVertex { vertex } => write!(f, "vertex {vertex} is unused"),
            Violation::NonPositiveLength { triangle } => {
                write!(f, "triangle {triangle} has a non-positive length")
            }
            Violation::TriangleInequality { triangle } => {
                write!(f, "triangle {triangle} violates the triangle inequality")
            }
            Violation::EdgeLengthMismatch { edge, lengths } => write!(
                f,
                "edge {:?} has lengths {} and {}",
                edge, lengths[0], lengths[1]
            ),
            Violation::LengthCount { triangles, lengths } => {
                write!(f, "{triangles} triangles but {lengths} length triples")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SurfaceError {
    #[error("empty triangle list")]
    Empty,
    #[error("invalid surface: {}", format_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("degenerate triangle with lengths {0:?}")]
    DegenerateTriangle([f64; 3]),
    #[error("vertex {0} out of range")]
    NoSuchVertex(usize),
    #[error("subdivision would produce {faces} faces (cap {cap})")]
    ResourceLimit { faces: usize, cap: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

impl SurfaceError {
    /// The violations carried by an `Invalid` error, empty otherwise.
    pub fn violations(&self) -> &[Violation] {
        match self {
            SurfaceError::Invalid(v) => v,
            _ => &[],
        }
    }
}

/// On-disk surface format: `{"triangles": [[a,b,c],...], "lengths": [[l_bc,l_ca,l_ab],...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceSpec {
    pub triangles: Vec<[usize; 3]>,
    pub lengths: Vec<[f64; 3]>,
}

/// Cyclic link of a vertex: `triangles[i]` spans `neighbors[i]` and `neighbors[i + 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Link {
    pub neighbors: Vec<usize>,
    pub triangles: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Topology {
    pub euler_characteristic: i64,
    /// Orientable genus for orientable surfaces, number of cross-caps otherwise.
    pub genus: i64,
    pub orientable: bool,
}

impl Topology {
    /// First Betti number with ℤ₂ coefficients.
    pub fn betti1_z2(&self) -> usize {
        (2 - self.euler_characteristic) as usize
    }

    /// Betti numbers b₀, b₁, b₂ with ℤ₂ coefficients.
    pub fn betti_z2(&self) -> [usize; 3] {
        [1, self.betti1_z2(), 1]
    }

    pub fn is_sphere(&self) -> bool {
        self.euler_characteristic == 2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Neighbor {
    vertex: usize,
    edge: usize,
    slot: usize,
}

/// A validated closed simplicial surface with a piecewise-flat metric.
#[derive(Debug, Clone)]
pub struct Surface {
    triangles: Vec<[usize; 3]>,
    lengths: Vec<[f64; 3]>,
    n_vertices: usize,
    edges: Vec<[usize; 2]>,
    edge_lengths: Vec<f64>,
    edge_faces: Vec<[usize; 2]>,
    triangle_edges: Vec<[usize; 3]>,
    adjacency: Vec<Vec<Neighbor>>,
    links: Vec<Link>,
}

fn edge_key(a: usize, b: usize) -> [usize; 2] {
    if a < b {
        [a, b]
    } else {
        [b, a]
    }
}

fn lengths_agree(a: f64, b: f64) -> bool {
    (a - b).abs() <= LENGTH_TOLERANCE * a.abs().max(b.abs()).max(1.0)
}

/// Area of a flat triangle with the given side lengths.
///
/// Uses the cancellation-resistant ordering of Heron's product.
pub fn heron_area(a: f64, b: f64, c: f64) -> Result<f64, SurfaceError> {
    let mut s = [a, b, c];
    s.sort_by(|x, y| y.total_cmp(x));
    let [a, b, c] = s;
    let product = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    if !(product > 1e-20 * a.powi(4)) {
        return Err(SurfaceError::DegenerateTriangle([a, b, c]));
    }
    Ok(0.25 * product.sqrt())
}

/// Interior angle opposite the side `opposite` in a flat triangle.
pub fn corner_angle(opposite: f64, side1: f64, side2: f64) -> f64 {
    let c = (side1 * side1 + side2 * side2 - opposite * opposite) / (2.0 * side1 * side2);
    c.clamp(-1.0, 1.0).acos()
}

impl Surface {
    /// Validate a triangle list with per-triangle lengths.
    ///
    /// `lengths[t][i]` is the length of the edge opposite corner `i` of
    /// triangle `t`. On failure every detected violation is reported.
    pub fn new(triangles: Vec<[usize; 3]>, lengths: Vec<[f64; 3]>) -> Result<Self, SurfaceError> {
        if triangles.is_empty() {
            return Err(SurfaceError::Empty);
        }
        let mut violations = Vec::new();
        if triangles.len() != lengths.len() {
            violations.push(Violation::LengthCount {
                triangles: triangles.len(),
                lengths: lengths.len(),
            });
            return Err(SurfaceError::Invalid(violations));
        }

        let n_vertices = triangles.iter().flatten().copied().max().unwrap_or(0) + 1;
        let mut used = vec![false; n_vertices];
        for (t, tri) in triangles.iter().enumerate() {
            for &v in tri {
                used[v] = true;
            }
            if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                violations.push(Violation::RepeatedVertex { triangle: t });
            }
            let l = lengths[t];
            if l.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
                violations.push(Violation::NonPositiveLength { triangle: t });
            } else if l[0] >= l[1] + l[2] || l[1] >= l[0] + l[2] || l[2] >= l[0] + l[1] {
                violations.push(Violation::TriangleInequality { triangle: t });
            }
        }
        for (v, u) in used.iter().enumerate() {
            if !u {
                violations.push(Violation::IsolatedVertex { vertex: v });
            }
        }
        if violations
            .iter()
            .any(|v| matches!(v, Violation::RepeatedVertex { .. }))
        {
            // Edge bookkeeping below assumes three distinct corners.
            return Err(SurfaceError::Invalid(violations));
        }

        let mut seen_sets: HashMap<[usize; 3], usize> = HashMap::new();
        for (t, tri) in triangles.iter().enumerate() {
            let mut key = *tri;
            key.sort_unstable();
            if let Some(&first) = seen_sets.get(&key) {
                violations.push(Violation::DuplicateTriangle { first, second: t });
            } else {
                seen_sets.insert(key, t);
            }
        }

        // Edges in sorted order give deterministic edge ids.
        let mut edge_faces_map: HashMap<[usize; 2], Vec<(usize, usize)>> = HashMap::new();
        for (t, tri) in triangles.iter().enumerate() {
            for corner in 0..3 {
                let a = tri[(corner + 1) % 3];
                let b = tri[(corner + 2) % 3];
                edge_faces_map
                    .entry(edge_key(a, b))
                    .or_default()
                    .push((t, corner));
            }
        }
        let mut edges: Vec<[usize; 2]> = edge_faces_map.keys().copied().collect();
        edges.sort_unstable();

        let mut edge_lengths = Vec::with_capacity(edges.len());
        let mut edge_faces = Vec::with_capacity(edges.len());
        let mut edge_index = HashMap::with_capacity(edges.len());
        for (e, key) in edges.iter().enumerate() {
            edge_index.insert(*key, e);
            let faces = &edge_faces_map[key];
            if faces.len() != 2 {
                violations.push(Violation::NotClosed {
                    edge: *key,
                    faces: faces.len(),
                });
                edge_faces.push([faces[0].0, faces[0].0]);
                edge_lengths.push(lengths[faces[0].0][faces[0].1]);
                continue;
            }
            let l0 = lengths[faces[0].0][faces[0].1];
            let l1 = lengths[faces[1].0][faces[1].1];
            if l0.is_finite() && l1.is_finite() && !lengths_agree(l0, l1) {
                violations.push(Violation::EdgeLengthMismatch {
                    edge: *key,
                    lengths: [l0, l1],
                });
            }
            edge_faces.push([faces[0].0, faces[1].0]);
            edge_lengths.push(0.5 * (l0 + l1));
        }

        let components = count_face_components(&triangles, &edges, &edge_faces, &edge_faces_map);
        if components > 1 {
            violations.push(Violation::Disconnected { components });
        }

        let closed = !violations
            .iter()
            .any(|v| matches!(v, Violation::NotClosed { .. }));
        let mut links = Vec::new();
        if closed {
            let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n_vertices];
            for (t, tri) in triangles.iter().enumerate() {
                for &v in tri {
                    incident[v].push(t);
                }
            }
            for v in 0..n_vertices {
                match build_link(v, &incident[v], &triangles) {
                    Some(link) => links.push(link),
                    None => {
                        violations.push(Violation::NonManifoldVertex { vertex: v });
                        links.push(Link {
                            neighbors: Vec::new(),
                            triangles: Vec::new(),
                        });
                    }
                }
            }
        }

        if !violations.is_empty() {
            return Err(SurfaceError::Invalid(violations));
        }

        let triangle_edges: Vec<[usize; 3]> = triangles
            .iter()
            .map(|tri| {
                [0, 1, 2].map(|c| edge_index[&edge_key(tri[(c + 1) % 3], tri[(c + 2) % 3])])
            })
            .collect();
        let canonical: Vec<[f64; 3]> = triangle_edges
            .iter()
            .map(|te| te.map(|e| edge_lengths[e]))
            .collect();

        let mut adjacency: Vec<Vec<Neighbor>> = vec![Vec::new(); n_vertices];
        for (v, link) in links.iter().enumerate() {
            for (slot, &w) in link.neighbors.iter().enumerate() {
                adjacency[v].push(Neighbor {
                    vertex: w,
                    edge: edge_index[&edge_key(v, w)],
                    slot,
                });
            }
            adjacency[v].sort_unstable_by_key(|n| n.vertex);
        }

        Ok(Surface {
            triangles,
            lengths: canonical,
            n_vertices,
            edges,
            edge_lengths,
            edge_faces,
            triangle_edges,
            adjacency,
            links,
        })
    }

    pub fn from_spec(spec: SurfaceSpec) -> Result<Self, SurfaceError> {
        Surface::new(spec.triangles, spec.lengths)
    }

    pub fn to_spec(&self) -> SurfaceSpec {
        SurfaceSpec {
            triangles: self.triangles.clone(),
            lengths: self.lengths.clone(),
        }
    }

    /// Build a surface from triangles and a length for every edge.
    pub fn from_edge_lengths(
        triangles: Vec<[usize; 3]>,
        length_of: impl Fn(usize, usize) -> f64,
    ) -> Result<Self, SurfaceError> {
        let lengths = triangles
            .iter()
            .map(|t| [length_of(t[1], t[2]), length_of(t[2], t[0]), length_of(t[0], t[1])])
            .collect();
        Surface::new(triangles, lengths)
    }

    /// Same combinatorics with new per-edge lengths (indexed like [`Surface::edges`]).
    pub fn with_edge_lengths(&self, edge_lengths: &[f64]) -> Result<Self, SurfaceError> {
        if edge_lengths.len() != self.edges.len() {
            return Err(SurfaceError::InvalidArgument(format!(
                "expected {} edge lengths, got {}",
                self.edges.len(),
                edge_lengths.len()
            )));
        }
        let lengths = self
            .triangle_edges
            .iter()
            .map(|te| te.map(|e| edge_lengths[e]))
            .collect();
        Surface::new(self.triangles.clone(), lengths)
    }

    pub fn vertex_count(&self) -> usize {
        self.n_vertices
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn triangle_lengths(&self) -> &[[f64; 3]] {
        &self.lengths
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn edge_lengths(&self) -> &[f64] {
        &self.edge_lengths
    }

    /// The two triangles containing edge `e`.
    pub fn edge_faces(&self, e: usize) -> [usize; 2] {
        self.edge_faces[e]
    }

    /// Edge ids of triangle `t`, the `i`-th opposite corner `i`.
    pub fn triangle_edges(&self, t: usize) -> [usize; 3] {
        self.triangle_edges[t]
    }

    pub fn link(&self, v: usize) -> &Link {
        &self.links[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.links[v].neighbors.len()
    }

    /// Neighbors of `v` with the connecting edge length, sorted by neighbor id.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.adjacency[v]
            .iter()
            .map(|n| (n.vertex, self.edge_lengths[n.edge]))
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.adjacency
            .get(a)?
            .binary_search_by_key(&b, |n| n.vertex)
            .ok()
            .map(|i| self.adjacency[a][i].edge)
    }

    /// Position of `w` in the cyclic link of `v`.
    pub fn link_slot(&self, v: usize, w: usize) -> Option<usize> {
        self.adjacency[v]
            .binary_search_by_key(&w, |n| n.vertex)
            .ok()
            .map(|i| self.adjacency[v][i].slot)
    }

    pub fn edge_length(&self, a: usize, b: usize) -> Option<f64> {
        self.edge_between(a, b).map(|e| self.edge_lengths[e])
    }

    pub fn max_edge_length(&self) -> f64 {
        self.edge_lengths.iter().copied().fold(0.0, f64::max)
    }

    pub fn min_edge_length(&self) -> f64 {
        self.edge_lengths.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn topology(&self) -> Topology {
        let chi = self.n_vertices as i64 - self.edges.len() as i64 + self.triangles.len() as i64;
        let orientable = self.is_orientable();
        let genus = if orientable { (2 - chi) / 2 } else { 2 - chi };
        Topology {
            euler_characteristic: chi,
            genus,
            orientable,
        }
    }

    fn is_orientable(&self) -> bool {
        // sign[t] = +1 keeps the stored vertex order, -1 reverses it.
        let mut sign = vec![0i8; self.triangles.len()];
        let mut stack = vec![0usize];
        sign[0] = 1;
        while let Some(t) = stack.pop() {
            for &e in &self.triangle_edges[t] {
                let [f0, f1] = self.edge_faces[e];
                let other = if f0 == t { f1 } else { f0 };
                let [a, b] = self.edges[e];
                let dir_t = self.edge_direction(t, a, b) * sign[t];
                let expected = -dir_t * self.edge_direction(other, a, b);
                if sign[other] == 0 {
                    sign[other] = expected;
                    stack.push(other);
                } else if sign[other] != expected {
                    return false;
                }
            }
        }
        true
    }

    /// +1 if triangle `t` traverses a→b in its stored order, -1 if b→a.
    fn edge_direction(&self, t: usize, a: usize, b: usize) -> i8 {
        let tri = self.triangles[t];
        for i in 0..3 {
            if tri[i] == a && tri[(i + 1) % 3] == b {
                return 1;
            }
        }
        -1
    }

    pub fn triangle_area(&self, t: usize) -> Result<f64, SurfaceError> {
        let [a, b, c] = self.lengths[t];
        heron_area(a, b, c)
    }

    /// Areas of all triangles.
    pub fn triangle_areas(&self) -> Result<Vec<f64>, SurfaceError> {
        (0..self.triangles.len())
            .map(|t| self.triangle_area(t))
            .collect()
    }

    /// Total area: the sum of Heron areas of all triangles.
    pub fn area(&self) -> Result<f64, SurfaceError> {
        Ok(self.triangle_areas()?.iter().sum())
    }

    /// Interior angle of triangle `t` at its corner `corner`.
    pub fn triangle_angle(&self, t: usize, corner: usize) -> f64 {
        let l = self.lengths[t];
        corner_angle(l[corner], l[(corner + 1) % 3], l[(corner + 2) % 3])
    }

    /// Corner index of vertex `v` in triangle `t`.
    pub fn corner_of(&self, t: usize, v: usize) -> Option<usize> {
        self.triangles[t].iter().position(|&x| x == v)
    }

    /// Total angle around a vertex.
    pub fn angle_sum(&self, v: usize) -> f64 {
        self.links[v]
            .triangles
            .iter()
            .map(|&t| self.triangle_angle(t, self.corner_of(t, v).unwrap()))
            .sum()
    }

    /// True when every vertex has angle sum 2π, so the metric is a flat
    /// metric without cone points.
    pub fn is_flat(&self) -> bool {
        (0..self.n_vertices).all(|v| (self.angle_sum(v) - 2.0 * PI).abs() <= FLATNESS_TOLERANCE)
    }

    /// `k` rounds of flat midpoint subdivision, capped at [`DEFAULT_MAX_FACES`].
    pub fn subdivide(&self, k: usize) -> Result<Surface, SurfaceError> {
        self.subdivide_capped(k, DEFAULT_MAX_FACES)
    }

    /// `k` rounds of 4-to-1 midpoint subdivision.
    ///
    /// Existing vertices keep their ids; the midpoint of edge `e` becomes
    /// vertex `n + e`. Every new triangle is similar to a quarter of its
    /// parent so areas are preserved.
    pub fn subdivide_capped(&self, k: usize, max_faces: usize) -> Result<Surface, SurfaceError> {
        let faces = 4usize
            .checked_pow(k as u32)
            .and_then(|p| p.checked_mul(self.triangles.len()))
            .unwrap_or(usize::MAX);
        if faces > max_faces {
            return Err(SurfaceError::ResourceLimit {
                faces,
                cap: max_faces,
            });
        }
        let mut current = self.clone();
        for _ in 0..k {
            current = current.subdivide_once()?;
        }
        Ok(current)
    }

    fn subdivide_once(&self) -> Result<Surface, SurfaceError> {
        let n = self.n_vertices;
        let mut triangles = Vec::with_capacity(self.triangles.len() * 4);
        let mut lengths = Vec::with_capacity(self.triangles.len() * 4);
        for (t, tri) in self.triangles.iter().enumerate() {
            let [a, b, c] = *tri;
            let [la, lb, lc] = self.lengths[t];
            let [ea, eb, ec] = self.triangle_edges[t];
            // m_a is the midpoint of the edge opposite a, i.e. bc.
            let (ma, mb, mc) = (n + ea, n + eb, n + ec);
            let (ha, hb, hc) = (0.5 * la, 0.5 * lb, 0.5 * lc);
            triangles.push([a, mc, mb]);
            lengths.push([ha, hb, hc]);
            triangles.push([mc, b, ma]);
            lengths.push([ha, hb, hc]);
            triangles.push([mb, ma, c]);
            lengths.push([ha, hb, hc]);
            triangles.push([mc, ma, mb]);
            lengths.push([hc, ha, hb]);
        }
        let sub = Surface::new(triangles, lengths)?;
        debug_assert_eq!(sub.n_vertices, n + self.edges.len());
        Ok(sub)
    }

    /// Single-source shortest path distances in the edge graph.
    ///
    /// Vertices farther than `cutoff` keep distance `f64::INFINITY`.
    pub fn graph_distances(&self, source: usize, cutoff: f64) -> Vec<f64> {
        self.shortest_paths(source, cutoff).0
    }

    /// Distances and predecessor tree from `source`; ties resolve to the
    /// lowest vertex id.
    pub fn shortest_paths(&self, source: usize, cutoff: f64) -> (Vec<f64>, Vec<Option<usize>>) {
        let mut dist = vec![f64::INFINITY; self.n_vertices];
        let mut parent = vec![None; self.n_vertices];
        let mut heap = BinaryHeap::new();
        dist[source] = 0.0;
        heap.push(HeapEntry {
            dist: 0.0,
            id: source,
        });
        while let Some(HeapEntry { dist: d, id: v }) = heap.pop() {
            if d > dist[v] {
                continue;
            }
            for n in &self.adjacency[v] {
                let nd = d + self.edge_lengths[n.edge];
                if nd > cutoff {
                    continue;
                }
                let w = n.vertex;
                if nd < dist[w] || (nd == dist[w] && parent[w].is_some_and(|p| v < p)) {
                    let improved = nd < dist[w];
                    dist[w] = nd;
                    parent[w] = Some(v);
                    if improved {
                        heap.push(HeapEntry { dist: nd, id: w });
                    }
                }
            }
        }
        (dist, parent)
    }

    /// Vertex path from `source` to `target` along a shortest edge path.
    pub fn shortest_path(&self, source: usize, target: usize) -> Option<(f64, Vec<usize>)> {
        let (dist, parent) = self.shortest_paths(source, f64::INFINITY);
        if !dist[target].is_finite() {
            return None;
        }
        let mut path = vec![target];
        let mut cur = target;
        while let Some(p) = parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        Some((dist[target], path))
    }

    /// Largest graph distance between two vertices.
    pub fn diameter(&self) -> f64 {
        (0..self.n_vertices)
            .map(|v| {
                self.graph_distances(v, f64::INFINITY)
                    .into_iter()
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }

    /// Length of a closed edge walk, checking that consecutive vertices are adjacent.
    pub fn walk_length(&self, walk: &[usize]) -> Result<f64, SurfaceError> {
        if walk.is_empty() {
            return Err(SurfaceError::InvalidArgument("empty walk".into()));
        }
        let mut total = 0.0;
        for pair in walk.windows(2) {
            let l = self.edge_length(pair[0], pair[1]).ok_or_else(|| {
                SurfaceError::InvalidArgument(format!(
                    "vertices {} and {} are not adjacent",
                    pair[0], pair[1]
                ))
            })?;
            total += l;
        }
        Ok(total)
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), SurfaceError> {
        if v < self.n_vertices {
            Ok(())
        } else {
            Err(SurfaceError::NoSuchVertex(v))
        }
    }
}

fn count_face_components(
    triangles: &[[usize; 3]],
    edges: &[[usize; 2]],
    _edge_faces: &[[usize; 2]],
    edge_faces_map: &HashMap<[usize; 2], Vec<(usize, usize)>>,
) -> usize {
    let mut parent: Vec<usize> = (0..triangles.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for key in edges {
        let faces = &edge_faces_map[key];
        for w in faces.windows(2) {
            let a = find(&mut parent, w[0].0);
            let b = find(&mut parent, w[1].0);
            if a != b {
                parent[a] = b;
            }
        }
    }
    (0..triangles.len())
        .filter(|&t| find(&mut parent, t) == t)
        .count()
}

/// Chain the triangles around `v` into a single cycle, or `None` if the
/// link is not a cycle.
fn build_link(v: usize, incident: &[usize], triangles: &[[usize; 3]]) -> Option<Link> {
    if incident.len() < 3 {
        return None;
    }
    // Each incident triangle contributes a link edge between its other two vertices.
    let mut by_vertex: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for &t in incident {
        let tri = triangles[t];
        let i = tri.iter().position(|&x| x == v)?;
        let a = tri[(i + 1) % 3];
        let b = tri[(i + 2) % 3];
        by_vertex.entry(a).or_default().push((b, t));
        by_vertex.entry(b).or_default().push((a, t));
    }
    if by_vertex.values().any(|x| x.len() != 2) {
        return None;
    }
    // Walk around v starting with the first incident triangle in its own orientation.
    let t0 = incident[0];
    let first = triangles[t0];
    let i = first.iter().position(|&x| x == v)?;
    let start = first[(i + 1) % 3];
    let mut neighbors = vec![start];
    let mut link_tris = vec![t0];
    let mut prev_tri = t0;
    let mut cur = first[(i + 2) % 3];
    while cur != start {
        if neighbors.len() >= incident.len() {
            return None;
        }
        neighbors.push(cur);
        let &(next, t) = by_vertex[&cur].iter().find(|(_, t)| *t != prev_tri)?;
        link_tris.push(t);
        prev_tri = t;
        cur = next;
    }
    if link_tris.len() != incident.len() {
        return None;
    }
    Some(Link {
        neighbors,
        triangles: link_tris,
    })
}

/// Min-heap entry ordered by distance, then by id.
#[derive(Debug, Clone, Copy)]
pub(crate) struct HeapEntry {
    pub dist: f64,
    pub id: usize,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for HeapEntry {}
impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.id.cmp(&self.id))
    }
}
