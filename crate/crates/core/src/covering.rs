//! Lazy development of the universal cover.
//!
//! A cover vertex projects to a base vertex `v` and owns one slot per entry of
//! the cyclic link of `v`. Developing completes the star of every vertex the
//! search reaches, first by reading neighbors off adjacent stars, then by
//! creating fresh vertices. Whenever two cover vertices claim the same slot of
//! a common neighbor they are the same point and get merged, so the links of
//! processed vertices are exact copies of the base links.
//!
//! Two distance models are supported. `Graph` measures edge paths. `Developed`
//! applies to flat surfaces without cone points: the cover is laid out in the
//! plane, distances are Euclidean, and coincident vertices are identified by
//! position.

use std::borrow::Cow;
use std::collections::{BinaryHeap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homology::{self, check_closed, rotate_to_min};
use crate::lattice::FlatTorus;
use crate::par;
use crate::surface::{HeapEntry, Surface, SurfaceError};

const NONE: u32 = u32::MAX;

/// Default cap on the number of cover vertices in one development.
pub const DEFAULT_MAX_COVER_VERTICES: usize = 6_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoverError {
    #[error("cover development exceeded {cap} vertices")]
    ResourceLimit { cap: usize },
    #[error("surface is simply connected")]
    SimplyConnected,
    #[error("surface has trivial Z2 homology")]
    TrivialHomology,
    #[error("Z2 homology rank {0} exceeds the supported maximum of 8")]
    RankTooLarge(usize),
    #[error("developed distances need a flat surface without cone points")]
    NotDevelopable,
    #[error("invalid walk: {0}")]
    InvalidWalk(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceModel {
    Graph,
    Developed,
}

impl DistanceModel {
    /// `Developed` when the surface is flat without cone points, else `Graph`.
    pub fn auto(surface: &Surface) -> Self {
        if surface.is_flat() {
            DistanceModel::Developed
        } else {
            DistanceModel::Graph
        }
    }
}

impl fmt::Display for DistanceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DistanceModel::Graph => "graph",
            DistanceModel::Developed => "developed",
        })
    }
}

impl FromStr for DistanceModel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "graph" => Ok(DistanceModel::Graph),
            "developed" => Ok(DistanceModel::Developed),
            other => Err(format!("unknown distance model {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SystoleKind {
    #[serde(rename = "homotopy")]
    Homotopy,
    #[serde(rename = "homology-z2")]
    HomologyZ2,
}

/// Shortest loop of a given kind, as a closed vertex walk.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SystoleResult {
    pub length: f64,
    pub representative: Vec<usize>,
    pub kind: SystoleKind,
    pub certified: bool,
    pub search_radius: f64,
}

/// Flattened link data of the base surface.
#[derive(Clone)]
struct BaseLinks {
    start: Vec<usize>,
    neighbor: Vec<u32>,
    length: Vec<f64>,
    triangle: Vec<u32>,
    /// Angle from slot 0 to slot i, summed over the link triangles.
    turn: Vec<f64>,
}

impl BaseLinks {
    fn new(surface: &Surface, model: DistanceModel) -> Self {
        let with_angles = model == DistanceModel::Developed;
        let nv = surface.vertex_count();
        let mut start = Vec::with_capacity(nv + 1);
        let (mut neighbor, mut length, mut triangle, mut turn) =
            (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        for v in 0..nv {
            start.push(neighbor.len());
            let link = surface.link(v);
            let mut acc = 0.0;
            for (i, &w) in link.neighbors.iter().enumerate() {
                neighbor.push(w as u32);
                length.push(surface.edge_length(v, w).unwrap());
                let t = link.triangles[i];
                triangle.push(t as u32);
                turn.push(acc);
                if with_angles {
                    acc += surface.triangle_angle(t, surface.corner_of(t, v).unwrap());
                }
            }
        }
        start.push(neighbor.len());
        BaseLinks {
            start,
            neighbor,
            length,
            triangle,
            turn,
        }
    }

    fn degree(&self, v: usize) -> usize {
        self.start[v + 1] - self.start[v]
    }

    fn slot_of(&self, v: usize, w: u32) -> usize {
        let s = self.start[v];
        self.neighbor[s..self.start[v + 1]]
            .iter()
            .position(|&x| x == w)
            .expect("base vertices are adjacent")
    }
}

/// A developed piece of the universal cover around one lift of a base vertex.
pub struct CoverRegion<'a> {
    surface: &'a Surface,
    links: Cow<'a, BaseLinks>,
    model: DistanceModel,
    base_vertex: usize,
    radius: f64,
    cap: usize,
    base: Vec<u32>,
    slot_start: Vec<usize>,
    slots: Vec<u32>,
    parent: Vec<u32>,
    dist: Vec<f64>,
    pred: Vec<u32>,
    processed: Vec<bool>,
    pos: Vec<[f64; 2]>,
    phase: Vec<f64>,
    sign: Vec<f64>,
    grid: HashMap<(u32, i64, i64), Vec<u32>>,
    cell: f64,
    heap: BinaryHeap<HeapEntry>,
    merges: Vec<(u32, u32)>,
}

/// One triangle of the developed cover.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverTriangle {
    pub vertices: [usize; 3],
    pub base_triangle: usize,
}

/// Develop the cover around the lift of `v` far enough to contain every
/// point within distance `radius` of it.
pub fn develop(
    surface: &Surface,
    v: usize,
    radius: f64,
    model: DistanceModel,
) -> Result<CoverRegion<'_>, CoverError> {
    develop_capped(surface, v, radius, model, DEFAULT_MAX_COVER_VERTICES)
}

pub fn develop_capped(
    surface: &Surface,
    v: usize,
    radius: f64,
    model: DistanceModel,
    cap: usize,
) -> Result<CoverRegion<'_>, CoverError> {
    develop_inner(surface, None, v, radius, model, cap)
}

fn develop_inner<'a>(
    surface: &'a Surface,
    links: Option<&'a BaseLinks>,
    v: usize,
    radius: f64,
    model: DistanceModel,
    cap: usize,
) -> Result<CoverRegion<'a>, CoverError> {
    surface.check_vertex(v)?;
    if !(radius >= 0.0) {
        return Err(SurfaceError::InvalidArgument(format!("radius {radius} must be ≥ 0")).into());
    }
    if model == DistanceModel::Developed && !surface.is_flat() {
        return Err(CoverError::NotDevelopable);
    }
    let mut region = CoverRegion {
        surface,
        links: match links {
            Some(l) => Cow::Borrowed(l),
            None => Cow::Owned(BaseLinks::new(surface, model)),
        },
        model,
        base_vertex: v,
        radius,
        cap,
        base: Vec::new(),
        slot_start: vec![0],
        slots: Vec::new(),
        parent: Vec::new(),
        dist: Vec::new(),
        pred: Vec::new(),
        processed: Vec::new(),
        pos: Vec::new(),
        phase: Vec::new(),
        sign: Vec::new(),
        grid: HashMap::new(),
        cell: 0.5 * surface.min_edge_length(),
        heap: BinaryHeap::new(),
        merges: Vec::new(),
    };
    let root = region.new_vertex(v as u32, 0.0, NONE, [0.0, 0.0], 0.0, 1.0)?;
    region.heap.push(HeapEntry { dist: 0.0, id: root as usize });
    region.run()?;
    Ok(region)
}

impl<'a> CoverRegion<'a> {
    pub fn surface(&self) -> &'a Surface {
        self.surface
    }

    pub fn model(&self) -> DistanceModel {
        self.model
    }

    pub fn base_vertex(&self) -> usize {
        self.base_vertex
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// The lift of the base vertex the region is centred on.
    pub fn root(&self) -> usize {
        self.find(0) as usize
    }

    /// Ids of the distinct cover vertices.
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.base.len()).filter(|&x| self.parent[x] as usize == x)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices().count()
    }

    /// Base vertex under cover vertex `x`.
    pub fn projection(&self, x: usize) -> usize {
        self.base[self.find(x as u32) as usize] as usize
    }

    /// Distance from the root; exact for values up to the developed radius.
    pub fn distance(&self, x: usize) -> f64 {
        self.dist[self.find(x as u32) as usize]
    }

    /// Planar position in the developed model.
    pub fn position(&self, x: usize) -> Option<[f64; 2]> {
        (self.model == DistanceModel::Developed).then(|| self.pos[self.find(x as u32) as usize])
    }

    /// Cover neighbors of `x`, in link order of its base vertex.
    pub fn neighbors(&self, x: usize) -> Vec<Option<usize>> {
        let r = self.find(x as u32) as usize;
        self.slots[self.slot_start[r]..self.slot_start[r + 1]]
            .iter()
            .map(|&y| (y != NONE).then(|| self.find(y) as usize))
            .collect()
    }

    /// Sorted distances of the lifts of base vertex `w` lying within the
    /// developed radius.
    pub fn lift_distances(&self, w: usize) -> Vec<f64> {
        let limit = self.radius + 1e-9 * self.radius.max(1.0);
        let mut d: Vec<f64> = self
            .vertices()
            .filter(|&x| self.base[x] as usize == w && self.dist[x] <= limit)
            .map(|x| self.dist[x])
            .collect();
        d.sort_by(f64::total_cmp);
        d
    }

    /// Lifts of base vertex `w` within the developed radius, nearest first
    /// (ties by id).
    pub fn lifts(&self, w: usize) -> Vec<usize> {
        let limit = self.radius + 1e-9 * self.radius.max(1.0);
        let mut xs: Vec<usize> = self
            .vertices()
            .filter(|&x| self.base[x] as usize == w && self.dist[x] <= limit)
            .collect();
        xs.sort_by(|&a, &b| self.dist[a].total_cmp(&self.dist[b]).then(a.cmp(&b)));
        xs
    }

    /// For each base vertex, its two nearest lifts within the developed radius
    /// (ties by id), in one pass over the region.
    pub fn two_nearest_lifts(&self) -> Vec<[Option<usize>; 2]> {
        let limit = self.radius + 1e-9 * self.radius.max(1.0);
        let mut out = vec![[None, None]; self.surface.vertex_count()];
        let key = |x: usize| (self.dist[x], x);
        let before = |a: usize, b: usize| key(a).0.total_cmp(&key(b).0).then(a.cmp(&b)).is_lt();
        for x in self.vertices().filter(|&x| self.dist[x] <= limit) {
            let slot: &mut [Option<usize>; 2] = &mut out[self.base[x] as usize];
            match *slot {
                [None, _] => slot[0] = Some(x),
                [Some(a), second] => {
                    if before(x, a) {
                        *slot = [Some(x), Some(a)];
                    } else if second.is_none_or(|b| before(x, b)) {
                        slot[1] = Some(x);
                    }
                }
            }
        }
        out
    }

    /// Base vertex walk from the root to `x` along the search tree.
    pub fn path_to(&self, x: usize) -> Vec<usize> {
        let mut path = Vec::new();
        let mut cur = self.find(x as u32);
        loop {
            path.push(self.base[cur as usize] as usize);
            let p = self.pred[cur as usize];
            if p == NONE {
                break;
            }
            cur = self.find(p);
        }
        path.reverse();
        path
    }

    /// Triangles spanned by the completed stars.
    pub fn triangles(&self) -> Vec<CoverTriangle> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for x in self.vertices() {
            if !self.processed[x] {
                continue;
            }
            let v = self.base[x] as usize;
            let d = self.links.degree(v);
            for i in 0..d {
                let a = self.find(self.slot(x, i));
                let b = self.find(self.slot(x, (i + 1) % d));
                let mut key = [x as u32, a, b];
                key.sort_unstable();
                if seen.insert(key) {
                    out.push(CoverTriangle {
                        vertices: [x, a as usize, b as usize],
                        base_triangle: self.links.triangle[self.links.start[v] + i] as usize,
                    });
                }
            }
        }
        out
    }

    /// Follow a closed base walk from the root; `None` when it leaves the
    /// developed region.
    pub fn lift_walk(&self, walk: &[usize]) -> Option<Vec<usize>> {
        let mut cur = self.root() as u32;
        let mut out = vec![cur as usize];
        for &w in &walk[1..] {
            let v = self.base[cur as usize] as usize;
            let s = self.links.start[v]
                + self.links.neighbor[self.links.start[v]..self.links.start[v + 1]]
                    .iter()
                    .position(|&x| x as usize == w)?;
            let next = self.slots[self.slot_start[cur as usize] + (s - self.links.start[v])];
            if next == NONE {
                return None;
            }
            cur = self.find(next);
            out.push(cur as usize);
        }
        Some(out)
    }

    fn find(&self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            x = self.parent[x as usize];
        }
        x
    }

    fn find_compress(&mut self, x: u32) -> u32 {
        let r = self.find(x);
        let mut cur = x;
        while self.parent[cur as usize] != r {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = r;
            cur = next;
        }
        r
    }

    fn slot(&self, x: usize, i: usize) -> u32 {
        self.slots[self.slot_start[x] + i]
    }

    fn new_vertex(
        &mut self,
        b: u32,
        dist: f64,
        pred: u32,
        pos: [f64; 2],
        phase: f64,
        sign: f64,
    ) -> Result<u32, CoverError> {
        if self.base.len() >= self.cap {
            return Err(CoverError::ResourceLimit { cap: self.cap });
        }
        let id = self.base.len() as u32;
        let d = self.links.degree(b as usize);
        self.base.push(b);
        self.slots.extend(std::iter::repeat(NONE).take(d));
        self.slot_start.push(self.slots.len());
        self.parent.push(id);
        self.dist.push(dist);
        self.pred.push(pred);
        self.processed.push(false);
        if self.model == DistanceModel::Developed {
            self.pos.push(pos);
            self.phase.push(phase);
            self.sign.push(sign);
            let key = self.cell_key(b, pos);
            self.grid.entry(key).or_default().push(id);
        }
        Ok(id)
    }

    fn cell_key(&self, b: u32, p: [f64; 2]) -> (u32, i64, i64) {
        (b, (p[0] / self.cell).floor() as i64, (p[1] / self.cell).floor() as i64)
    }

    /// Existing vertex over `b` at planar position `p`.
    fn lookup_position(&self, b: u32, p: [f64; 2]) -> Option<u32> {
        let (_, cx, cy) = self.cell_key(b, p);
        let tol = 1e-6 * self.cell;
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(ids) = self.grid.get(&(b, cx + dx, cy + dy)) {
                    for &id in ids {
                        let q = self.pos[id as usize];
                        if (q[0] - p[0]).hypot(q[1] - p[1]) <= tol {
                            return Some(self.find(id));
                        }
                    }
                }
            }
        }
        None
    }

    /// Planar direction of slot `i` seen from developed vertex `x`.
    fn slot_direction(&self, x: usize, i: usize) -> f64 {
        let v = self.base[x] as usize;
        self.phase[x] + self.sign[x] * self.links.turn[self.links.start[v] + i]
    }

    fn slot_point(&self, x: usize, i: usize) -> [f64; 2] {
        let v = self.base[x] as usize;
        let a = self.slot_direction(x, i);
        let l = self.links.length[self.links.start[v] + i];
        let p = self.pos[x];
        [p[0] + l * a.cos(), p[1] + l * a.sin()]
    }

    /// Record `y` as the neighbor of `x` in slot `i` and `x` as the
    /// corresponding neighbor of `y`.
    fn set_edge(&mut self, x: u32, i: usize, y: u32) {
        let v = self.base[x as usize] as usize;
        let u = self.base[y as usize] as usize;
        let j = self.links.slot_of(u, v as u32);
        self.set_slot(x, i, y);
        self.set_slot(y, j, x);
    }

    fn set_slot(&mut self, x: u32, i: usize, y: u32) {
        let x = self.find(x);
        let y = self.find(y);
        let k = self.slot_start[x as usize] + i;
        let cur = self.slots[k];
        if cur == NONE {
            self.slots[k] = y;
        } else if self.find(cur) != y {
            self.merges.push((cur, y));
        }
    }

    /// Register the cover triangle spanned by `x` and its slots `i`, `i + 1`.
    fn register_triangle(&mut self, x: u32, i: usize) {
        let v = self.base[x as usize] as usize;
        let d = self.links.degree(v);
        let a = self.slot(x as usize, i);
        let b = self.slot(x as usize, (i + 1) % d);
        if a == NONE || b == NONE {
            return;
        }
        let (a, b) = (self.find(a), self.find(b));
        let ia = self.links.slot_of(self.base[a as usize] as usize, self.base[b as usize]);
        self.set_edge(a, ia, b);
    }

    fn process_merges(&mut self) {
        while let Some((a, b)) = self.merges.pop() {
            let (ra, rb) = (self.find_compress(a), self.find_compress(b));
            if ra == rb {
                continue;
            }
            let (keep, gone) = if ra < rb { (ra, rb) } else { (rb, ra) };
            let (k, g) = (keep as usize, gone as usize);
            debug_assert_eq!(self.base[k], self.base[g]);
            self.parent[g] = keep;
            let d = self.slot_start[k + 1] - self.slot_start[k];
            for i in 0..d {
                let sg = self.slots[self.slot_start[g] + i];
                if sg == NONE {
                    continue;
                }
                let sk = self.slots[self.slot_start[k] + i];
                if sk == NONE {
                    self.slots[self.slot_start[k] + i] = sg;
                } else if self.find(sk) != self.find(sg) {
                    self.merges.push((sk, sg));
                }
            }
            if self.dist[g] < self.dist[k] {
                self.dist[k] = self.dist[g];
                self.pred[k] = self.pred[g];
            }
            self.processed[k] |= self.processed[g];
            self.heap.push(HeapEntry {
                dist: self.dist[k],
                id: k,
            });
        }
    }

    /// Fill every slot of `x`.
    fn complete_star(&mut self, x: u32) -> Result<(), CoverError> {
        let v = self.base[x as usize] as usize;
        let d = self.links.degree(v);
        let ls = self.links.start[v];
        if (0..d).all(|i| self.slot(x as usize, i) == NONE) {
            self.create_neighbor(x, 0)?;
        }
        loop {
            let x = self.find(x);
            let xu = x as usize;
            let mut progress = true;
            while progress {
                progress = false;
                for i in 0..d {
                    if self.slot(xu, i) != NONE {
                        continue;
                    }
                    let target = self.links.neighbor[ls + i];
                    let mut found = NONE;
                    for j in [(i + d - 1) % d, (i + 1) % d] {
                        let p = self.slot(xu, j);
                        if p == NONE {
                            continue;
                        }
                        let p = self.find(p);
                        let pb = self.base[p as usize] as usize;
                        let q = self.slot(p as usize, self.links.slot_of(pb, target));
                        if q != NONE {
                            found = self.find(q);
                            break;
                        }
                    }
                    if found != NONE {
                        self.set_edge(x, i, found);
                        self.process_merges();
                        progress = true;
                    }
                }
            }
            let x = self.find(x);
            let xu = x as usize;
            let empty = (0..d).find(|&i| {
                self.slot(xu, i) == NONE
                    && (self.slot(xu, (i + d - 1) % d) != NONE || self.slot(xu, (i + 1) % d) != NONE)
            });
            match empty {
                Some(i) => {
                    self.create_neighbor(x, i)?;
                }
                None => break,
            }
        }
        let x = self.find(x);
        for i in 0..d {
            self.register_triangle(x, i);
            self.process_merges();
        }
        let x = self.find(x);
        self.processed[x as usize] = true;
        Ok(())
    }

    /// Put a vertex in slot `i` of `x`, reusing a coincident developed vertex
    /// when there is one.
    fn create_neighbor(&mut self, x: u32, i: usize) -> Result<(), CoverError> {
        let xu = x as usize;
        let v = self.base[xu] as usize;
        let d = self.links.degree(v);
        let ls = self.links.start[v];
        let u = self.links.neighbor[ls + i];
        let y = if self.model == DistanceModel::Developed {
            let p = self.slot_point(xu, i);
            match self.lookup_position(u, p) {
                Some(y) => y,
                None => {
                    // Orientation of the new star from the shared triangle
                    // spanned by slots i and i + 1 of x.
                    let w = self.links.neighbor[ls + (i + 1) % d];
                    let q = self.slot_point(xu, (i + 1) % d);
                    let px = self.pos[xu];
                    let cross = (px[0] - p[0]) * (q[1] - p[1]) - (px[1] - p[1]) * (q[0] - p[0]);
                    let uu = u as usize;
                    let du = self.links.degree(uu);
                    let a = self.links.slot_of(uu, v as u32);
                    let b = self.links.slot_of(uu, w);
                    let ccw = if cross > 0.0 { 1.0 } else { -1.0 };
                    let sign = if b == (a + 1) % du { ccw } else { -ccw };
                    let back = (px[1] - p[1]).atan2(px[0] - p[0]);
                    let phase = back - sign * self.links.turn[self.links.start[uu] + a];
                    let dist = p[0].hypot(p[1]);
                    self.new_vertex(u, dist, x, p, phase, sign)?
                }
            }
        } else {
            self.new_vertex(u, f64::INFINITY, NONE, [0.0; 2], 0.0, 0.0)?
        };
        self.set_edge(x, i, y);
        // Close the triangles on either side when their third vertex is known.
        self.register_triangle(x, i);
        self.register_triangle(x, (i + d - 1) % d);
        self.process_merges();
        Ok(())
    }

    fn run(&mut self) -> Result<(), CoverError> {
        let limit = match self.model {
            DistanceModel::Graph => self.radius,
            // Vertices in the disk of radius r are joined through triangles
            // meeting the disk, whose corners lie within r + longest edge.
            DistanceModel::Developed => self.radius + self.surface.max_edge_length(),
        } * (1.0 + 1e-12)
            + 1e-12;
        while let Some(HeapEntry { dist: d, id }) = self.heap.pop() {
            let x = self.find(id as u32);
            if d > self.dist[x as usize] {
                continue;
            }
            if d > limit {
                break;
            }
            let newly = !self.processed[x as usize];
            if newly {
                self.complete_star(x)?;
            }
            let x = self.find(x);
            let xu = x as usize;
            let v = self.base[xu] as usize;
            let ls = self.links.start[v];
            for i in 0..self.links.degree(v) {
                let y = self.find(self.slot(xu, i));
                let yu = y as usize;
                match self.model {
                    DistanceModel::Graph => {
                        let nd = self.dist[xu] + self.links.length[ls + i];
                        if nd < self.dist[yu] {
                            self.dist[yu] = nd;
                            self.pred[yu] = x;
                            self.heap.push(HeapEntry { dist: nd, id: yu });
                        }
                    }
                    DistanceModel::Developed => {
                        if newly && !self.processed[yu] {
                            self.heap.push(HeapEntry {
                                dist: self.dist[yu],
                                id: yu,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Sorted cover distances from the lift of `v` to the lifts of `v` within `radius`.
pub fn lift_distances(
    surface: &Surface,
    v: usize,
    radius: f64,
    model: DistanceModel,
) -> Result<Vec<f64>, CoverError> {
    Ok(develop(surface, v, radius, model)?.lift_distances(v))
}

/// Number of lifts of `v` within distance `radius` of its base lift, which
/// counts based homotopy classes of loops at `v` of length at most `radius`.
pub fn loop_class_count(
    surface: &Surface,
    v: usize,
    radius: f64,
    model: DistanceModel,
) -> Result<u64, CoverError> {
    Ok(lift_distances(surface, v, radius, model)?.len() as u64)
}

/// Deck lattice of a triangulated flat torus: the two shortest independent
/// translations between lifts of vertex 0.
pub fn deck_lattice(surface: &Surface) -> Result<FlatTorus, CoverError> {
    let topo = surface.topology();
    if topo.euler_characteristic != 0 || !topo.orientable || !surface.is_flat() {
        return Err(CoverError::NotDevelopable);
    }
    // The second successive minimum is at most twice the covering radius.
    let region = develop(surface, 0, 2.0 * surface.diameter() * (1.0 + 1e-9), DistanceModel::Developed)?;
    let origin = region.position(region.root()).expect("root is placed");
    let vectors: Vec<[f64; 2]> = region
        .lifts(0)
        .into_iter()
        .skip(1)
        .filter_map(|x| region.position(x))
        .map(|p| [p[0] - origin[0], p[1] - origin[1]])
        .collect();
    let first = vectors[0];
    let scale = first[0].hypot(first[1]);
    let second = vectors
        .iter()
        .find(|w| (first[0] * w[1] - first[1] * w[0]).abs() > 1e-9 * scale * w[0].hypot(w[1]))
        .expect("a torus cover has two independent translations");
    FlatTorus::new(vec![first.to_vec(), second.to_vec()]).map_err(|_| CoverError::NotDevelopable)
}

/// Whether a closed vertex walk lifts to a closed walk in the cover.
pub fn is_contractible(surface: &Surface, walk: &[usize]) -> Result<bool, CoverError> {
    check_closed(surface, walk)?;
    let length = surface.walk_length(walk)?;
    let region = develop(surface, walk[0], length, DistanceModel::Graph)?;
    let lifted = region
        .lift_walk(walk)
        .expect("a walk stays within its own length of the base lift");
    Ok(*lifted.last().unwrap() == region.root())
}

/// Shortest noncontractible closed edge walk.
///
/// The ℤ₂ systole ℓ bounds the answer from above. A shortest loop through a
/// vertex w, cut at a vertex v near its midpoint, lifts to a path between
/// two distinct lifts of w through the lift of v, with both halves shorter
/// than ℓ/2 + longest edge. Developing every vertex to that radius therefore
/// finds it.
pub fn homotopy_systole(surface: &Surface) -> Result<SystoleResult, CoverError> {
    if surface.topology().is_sphere() {
        return Err(CoverError::SimplyConnected);
    }
    let upper = homology::homology_systole_z2(surface)?;
    if homology_detects_systole(surface) {
        return Ok(SystoleResult {
            kind: SystoleKind::Homotopy,
            certified: !is_contractible(surface, &upper.representative)?,
            ..upper
        });
    }
    developed_homotopy_systole(surface, upper)
}

/// A shortest noncontractible walk is a simple cycle. On the torus and the
/// projective plane separating simple cycles bound disks, so there the
/// shortest ℤ₂-nontrivial cycle is a shortest noncontractible one.
pub fn homology_detects_systole(surface: &Surface) -> bool {
    let topo = surface.topology();
    (topo.orientable && topo.euler_characteristic == 0) || topo.euler_characteristic == 1
}

/// Homotopy systole by developing the cover around every vertex up to half
/// the ℤ₂ systole.
fn developed_homotopy_systole(surface: &Surface, upper: SystoleResult) -> Result<SystoleResult, CoverError> {
    let radius = 0.5 * upper.length + surface.max_edge_length();
    let vertices: Vec<usize> = (0..surface.vertex_count()).collect();
    let links = BaseLinks::new(surface, DistanceModel::Graph);
    let per_vertex = par::map(&vertices, |&v| best_loop_through(surface, &links, v, radius));
    let mut best: Option<(f64, Vec<usize>)> = None;
    for r in per_vertex {
        if let Some((len, walk)) = r? {
            if best.as_ref().is_none_or(|(b, _)| len < *b - 1e-12) {
                best = Some((len, walk));
            }
        }
    }
    let (_, walk) = best.unwrap_or((upper.length, upper.representative.clone()));
    let walk = rotate_to_min(walk);
    let length = surface.walk_length(&walk)?;
    let certified = length <= upper.length + 1e-9 && !is_contractible(surface, &walk)?;
    Ok(SystoleResult {
        length,
        representative: walk,
        kind: SystoleKind::Homotopy,
        certified,
        search_radius: radius,
    })
}

/// Shortest closed walk joining two distinct lifts of some vertex through
/// the lift of `v`.
fn best_loop_through(
    surface: &Surface,
    links: &BaseLinks,
    v: usize,
    radius: f64,
) -> Result<Option<(f64, Vec<usize>)>, CoverError> {
    let region = develop_inner(surface, Some(links), v, radius, DistanceModel::Graph, DEFAULT_MAX_COVER_VERTICES)?;
    let mut best: Option<(f64, usize, usize)> = None;
    for pair in region.two_nearest_lifts() {
        let [Some(a), Some(b)] = pair else {
            continue;
        };
        let len = region.distance(a) + region.distance(b);
        if best.is_none_or(|(l, _, _)| len < l - 1e-12) {
            best = Some((len, a, b));
        }
    }
    Ok(best.map(|(len, a, b)| {
        let mut walk = region.path_to(a);
        walk.reverse();
        walk.extend(region.path_to(b).into_iter().skip(1));
        (len, walk)
    }))
}
