//! ℤ₂ first homology of a closed triangulated surface.
//!
//! A tree–cotree decomposition gives b₁ leftover edges. Labelling primal tree
//! edges 0, leftover edge i with the i-th unit vector and solving the cotree
//! edges from the face relations yields b₁ cocycles forming a basis of
//! H¹(M; ℤ₂). A closed walk is homologically trivial iff every cocycle
//! evaluates to zero on it.

use std::collections::{BinaryHeap, VecDeque};

use crate::covering::{CoverError, SystoleKind, SystoleResult};
use crate::surface::{HeapEntry, Surface};

/// Largest ℤ₂ rank handled by the state-space systole search.
pub const MAX_RANK: usize = 8;

#[derive(Debug, Clone)]
pub struct HomologyBasis {
    rank: usize,
    labels: Vec<u16>,
}

impl HomologyBasis {
    pub fn new(surface: &Surface) -> Self {
        let nv = surface.vertex_count();
        let nf = surface.triangle_count();
        let ne = surface.edges().len();
        let mut in_tree = vec![false; ne];
        let mut seen = vec![false; nv];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for (w, _) in surface.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    in_tree[surface.edge_between(v, w).unwrap()] = true;
                    queue.push_back(w);
                }
            }
        }

        // Dual spanning tree on the remaining edges, recorded in BFS order.
        let mut in_cotree = vec![false; ne];
        let mut parent_edge = vec![usize::MAX; nf];
        let mut face_seen = vec![false; nf];
        let mut order = vec![0usize];
        face_seen[0] = true;
        let mut head = 0;
        while head < order.len() {
            let f = order[head];
            head += 1;
            for e in surface.triangle_edges(f) {
                if in_tree[e] {
                    continue;
                }
                let [a, b] = surface.edge_faces(e);
                let g = if a == f { b } else { a };
                if !face_seen[g] {
                    face_seen[g] = true;
                    in_cotree[e] = true;
                    parent_edge[g] = e;
                    order.push(g);
                }
            }
        }

        let mut labels = vec![0u16; ne];
        let mut known = in_tree.clone();
        let mut rank = 0;
        for e in 0..ne {
            if !in_tree[e] && !in_cotree[e] {
                if rank < 16 {
                    labels[e] = 1 << rank;
                }
                known[e] = true;
                rank += 1;
            }
        }
        // Peel dual leaves: the parent edge is the last unknown edge of its face.
        for &f in order.iter().skip(1).rev() {
            let pe = parent_edge[f];
            let mut sum = 0u16;
            for e in surface.triangle_edges(f) {
                if e != pe {
                    debug_assert!(known[e]);
                    sum ^= labels[e];
                }
            }
            labels[pe] = sum;
            known[pe] = true;
        }
        debug_assert_eq!(
            surface.triangle_edges(0).iter().fold(0, |acc, &e| acc ^ labels[e]),
            0
        );
        HomologyBasis { rank, labels }
    }

    /// b₁(M; ℤ₂).
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Cocycle values on edge `e`, one bit per basis element.
    pub fn edge_label(&self, e: usize) -> u16 {
        self.labels[e]
    }

    /// Homology class of a closed walk given as a vertex sequence.
    pub fn class_of(&self, surface: &Surface, walk: &[usize]) -> Result<u16, CoverError> {
        check_closed(surface, walk)?;
        let mut class = 0;
        for pair in walk.windows(2) {
            class ^= self.labels[surface.edge_between(pair[0], pair[1]).unwrap()];
        }
        Ok(class)
    }
}

pub(crate) fn check_closed(surface: &Surface, walk: &[usize]) -> Result<(), CoverError> {
    if walk.len() < 2 || walk.first() != walk.last() {
        return Err(CoverError::InvalidWalk(
            "a closed walk starts and ends at the same vertex".into(),
        ));
    }
    surface.walk_length(walk)?;
    Ok(())
}

/// Shortest closed edge walk whose ℤ₂ homology class is nonzero.
///
/// Shortest paths run on states (vertex, class). Two paths from the same
/// source reaching the same vertex in different classes close up to a
/// nontrivial cycle; every cycle of length ℓ arises this way from a source
/// on it with both halves shorter than ℓ/2 + the longest edge, which bounds
/// each search.
pub fn homology_systole_z2(surface: &Surface) -> Result<SystoleResult, CoverError> {
    let basis = checked_basis(surface)?;
    let order: Vec<usize> = (0..surface.vertex_count()).collect();
    let found = StateSearch::new(surface, &basis).run(&order, f64::INFINITY, false);
    let (best, walk) = found.expect("a surface with nonzero b₁ has a nontrivial cycle");
    let length = surface.walk_length(&walk)?;
    let certified = basis.class_of(surface, &walk)? != 0;
    Ok(SystoleResult {
        length,
        representative: walk,
        kind: SystoleKind::HomologyZ2,
        certified,
        search_radius: 0.5 * best + surface.max_edge_length(),
    })
}

/// Whether some ℤ₂-nontrivial closed walk is shorter than `bound`. Sources in
/// `first` are searched before the others.
pub fn has_nontrivial_cycle_below(surface: &Surface, bound: f64, first: &[usize]) -> Result<bool, CoverError> {
    let basis = checked_basis(surface)?;
    let nv = surface.vertex_count();
    let mut order: Vec<usize> = first.iter().copied().filter(|&v| v < nv).collect();
    let mut listed = vec![false; nv];
    for &v in &order {
        listed[v] = true;
    }
    order.extend((0..nv).filter(|&v| !listed[v]));
    Ok(StateSearch::new(surface, &basis).run(&order, bound, true).is_some())
}

fn checked_basis(surface: &Surface) -> Result<HomologyBasis, CoverError> {
    let basis = HomologyBasis::new(surface);
    let b = basis.rank();
    if b == 0 {
        return Err(CoverError::TrivialHomology);
    }
    if b > MAX_RANK {
        return Err(CoverError::RankTooLarge(b));
    }
    Ok(basis)
}

/// Shortest paths on (vertex, class) states with reusable buffers.
struct StateSearch {
    classes: usize,
    max_edge: f64,
    adj_start: Vec<usize>,
    adj: Vec<(usize, f64, usize)>,
    dist: Vec<f64>,
    parent: Vec<usize>,
    stamp: Vec<usize>,
    settled: Vec<bool>,
}

impl StateSearch {
    fn new(surface: &Surface, basis: &HomologyBasis) -> Self {
        let classes = 1usize << basis.rank();
        let nv = surface.vertex_count();
        let mut adj_start = Vec::with_capacity(nv + 1);
        let mut adj = Vec::new();
        for w in 0..nv {
            adj_start.push(adj.len());
            for (x, len) in surface.neighbors(w) {
                let e = surface.edge_between(w, x).unwrap();
                adj.push((x, len, basis.labels[e] as usize));
            }
        }
        adj_start.push(adj.len());
        let n_states = nv * classes;
        StateSearch {
            classes,
            max_edge: surface.max_edge_length(),
            adj_start,
            adj,
            dist: vec![f64::INFINITY; n_states],
            parent: vec![usize::MAX; n_states],
            stamp: vec![usize::MAX; n_states],
            settled: vec![false; n_states],
        }
    }

    /// Shortest nontrivial cycle shorter than `bound`, searched from the
    /// sources in order. With `early` the first cycle below the bound is
    /// returned.
    fn run(&mut self, order: &[usize], bound: f64, early: bool) -> Option<(f64, Vec<usize>)> {
        let classes = self.classes;
        let nv = self.adj_start.len() - 1;
        let mut settled_at: Vec<Vec<usize>> = vec![Vec::new(); nv];
        let mut touched: Vec<usize> = Vec::new();
        let mut best = bound;
        let mut best_walk: Option<Vec<usize>> = None;
        let mut heap = BinaryHeap::new();
        for (round, &source) in order.iter().enumerate() {
            for &w in &touched {
                settled_at[w].clear();
            }
            touched.clear();
            heap.clear();
            let start = source * classes;
            self.stamp[start] = round;
            self.dist[start] = 0.0;
            self.parent[start] = usize::MAX;
            self.settled[start] = false;
            heap.push(HeapEntry { dist: 0.0, id: start });
            let mut pair = None;
            while let Some(HeapEntry { dist: d, id: s }) = heap.pop() {
                if self.settled[s] || d > self.dist[s] {
                    continue;
                }
                if d > 0.5 * best + self.max_edge {
                    break;
                }
                self.settled[s] = true;
                let (w, c) = (s / classes, s % classes);
                if settled_at[w].is_empty() {
                    touched.push(w);
                }
                for &other in &settled_at[w] {
                    let total = d + self.dist[other];
                    if total < best - 1e-12 {
                        best = total;
                        pair = Some((s, other));
                    }
                }
                if early && pair.is_some() {
                    break;
                }
                settled_at[w].push(s);
                for &(x, len, label) in &self.adj[self.adj_start[w]..self.adj_start[w + 1]] {
                    let t = x * classes + (c ^ label);
                    if self.stamp[t] != round {
                        self.stamp[t] = round;
                        self.dist[t] = f64::INFINITY;
                        self.parent[t] = usize::MAX;
                        self.settled[t] = false;
                    }
                    let nd = d + len;
                    if nd < self.dist[t] {
                        self.dist[t] = nd;
                        self.parent[t] = s;
                        heap.push(HeapEntry { dist: nd, id: t });
                    }
                }
            }
            if let Some((a, b)) = pair {
                let mut walk = self.trace(a);
                let mut back = self.trace(b);
                back.reverse();
                walk.extend(back.into_iter().skip(1));
                best_walk = Some(rotate_to_min(walk));
                if early {
                    break;
                }
            }
        }
        best_walk.map(|w| (best, w))
    }

    fn trace(&self, mut s: usize) -> Vec<usize> {
        let mut path = vec![s / self.classes];
        while self.parent[s] != usize::MAX {
            s = self.parent[s];
            path.push(s / self.classes);
        }
        path.reverse();
        path
    }
}

/// Rotate a closed walk so that it starts at its smallest vertex.
pub(crate) fn rotate_to_min(walk: Vec<usize>) -> Vec<usize> {
    let body = &walk[..walk.len() - 1];
    let start = (0..body.len()).min_by_key(|&i| body[i]).unwrap_or(0);
    let mut out: Vec<usize> = body[start..].iter().chain(&body[..start]).copied().collect();
    out.push(out[0]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{self, Builtin, GeneratorParams};

    /// Independent triviality test: the edge set of the walk (mod 2) lies in
    /// the span of triangle boundaries.
    fn is_boundary(surface: &Surface, walk: &[usize]) -> bool {
        let ne = surface.edges().len();
        let words = ne.div_ceil(64);
        let to_bits = |edges: &[usize]| {
            let mut v = vec![0u64; words];
            for &e in edges {
                v[e / 64] ^= 1 << (e % 64);
            }
            v
        };
        let mut rows: Vec<Vec<u64>> = (0..surface.triangle_count())
            .map(|t| to_bits(&surface.triangle_edges(t)))
            .collect();
        let cycle: Vec<usize> = walk
            .windows(2)
            .map(|p| surface.edge_between(p[0], p[1]).unwrap())
            .collect();
        let mut target = to_bits(&cycle);
        // Gaussian elimination over ℤ₂.
        let mut pivots: Vec<(usize, Vec<u64>)> = Vec::new();
        for row in rows.drain(..) {
            let mut r = row;
            for (p, pr) in &pivots {
                if r[p / 64] >> (p % 64) & 1 == 1 {
                    for (a, b) in r.iter_mut().zip(pr) {
                        *a ^= b;
                    }
                }
            }
            if let Some(p) = (0..ne).find(|&i| r[i / 64] >> (i % 64) & 1 == 1) {
                for (_, pr) in pivots.iter_mut() {
                    if pr[p / 64] >> (p % 64) & 1 == 1 {
                        for (a, b) in pr.iter_mut().zip(&r) {
                            *a ^= b;
                        }
                    }
                }
                pivots.push((p, r));
            }
        }
        for (p, pr) in &pivots {
            if target[p / 64] >> (p % 64) & 1 == 1 {
                for (a, b) in target.iter_mut().zip(pr) {
                    *a ^= b;
                }
            }
        }
        target.iter().all(|&x| x == 0)
    }

    fn brute_force_systole(surface: &Surface, max_steps: usize) -> f64 {
        let mut best = f64::INFINITY;
        let mut walk = Vec::new();
        fn extend(
            s: &Surface,
            walk: &mut Vec<usize>,
            len: f64,
            steps: usize,
            best: &mut f64,
        ) {
            let start = walk[0];
            let last = *walk.last().unwrap();
            if walk.len() > 1 && last == start {
                if len < *best && !is_boundary(s, walk) {
                    *best = len;
                }
                return;
            }
            if steps == 0 {
                return;
            }
            for (w, l) in s.neighbors(last) {
                walk.push(w);
                extend(s, walk, len + l, steps - 1, best);
                walk.pop();
            }
        }
        for v in 0..surface.vertex_count() {
            walk.clear();
            walk.push(v);
            extend(surface, &mut walk, 0.0, max_steps, &mut best);
        }
        best
    }

    #[test]
    fn ranks() {
        let p = GeneratorParams::default();
        for (b, rank) in [
            (Builtin::SphereTetra, 0),
            (Builtin::TorusSquare, 2),
            (Builtin::Rp2Icosa, 1),
            (Builtin::Genus2Octagon, 4),
        ] {
            let s = generators::generate(b, &p).unwrap();
            assert_eq!(HomologyBasis::new(&s).rank(), rank, "{b}");
        }
    }

    #[test]
    fn face_boundaries_are_trivial() {
        let s = generators::genus2_octagon();
        let h = HomologyBasis::new(&s);
        for t in s.triangles() {
            assert_eq!(h.class_of(&s, &[t[0], t[1], t[2], t[0]]).unwrap(), 0);
        }
    }

    #[test]
    fn classes_agree_with_boundary_test() {
        let s = generators::torus_square(1.0);
        let h = HomologyBasis::new(&s);
        // Horizontal row of the 3×3 grid and a back-and-forth walk.
        let row = [0, 1, 2, 0];
        assert_ne!(h.class_of(&s, &row).unwrap(), 0);
        assert!(!is_boundary(&s, &row));
        assert_eq!(h.class_of(&s, &[0, 1, 0]).unwrap(), 0);
        assert!(is_boundary(&s, &[0, 1, 0]));
    }

    #[test]
    fn square_torus_systole() {
        for k in 0..3 {
            let s = generators::torus_square(1.0).subdivide(k).unwrap();
            let r = homology_systole_z2(&s).unwrap();
            assert!((r.length - 1.0).abs() < 1e-9, "k={k} got {}", r.length);
            assert!(r.certified);
            assert!(!is_boundary(&s, &r.representative));
        }
    }

    #[test]
    fn rp2_six_vertices() {
        let s = generators::rp2_hemi_icosahedron_unit();
        let brute = brute_force_systole(&s, 4);
        assert_eq!(brute, 3.0);
        let r = homology_systole_z2(&s).unwrap();
        assert_eq!(r.length, 3.0);
        assert!(!is_boundary(&s, &r.representative));
    }

    #[test]
    fn matches_brute_force_on_small_surfaces() {
        for s in [
            generators::torus_hex(1.0),
            generators::torus_rect(2.0),
            generators::genus2_octagon(),
        ] {
            let r = homology_systole_z2(&s).unwrap();
            let steps = (r.length / s.min_edge_length()).ceil() as usize + 1;
            if steps <= 7 {
                assert!((brute_force_systole(&s, steps) - r.length).abs() < 1e-9);
            }
            assert!(!is_boundary(&s, &r.representative));
        }
    }

    #[test]
    fn sphere_has_trivial_homology() {
        assert!(matches!(
            homology_systole_z2(&generators::tetrahedron(1.0)),
            Err(CoverError::TrivialHomology)
        ));
    }
}
