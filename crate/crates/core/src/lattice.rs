//! Flat tori ℝⁿ/Λ for n ≤ 4.
//!
//! Shortest vectors and orbit counts are exact: after basis reduction every
//! candidate coefficient vector lies in a box whose half-widths come from the
//! column norms of the inverse basis (Cauchy–Schwarz), and the box is
//! enumerated exhaustively.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Slack added to radii when counting lattice vectors, so that points lying
/// exactly on a sphere are counted regardless of rounding.
pub const DISTANCE_EPS: f64 = 1e-9;

/// Default cap on the number of coefficient vectors a single enumeration visits.
pub const DEFAULT_ENUMERATION_CAP: u64 = 50_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LatticeError {
    #[error("singular lattice basis")]
    SingularBasis,
    #[error("unsupported dimension {0} (expected 2, 3 or 4)")]
    UnsupportedDimension(usize),
    #[error("basis must be a square matrix of finite numbers")]
    MalformedBasis,
    #[error("modular parameter needs y > 0, got y = {0}")]
    InvalidTau(f64),
    #[error("enumeration box holds {points} points (cap {cap})")]
    ResourceLimit { points: u64, cap: u64 },
}

/// Torus input: either an explicit basis or the shorthand `{"tau": [x, y]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TorusSpec {
    Basis { basis: Vec<Vec<f64>> },
    Tau { tau: [f64; 2] },
}

impl TorusSpec {
    pub fn build(&self) -> Result<FlatTorus, LatticeError> {
        match self {
            TorusSpec::Basis { basis } => FlatTorus::new(basis.clone()),
            TorusSpec::Tau { tau } => FlatTorus::from_tau(ModuliPoint::new(tau[0], tau[1])?),
        }
    }
}

/// Point τ = x + iy of the upper half-plane, standing for the torus with
/// basis (1, 0), (x, y).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModuliPoint {
    pub x: f64,
    pub y: f64,
}

impl ModuliPoint {
    pub fn new(x: f64, y: f64) -> Result<Self, LatticeError> {
        if !(y > 0.0 && y.is_finite() && x.is_finite()) {
            return Err(LatticeError::InvalidTau(y));
        }
        Ok(ModuliPoint { x, y })
    }

    /// The hexagonal point (1/2, √3/2).
    pub fn hexagonal() -> Self {
        ModuliPoint {
            x: 0.5,
            y: 3f64.sqrt() / 2.0,
        }
    }

    /// Representative in the standard fundamental domain |x| ≤ ½, x² + y² ≥ 1.
    ///
    /// On the boundary the representative with x ≥ 0 is chosen.
    pub fn to_fundamental_domain(self) -> Self {
        let (mut x, mut y) = (self.x, self.y);
        for _ in 0..1000 {
            x -= x.round();
            let r2 = x * x + y * y;
            if r2 < 1.0 - 1e-15 {
                // τ ↦ -1/τ
                x = -x / r2;
                y /= r2;
            } else {
                break;
            }
        }
        const EDGE: f64 = 1e-12;
        if x < -0.5 + EDGE {
            x += 1.0;
        }
        if x < 0.0 && (x * x + y * y - 1.0).abs() < EDGE {
            x = -x;
        }
        ModuliPoint { x, y }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LatticeVector {
    /// Integer coefficients with respect to the torus basis.
    pub coefficients: Vec<i64>,
    pub vector: Vec<f64>,
    pub norm: f64,
}

/// Flat torus ℝⁿ/Λ with Λ spanned by the rows of `basis`.
#[derive(Debug, Clone, PartialEq)]
pub struct FlatTorus {
    basis: DMatrix<f64>,
}

impl FlatTorus {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self, LatticeError> {
        let n = rows.len();
        if !(2..=4).contains(&n) {
            return Err(LatticeError::UnsupportedDimension(n));
        }
        if rows.iter().any(|r| r.len() != n || r.iter().any(|x| !x.is_finite())) {
            return Err(LatticeError::MalformedBasis);
        }
        let basis = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
        let torus = FlatTorus { basis };
        if torus.volume() <= 1e-12 {
            return Err(LatticeError::SingularBasis);
        }
        Ok(torus)
    }

    pub fn from_tau(tau: ModuliPoint) -> Result<Self, LatticeError> {
        FlatTorus::new(vec![vec![1.0, 0.0], vec![tau.x, tau.y]])
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis_rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim())
            .map(|i| self.basis.row(i).iter().copied().collect())
            .collect()
    }

    pub fn to_spec(&self) -> TorusSpec {
        TorusSpec::Basis {
            basis: self.basis_rows(),
        }
    }

    /// Covolume |det basis|.
    pub fn volume(&self) -> f64 {
        self.basis.determinant().abs()
    }

    /// Same lattice scaled by `c`.
    pub fn scaled(&self, c: f64) -> Result<Self, LatticeError> {
        FlatTorus::new(
            self.basis_rows()
                .into_iter()
                .map(|r| r.into_iter().map(|x| c * x).collect())
                .collect(),
        )
    }

    /// Basis `U · B` for an integer matrix `U`.
    pub fn change_basis(&self, unimodular: &[Vec<i64>]) -> Result<Self, LatticeError> {
        let n = self.dim();
        let u = DMatrix::from_fn(n, n, |i, j| unimodular[i][j] as f64);
        let b = &u * &self.basis;
        FlatTorus::new((0..n).map(|i| b.row(i).iter().copied().collect()).collect())
    }

    /// Reduced basis of the same lattice together with the integer matrix
    /// `U` such that `reduced = U · basis`.
    ///
    /// For n = 2 this is Lagrange–Gauss reduction, giving |b₁| ≤ |b₂| and
    /// |⟨b₁, b₂⟩| ≤ |b₁|²/2. For larger n rows are reduced pairwise until no
    /// size reduction shortens a row.
    pub fn reduce_with_transform(&self) -> (FlatTorus, Vec<Vec<i64>>) {
        let n = self.dim();
        let mut rows = self.basis_rows();
        let mut u: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        let norm2 = |r: &[f64]| r.iter().map(|x| x * x).sum::<f64>();
        let inner = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
        loop {
            let mut changed = false;
            // Keep rows sorted by length, ties by original position.
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| norm2(&rows[a]).total_cmp(&norm2(&rows[b])).then(a.cmp(&b)));
            rows = order.iter().map(|&i| rows[i].clone()).collect();
            u = order.iter().map(|&i| u[i].clone()).collect();
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let bi2 = norm2(&rows[i]);
                    let m = (inner(&rows[j], &rows[i]) / bi2).round();
                    if m == 0.0 {
                        continue;
                    }
                    let candidate: Vec<f64> =
                        rows[j].iter().zip(&rows[i]).map(|(a, b)| a - m * b).collect();
                    if norm2(&candidate) < norm2(&rows[j]) * (1.0 - 1e-14) {
                        rows[j] = candidate;
                        let mi = m as i64;
                        let ui = u[i].clone();
                        for (x, y) in u[j].iter_mut().zip(ui) {
                            *x -= mi * y;
                        }
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let reduced = FlatTorus {
            basis: DMatrix::from_fn(n, n, |i, j| rows[i][j]),
        };
        (reduced, u)
    }

    pub fn reduce_basis(&self) -> FlatTorus {
        self.reduce_with_transform().0
    }

    /// Half-widths of the coefficient box (in the basis of `self`) that
    /// contains every lattice vector of norm ≤ `radius`.
    fn coefficient_bounds(&self, radius: f64) -> Result<Vec<i64>, LatticeError> {
        let inv = self
            .basis
            .clone()
            .try_inverse()
            .ok_or(LatticeError::SingularBasis)?;
        // x = c·B  ⇒  c = x·B⁻¹, so |c_i| ≤ |x| · ‖column i of B⁻¹‖.
        Ok((0..self.dim())
            .map(|i| {
                let col = inv.column(i).norm();
                (radius * col + 1e-9).floor() as i64
            })
            .collect())
    }

    /// Visit every coefficient vector in the box for `radius`, in the reduced
    /// basis, passing original-basis coefficients and the embedded vector.
    fn enumerate_ball(
        &self,
        radius: f64,
        cap: u64,
        mut visit: impl FnMut(&[i64], &[f64]),
    ) -> Result<(), LatticeError> {
        let (reduced, u) = self.reduce_with_transform();
        let bounds = reduced.coefficient_bounds(radius)?;
        let points = bounds
            .iter()
            .try_fold(1u64, |acc, &b| acc.checked_mul(2 * b as u64 + 1))
            .unwrap_or(u64::MAX);
        if points > cap {
            return Err(LatticeError::ResourceLimit { points, cap });
        }
        let n = self.dim();
        let rows = reduced.basis_rows();
        let mut c: Vec<i64> = bounds.iter().map(|b| -b).collect();
        let mut original = vec![0i64; n];
        let mut vector = vec![0.0; n];
        loop {
            for j in 0..n {
                original[j] = (0..n).map(|i| c[i] * u[i][j]).sum();
                vector[j] = (0..n).map(|i| c[i] as f64 * rows[i][j]).sum();
            }
            visit(&original, &vector);
            // Odometer step.
            let mut k = 0;
            loop {
                if k == n {
                    return Ok(());
                }
                if c[k] < bounds[k] {
                    c[k] += 1;
                    break;
                }
                c[k] = -bounds[k];
                k += 1;
            }
        }
    }

    /// Every shortest nonzero lattice vector, sorted by coefficients.
    pub fn minimal_vectors(&self) -> Result<Vec<LatticeVector>, LatticeError> {
        let reduced = self.reduce_basis();
        let rho = reduced
            .basis_rows()
            .iter()
            .map(|r| r.iter().map(|x| x * x).sum::<f64>().sqrt())
            .fold(f64::INFINITY, f64::min);
        let mut found: Vec<LatticeVector> = Vec::new();
        self.enumerate_ball(rho * (1.0 + 1e-12), DEFAULT_ENUMERATION_CAP, |c, v| {
            if c.iter().all(|&x| x == 0) {
                return;
            }
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            found.push(LatticeVector {
                coefficients: c.to_vec(),
                vector: v.to_vec(),
                norm,
            });
        })?;
        let min = found.iter().map(|x| x.norm).fold(f64::INFINITY, f64::min);
        let mut minimal: Vec<LatticeVector> = found
            .into_iter()
            .filter(|x| x.norm <= min * (1.0 + 1e-12))
            .collect();
        minimal.sort_by(|a, b| a.coefficients.cmp(&b.coefficients));
        Ok(minimal)
    }

    /// A nonzero lattice vector of minimal norm; among ties the one with
    /// lexicographically smallest coefficients.
    pub fn shortest_vector(&self) -> Result<LatticeVector, LatticeError> {
        let minimal = self.minimal_vectors()?;
        let norm = minimal
            .iter()
            .map(|x| x.norm)
            .fold(f64::INFINITY, f64::min);
        let mut best = minimal.into_iter().next().ok_or(LatticeError::SingularBasis)?;
        best.norm = norm;
        Ok(best)
    }

    /// Length of the shortest non-contractible loop: the minimal lattice norm.
    pub fn systole(&self) -> Result<f64, LatticeError> {
        Ok(self.shortest_vector()?.norm)
    }

    /// vol / sysⁿ.
    pub fn systolic_ratio(&self) -> Result<f64, LatticeError> {
        Ok(self.volume() / self.systole()?.powi(self.dim() as i32))
    }

    /// Injectivity radius; for a flat torus it is half the systole.
    pub fn injectivity_radius(&self) -> Result<f64, LatticeError> {
        Ok(0.5 * self.systole()?)
    }

    /// vol / injⁿ.
    pub fn embolic_quotient(&self) -> Result<f64, LatticeError> {
        Ok(self.volume() / self.injectivity_radius()?.powi(self.dim() as i32))
    }

    /// Number of lattice vectors (zero included) of norm ≤ `radius`.
    pub fn orbit_count(&self, radius: f64) -> Result<u64, LatticeError> {
        self.orbit_count_capped(radius, DEFAULT_ENUMERATION_CAP)
    }

    pub fn orbit_count_capped(&self, radius: f64, cap: u64) -> Result<u64, LatticeError> {
        if radius < 0.0 {
            return Ok(0);
        }
        let limit = radius + DISTANCE_EPS * radius.max(1.0);
        let limit2 = limit * limit;
        let mut count = 0u64;
        self.enumerate_ball(limit, cap, |_, v| {
            if v.iter().map(|x| x * x).sum::<f64>() <= limit2 {
                count += 1;
            }
        })?;
        Ok(count)
    }

    /// Norms of all lattice vectors of norm ≤ `radius`, sorted ascending.
    pub fn orbit_norms(&self, radius: f64) -> Result<Vec<f64>, LatticeError> {
        let limit = radius + DISTANCE_EPS * radius.max(1.0);
        let mut norms = Vec::new();
        self.enumerate_ball(limit, DEFAULT_ENUMERATION_CAP, |_, v| {
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n <= limit {
                norms.push(n);
            }
        })?;
        norms.sort_by(f64::total_cmp);
        Ok(norms)
    }
}

/// Systolic ratio of the torus at τ, invariant under the modular group.
pub fn moduli_ratio(tau: ModuliPoint) -> Result<f64, LatticeError> {
    FlatTorus::from_tau(tau)?.systolic_ratio()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn torus(rows: &[[f64; 2]]) -> FlatTorus {
        FlatTorus::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    /// Brute force over a fixed coefficient box, independent of reduction.
    fn brute_minimum(rows: &[[f64; 2]], range: i64) -> (f64, Vec<[i64; 2]>) {
        let mut best = f64::INFINITY;
        let mut all = Vec::new();
        for m in -range..=range {
            for n in -range..=range {
                if m == 0 && n == 0 {
                    continue;
                }
                let x = m as f64 * rows[0][0] + n as f64 * rows[1][0];
                let y = m as f64 * rows[0][1] + n as f64 * rows[1][1];
                all.push(((x * x + y * y).sqrt(), [m, n]));
                best = best.min((x * x + y * y).sqrt());
            }
        }
        let minimal = all
            .into_iter()
            .filter(|(d, _)| *d <= best * (1.0 + 1e-12))
            .map(|(_, c)| c)
            .collect();
        (best, minimal)
    }

    #[test]
    fn identity_shortest_vector() {
        let t = torus(&[[1.0, 0.0], [0.0, 1.0]]);
        let v = t.shortest_vector().unwrap();
        assert_eq!(v.norm, 1.0);
        assert_eq!(v.coefficients, vec![-1, 0]);
    }

    #[test]
    fn skewed_basis_matches_enumeration() {
        let rows = [[1.0, 0.0], [0.5, 0.1]];
        let (norm, minimal) = brute_minimum(&rows, 20);
        assert!((norm - 0.2).abs() < 1e-12);
        let v = torus(&rows).shortest_vector().unwrap();
        assert_eq!(v.coefficients, vec![-1, 2]);
        assert!((v.norm - 0.2).abs() < 1e-12);
        assert!(v.vector[0].abs() < 1e-12 && (v.vector[1] - 0.2).abs() < 1e-12);
        assert!(minimal.contains(&[-1, 2]));
    }

    #[test]
    fn hexagonal_minimal_vectors() {
        let rows = [[1.0, 0.0], [0.5, 3f64.sqrt() / 2.0]];
        let (_, minimal) = brute_minimum(&rows, 10);
        assert_eq!(minimal.len(), 6);
        let t = torus(&rows);
        let found = t.minimal_vectors().unwrap();
        assert_eq!(found.len(), 6);
        assert!((t.shortest_vector().unwrap().norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ratios() {
        assert!((torus(&[[1.0, 0.0], [0.0, 1.0]]).systolic_ratio().unwrap() - 1.0).abs() < 1e-12);
        let hex = torus(&[[1.0, 0.0], [0.5, 3f64.sqrt() / 2.0]]);
        assert!((hex.systolic_ratio().unwrap() - 0.866_025_403_784_438_6).abs() < 1e-12);
        assert!((torus(&[[1.0, 0.0], [0.0, 3.0]]).systolic_ratio().unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn embolic_quotients() {
        let sq = torus(&[[1.0, 0.0], [0.0, 1.0]]);
        assert!((sq.embolic_quotient().unwrap() - 4.0).abs() < 1e-12);
        let hex = torus(&[[1.0, 0.0], [0.5, 3f64.sqrt() / 2.0]]);
        assert!((hex.embolic_quotient().unwrap() - 2.0 * 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn gauss_reduction() {
        let r = torus(&[[1.0, 0.0], [10.0, 1.0]]).reduce_basis();
        let rows = r.basis_rows();
        assert_eq!(rows[0], vec![1.0, 0.0]);
        assert_eq!(rows[1], vec![0.0, 1.0]);
        let hex = torus(&[[1.0, 0.0], [0.5, 3f64.sqrt() / 2.0]]);
        let r = hex.reduce_basis().basis_rows();
        for row in &r {
            assert!((row[0].hypot(row[1]) - 1.0).abs() < 1e-12);
        }
        assert!(matches!(
            FlatTorus::new(vec![vec![0.0, 0.0], vec![1.0, 0.0]]),
            Err(LatticeError::SingularBasis)
        ));
    }

    #[test]
    fn orbit_counts_of_z2() {
        let z2 = torus(&[[1.0, 0.0], [0.0, 1.0]]);
        // Direct enumeration over |m|,|n| ≤ 3.
        let brute = |l: f64| {
            let mut c = 0;
            for m in -3i64..=3 {
                for n in -3i64..=3 {
                    if ((m * m + n * n) as f64).sqrt() <= l + 1e-12 {
                        c += 1;
                    }
                }
            }
            c
        };
        assert_eq!(z2.orbit_count(0.0).unwrap(), 1);
        assert_eq!(brute(1.0), 5);
        assert_eq!(brute(2.0), 13);
        assert_eq!(z2.orbit_count(1.0).unwrap(), 5);
        assert_eq!(z2.orbit_count(2.0).unwrap(), 13);
        assert!(matches!(
            z2.orbit_count_capped(1e4, 1000),
            Err(LatticeError::ResourceLimit { .. })
        ));
    }

    #[test]
    fn higher_dimensions() {
        let z4 = FlatTorus::new(
            (0..4)
                .map(|i| (0..4).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
                .collect(),
        )
        .unwrap();
        assert_eq!(z4.orbit_count(1.0).unwrap(), 9);
        assert_eq!(z4.systole().unwrap(), 1.0);
        // D4 root lattice: 24 minimal vectors of norm √2.
        let d4 = FlatTorus::new(vec![
            vec![1.0, -1.0, 0.0, 0.0],
            vec![0.0, 1.0, -1.0, 0.0],
            vec![0.0, 0.0, 1.0, -1.0],
            vec![0.0, 0.0, 1.0, 1.0],
        ])
        .unwrap();
        assert_eq!(d4.minimal_vectors().unwrap().len(), 24);
        assert!((d4.systole().unwrap() - 2f64.sqrt()).abs() < 1e-12);
        assert!(matches!(
            FlatTorus::new(vec![vec![1.0]]),
            Err(LatticeError::UnsupportedDimension(1))
        ));
    }

    #[test]
    fn fundamental_domain() {
        let p = ModuliPoint::new(-0.5, 3f64.sqrt() / 2.0).unwrap().to_fundamental_domain();
        assert!((p.x - 0.5).abs() < 1e-12);
        let q = ModuliPoint::new(3.2, 0.1).unwrap().to_fundamental_domain();
        assert!(q.x.abs() <= 0.5 && q.x * q.x + q.y * q.y >= 1.0 - 1e-12);
        assert!(ModuliPoint::new(0.0, -1.0).is_err());
    }

    #[test]
    fn loewner_on_random_tori() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let bound = 3f64.sqrt() / 2.0 - 1e-9;
        for _ in 0..1000 {
            let rows = vec![
                vec![rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)],
                vec![rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)],
            ];
            let Ok(t) = FlatTorus::new(rows) else { continue };
            assert!(t.systolic_ratio().unwrap() >= bound);
        }
    }

    fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<i64>> {
        let mut u: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        for _ in 0..6 {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let m = rng.gen_range(-2i64..=2);
            let ui = u[i].clone();
            for (x, y) in u[j].iter_mut().zip(ui) {
                *x += m * y;
            }
        }
        u
    }

    #[test]
    fn unimodular_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for case in 0..100 {
            let n = 2 + case % 3;
            let rows: Vec<Vec<f64>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { 1.0 } else { 0.0 } + rng.gen_range(-0.4..0.4))
                        .collect()
                })
                .collect();
            let t = FlatTorus::new(rows).unwrap();
            let changed = t.change_basis(&random_unimodular(&mut rng, n)).unwrap();
            let (a, b) = (t.systole().unwrap(), changed.systole().unwrap());
            assert!((a - b).abs() < 1e-9 * a, "case {case}");
            let (ra, rb) = (t.systolic_ratio().unwrap(), changed.systolic_ratio().unwrap());
            assert!((ra - rb).abs() < 1e-9 * ra);
            assert_eq!(t.orbit_count(2.0).unwrap(), changed.orbit_count(2.0).unwrap());
        }
    }

    proptest! {
        #[test]
        fn scale_equivariance(a in 0.2f64..3.0, b in -2.0f64..2.0, c in -2.0f64..2.0,
                              d in 0.2f64..3.0, s in 0.1f64..10.0) {
            prop_assume!((a * d - b * c).abs() > 0.05);
            let t = torus(&[[a, b], [c, d]]);
            let ts = t.scaled(s).unwrap();
            let (n1, n2) = (t.systole().unwrap(), ts.systole().unwrap());
            prop_assert!((n2 - s * n1).abs() <= 1e-12 * n2.max(1.0) * 10.0);
            let (r1, r2) = (t.systolic_ratio().unwrap(), ts.systolic_ratio().unwrap());
            prop_assert!((r1 - r2).abs() <= 1e-12 * r1.max(1.0) * 10.0);
        }

        #[test]
        fn orbit_count_is_monotone(a in 0.3f64..2.0, b in -1.0f64..1.0, d in 0.3f64..2.0,
                                   l1 in 0.0f64..4.0, dl in 0.0f64..2.0) {
            let t = torus(&[[a, 0.0], [b, d]]);
            let c1 = t.orbit_count(l1).unwrap();
            let c2 = t.orbit_count(l1 + dl).unwrap();
            prop_assert!(c1 >= 1 && c2 >= c1);
        }
    }
}
