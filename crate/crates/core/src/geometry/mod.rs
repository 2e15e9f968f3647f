//! Model Riemannian submersions `π: X → B`.
//!
//! Two presentations are supported:
//!
//! - coordinate models ([`CoordinateGeometry`]): a global chart with metric,
//!   Christoffel symbols and an orthonormal adapted frame (horizontal fields
//!   first, vertical fields last);
//! - invariant models ([`LieData`]): structure constants and an inner product
//!   on 𝔪 = 𝔨′ ⊕ 𝔭, tangent vectors written on the left-invariant basis.
//!
//! Curvature uses the convention `K(Y, Z) = ⟨R(Y, Z)Y, Z⟩` for orthonormal
//! `Y, Z`, so the O'Neill plane formula reads `K = K′ − 3|A(Y, Z)|²`.

mod heisenberg;
mod lie;
pub mod riemann;
mod sphere;

use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::{Error, Exec, Result};

pub use heisenberg::Heisenberg;
pub use lie::{sl2r_data, LieData, LieDataDoc};
pub use sphere::RoundSphere;

/// Default tolerance for "this vector is horizontal".
pub const HORIZONTAL_TOL: f64 = 1e-10;
/// Default tolerance for `K ≤ 0`.
pub const CURVATURE_TOL: f64 = 1e-9;

/// A chart-coordinate description of a submersion with a global chart.
pub trait CoordinateGeometry: Send + Sync + fmt::Debug {
    fn dim(&self) -> usize;
    fn base_dim(&self) -> usize;

    fn metric(&self, x: &[f64]) -> DMatrix<f64>;

    /// Writes `Γ^a_{bc}(x)` to `out[(a * d + b) * d + c]`.
    fn christoffel(&self, x: &[f64], out: &mut [f64]);

    /// Orthonormal frame at `x` as columns; the first `base_dim` columns are
    /// horizontal.
    fn frame(&self, x: &[f64]) -> DMatrix<f64>;

    /// `∂_k` of [`CoordinateGeometry::frame`].
    fn frame_derivative(&self, x: &[f64], k: usize) -> DMatrix<f64>;

    /// `⟨R′(Y, Z)U, V⟩` of the base, evaluated on horizontal lifts.
    fn base_curvature(&self, x: &[f64], y: &[f64], z: &[f64], u: &[f64], v: &[f64]) -> f64;

    /// Accumulates `Γ^a_{bc}(x) v^b v^c` into `out`.
    fn add_christoffel_quadratic(&self, x: &[f64], v: &[f64], out: &mut [f64]) {
        let d = self.dim();
        let mut g = vec![0.0; d * d * d];
        self.christoffel(x, &mut g);
        for a in 0..d {
            let mut s = 0.0;
            for b in 0..d {
                for c in 0..d {
                    s += g[(a * d + b) * d + c] * v[b] * v[c];
                }
            }
            out[a] += s;
        }
    }

    /// Vertical component of `v` at `x`.
    fn vertical_part(&self, x: &[f64], v: &[f64]) -> Vec<f64> {
        let d = self.dim();
        let g = self.metric(x);
        let f = self.frame(x);
        let gv = &g * nalgebra::DVector::from_column_slice(v);
        let mut out = vec![0.0; d];
        for mu in self.base_dim()..d {
            let col = f.column(mu);
            let coef = col.dot(&gv);
            for a in 0..d {
                out[a] += coef * col[a];
            }
        }
        out
    }

    fn inner(&self, x: &[f64], v: &[f64], w: &[f64]) -> f64 {
        let g = self.metric(x);
        let d = self.dim();
        let mut s = 0.0;
        for a in 0..d {
            for b in 0..d {
                s += g[(a, b)] * v[a] * w[b];
            }
        }
        s
    }
}

#[derive(Clone)]
pub enum ModelKind {
    Coordinate(Arc<dyn CoordinateGeometry>),
    Invariant(Arc<LieData>),
}

/// A registered target model.
#[derive(Clone)]
pub struct MetricModel {
    id: String,
    kind: ModelKind,
    note: Option<&'static str>,
}

impl fmt::Debug for MetricModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MetricModel")
            .field("id", &self.id)
            .field("total_dim", &self.total_dim())
            .field("base_dim", &self.base_dim())
            .finish()
    }
}

/// Model ids accepted by [`model`].
pub const MODEL_IDS: &[&str] = &["heisenberg3", "sl2r"];

/// Looks up a built-in model by id.
pub fn model(id: &str) -> Result<MetricModel> {
    match id {
        "heisenberg3" => Ok(MetricModel::coordinate("heisenberg3", Heisenberg)),
        "sl2r" => Ok(MetricModel::invariant(sl2r_data()).with_note(
            "SL(2,R) -> H^2 is Hermitian; outside the ten-group class, used as a low-dimensional homogeneous instance",
        )),
        other => Err(Error::UnknownModel(other.to_string())),
    }
}

/// The round unit 2-sphere in stereographic coordinates, as a submersion with
/// zero-dimensional fibres. Its curvature is +1, so it is only useful to
/// check that the non-positivity detectors fire.
pub fn positive_sphere() -> MetricModel {
    MetricModel::coordinate("sphere2", RoundSphere)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Point {
    pub coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        Point { coords }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TangentVec {
    pub base: Point,
    pub components: Vec<f64>,
}

impl TangentVec {
    pub fn new(base: Point, components: Vec<f64>) -> Self {
        TangentVec { base, components }
    }
}

/// One sampled horizontal 2-plane.
#[derive(Debug, Clone, Serialize)]
pub struct CurvatureSample {
    pub point: Vec<f64>,
    pub plane: [Vec<f64>; 2],
    pub k_total: f64,
    pub k_base: f64,
    pub a_norm_sq: f64,
}

impl CurvatureSample {
    /// `K − (K′ − 3|A|²)`, zero up to rounding.
    pub fn oneill_residual(&self) -> f64 {
        self.k_total - (self.k_base - 3.0 * self.a_norm_sq)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CurvatureReport {
    pub model: String,
    pub samples: Vec<CurvatureSample>,
    pub min_k: Option<f64>,
    pub max_k: Option<f64>,
    pub violations: usize,
    pub tol: f64,
}

impl CurvatureReport {
    pub fn success(&self) -> bool {
        self.violations == 0
    }
}

fn axpy(out: &mut [f64], a: f64, x: &[f64]) {
    for (o, v) in out.iter_mut().zip(x) {
        *o += a * v;
    }
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl MetricModel {
    pub fn coordinate(id: &str, geom: impl CoordinateGeometry + 'static) -> Self {
        MetricModel {
            id: id.to_string(),
            kind: ModelKind::Coordinate(Arc::new(geom)),
            note: None,
        }
    }

    pub fn invariant(data: LieData) -> Self {
        MetricModel {
            id: data.name().to_string(),
            kind: ModelKind::Invariant(Arc::new(data)),
            note: None,
        }
    }

    fn with_note(mut self, note: &'static str) -> Self {
        self.note = Some(note);
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn note(&self) -> Option<&'static str> {
        self.note
    }

    pub fn kind(&self) -> &ModelKind {
        &self.kind
    }

    pub fn coordinate_geometry(&self) -> Result<&dyn CoordinateGeometry> {
        match &self.kind {
            ModelKind::Coordinate(g) => Ok(g.as_ref()),
            ModelKind::Invariant(_) => Err(Error::NoChart(self.id.clone())),
        }
    }

    pub fn total_dim(&self) -> usize {
        match &self.kind {
            ModelKind::Coordinate(g) => g.dim(),
            ModelKind::Invariant(l) => l.dim(),
        }
    }

    pub fn base_dim(&self) -> usize {
        match &self.kind {
            ModelKind::Coordinate(g) => g.base_dim(),
            ModelKind::Invariant(l) => l.horizontal_dim(),
        }
    }

    pub fn fiber_dim(&self) -> usize {
        self.total_dim() - self.base_dim()
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if n != self.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.total_dim(),
                got: n,
            });
        }
        Ok(())
    }

    fn check_vec(&self, v: &TangentVec) -> Result<()> {
        self.check_dim(v.base.coords.len())?;
        self.check_dim(v.components.len())
    }

    pub fn metric(&self, x: &[f64]) -> DMatrix<f64> {
        match &self.kind {
            ModelKind::Coordinate(g) => g.metric(x),
            ModelKind::Invariant(l) => l.inner_product().clone(),
        }
    }

    pub fn inner(&self, x: &[f64], v: &[f64], w: &[f64]) -> f64 {
        match &self.kind {
            ModelKind::Coordinate(g) => g.inner(x, v, w),
            ModelKind::Invariant(l) => l.inner(v, w),
        }
    }

    pub fn norm(&self, x: &[f64], v: &[f64]) -> f64 {
        self.inner(x, v, v).max(0.0).sqrt()
    }

    pub fn vertical_part(&self, x: &[f64], v: &[f64]) -> Vec<f64> {
        match &self.kind {
            ModelKind::Coordinate(g) => g.vertical_part(x, v),
            ModelKind::Invariant(l) => l.vertical_part(v),
        }
    }

    pub fn horizontal_part(&self, x: &[f64], v: &[f64]) -> Vec<f64> {
        sub(v, &self.vertical_part(x, v))
    }

    /// Bracket of the canonical extensions of `y`, `z`: constant frame
    /// coefficients for coordinate models, left-invariant fields otherwise.
    pub fn frame_bracket(&self, x: &[f64], y: &[f64], z: &[f64]) -> Vec<f64> {
        match &self.kind {
            ModelKind::Coordinate(g) => {
                let d = g.dim();
                let dy = extension_derivative(g.as_ref(), x, y);
                let dz = extension_derivative(g.as_ref(), x, z);
                (0..d)
                    .map(|a| {
                        (0..d)
                            .map(|k| y[k] * dz[k][a] - z[k] * dy[k][a])
                            .sum::<f64>()
                    })
                    .collect()
            }
            ModelKind::Invariant(l) => l.bracket(y, z),
        }
    }

    /// `∇_y` of the canonical extension of `w`, at `x`.
    pub fn covariant_derivative(&self, x: &[f64], y: &[f64], w: &[f64]) -> Vec<f64> {
        match &self.kind {
            ModelKind::Coordinate(g) => {
                let d = g.dim();
                let dw = extension_derivative(g.as_ref(), x, w);
                let mut out = vec![0.0; d];
                for k in 0..d {
                    axpy(&mut out, y[k], &dw[k]);
                }
                let mut gam = vec![0.0; d * d * d];
                g.christoffel(x, &mut gam);
                for a in 0..d {
                    for b in 0..d {
                        for c in 0..d {
                            out[a] += gam[(a * d + b) * d + c] * y[b] * w[c];
                        }
                    }
                }
                out
            }
            ModelKind::Invariant(l) => l.connection(y, w),
        }
    }

    /// `A(Y, Z) = ℋ∇_{ℋY}𝒱Z + 𝒱∇_{ℋY}ℋZ`.
    pub fn a_tensor(&self, x: &[f64], y: &[f64], z: &[f64]) -> Vec<f64> {
        let hy = self.horizontal_part(x, y);
        let vz = self.vertical_part(x, z);
        let hz = sub(z, &vz);
        let first = self.covariant_derivative(x, &hy, &vz);
        let second = self.covariant_derivative(x, &hy, &hz);
        let mut out = self.horizontal_part(x, &first);
        let v2 = self.vertical_part(x, &second);
        axpy(&mut out, 1.0, &v2);
        out
    }

    pub fn base_curvature(&self, x: &[f64], y: &[f64], z: &[f64], u: &[f64], v: &[f64]) -> f64 {
        match &self.kind {
            ModelKind::Coordinate(g) => g.base_curvature(x, y, z, u, v),
            ModelKind::Invariant(l) => l.base_curvature(y, z, u, v),
        }
    }

    /// `⟨R(Y,Z)U,V⟩` for horizontal arguments, from the base curvature and
    /// the A-tensor.
    pub fn curvature4(&self, x: &[f64], y: &[f64], z: &[f64], u: &[f64], v: &[f64]) -> f64 {
        let a = |p: &[f64], q: &[f64]| self.a_tensor(x, p, q);
        let ip = |p: &[f64], q: &[f64]| self.inner(x, p, q);
        self.base_curvature(x, y, z, u, v) - 2.0 * ip(&a(y, z), &a(u, v)) + ip(&a(z, u), &a(y, v))
            - ip(&a(y, u), &a(z, v))
    }

    fn require_horizontal(&self, x: &[f64], v: &[f64], tol: f64) -> Result<()> {
        let vn = self.norm(x, &self.vertical_part(x, v));
        let scale = self.norm(x, v).max(1.0);
        if vn > tol * scale {
            return Err(Error::NotHorizontal {
                vertical_norm: vn,
                tol,
            });
        }
        Ok(())
    }

    pub fn vertical_project(&self, v: &TangentVec) -> Result<TangentVec> {
        self.check_vec(v)?;
        Ok(TangentVec::new(
            v.base.clone(),
            self.vertical_part(&v.base.coords, &v.components),
        ))
    }

    pub fn horizontal_project(&self, v: &TangentVec) -> Result<TangentVec> {
        self.check_vec(v)?;
        Ok(TangentVec::new(
            v.base.clone(),
            self.horizontal_part(&v.base.coords, &v.components),
        ))
    }

    pub fn oneill_a(&self, y: &TangentVec, z: &TangentVec) -> Result<TangentVec> {
        self.check_vec(y)?;
        self.check_vec(z)?;
        if y.base != z.base {
            return Err(Error::BasePointMismatch);
        }
        Ok(TangentVec::new(
            y.base.clone(),
            self.a_tensor(&y.base.coords, &y.components, &z.components),
        ))
    }

    /// `⟨R(Y,Z)U,V⟩` through the O'Neill formula; all four arguments must be
    /// horizontal at a common base point.
    pub fn oneill_curvature(
        &self,
        y: &TangentVec,
        z: &TangentVec,
        u: &TangentVec,
        v: &TangentVec,
    ) -> Result<f64> {
        for w in [y, z, u, v] {
            self.check_vec(w)?;
            if w.base != y.base {
                return Err(Error::BasePointMismatch);
            }
            self.require_horizontal(&w.base.coords, &w.components, HORIZONTAL_TOL)?;
        }
        Ok(self.curvature4(
            &y.base.coords,
            &y.components,
            &z.components,
            &u.components,
            &v.components,
        ))
    }

    /// Sectional curvature of the horizontal plane spanned by `y`, `z`
    /// (orthonormalized first).
    pub fn horizontal_sectional(&self, x: &[f64], y: &[f64], z: &[f64]) -> Option<CurvatureSample> {
        let ny = self.norm(x, y);
        if ny < 1e-12 {
            return None;
        }
        let e1: Vec<f64> = y.iter().map(|c| c / ny).collect();
        let mut z2 = z.to_vec();
        axpy(&mut z2, -self.inner(x, z, &e1), &e1);
        let nz = self.norm(x, &z2);
        if nz < 1e-8 * self.norm(x, z).max(1e-300) {
            return None;
        }
        let e2: Vec<f64> = z2.iter().map(|c| c / nz).collect();
        let a = self.a_tensor(x, &e1, &e2);
        Some(CurvatureSample {
            point: x.to_vec(),
            k_total: self.curvature4(x, &e1, &e2, &e1, &e2),
            k_base: self.base_curvature(x, &e1, &e2, &e1, &e2),
            a_norm_sq: self.inner(x, &a, &a),
            plane: [e1, e2],
        })
    }

    /// `Σ_i A(du(e_i), du(e_i))`, which vanishes for horizontal `du`.
    pub fn vertical_tension(&self, du: &[TangentVec], point: &Point) -> Result<TangentVec> {
        self.vertical_tension_with_tol(du, point, HORIZONTAL_TOL)
    }

    pub fn vertical_tension_with_tol(
        &self,
        du: &[TangentVec],
        point: &Point,
        tol: f64,
    ) -> Result<TangentVec> {
        self.check_dim(point.coords.len())?;
        let x = &point.coords;
        let mut acc = vec![0.0; self.total_dim()];
        for v in du {
            self.check_vec(v)?;
            if &v.base != point {
                return Err(Error::BasePointMismatch);
            }
            self.require_horizontal(x, &v.components, tol)?;
            let a = self.a_tensor(x, &v.components, &v.components);
            axpy(&mut acc, 1.0, &a);
        }
        Ok(TangentVec::new(point.clone(), acc))
    }

    /// A point for random sampling: uniform in `[-2, 2]^d` for coordinate
    /// models, the origin for invariant ones (all points are alike there).
    pub fn random_point(&self, rng: &mut impl Rng) -> Vec<f64> {
        match &self.kind {
            ModelKind::Coordinate(_) => (0..self.total_dim())
                .map(|_| rng.gen_range(-2.0..2.0))
                .collect(),
            ModelKind::Invariant(_) => vec![0.0; self.total_dim()],
        }
    }

    /// A random horizontal vector at `x` with frame coefficients in `[-1, 1]`.
    pub fn random_horizontal(&self, x: &[f64], rng: &mut impl Rng) -> Vec<f64> {
        let coef: Vec<f64> = (0..self.base_dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        self.horizontal_frame_combination(x, &coef)
    }

    /// A random vector with both horizontal and vertical parts.
    pub fn random_vector(&self, x: &[f64], rng: &mut impl Rng) -> Vec<f64> {
        let mut v = self.random_horizontal(x, rng);
        let vc: Vec<f64> = (0..self.fiber_dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        axpy(&mut v, 1.0, &self.vertical_frame_combination(x, &vc));
        v
    }

    pub fn horizontal_frame_combination(&self, x: &[f64], coef: &[f64]) -> Vec<f64> {
        match &self.kind {
            ModelKind::Coordinate(g) => {
                let f = g.frame(x);
                let mut out = vec![0.0; g.dim()];
                for (j, c) in coef.iter().enumerate() {
                    for a in 0..g.dim() {
                        out[a] += c * f[(a, j)];
                    }
                }
                out
            }
            ModelKind::Invariant(l) => l.horizontal_combination(coef),
        }
    }

    pub fn vertical_frame_combination(&self, x: &[f64], coef: &[f64]) -> Vec<f64> {
        match &self.kind {
            ModelKind::Coordinate(g) => {
                let f = g.frame(x);
                let b = g.base_dim();
                let mut out = vec![0.0; g.dim()];
                for (j, c) in coef.iter().enumerate() {
                    for a in 0..g.dim() {
                        out[a] += c * f[(a, b + j)];
                    }
                }
                out
            }
            ModelKind::Invariant(l) => l.vertical_combination(coef),
        }
    }
}

/// `∂_k` of the canonical extension `W(x′) = F(x′) F(x)⁻¹ w`, as rows
/// indexed by `k`.
fn extension_derivative(g: &dyn CoordinateGeometry, x: &[f64], w: &[f64]) -> Vec<Vec<f64>> {
    let d = g.dim();
    let f = g.frame(x);
    let coef = f
        .clone()
        .lu()
        .solve(&nalgebra::DVector::from_column_slice(w))
        .expect("frame is invertible");
    (0..d)
        .map(|k| {
            let df = g.frame_derivative(x, k);
            (&df * &coef).iter().copied().collect()
        })
        .collect()
}

/// Samples `n_samples` random horizontal 2-planes and checks `K ≤ tol` on
/// each. Sample `i` draws from its own ChaCha stream, so results do not
/// depend on the execution policy.
pub fn check_nonpositive_horizontal(
    model: &MetricModel,
    n_samples: usize,
    seed: u64,
    exec: Exec,
) -> CurvatureReport {
    let samples: Vec<CurvatureSample> = exec.map(n_samples, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        loop {
            let x = model.random_point(&mut rng);
            let y = model.random_horizontal(&x, &mut rng);
            let z = model.random_horizontal(&x, &mut rng);
            if let Some(s) = model.horizontal_sectional(&x, &y, &z) {
                return s;
            }
        }
    });
    let tol = CURVATURE_TOL;
    let min_k = samples.iter().map(|s| s.k_total).reduce(f64::min);
    let max_k = samples.iter().map(|s| s.k_total).reduce(f64::max);
    let violations = samples.iter().filter(|s| s.k_total.is_nan() || s.k_total > tol).count();
    CurvatureReport {
        model: model.id().to_string(),
        samples,
        min_k,
        max_k,
        violations,
        tol,
    }
}

/// Deterministic RNG for sample `i` of a seeded run.
pub fn sample_rng(seed: u64, i: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    rng
}
