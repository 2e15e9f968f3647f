//! Finite differences for the tension field and the explicit Euler step
//! `u ← u + dt·ℋτ(u)`.

use std::io::Write;

use serde::Serialize;

use super::config::FlowConfig;
use super::mesh::MapState;
use crate::geometry::{CoordinateGeometry, MetricModel, Point, TangentVec};
use crate::{Error, Exec, Result};

/// Largest chart dimension handled by the stack-allocated kernels.
pub const MAX_DIM: usize = 8;
/// Any coordinate beyond this magnitude counts as blow-up.
pub const BLOW_UP: f64 = 1e12;

fn check_dim(d: usize) -> Result<()> {
    if d > MAX_DIM || d == 0 {
        return Err(Error::DimensionMismatch {
            expected: MAX_DIM,
            got: d,
        });
    }
    Ok(())
}

/// Central first difference of `u` along `dir` at `idx`.
#[inline]
fn first_difference(u: &MapState, idx: usize, dir: usize, out: &mut [f64]) {
    let (m, p) = u.mesh.neighbors(idx, dir);
    let inv = 0.5 / u.mesh.h();
    let (um, up) = (u.point(m), u.point(p));
    for a in 0..u.dim {
        out[a] = (up[a] - um[a]) * inv;
    }
}

/// Full tension `Σ_i u^a_ii + Γ^a_bc(u) u^b_i u^c_i` at `idx`.
fn tension_into(g: &dyn CoordinateGeometry, u: &MapState, idx: usize, out: &mut [f64]) {
    let d = u.dim;
    let x = u.point(idx);
    let inv_h2 = 1.0 / u.mesh.h().powi(2);
    out[..d].iter_mut().for_each(|v| *v = 0.0);
    let mut du = [0.0; MAX_DIM];
    for dir in 0..u.mesh.dirs() {
        let (m, p) = u.mesh.neighbors(idx, dir);
        let (um, up) = (u.point(m), u.point(p));
        for a in 0..d {
            out[a] += (up[a] - 2.0 * x[a] + um[a]) * inv_h2;
        }
        first_difference(u, idx, dir, &mut du);
        g.add_christoffel_quadratic(x, &du[..d], &mut out[..d]);
    }
}

/// `τ(u)(idx)` in chart components.
pub fn tension(model: &MetricModel, u: &MapState, idx: usize) -> Result<TangentVec> {
    let g = model.coordinate_geometry()?;
    check_dim(u.dim)?;
    if u.dim != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            got: u.dim,
        });
    }
    let mut tau = vec![0.0; u.dim];
    tension_into(g, u, idx, &mut tau);
    Ok(TangentVec::new(Point::new(u.point(idx).to_vec()), tau))
}

/// `ℋτ(u)` over the whole mesh with its norms.
#[derive(Debug, Clone)]
pub struct TensionField {
    /// `ℋτ` at each point, `dim` entries per point.
    pub horizontal: Vec<f64>,
    /// `sup |ℋτ|`.
    pub sup_horizontal: f64,
    /// `sup |𝒱τ|`.
    pub sup_vertical: f64,
    /// `sup |τ|`.
    pub sup_full: f64,
    /// `Σ |ℋτ|²·weight`.
    pub dissipation: f64,
}

pub fn tension_field(g: &dyn CoordinateGeometry, u: &MapState, exec: Exec) -> TensionField {
    let d = u.dim;
    let stride = d + 2;
    let mut buf = vec![0.0; u.mesh.len() * stride];
    exec.fill_chunks(&mut buf, stride, |idx, out| {
        let mut tau = [0.0; MAX_DIM];
        tension_into(g, u, idx, &mut tau);
        let x = u.point(idx);
        let v = g.vertical_part(x, &tau[..d]);
        for a in 0..d {
            out[a] = tau[a] - v[a];
        }
        out[d] = g.inner(x, &out[..d], &out[..d]);
        out[d + 1] = g.inner(x, &v, &v);
    });
    let mut horizontal = Vec::with_capacity(u.mesh.len() * d);
    let (mut sh, mut sv, mut sf, mut diss) = (0.0f64, 0.0f64, 0.0f64, 0.0);
    for c in buf.chunks(stride) {
        horizontal.extend_from_slice(&c[..d]);
        sh = sh.max(c[d]);
        sv = sv.max(c[d + 1]);
        sf = sf.max(c[d] + c[d + 1]);
        diss += c[d];
    }
    TensionField {
        horizontal,
        sup_horizontal: sh.sqrt(),
        sup_vertical: sv.sqrt(),
        sup_full: sf.sqrt(),
        dissipation: diss * u.mesh.weight(),
    }
}

fn advance(u: &MapState, field: &TensionField, dt: f64) -> MapState {
    let coords = u
        .coords
        .iter()
        .zip(&field.horizontal)
        .map(|(x, v)| x + dt * v)
        .collect();
    MapState {
        mesh: u.mesh,
        dim: u.dim,
        coords,
        t: u.t + dt,
    }
}

fn blown_up(u: &MapState) -> bool {
    u.coords.iter().any(|c| !c.is_finite() || c.abs() > BLOW_UP)
}

/// One explicit Euler step of `∂u/∂t = ℋτ(u)`.
pub fn step(model: &MetricModel, u: &MapState, dt: f64, exec: Exec) -> Result<MapState> {
    let g = model.coordinate_geometry()?;
    check_dim(u.dim)?;
    let next = advance(u, &tension_field(g, u, exec), dt);
    if blown_up(&next) {
        return Err(Error::BlowUp { t: next.t });
    }
    Ok(next)
}

fn density_at(g: &dyn CoordinateGeometry, u: &MapState, idx: usize) -> f64 {
    let mut du = [0.0; MAX_DIM];
    let x = u.point(idx);
    (0..u.mesh.dirs())
        .map(|dir| {
            first_difference(u, idx, dir, &mut du);
            g.inner(x, &du[..u.dim], &du[..u.dim])
        })
        .sum::<f64>()
        * 0.5
}

/// `e(u) = ½ Σ_i |D_i u|²` at every mesh point.
pub fn energy_densities(g: &dyn CoordinateGeometry, u: &MapState, exec: Exec) -> Vec<f64> {
    exec.map(u.mesh.len(), |idx| density_at(g, u, idx))
}

pub fn energy_density(model: &MetricModel, u: &MapState, idx: usize) -> Result<f64> {
    let g = model.coordinate_geometry()?;
    check_dim(u.dim)?;
    Ok(density_at(g, u, idx))
}

pub fn energy(model: &MetricModel, u: &MapState) -> Result<f64> {
    let g = model.coordinate_geometry()?;
    check_dim(u.dim)?;
    Ok(energy_densities(g, u, Exec::Sequential).iter().sum::<f64>() * u.mesh.weight())
}

fn defect_at(g: &dyn CoordinateGeometry, u: &MapState, idx: usize) -> f64 {
    let mut du = [0.0; MAX_DIM];
    let x = u.point(idx);
    (0..u.mesh.dirs())
        .map(|dir| {
            first_difference(u, idx, dir, &mut du);
            let v = g.vertical_part(x, &du[..u.dim]);
            g.inner(x, &v, &v).sqrt()
        })
        .fold(0.0, f64::max)
}

fn defect(g: &dyn CoordinateGeometry, u: &MapState, exec: Exec) -> f64 {
    exec.map(u.mesh.len(), |idx| defect_at(g, u, idx))
        .into_iter()
        .fold(0.0, f64::max)
}

/// `max |𝒱(D_i u)|` over mesh points and domain directions.
pub fn horizontality_defect(model: &MetricModel, u: &MapState) -> Result<f64> {
    let g = model.coordinate_geometry()?;
    check_dim(u.dim)?;
    Ok(defect(g, u, Exec::Sequential))
}

/// Discrete Laplacian of a mesh function.
fn laplacian(u: &MapState, f: &[f64], idx: usize) -> f64 {
    let inv_h2 = 1.0 / u.mesh.h().powi(2);
    (0..u.mesh.dirs())
        .map(|dir| {
            let (m, p) = u.mesh.neighbors(idx, dir);
            (f[p] - 2.0 * f[idx] + f[m]) * inv_h2
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Converged,
    MaxSteps,
    BlowUp,
}

impl RunStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RunStatus::Converged => "converged",
            RunStatus::MaxSteps => "max_steps",
            RunStatus::BlowUp => "blow_up",
        }
    }
}

/// One recorded step. The first seven fields are the CSV columns.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagRow {
    pub step: usize,
    pub t: f64,
    pub energy: f64,
    pub sup_tension: f64,
    pub sup_dudt: f64,
    pub defect: f64,
    /// `min (Δe − ∂_t e)` with the forward difference to the next step.
    pub bochner_min: f64,
    /// `Σ |ℋτ|²·weight`.
    pub dissipation: f64,
    pub sup_vertical_tension: f64,
    pub sup_full_tension: f64,
    pub sup_density: f64,
}

pub const CSV_HEADER: &str = "step,t,energy,sup_tension,sup_dudt,defect,bochner_min";

/// 17 significant digits.
fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlowDiagnostics {
    pub h: f64,
    pub dt: f64,
    pub rows: Vec<DiagRow>,
}

impl FlowDiagnostics {
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{CSV_HEADER}")?;
        for r in &self.rows {
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                r.step,
                sig17(r.t),
                sig17(r.energy),
                sig17(r.sup_tension),
                sig17(r.sup_dudt),
                sig17(r.defect),
                sig17(r.bochner_min)
            )?;
        }
        Ok(())
    }

    pub fn first(&self) -> Option<&DiagRow> {
        self.rows.first()
    }

    pub fn last(&self) -> Option<&DiagRow> {
        self.rows.last()
    }
}

/// Final coordinates as a JSON array of points.
pub fn write_state_json<W: Write>(u: &MapState, mut w: W) -> std::io::Result<()> {
    write!(w, "[")?;
    for (i, p) in u.points().enumerate() {
        if i > 0 {
            write!(w, ",")?;
        }
        let parts: Vec<String> = p.iter().map(|c| sig17(*c)).collect();
        write!(w, "[{}]", parts.join(","))?;
    }
    writeln!(w, "]")
}

#[derive(Debug, Clone)]
pub struct FlowRun {
    pub state: MapState,
    pub diagnostics: FlowDiagnostics,
    pub status: RunStatus,
    pub steps: usize,
}

/// Runs a validated config on its registered model.
pub fn run_flow(config: &FlowConfig, exec: Exec) -> Result<FlowRun> {
    config.validate()?;
    let model = config.resolve_model()?;
    let u0 = config.initial.build(&model, config.mesh)?;
    run_flow_from(&model, u0, config, exec)
}

/// Runs the flow from an explicit initial state; `config.model` and
/// `config.initial` are ignored.
pub fn run_flow_from(
    model: &MetricModel,
    u0: MapState,
    config: &FlowConfig,
    exec: Exec,
) -> Result<FlowRun> {
    let g = model.coordinate_geometry()?;
    check_dim(u0.dim)?;
    if u0.dim != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            got: u0.dim,
        });
    }
    let dt = config.dt();
    let mut u = u0;
    let mut rows = Vec::new();
    let mut cached: Option<Vec<f64>> = None;
    let mut n = 0usize;
    let status = loop {
        let field = tension_field(g, &u, exec);
        let stop = if field.sup_horizontal < config.eps {
            Some(RunStatus::Converged)
        } else if n >= config.max_steps {
            Some(RunStatus::MaxSteps)
        } else {
            None
        };
        let mut next = advance(&u, &field, dt);
        next.t = (n + 1) as f64 * dt;
        if n.is_multiple_of(config.cadence) || stop.is_some() {
            let e0 = cached.take().unwrap_or_else(|| energy_densities(g, &u, exec));
            let e1 = energy_densities(g, &next, exec);
            let bochner = exec
                .map(u.mesh.len(), |i| laplacian(&u, &e0, i) - (e1[i] - e0[i]) / dt)
                .into_iter()
                .fold(f64::INFINITY, f64::min);
            rows.push(DiagRow {
                step: n,
                t: u.t,
                energy: e0.iter().sum::<f64>() * u.mesh.weight(),
                sup_tension: field.sup_horizontal,
                sup_dudt: field.sup_horizontal,
                defect: defect(g, &u, exec),
                bochner_min: bochner,
                dissipation: field.dissipation,
                sup_vertical_tension: field.sup_vertical,
                sup_full_tension: field.sup_full,
                sup_density: e0.iter().copied().fold(0.0, f64::max),
            });
            if (n + 1).is_multiple_of(config.cadence) {
                cached = Some(e1);
            }
        }
        if let Some(s) = stop {
            break s;
        }
        u = next;
        n += 1;
        if blown_up(&u) {
            break RunStatus::BlowUp;
        }
    };
    Ok(FlowRun {
        state: u,
        diagnostics: FlowDiagnostics { h: config.mesh.h(), dt, rows },
        status,
        steps: n,
    })
}
