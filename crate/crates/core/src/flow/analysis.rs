//! Post-processing of recorded runs against the monotonicity and
//! horizontality properties of the continuous flow.

use serde::Serialize;

use super::config::{FlowConfig, InitialSpec};
use super::solver::{step, FlowDiagnostics};
use crate::geometry::MetricModel;
use crate::{Error, Exec, Result};

/// `max |ΔE/Δt + ½(D_a + D_b)|` over consecutive recorded rows, where `D` is
/// the recorded dissipation `Σ|ℋτ|²·weight`. Zero with fewer than two rows.
pub fn decay_residual(diag: &FlowDiagnostics) -> f64 {
    diag.rows
        .windows(2)
        .map(|w| {
            let dt = w[1].t - w[0].t;
            let rate = (w[1].energy - w[0].energy) / dt;
            (rate + 0.5 * (w[0].dissipation + w[1].dissipation)).abs()
        })
        .fold(0.0, f64::max)
}

/// Largest relative energy increase between consecutive rows,
/// `(E_{k+1} − E_k) / max(1, E_k)`; non-positive for a decreasing sequence.
pub fn max_energy_increase(diag: &FlowDiagnostics) -> f64 {
    diag.rows
        .windows(2)
        .map(|w| (w[1].energy - w[0].energy) / w[0].energy.max(1.0))
        .fold(f64::NEG_INFINITY, f64::max)
}

pub fn energy_non_increasing(diag: &FlowDiagnostics, slack: f64) -> bool {
    diag.rows.len() < 2 || max_energy_increase(diag) <= slack
}

/// Growth of `sup|∂u/∂t|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VelocityExcess {
    /// `max_t sup|∂u/∂t|(t) − sup|∂u/∂t|(0)`.
    pub over_initial: f64,
    /// Largest increase between consecutive rows.
    pub per_step: f64,
}

pub fn velocity_excess(diag: &FlowDiagnostics) -> VelocityExcess {
    let Some(first) = diag.rows.first() else {
        return VelocityExcess {
            over_initial: 0.0,
            per_step: 0.0,
        };
    };
    let over_initial = diag
        .rows
        .iter()
        .map(|r| r.sup_dudt - first.sup_dudt)
        .fold(0.0, f64::max);
    let per_step = diag
        .rows
        .windows(2)
        .map(|w| w[1].sup_dudt - w[0].sup_dudt)
        .fold(0.0, f64::max);
    VelocityExcess {
        over_initial,
        per_step,
    }
}

/// True iff `sup|∂u/∂t|` never exceeds its initial value by more than
/// `slack` and never increases by more than `slack` between rows.
pub fn sup_velocity_monotonicity(diag: &FlowDiagnostics, slack: f64) -> bool {
    let e = velocity_excess(diag);
    e.over_initial <= slack && e.per_step <= slack
}

/// Smallest `C` with `δ(t) ≤ δ(0) + C·t·(h² + dt)` on every recorded row.
pub fn defect_growth_constant(diag: &FlowDiagnostics) -> f64 {
    let Some(first) = diag.rows.first() else {
        return 0.0;
    };
    let scale = diag.h * diag.h + diag.dt;
    diag.rows
        .iter()
        .filter(|r| r.t > 0.0)
        .map(|r| (r.defect - first.defect) / (r.t * scale))
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BochnerReport {
    /// Minimum of `(Δ − ∂_t)e` over mesh and recorded rows.
    pub min: f64,
    /// `max(0, −min) / (h + dt)`.
    pub constant: f64,
    /// Rows whose minimum falls below `−tol`.
    pub violations: usize,
    pub tol: f64,
}

/// Checks `(Δ − ∂_t)e(u) ≥ 0` (flat domain, nonpositive target) up to
/// `c·(h + dt)` on each recorded row.
pub fn bochner_check(diag: &FlowDiagnostics, c: f64) -> BochnerReport {
    let min = diag
        .rows
        .iter()
        .map(|r| r.bochner_min)
        .fold(f64::INFINITY, f64::min);
    let min = if min.is_finite() { min } else { 0.0 };
    let tol = c * (diag.h + diag.dt);
    BochnerReport {
        min,
        constant: (-min).max(0.0) / (diag.h + diag.dt),
        violations: diag.rows.iter().filter(|r| r.bochner_min < -tol).count(),
        tol,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityReport {
    pub times: Vec<f64>,
    /// `sup_x |∂u/∂s|` by central differences in the family parameter.
    pub sup_ds: Vec<f64>,
    /// Largest increase of `sup_ds` between consecutive times.
    pub max_increase: f64,
    /// Sup-distance between the outer members of the family at the start
    /// and at the end.
    pub initial_distance: f64,
    pub final_distance: f64,
}

/// Runs the flow for the amplitude family `(1 + s)·γ`, `s ∈ {−Δs, 0, Δs}`,
/// for exactly `steps` steps and compares the members at each recorded time.
pub fn stability_compare(
    model: &MetricModel,
    config: &FlowConfig,
    delta: f64,
    steps: usize,
    exec: Exec,
) -> Result<StabilityReport> {
    let base = config
        .initial
        .loop_spec()
        .ok_or_else(|| Error::config("initial.kind", "stability needs loop data"))?;
    let dt = config.dt();
    let runs = [-delta, 0.0, delta]
        .iter()
        .map(|&s| {
            let u0 = InitialSpec::from_loop(&base.scaled(1.0 + s)).build(model, config.mesh)?;
            let mut states = Vec::new();
            let mut u = u0;
            for k in 0..=steps {
                if k.is_multiple_of(config.cadence) || k == steps {
                    states.push(u.clone());
                }
                if k < steps {
                    u = step(model, &u, dt, exec)?;
                    u.t = (k + 1) as f64 * dt;
                }
            }
            Ok(states)
        })
        .collect::<Result<Vec<_>>>()?;
    let (lo, mid, hi) = (&runs[0], &runs[1], &runs[2]);
    let mut times = Vec::with_capacity(mid.len());
    let mut sup_ds = Vec::with_capacity(mid.len());
    for k in 0..mid.len() {
        times.push(mid[k].t);
        if delta == 0.0 {
            sup_ds.push(0.0);
            continue;
        }
        let d = mid[k].dim;
        let s = (0..mid[k].mesh.len())
            .map(|idx| {
                let v: Vec<f64> = (0..d)
                    .map(|a| (hi[k].point(idx)[a] - lo[k].point(idx)[a]) / (2.0 * delta))
                    .collect();
                model.norm(mid[k].point(idx), &v)
            })
            .fold(0.0, f64::max);
        sup_ds.push(s);
    }
    let max_increase = sup_ds
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(0.0, f64::max);
    Ok(StabilityReport {
        times,
        sup_ds,
        max_increase,
        initial_distance: lo[0].sup_distance(&hi[0]),
        final_distance: lo[lo.len() - 1].sup_distance(&hi[hi.len() - 1]),
    })
}
