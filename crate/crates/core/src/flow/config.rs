use serde::{Deserialize, Serialize};

use super::lift::{horizontal_lift, sample_curve, HorizontalLoopSpec, TrigPoly};
use super::mesh::{DomainMesh, MapState, Shape};
use crate::geometry::{self, MetricModel};
use crate::{Error, Result};

/// Explicit Euler is only run with `dt ≤ DT_CEILING·h²`.
pub const DT_CEILING: f64 = 0.25;
pub const DEFAULT_EPS: f64 = 1e-6;

fn default_eps() -> f64 {
    DEFAULT_EPS
}

fn one() -> usize {
    1
}

/// Initial map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum InitialSpec {
    /// Every mesh point at `point`.
    Constant { point: Vec<f64> },
    /// A closed base curve `γ`, lifted horizontally when the model has
    /// fibres; sampled as `γ(s)` on a circle and `γ(s_i + s_j)` on a torus.
    Loop {
        fourier_x: TrigPoly,
        fourier_y: TrigPoly,
        #[serde(default)]
        t0: f64,
    },
    /// `(x(s_i), y(s_j))` on a torus, for models without fibres.
    Product {
        fourier_x: TrigPoly,
        fourier_y: TrigPoly,
    },
}

impl InitialSpec {
    pub fn figure_eight() -> Self {
        let s = HorizontalLoopSpec::figure_eight();
        InitialSpec::Loop {
            fourier_x: s.fourier_x,
            fourier_y: s.fourier_y,
            t0: s.t0,
        }
    }

    pub fn loop_spec(&self) -> Option<HorizontalLoopSpec> {
        match self {
            InitialSpec::Loop {
                fourier_x,
                fourier_y,
                t0,
            } => Some(HorizontalLoopSpec {
                fourier_x: fourier_x.clone(),
                fourier_y: fourier_y.clone(),
                t0: *t0,
            }),
            _ => None,
        }
    }

    pub fn from_loop(spec: &HorizontalLoopSpec) -> Self {
        InitialSpec::Loop {
            fourier_x: spec.fourier_x.clone(),
            fourier_y: spec.fourier_y.clone(),
            t0: spec.t0,
        }
    }

    pub fn build(&self, model: &MetricModel, mesh: DomainMesh) -> Result<MapState> {
        let dim = model.total_dim();
        match self {
            InitialSpec::Constant { point } => {
                if point.len() != dim {
                    return Err(Error::config(
                        "initial.point",
                        format!("expected {dim} coordinates, got {}", point.len()),
                    ));
                }
                MapState::new(mesh, dim, MapState::constant(mesh, point).coords)
            }
            InitialSpec::Loop { .. } => {
                let spec = self.loop_spec().expect("loop");
                match (model.id(), model.fiber_dim(), dim) {
                    ("heisenberg3", _, _) => horizontal_lift(&spec, mesh),
                    (_, 0, 2) => sample_curve(&[spec.fourier_x, spec.fourier_y], mesh),
                    _ => Err(Error::config(
                        "initial.kind",
                        format!("no horizontal lift is available for model `{}`", model.id()),
                    )),
                }
            }
            InitialSpec::Product {
                fourier_x,
                fourier_y,
            } => {
                if mesh.shape != Shape::Torus || dim != 2 || model.fiber_dim() != 0 {
                    return Err(Error::config(
                        "initial.kind",
                        "product data needs a torus mesh and a two-dimensional model without fibres",
                    ));
                }
                let coords = (0..mesh.len())
                    .flat_map(|idx| {
                        let [a, b] = mesh.params(idx);
                        [fourier_x.eval(a), fourier_y.eval(b)]
                    })
                    .collect();
                MapState::new(mesh, 2, coords)
            }
        }
    }
}

/// A flow run, as read from JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlowConfig {
    pub model: String,
    pub mesh: DomainMesh,
    pub initial: InitialSpec,
    /// `dt = dt_factor·h²`.
    pub dt_factor: f64,
    pub max_steps: usize,
    /// Stop once `sup|ℋτ| < eps`.
    #[serde(default = "default_eps")]
    pub eps: f64,
    /// Record diagnostics every `cadence` steps.
    #[serde(default = "one")]
    pub cadence: usize,
    /// Recorded with the run; the flow itself is deterministic.
    #[serde(default)]
    pub seed: u64,
}

impl FlowConfig {
    pub fn figure_eight(n: usize, dt_factor: f64) -> Self {
        FlowConfig {
            model: "heisenberg3".into(),
            mesh: DomainMesh {
                shape: Shape::Circle,
                n,
            },
            initial: InitialSpec::figure_eight(),
            dt_factor,
            max_steps: 2_000_000,
            eps: DEFAULT_EPS,
            cadence: 1,
            seed: 0,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: FlowConfig = serde_json::from_str(text)?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        self.mesh.validate()?;
        if !(self.dt_factor > 0.0 && self.dt_factor <= DT_CEILING) {
            return Err(Error::config(
                "dt_factor",
                format!(
                    "{} is outside (0, {DT_CEILING}], the explicit stability ceiling",
                    self.dt_factor
                ),
            ));
        }
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return Err(Error::config("eps", "must be positive and finite"));
        }
        if self.cadence == 0 {
            return Err(Error::config("cadence", "must be at least 1"));
        }
        if let InitialSpec::Loop { .. } = self.initial {
            let spec = self.initial.loop_spec().expect("loop");
            if spec.signed_area().abs() > super::lift::AREA_TOL {
                return Err(Error::config(
                    "initial",
                    format!(
                        "base loop encloses area {:.6e}; its lift does not close",
                        spec.signed_area()
                    ),
                ));
            }
        }
        Ok(())
    }

    pub fn dt(&self) -> f64 {
        self.dt_factor * self.mesh.h().powi(2)
    }

    pub fn resolve_model(&self) -> Result<MetricModel> {
        let m = geometry::model(&self.model)?;
        m.coordinate_geometry()?;
        Ok(m)
    }
}
