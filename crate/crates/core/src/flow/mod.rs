//! Horizontal heat flow `∂u/∂t = ℋτ(u)` from a flat circle or torus into a
//! coordinate model, discretized by central differences and explicit Euler.

mod analysis;
mod config;
mod lift;
mod mesh;
mod solver;

pub use analysis::{
    bochner_check, decay_residual, defect_growth_constant, energy_non_increasing,
    max_energy_increase, stability_compare, sup_velocity_monotonicity, velocity_excess,
    BochnerReport, StabilityReport, VelocityExcess,
};
pub use config::{FlowConfig, InitialSpec, DEFAULT_EPS, DT_CEILING};
pub use lift::{horizontal_lift, HorizontalLoopSpec, TrigPoly, AREA_TOL};
pub use mesh::{DomainMesh, MapState, Shape, MIN_POINTS};
pub use solver::{
    energy, energy_densities, energy_density, horizontality_defect, run_flow, run_flow_from,
    step, tension, tension_field, write_state_json, DiagRow, FlowDiagnostics, FlowRun, RunStatus,
    TensionField, BLOW_UP, CSV_HEADER, MAX_DIM,
};
