//! Fixed-seed property suites behind `carnot checks`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::flow::{self, FlowConfig, RunStatus};
use crate::geometry::{
    self, check_nonpositive_horizontal, riemann, sample_rng, MetricModel, ModelKind, Point,
    TangentVec,
};
use crate::{Exec, Result};

const SEED: u64 = 20_240_601;
const PROJECTION_TOL: f64 = 1e-12;
const A_TENSOR_TOL: f64 = 1e-10;
const CURVATURE_TOL: f64 = 1e-9;
const ENERGY_SLACK: f64 = 1e-12;
/// Accepted range for the decay residual ratio between `N` and `2N`.
const DECAY_RATIO: (f64, f64) = (3.0, 5.0);
/// Defect growth constants at `N` and `2N` must agree within this factor.
const DEFECT_FACTOR: f64 = 2.0;
/// Slack `1e-8 + C·(h² + dt)` on `sup|∂u/∂t|`.
const VELOCITY_C: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Geometry,
    FlowProperties,
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "geometry" => Ok(Suite::Geometry),
            "flow-properties" => Ok(Suite::FlowProperties),
            other => Err(format!(
                "unknown suite `{other}` (expected `geometry` or `flow-properties`)"
            )),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Geometry => "geometry",
            Suite::FlowProperties => "flow-properties",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckOutcome {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag}  {:<28} {}", self.name, self.detail)
    }
}

pub fn run_suite(suite: Suite, exec: Exec) -> Result<Vec<CheckOutcome>> {
    match suite {
        Suite::Geometry => geometry_suite(exec),
        Suite::FlowProperties => flow_suite(exec),
    }
}

fn models() -> Result<Vec<MetricModel>> {
    geometry::MODEL_IDS.iter().map(|id| geometry::model(id)).collect()
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn diff(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `ℋ + 𝒱 = 1`, `ℋ𝒱 = 0`, idempotence and self-adjointness on random
/// vectors; returns the worst relative error.
pub fn projection_algebra_error(m: &MetricModel, n: usize, seed: u64) -> f64 {
    (0..n)
        .map(|i| {
            let mut rng = sample_rng(seed, i as u64);
            let x = m.random_point(&mut rng);
            let v = m.random_vector(&x, &mut rng);
            let w = m.random_vector(&x, &mut rng);
            let hv = m.horizontal_part(&x, &v);
            let vv = m.vertical_part(&x, &v);
            let hw = m.horizontal_part(&x, &w);
            let sum: Vec<f64> = hv.iter().zip(&vv).map(|(a, b)| a + b).collect();
            let scale = m.norm(&x, &v).max(m.norm(&x, &w)).max(1.0).powi(2);
            let errs = [
                max_abs(&diff(&sum, &v)),
                max_abs(&m.vertical_part(&x, &hv)),
                max_abs(&m.horizontal_part(&x, &vv)),
                max_abs(&diff(&m.horizontal_part(&x, &hv), &hv)),
                max_abs(&diff(&m.vertical_part(&x, &vv), &vv)),
                (m.inner(&x, &hv, &w) - m.inner(&x, &v, &hw)).abs(),
                m.inner(&x, &hv, &vv).abs(),
            ];
            errs.iter().fold(0.0f64, |a, b| a.max(*b)) / scale
        })
        .fold(0.0, f64::max)
}

/// Worst of `|A(Y,Z) + A(Z,Y)|` and `|A(Y,Z) − ½𝒱[Y,Z]|` over random
/// horizontal pairs.
pub fn a_tensor_errors(m: &MetricModel, n: usize, seed: u64) -> (f64, f64) {
    (0..n)
        .map(|i| {
            let mut rng = sample_rng(seed, i as u64);
            let x = m.random_point(&mut rng);
            let y = m.random_horizontal(&x, &mut rng);
            let z = m.random_horizontal(&x, &mut rng);
            let ayz = m.a_tensor(&x, &y, &z);
            let azy = m.a_tensor(&x, &z, &y);
            let skew: Vec<f64> = ayz.iter().zip(&azy).map(|(a, b)| a + b).collect();
            let half: Vec<f64> = m
                .vertical_part(&x, &m.frame_bracket(&x, &y, &z))
                .iter()
                .map(|c| 0.5 * c)
                .collect();
            (m.norm(&x, &skew), m.norm(&x, &diff(&ayz, &half)))
        })
        .fold((0.0, 0.0), |(a, b), (c, d)| (f64::max(a, c), f64::max(b, d)))
}

/// Largest `|Σ_i A(du(e_i), du(e_i))|` over random horizontal `du` with
/// `dirs` domain directions.
pub fn vertical_tension_max(m: &MetricModel, n: usize, dirs: usize, seed: u64) -> Result<f64> {
    let mut worst = 0.0f64;
    for i in 0..n {
        let mut rng = sample_rng(seed, i as u64);
        let x = m.random_point(&mut rng);
        let p = Point::new(x.clone());
        let du: Vec<TangentVec> = (0..dirs)
            .map(|_| TangentVec::new(p.clone(), m.random_horizontal(&x, &mut rng)))
            .collect();
        let vt = m.vertical_tension(&du, &p)?;
        worst = worst.max(m.norm(&x, &vt.components));
    }
    Ok(worst)
}

/// Largest gap between the A-tensor curvature and the chart curvature on
/// random horizontal quadruples of a coordinate model.
pub fn oneill_vs_chart(m: &MetricModel, n: usize, seed: u64) -> Result<f64> {
    let g = m.coordinate_geometry()?;
    let mut worst = 0.0f64;
    for i in 0..n {
        let mut rng = sample_rng(seed, i as u64);
        let x = m.random_point(&mut rng);
        let v: Vec<Vec<f64>> = (0..4).map(|_| m.random_horizontal(&x, &mut rng)).collect();
        let a = m.curvature4(&x, &v[0], &v[1], &v[2], &v[3]);
        let b = riemann::coordinate_curvature4(g, &x, &v[0], &v[1], &v[2], &v[3]);
        worst = worst.max((a - b).abs());
    }
    Ok(worst)
}

fn geometry_suite(exec: Exec) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    for m in models()? {
        let id = m.id().to_string();
        let e = projection_algebra_error(&m, 500, SEED);
        out.push(CheckOutcome::new(
            format!("projection-algebra/{id}"),
            e <= PROJECTION_TOL,
            format!("max error {e:.2e} (tol {PROJECTION_TOL:.0e})"),
        ));
        let (skew, half) = a_tensor_errors(&m, 1000, SEED + 1);
        out.push(CheckOutcome::new(
            format!("a-tensor/{id}"),
            skew <= A_TENSOR_TOL && half <= A_TENSOR_TOL,
            format!("|A(Y,Z)+A(Z,Y)| {skew:.2e}, |A - V[Y,Z]/2| {half:.2e}"),
        ));
        let vt = vertical_tension_max(&m, 200, 2, SEED + 2)?;
        out.push(CheckOutcome::new(
            format!("vertical-tension/{id}"),
            vt <= A_TENSOR_TOL,
            format!("max |sum A(du,du)| {vt:.2e} over 200 maps"),
        ));
        let rep = check_nonpositive_horizontal(&m, 1000, SEED + 3, exec);
        out.push(CheckOutcome::new(
            format!("nonpositive-curvature/{id}"),
            rep.success(),
            format!(
                "K in [{:.4}, {:.4}], {} violations",
                rep.min_k.unwrap_or(0.0),
                rep.max_k.unwrap_or(0.0),
                rep.violations
            ),
        ));
        match m.kind() {
            ModelKind::Coordinate(g) => {
                let gap = oneill_vs_chart(&m, 200, SEED + 4)?;
                out.push(CheckOutcome::new(
                    format!("oneill-vs-chart/{id}"),
                    gap <= CURVATURE_TOL,
                    format!("max gap {gap:.2e} (tol {CURVATURE_TOL:.0e})"),
                ));
                let worst = (0..50)
                    .map(|i| {
                        let x = m.random_point(&mut sample_rng(SEED + 5, i));
                        riemann::christoffel_discrepancy(g.as_ref(), &x)
                    })
                    .fold(0.0, f64::max);
                out.push(CheckOutcome::new(
                    format!("christoffel-vs-metric/{id}"),
                    worst <= 1e-6,
                    format!("max gap {worst:.2e} (tol 1e-6)"),
                ));
            }
            ModelKind::Invariant(l) => {
                let r = l.jacobi_residual();
                out.push(CheckOutcome::new(
                    format!("jacobi/{id}"),
                    r <= 1e-12,
                    format!("residual {r:.2e}"),
                ));
            }
        }
    }
    Ok(out)
}

/// Figure-eight runs at `N` and `2N` with `dt = 0.1·h²`.
fn flow_suite(exec: Exec) -> Result<Vec<CheckOutcome>> {
    let runs: Vec<flow::FlowRun> = [32, 64]
        .iter()
        .map(|&n| flow::run_flow(&FlowConfig::figure_eight(n, 0.1), exec))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();

    let inc = runs
        .iter()
        .map(|r| flow::max_energy_increase(&r.diagnostics))
        .fold(f64::NEG_INFINITY, f64::max);
    out.push(CheckOutcome::new(
        "energy-monotone",
        inc <= ENERGY_SLACK,
        format!("max relative step increase {inc:.2e} (slack {ENERGY_SLACK:.0e})"),
    ));

    let res: Vec<f64> = runs.iter().map(|r| flow::decay_residual(&r.diagnostics)).collect();
    let ratio = res[0] / res[1];
    out.push(CheckOutcome::new(
        "decay-residual",
        (DECAY_RATIO.0..=DECAY_RATIO.1).contains(&ratio),
        format!("residual {:.3e} -> {:.3e}, ratio {ratio:.2}", res[0], res[1]),
    ));

    let cs: Vec<f64> = runs
        .iter()
        .map(|r| flow::defect_growth_constant(&r.diagnostics))
        .collect();
    let spread = cs[1].max(cs[0]) / cs[0].min(cs[1]).max(f64::MIN_POSITIVE);
    out.push(CheckOutcome::new(
        "defect-growth",
        spread <= DEFECT_FACTOR,
        format!("fitted C {:.3e} -> {:.3e}, spread {spread:.2}", cs[0], cs[1]),
    ));

    let mut ok = true;
    let mut worst = 0.0f64;
    for r in &runs {
        let d = &r.diagnostics;
        let slack = 1e-8 + VELOCITY_C * (d.h * d.h + d.dt);
        ok &= flow::sup_velocity_monotonicity(d, slack);
        let e = flow::velocity_excess(d);
        worst = worst.max(e.over_initial.max(e.per_step));
    }
    out.push(CheckOutcome::new(
        "sup-velocity",
        ok,
        format!("max increase {worst:.2e}"),
    ));

    let conv = runs.iter().all(|r| r.status == RunStatus::Converged);
    let full = runs
        .iter()
        .filter_map(|r| r.diagnostics.last().map(|l| l.sup_full_tension))
        .fold(0.0, f64::max);
    out.push(CheckOutcome::new(
        "convergence",
        conv && full < 1e-5,
        format!("all converged: {conv}, final sup|tau| {full:.3e}"),
    ));
    Ok(out)
}
