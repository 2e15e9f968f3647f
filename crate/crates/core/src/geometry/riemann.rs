//! Curvature straight from a chart, with no submersion structure: Christoffel
//! symbols differentiated numerically and assembled into the Riemann tensor.
//! Used to cross-check the A-tensor route.

use nalgebra::DMatrix;

use super::CoordinateGeometry;

/// Step of the five-point stencil applied to Christoffel symbols.
pub const RIEMANN_STEP: f64 = 1e-3;
/// Step of the central differences applied to the metric.
pub const METRIC_STEP: f64 = 1e-5;

fn shifted(x: &[f64], k: usize, s: f64) -> Vec<f64> {
    let mut p = x.to_vec();
    p[k] += s;
    p
}

/// `∂_k Γ^a_{bc}` by the five-point stencil, laid out as `[k][(a·d+b)·d+c]`.
fn christoffel_derivatives(g: &dyn CoordinateGeometry, x: &[f64], h: f64) -> Vec<Vec<f64>> {
    let d = g.dim();
    let n = d * d * d;
    let eval = |p: &[f64]| {
        let mut out = vec![0.0; n];
        g.christoffel(p, &mut out);
        out
    };
    (0..d)
        .map(|k| {
            let m2 = eval(&shifted(x, k, -2.0 * h));
            let m1 = eval(&shifted(x, k, -h));
            let p1 = eval(&shifted(x, k, h));
            let p2 = eval(&shifted(x, k, 2.0 * h));
            (0..n)
                .map(|i| (m2[i] - 8.0 * m1[i] + 8.0 * p1[i] - p2[i]) / (12.0 * h))
                .collect()
        })
        .collect()
}

/// `R^a_{bcd}` with `R(∂_c, ∂_d)∂_b = R^a_{bcd} ∂_a`, laid out as
/// `((a·d+b)·d+c)·d+e`.
pub fn riemann_tensor(g: &dyn CoordinateGeometry, x: &[f64]) -> Vec<f64> {
    let d = g.dim();
    let mut gam = vec![0.0; d * d * d];
    g.christoffel(x, &mut gam);
    let dg = christoffel_derivatives(g, x, RIEMANN_STEP);
    let ix = |a: usize, b: usize, c: usize| (a * d + b) * d + c;
    let mut r = vec![0.0; d * d * d * d];
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                for e in 0..d {
                    let mut v = dg[c][ix(a, e, b)] - dg[e][ix(a, c, b)];
                    for f in 0..d {
                        v += gam[ix(a, c, f)] * gam[ix(f, e, b)] - gam[ix(a, e, f)] * gam[ix(f, c, b)];
                    }
                    r[ix(a, b, c) * d + e] = v;
                }
            }
        }
    }
    r
}

/// `⟨R(Y, Z)U, V⟩` in the convention where `⟨R(Y, Z)Y, Z⟩` is the sectional
/// curvature of an orthonormal pair.
pub fn coordinate_curvature4(
    g: &dyn CoordinateGeometry,
    x: &[f64],
    y: &[f64],
    z: &[f64],
    u: &[f64],
    v: &[f64],
) -> f64 {
    let d = g.dim();
    let r = riemann_tensor(g, x);
    // R_std(Y, Z)V, paired with U
    let mut w = vec![0.0; d];
    for (a, wa) in w.iter_mut().enumerate() {
        for b in 0..d {
            for c in 0..d {
                for e in 0..d {
                    *wa += r[((a * d + b) * d + c) * d + e] * v[b] * y[c] * z[e];
                }
            }
        }
    }
    g.inner(x, &w, u)
}

/// Christoffel symbols of the second kind from central differences of the
/// metric.
pub fn christoffel_from_metric(g: &dyn CoordinateGeometry, x: &[f64], h: f64) -> Vec<f64> {
    let d = g.dim();
    let dm: Vec<DMatrix<f64>> = (0..d)
        .map(|k| (g.metric(&shifted(x, k, h)) - g.metric(&shifted(x, k, -h))) / (2.0 * h))
        .collect();
    let inv = g
        .metric(x)
        .try_inverse()
        .expect("metric is positive definite");
    let mut out = vec![0.0; d * d * d];
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                let s: f64 = (0..d)
                    .map(|e| inv[(a, e)] * (dm[b][(e, c)] + dm[c][(e, b)] - dm[e][(b, c)]))
                    .sum();
                out[(a * d + b) * d + c] = 0.5 * s;
            }
        }
    }
    out
}

/// Largest difference between the supplied Christoffel symbols and those
/// differentiated from the metric at `x`.
pub fn christoffel_discrepancy(g: &dyn CoordinateGeometry, x: &[f64]) -> f64 {
    let d = g.dim();
    let mut exact = vec![0.0; d * d * d];
    g.christoffel(x, &mut exact);
    christoffel_from_metric(g, x, METRIC_STEP)
        .iter()
        .zip(&exact)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}
