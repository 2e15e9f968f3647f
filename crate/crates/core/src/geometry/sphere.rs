//! Unit round sphere in stereographic coordinates, metric `λ² δ` with
//! `λ = 2 / (1 + |x|²)`. Every direction is horizontal.

use nalgebra::DMatrix;

use super::CoordinateGeometry;

#[derive(Debug, Clone, Copy, Default)]
pub struct RoundSphere;

fn conformal(p: &[f64]) -> f64 {
    2.0 / (1.0 + p[0] * p[0] + p[1] * p[1])
}

impl CoordinateGeometry for RoundSphere {
    fn dim(&self) -> usize {
        2
    }

    fn base_dim(&self) -> usize {
        2
    }

    fn metric(&self, p: &[f64]) -> DMatrix<f64> {
        let l = conformal(p);
        DMatrix::identity(2, 2) * (l * l)
    }

    fn christoffel(&self, p: &[f64], out: &mut [f64]) {
        // Γ^a_bc = δ^a_b φ_c + δ^a_c φ_b − δ_bc φ_a with φ = ln λ
        let s = 1.0 + p[0] * p[0] + p[1] * p[1];
        let dphi = [-2.0 * p[0] / s, -2.0 * p[1] / s];
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    let mut g = 0.0;
                    if a == b {
                        g += dphi[c];
                    }
                    if a == c {
                        g += dphi[b];
                    }
                    if b == c {
                        g -= dphi[a];
                    }
                    out[(a * 2 + b) * 2 + c] = g;
                }
            }
        }
    }

    fn frame(&self, p: &[f64]) -> DMatrix<f64> {
        DMatrix::identity(2, 2) / conformal(p)
    }

    fn frame_derivative(&self, p: &[f64], k: usize) -> DMatrix<f64> {
        DMatrix::identity(2, 2) * p[k]
    }

    fn base_curvature(&self, p: &[f64], y: &[f64], z: &[f64], u: &[f64], v: &[f64]) -> f64 {
        let ip = |a: &[f64], b: &[f64]| self.inner(p, a, b);
        ip(y, u) * ip(z, v) - ip(y, v) * ip(z, u)
    }
}
