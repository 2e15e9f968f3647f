//! The Heisenberg group in exponential coordinates `(x, y, t)` with the
//! left-invariant metric making `X = ∂x − (y/2)∂t`, `Y = ∂y + (x/2)∂t`,
//! `T = ∂t` orthonormal. The submersion `(x, y, t) ↦ (x, y)` onto the flat
//! plane has horizontal distribution `span{X, Y}` and `[X, Y] = T`.

use nalgebra::DMatrix;

use super::CoordinateGeometry;

#[derive(Debug, Clone, Copy, Default)]
pub struct Heisenberg;

impl Heisenberg {
    /// Contact form `θ(v) = v_t + (y/2) v_x − (x/2) v_y`, the `T`-coefficient
    /// of `v`.
    #[inline]
    pub fn theta(x: &[f64], v: &[f64]) -> f64 {
        v[2] + 0.5 * x[1] * v[0] - 0.5 * x[0] * v[1]
    }
}

impl CoordinateGeometry for Heisenberg {
    fn dim(&self) -> usize {
        3
    }

    fn base_dim(&self) -> usize {
        2
    }

    fn metric(&self, p: &[f64]) -> DMatrix<f64> {
        let (x, y) = (p[0], p[1]);
        DMatrix::from_row_slice(
            3,
            3,
            &[
                1.0 + 0.25 * y * y,
                -0.25 * x * y,
                0.5 * y,
                -0.25 * x * y,
                1.0 + 0.25 * x * x,
                -0.5 * x,
                0.5 * y,
                -0.5 * x,
                1.0,
            ],
        )
    }

    fn christoffel(&self, p: &[f64], out: &mut [f64]) {
        let (x, y) = (p[0], p[1]);
        out.iter_mut().for_each(|g| *g = 0.0);
        let mut set = |a: usize, b: usize, c: usize, v: f64| {
            out[(a * 3 + b) * 3 + c] = v;
            out[(a * 3 + c) * 3 + b] = v;
        };
        set(0, 0, 1, 0.25 * y);
        set(0, 1, 1, -0.5 * x);
        set(0, 1, 2, 0.5);
        set(1, 0, 0, -0.5 * y);
        set(1, 0, 1, 0.25 * x);
        set(1, 0, 2, -0.5);
        set(2, 0, 0, -0.25 * x * y);
        set(2, 0, 1, 0.125 * (x * x - y * y));
        set(2, 0, 2, -0.25 * x);
        set(2, 1, 1, 0.25 * x * y);
        set(2, 1, 2, -0.25 * y);
    }

    fn add_christoffel_quadratic(&self, p: &[f64], v: &[f64], out: &mut [f64]) {
        let (x, y) = (p[0], p[1]);
        let (a, b, c) = (v[0], v[1], v[2]);
        out[0] += 0.5 * y * a * b - 0.5 * x * b * b + b * c;
        out[1] += -0.5 * y * a * a + 0.5 * x * a * b - a * c;
        out[2] += -0.25 * x * y * a * a + 0.25 * (x * x - y * y) * a * b - 0.5 * x * a * c
            + 0.25 * x * y * b * b
            - 0.5 * y * b * c;
    }

    fn vertical_part(&self, p: &[f64], v: &[f64]) -> Vec<f64> {
        vec![0.0, 0.0, Heisenberg::theta(p, v)]
    }

    fn inner(&self, p: &[f64], v: &[f64], w: &[f64]) -> f64 {
        v[0] * w[0] + v[1] * w[1] + Heisenberg::theta(p, v) * Heisenberg::theta(p, w)
    }

    fn frame(&self, p: &[f64]) -> DMatrix<f64> {
        let (x, y) = (p[0], p[1]);
        DMatrix::from_row_slice(3, 3, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0, -0.5 * y, 0.5 * x, 1.0])
    }

    fn frame_derivative(&self, _p: &[f64], k: usize) -> DMatrix<f64> {
        let mut d = DMatrix::zeros(3, 3);
        match k {
            0 => d[(2, 1)] = 0.5,
            1 => d[(2, 0)] = -0.5,
            _ => {}
        }
        d
    }

    fn base_curvature(&self, _p: &[f64], _y: &[f64], _z: &[f64], _u: &[f64], _v: &[f64]) -> f64 {
        0.0
    }
}
