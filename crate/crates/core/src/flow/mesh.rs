use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const MIN_POINTS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Circle,
    Torus,
}

/// Uniform periodic grid on the flat circle `ℝ/2πℤ` or the flat torus
/// `(ℝ/2πℤ)²`. Torus points are stored row-major, `idx = i·N + j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainMesh {
    pub shape: Shape,
    #[serde(rename = "N")]
    pub n: usize,
}

impl DomainMesh {
    pub fn new(shape: Shape, n: usize) -> Result<Self> {
        let m = DomainMesh { shape, n };
        m.validate()?;
        Ok(m)
    }

    pub fn circle(n: usize) -> Result<Self> {
        Self::new(Shape::Circle, n)
    }

    pub fn torus(n: usize) -> Result<Self> {
        Self::new(Shape::Torus, n)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < MIN_POINTS {
            return Err(Error::config(
                "mesh.N",
                format!("need at least {MIN_POINTS} points per direction, got {}", self.n),
            ));
        }
        Ok(())
    }

    pub fn h(&self) -> f64 {
        TAU / self.n as f64
    }

    /// Number of domain directions.
    pub fn dirs(&self) -> usize {
        match self.shape {
            Shape::Circle => 1,
            Shape::Torus => 2,
        }
    }

    pub fn len(&self) -> usize {
        self.n.pow(self.dirs() as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Quadrature weight of one cell.
    pub fn weight(&self) -> f64 {
        self.h().powi(self.dirs() as i32)
    }

    /// Grid parameters `(s_i)` or `(s_i, s_j)` of a point.
    pub fn params(&self, idx: usize) -> [f64; 2] {
        let h = self.h();
        match self.shape {
            Shape::Circle => [idx as f64 * h, 0.0],
            Shape::Torus => [(idx / self.n) as f64 * h, (idx % self.n) as f64 * h],
        }
    }

    /// Neighbours of `idx` one step back and forward along `dir`.
    #[inline]
    pub fn neighbors(&self, idx: usize, dir: usize) -> (usize, usize) {
        let n = self.n;
        match (self.shape, dir) {
            (Shape::Circle, _) => ((idx + n - 1) % n, (idx + 1) % n),
            (Shape::Torus, 0) => {
                let (i, j) = (idx / n, idx % n);
                (((i + n - 1) % n) * n + j, ((i + 1) % n) * n + j)
            }
            (Shape::Torus, _) => {
                let (i, j) = (idx / n, idx % n);
                (i * n + (j + n - 1) % n, i * n + (j + 1) % n)
            }
        }
    }
}

/// A discrete map from a mesh into a chart, `coords[idx * dim + a]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MapState {
    pub mesh: DomainMesh,
    pub dim: usize,
    pub coords: Vec<f64>,
    pub t: f64,
}

impl MapState {
    pub fn new(mesh: DomainMesh, dim: usize, coords: Vec<f64>) -> Result<Self> {
        if coords.len() != mesh.len() * dim {
            return Err(Error::DimensionMismatch {
                expected: mesh.len() * dim,
                got: coords.len(),
            });
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::config("initial", "non-finite coordinates"));
        }
        Ok(MapState {
            mesh,
            dim,
            coords,
            t: 0.0,
        })
    }

    pub fn constant(mesh: DomainMesh, point: &[f64]) -> Self {
        let coords = (0..mesh.len()).flat_map(|_| point.iter().copied()).collect();
        MapState {
            mesh,
            dim: point.len(),
            coords,
            t: 0.0,
        }
    }

    #[inline]
    pub fn point(&self, idx: usize) -> &[f64] {
        &self.coords[idx * self.dim..(idx + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks(self.dim)
    }

    /// Largest coordinate-wise distance to another state on the same mesh.
    pub fn sup_distance(&self, other: &MapState) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}
