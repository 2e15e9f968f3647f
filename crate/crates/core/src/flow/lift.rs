//! Closed base curves as trigonometric polynomials and their horizontal lifts
//! to the Heisenberg group.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::mesh::{DomainMesh, MapState, Shape};
use crate::{Error, Result};

/// Largest enclosed area accepted as zero.
pub const AREA_TOL: f64 = 1e-10;

/// `f(s) = Σ_k a_k cos(ks) + b_k sin(ks)`, serialized as `[[k, a_k, b_k], …]`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "Vec<(u32, f64, f64)>", into = "Vec<(u32, f64, f64)>")]
pub struct TrigPoly {
    terms: BTreeMap<u32, (f64, f64)>,
}

impl From<Vec<(u32, f64, f64)>> for TrigPoly {
    fn from(v: Vec<(u32, f64, f64)>) -> Self {
        let mut p = TrigPoly::default();
        for (k, a, b) in v {
            p.add(k, a, b);
        }
        p
    }
}

impl From<TrigPoly> for Vec<(u32, f64, f64)> {
    fn from(p: TrigPoly) -> Self {
        p.terms.into_iter().map(|(k, (a, b))| (k, a, b)).collect()
    }
}

impl TrigPoly {
    pub fn new(terms: &[(u32, f64, f64)]) -> Self {
        terms.to_vec().into()
    }

    fn add(&mut self, k: u32, a: f64, b: f64) {
        let e = self.terms.entry(k).or_insert((0.0, 0.0));
        e.0 += a;
        // sin(0·s) vanishes
        if k != 0 {
            e.1 += b;
        }
    }

    /// Adds `a cos(ks) + b sin(ks)` for a possibly negative frequency.
    fn add_signed(&mut self, k: i64, a: f64, b: f64) {
        let sign = if k < 0 { -1.0 } else { 1.0 };
        self.add(k.unsigned_abs() as u32, a, sign * b);
    }

    pub fn eval(&self, s: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&k, &(a, b))| {
                let (sn, cs) = (k as f64 * s).sin_cos();
                a * cs + b * sn
            })
            .sum()
    }

    pub fn derivative(&self) -> TrigPoly {
        let mut p = TrigPoly::default();
        for (&k, &(a, b)) in &self.terms {
            let kf = k as f64;
            p.add(k, kf * b, -kf * a);
        }
        p
    }

    /// Mean value over a period.
    pub fn mean(&self) -> f64 {
        self.terms.get(&0).map_or(0.0, |t| t.0)
    }

    /// Antiderivative vanishing at `s = 0`; the mean is dropped.
    pub fn antiderivative(&self) -> TrigPoly {
        let mut p = TrigPoly::default();
        let mut c = 0.0;
        for (&k, &(a, b)) in self.terms.iter().filter(|(k, _)| **k != 0) {
            let kf = k as f64;
            p.add(k, -b / kf, a / kf);
            c += b / kf;
        }
        p.add(0, c, 0.0);
        p
    }

    pub fn mul(&self, other: &TrigPoly) -> TrigPoly {
        let mut p = TrigPoly::default();
        for (&k, &(a, b)) in &self.terms {
            for (&l, &(c, d)) in &other.terms {
                let (k, l) = (k as i64, l as i64);
                // (a cos ks + b sin ks)(c cos ls + d sin ls)
                p.add_signed(k - l, 0.5 * (a * c + b * d), 0.5 * (b * c - a * d));
                p.add_signed(k + l, 0.5 * (a * c - b * d), 0.5 * (b * c + a * d));
            }
        }
        p
    }

    pub fn scale(&self, f: f64) -> TrigPoly {
        TrigPoly {
            terms: self.terms.iter().map(|(&k, &(a, b))| (k, (f * a, f * b))).collect(),
        }
    }

    pub fn sub(&self, other: &TrigPoly) -> TrigPoly {
        let mut p = self.clone();
        for (&k, &(a, b)) in &other.terms {
            p.add(k, -a, -b);
        }
        p
    }

    /// `Σ_k k²(a_k² + b_k²)·π`, the integral of `f′²` over a period.
    pub fn derivative_l2_sq(&self) -> f64 {
        self.terms
            .iter()
            .map(|(&k, &(a, b))| (k as f64).powi(2) * (a * a + b * b))
            .sum::<f64>()
            * std::f64::consts::PI
    }
}

/// A closed base curve `(x(s), y(s))` and the starting height of its lift.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HorizontalLoopSpec {
    pub fourier_x: TrigPoly,
    pub fourier_y: TrigPoly,
    #[serde(default)]
    pub t0: f64,
}

impl HorizontalLoopSpec {
    pub fn figure_eight() -> Self {
        HorizontalLoopSpec {
            fourier_x: TrigPoly::new(&[(2, 0.0, 1.0)]),
            fourier_y: TrigPoly::new(&[(1, 0.0, 1.0)]),
            t0: 0.0,
        }
    }

    /// Signed area `½∮(x dy − y dx)`.
    pub fn signed_area(&self) -> f64 {
        std::f64::consts::TAU * self.height_rate().mean()
    }

    /// `t′ = (x y′ − y x′)/2`.
    fn height_rate(&self) -> TrigPoly {
        let (x, y) = (&self.fourier_x, &self.fourier_y);
        x.mul(&y.derivative()).sub(&y.mul(&x.derivative())).scale(0.5)
    }

    /// `(x, y, t)` of the lift as trigonometric polynomials.
    pub fn lift(&self) -> Result<[TrigPoly; 3]> {
        let area = self.signed_area();
        if area.abs() > AREA_TOL {
            return Err(Error::InvalidLoop(format!(
                "enclosed area {area:.6e} is not zero, so the lift does not close"
            )));
        }
        let mut t = self.height_rate().antiderivative();
        t.add(0, self.t0, 0.0);
        Ok([self.fourier_x.clone(), self.fourier_y.clone(), t])
    }

    pub fn scaled(&self, f: f64) -> Self {
        HorizontalLoopSpec {
            fourier_x: self.fourier_x.scale(f),
            fourier_y: self.fourier_y.scale(f),
            t0: self.t0,
        }
    }
}

/// Samples the lift at the mesh points: `γ(s_i)` on a circle and
/// `γ(s_i + s_j)` on a torus, which is horizontal in both directions.
pub fn horizontal_lift(spec: &HorizontalLoopSpec, mesh: DomainMesh) -> Result<MapState> {
    let curve = spec.lift()?;
    sample_curve(&curve, mesh)
}

pub(crate) fn sample_curve(curve: &[TrigPoly], mesh: DomainMesh) -> Result<MapState> {
    let coords = (0..mesh.len())
        .flat_map(|idx| {
            let [a, b] = mesh.params(idx);
            let s = match mesh.shape {
                Shape::Circle => a,
                Shape::Torus => a + b,
            };
            curve.iter().map(move |p| p.eval(s))
        })
        .collect();
    MapState::new(mesh, curve.len(), coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_calculus() {
        let p = TrigPoly::new(&[(2, 0.0, 1.0), (0, 0.5, 0.0)]);
        let q = TrigPoly::new(&[(1, 0.3, -0.7)]);
        let pq = p.mul(&q);
        for s in [0.0, 0.4, 2.2, 5.9] {
            assert!((pq.eval(s) - p.eval(s) * q.eval(s)).abs() < 1e-14);
            let dp = p.derivative().eval(s);
            assert!((dp - 2.0 * (2.0 * s).cos()).abs() < 1e-14);
        }
        let a = q.antiderivative();
        assert!(a.eval(0.0).abs() < 1e-15);
        for s in [0.3, 1.7, 4.0] {
            assert!((a.derivative().eval(s) - q.eval(s)).abs() < 1e-15);
        }
    }

    #[test]
    fn area_obstruction() {
        let circle = HorizontalLoopSpec {
            fourier_x: TrigPoly::new(&[(1, 1.0, 0.0)]),
            fourier_y: TrigPoly::new(&[(1, 0.0, 1.0)]),
            t0: 0.0,
        };
        assert!((circle.signed_area() - std::f64::consts::PI).abs() < 1e-14);
        assert!(matches!(circle.lift(), Err(Error::InvalidLoop(_))));
        assert!(HorizontalLoopSpec::figure_eight().signed_area().abs() < 1e-15);
    }

    #[test]
    fn json_roundtrip() {
        let s = HorizontalLoopSpec::figure_eight();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"fourier_x":[[2,0.0,1.0]],"fourier_y":[[1,0.0,1.0]],"t0":0.0}"#);
        let back: HorizontalLoopSpec = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
    }
}
