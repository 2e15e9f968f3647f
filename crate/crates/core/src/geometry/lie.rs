//! Homogeneous models given by structure constants.
//!
//! The basis spans 𝔤 = 𝔷 ⊕ 𝔪 with 𝔪 = 𝔨′ ⊕ 𝔭. Indices listed as
//! `isotropy` span 𝔷 and are not tangent directions; `horizontal` indices
//! span 𝔭; the remaining ones span 𝔨′. Tangent vectors are coefficient
//! vectors on the 𝔪 part of the basis, in basis order.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Jacobi residual accepted for real-valued input.
pub const JACOBI_TOL: f64 = 1e-12;

/// JSON form of [`LieData`]:
/// `{basis, C: [[i, j, k, value], …], ip, horizontal, isotropy?}` where each
/// entry means `[e_i, e_j] = … + value·e_k + …`. Entries may also be wrapped
/// in one extra level of nesting. The antisymmetric partner of each entry is
/// implied.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LieDataDoc {
    #[serde(default)]
    pub name: Option<String>,
    pub basis: Vec<String>,
    #[serde(rename = "C")]
    pub c: Entries,
    pub ip: Vec<Vec<f64>>,
    pub horizontal: Vec<usize>,
    #[serde(default)]
    pub isotropy: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entries {
    Flat(Vec<[f64; 4]>),
    Nested(Vec<Vec<[f64; 4]>>),
}

impl Entries {
    fn flatten(&self) -> Vec<[f64; 4]> {
        match self {
            Entries::Flat(v) => v.clone(),
            Entries::Nested(v) => v.iter().flatten().copied().collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct LieData {
    name: String,
    basis: Vec<String>,
    /// `c[(i * n + j) * n + k] = C^k_{ij}` over the full basis.
    c: Vec<f64>,
    /// 𝔪 basis positions, in basis order.
    m_index: Vec<usize>,
    /// Horizontal flags over 𝔪 positions.
    is_horizontal: Vec<bool>,
    ip: DMatrix<f64>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidLieData(msg.into())
}

impl LieData {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: LieDataDoc = serde_json::from_str(text)?;
        Self::from_doc(&doc)
    }

    pub fn from_doc(doc: &LieDataDoc) -> Result<Self> {
        let n = doc.basis.len();
        if n == 0 {
            return Err(invalid("empty basis"));
        }
        let mut c = vec![0.0; n * n * n];
        let mut set = vec![false; n * n * n];
        for e in doc.c.flatten() {
            let idx: Vec<usize> = e[..3]
                .iter()
                .map(|&v| {
                    if v >= 0.0 && v.fract() == 0.0 && (v as usize) < n {
                        Ok(v as usize)
                    } else {
                        Err(invalid(format!("bad index {v} in structure constant entry")))
                    }
                })
                .collect::<Result<_>>()?;
            let (i, j, k, val) = (idx[0], idx[1], idx[2], e[3]);
            if i == j && val != 0.0 {
                return Err(invalid(format!("[e{i}, e{i}] must vanish")));
            }
            for (a, b, v) in [(i, j, val), (j, i, -val)] {
                let p = (a * n + b) * n + k;
                if set[p] && c[p] != v {
                    return Err(invalid(format!(
                        "conflicting entries for [e{a}, e{b}] along e{k}"
                    )));
                }
                c[p] = v;
                set[p] = true;
            }
        }
        let mut isotropy = doc.isotropy.clone();
        isotropy.sort_unstable();
        isotropy.dedup();
        if isotropy.iter().any(|&i| i >= n) {
            return Err(invalid("isotropy index out of range"));
        }
        let m_index: Vec<usize> = (0..n).filter(|i| isotropy.binary_search(i).is_err()).collect();
        let m = m_index.len();
        if doc.horizontal.is_empty() {
            return Err(invalid("no horizontal directions"));
        }
        let mut is_horizontal = vec![false; m];
        for &h in &doc.horizontal {
            let pos = m_index
                .iter()
                .position(|&i| i == h)
                .ok_or_else(|| invalid(format!("horizontal index {h} is not in 𝔪")))?;
            is_horizontal[pos] = true;
        }
        if doc.ip.len() != m || doc.ip.iter().any(|r| r.len() != m) {
            return Err(invalid(format!("inner product must be {m}×{m}")));
        }
        let ip = DMatrix::from_fn(m, m, |a, b| doc.ip[a][b]);
        if (&ip - ip.transpose()).amax() > 1e-14 {
            return Err(invalid("inner product is not symmetric"));
        }
        if ip.clone().cholesky().is_none() {
            return Err(invalid("inner product is not positive definite"));
        }
        for a in 0..m {
            for b in 0..m {
                if is_horizontal[a] != is_horizontal[b] && ip[(a, b)].abs() > 1e-12 {
                    return Err(invalid("horizontal and vertical directions must be orthogonal"));
                }
            }
        }
        let data = LieData {
            name: doc.name.clone().unwrap_or_else(|| "lie".to_string()),
            basis: doc.basis.clone(),
            c,
            m_index,
            is_horizontal,
            ip,
        };
        let r = data.jacobi_residual();
        if r > JACOBI_TOL {
            return Err(invalid(format!("Jacobi identity fails (residual {r:.3e})")));
        }
        Ok(data)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    /// dim 𝔪.
    pub fn dim(&self) -> usize {
        self.m_index.len()
    }

    pub fn horizontal_dim(&self) -> usize {
        self.is_horizontal.iter().filter(|&&h| h).count()
    }

    pub fn inner_product(&self) -> &DMatrix<f64> {
        &self.ip
    }

    /// `C^k_{ij}` on the full basis.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> f64 {
        let n = self.basis.len();
        self.c[(i * n + j) * n + k]
    }

    /// `max |Σ_l C^l_ij C^m_lk + C^l_jk C^m_li + C^l_ki C^m_lj|`.
    pub fn jacobi_residual(&self) -> f64 {
        let n = self.basis.len();
        let c = |i: usize, j: usize, k: usize| self.c[(i * n + j) * n + k];
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for m in 0..n {
                        let s: f64 = (0..n)
                            .map(|l| {
                                c(i, j, l) * c(l, k, m)
                                    + c(j, k, l) * c(l, i, m)
                                    + c(k, i, l) * c(l, j, m)
                            })
                            .sum();
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }

    pub fn inner(&self, v: &[f64], w: &[f64]) -> f64 {
        let mut s = 0.0;
        for (a, va) in v.iter().enumerate() {
            for (b, wb) in w.iter().enumerate() {
                s += self.ip[(a, b)] * va * wb;
            }
        }
        s
    }

    /// `[y, z]_𝔪` for 𝔪-coefficient vectors.
    pub fn bracket(&self, y: &[f64], z: &[f64]) -> Vec<f64> {
        let n = self.basis.len();
        let mut full = vec![0.0; n];
        for (a, &i) in self.m_index.iter().enumerate() {
            for (b, &j) in self.m_index.iter().enumerate() {
                let w = y[a] * z[b];
                if w == 0.0 {
                    continue;
                }
                for (k, f) in full.iter_mut().enumerate() {
                    *f += w * self.c[(i * n + j) * n + k];
                }
            }
        }
        self.m_index.iter().map(|&i| full[i]).collect()
    }

    /// The invariant torsion-free connection `∇_Y Z = ½[Y, Z]_𝔪`.
    pub fn connection(&self, y: &[f64], z: &[f64]) -> Vec<f64> {
        self.bracket(y, z).into_iter().map(|v| 0.5 * v).collect()
    }

    /// Checked form of [`LieData::connection`].
    pub fn invariant_connection(&self, y: &[f64], z: &[f64]) -> Result<Vec<f64>> {
        for v in [y, z] {
            if v.len() != self.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.dim(),
                    got: v.len(),
                });
            }
        }
        Ok(self.connection(y, z))
    }

    pub fn vertical_part(&self, v: &[f64]) -> Vec<f64> {
        v.iter()
            .zip(&self.is_horizontal)
            .map(|(&x, &h)| if h { 0.0 } else { x })
            .collect()
    }

    pub fn horizontal_combination(&self, coef: &[f64]) -> Vec<f64> {
        self.combination(coef, true)
    }

    pub fn vertical_combination(&self, coef: &[f64]) -> Vec<f64> {
        self.combination(coef, false)
    }

    /// Linear combination of an orthonormal basis of 𝔭 (or 𝔨′), obtained
    /// by Gram–Schmidt on the listed basis vectors.
    fn combination(&self, coef: &[f64], horizontal: bool) -> Vec<f64> {
        let m = self.dim();
        let mut ortho: Vec<Vec<f64>> = Vec::new();
        for a in (0..m).filter(|&a| self.is_horizontal[a] == horizontal) {
            let mut v = vec![0.0; m];
            v[a] = 1.0;
            for e in &ortho {
                let d = self.inner(&v, e);
                v.iter_mut().zip(e).for_each(|(x, y)| *x -= d * y);
            }
            let nv = self.inner(&v, &v).sqrt();
            v.iter_mut().for_each(|x| *x /= nv);
            ortho.push(v);
        }
        let mut out = vec![0.0; m];
        for (c, e) in coef.iter().zip(&ortho) {
            out.iter_mut().zip(e).for_each(|(o, x)| *o += c * x);
        }
        out
    }

    /// Base curvature `⟨R′(Y,Z)U,V⟩ = −⟨[[Y,Z]_𝔨′, V]_𝔭, U⟩` of the
    /// quotient by the vertical directions, for horizontal `Y, Z, U, V`.
    /// Assumes `[𝔭, 𝔭] ⊂ 𝔨′` (symmetric base).
    pub fn base_curvature(&self, y: &[f64], z: &[f64], u: &[f64], v: &[f64]) -> f64 {
        let yz = self.vertical_part(&self.bracket(y, z));
        let w = self.bracket(&yz, v);
        let wh: Vec<f64> = w
            .iter()
            .zip(self.vertical_part(&w))
            .map(|(a, b)| a - b)
            .collect();
        -self.inner(&wh, u)
    }
}

/// 𝔰𝔩(2, ℝ) with `h = ½diag(1, −1)`, `s = ½(E12 + E21)` spanning 𝔭 and the
/// rotation generator `k = ½(E12 − E21)` spanning 𝔨′:
/// `[h, s] = k`, `[h, k] = s`, `[s, k] = −h`.
pub fn sl2r_data() -> LieData {
    let doc = LieDataDoc {
        name: Some("sl2r".into()),
        basis: vec!["h".into(), "s".into(), "k".into()],
        c: Entries::Flat(vec![
            [0.0, 1.0, 2.0, 1.0],
            [0.0, 2.0, 1.0, 1.0],
            [1.0, 2.0, 0.0, -1.0],
        ]),
        ip: vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ],
        horizontal: vec![0, 1],
        isotropy: vec![],
    };
    LieData::from_doc(&doc).expect("sl2r data is valid")
}
