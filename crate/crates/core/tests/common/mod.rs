//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's own construction or curvature code.

#![allow(dead_code, clippy::needless_range_loop, clippy::type_complexity)]

use std::collections::BTreeSet;
use std::sync::OnceLock;

use carnot::roots::HodgeGroup;

/// Doubled-coordinate vectors `c ∈ {-m..m}^dim` accepted by `keep`.
pub fn lattice(dim: usize, m: i32, keep: impl Fn(&[i32]) -> bool) -> BTreeSet<Vec<i32>> {
    let mut out = BTreeSet::new();
    let mut c = vec![-m; dim];
    loop {
        if keep(&c) {
            out.insert(c.clone());
        }
        let mut i = 0;
        loop {
            if i == dim {
                return out;
            }
            c[i] += 1;
            if c[i] <= m {
                break;
            }
            c[i] = -m;
            i += 1;
        }
    }
}

fn norm2(c: &[i32]) -> i32 {
    c.iter().map(|x| x * x).sum()
}

fn all_even(c: &[i32]) -> bool {
    c.iter().all(|x| x % 2 == 0)
}

fn all_odd(c: &[i32]) -> bool {
    c.iter().all(|x| x % 2 != 0)
}

/// E8: even or odd doubled vectors of squared length 2 with coordinate sum
/// divisible by 4 (the even-sign-count condition on half-sums).
pub fn e8() -> BTreeSet<Vec<i32>> {
    static E8: OnceLock<BTreeSet<Vec<i32>>> = OnceLock::new();
    E8.get_or_init(|| {
        lattice(8, 2, |c| {
            (all_even(c) || all_odd(c)) && c.iter().sum::<i32>() % 4 == 0 && norm2(c) == 8
        })
    })
    .clone()
}

/// E7 = E8 ∩ (1,…,1)^⊥.
pub fn e7() -> BTreeSet<Vec<i32>> {
    e8().into_iter().filter(|c| c.iter().sum::<i32>() == 0).collect()
}

/// E6 = E7 ∩ (e7 + e8)^⊥.
pub fn e6() -> BTreeSet<Vec<i32>> {
    e7().into_iter().filter(|c| c[6] + c[7] == 0).collect()
}

/// F4: integer vectors of squared length 1 or 2 and half-integer vectors
/// of squared length 1.
pub fn f4() -> BTreeSet<Vec<i32>> {
    lattice(4, 2, |c| {
        (all_even(c) && (norm2(c) == 4 || norm2(c) == 8)) || (all_odd(c) && norm2(c) == 4)
    })
}

pub fn classical(family: char, n: usize) -> BTreeSet<Vec<i32>> {
    match family {
        'A' => lattice(n + 1, 2, |c| {
            all_even(c) && norm2(c) == 8 && c.iter().sum::<i32>() == 0
        }),
        'B' => lattice(n, 2, |c| all_even(c) && (norm2(c) == 4 || norm2(c) == 8)),
        'C' => lattice(n, 4, |c| {
            all_even(c)
                && (norm2(c) == 8 && c.iter().all(|x| x.abs() <= 2)
                    || norm2(c) == 16 && c.iter().filter(|x| **x != 0).count() == 1)
        }),
        'D' => lattice(n, 2, |c| all_even(c) && norm2(c) == 8),
        _ => panic!("unknown family {family}"),
    }
}

/// G2 in the simple-root basis: integer pairs `(a, b)` with
/// `|aα + bβ|² ∈ {1, 3}` for `α = (1, 0)`, `β = (-3/2, √3/2)`.
pub fn g2() -> BTreeSet<Vec<i32>> {
    let s3 = 3f64.sqrt();
    let mut out = BTreeSet::new();
    for a in -4..=4 {
        for b in -4..=4 {
            let (x, y) = (a as f64 - 1.5 * b as f64, 0.5 * s3 * b as f64);
            let n = x * x + y * y;
            if (n - 1.0).abs() < 1e-9 || (n - 3.0).abs() < 1e-9 {
                out.insert(vec![a, b]);
            }
        }
    }
    out
}

/// Compact roots are those pairing evenly with a grading element. `h4` is
/// four times the element in Euclidean coordinates, so that for a doubled
/// root `c` the pairing is `c·h2 / 8`.
pub fn graded_compact(roots: &BTreeSet<Vec<i32>>, h4: &[i32]) -> BTreeSet<Vec<i32>> {
    roots
        .iter()
        .filter(|c| {
            let p: i32 = c.iter().zip(h4).map(|(a, b)| a * b).sum();
            assert_eq!(p % 8, 0, "pairing must be integral");
            (p / 8) % 2 == 0
        })
        .cloned()
        .collect()
}

/// Roots and compact roots of a group, from the lattice enumerations and a
/// grading element. G2 is graded by the parity of the α-coefficient.
pub fn oracle_split(group: HodgeGroup) -> (BTreeSet<Vec<i32>>, BTreeSet<Vec<i32>>) {
    use HodgeGroup::*;
    let block = |n: usize, on: std::ops::Range<usize>, v: i32| -> Vec<i32> {
        (0..n).map(|i| if on.contains(&i) { v } else { 0 }).collect()
    };
    let (roots, h4) = match group {
        SoEven { p, q } => (classical('D', p + q), block(p + q, 0..p, 4)),
        SoOdd { p, q } => (classical('B', p + q), block(p + q, p..p + q, 4)),
        Sp { p, q } => (classical('C', p + q), block(p + q, 0..p, 4)),
        E6_2 => (e6(), block(8, 0..1, 8)),
        E7_7 => (e7(), block(8, 0..1, 8)),
        E7M5 => (e7(), vec![0, 0, 0, 0, 0, 0, 4, -4]),
        E8_8 => (e8(), block(8, 0..1, 8)),
        E8M24 => (e8(), vec![2; 8]),
        F4_4 => (f4(), block(4, 2..4, 4)),
        F4M20 => (f4(), block(4, 0..1, 8)),
        G2_2 => {
            let roots = g2();
            let compact = roots.iter().filter(|c| c[0] % 2 == 0).cloned().collect();
            return (roots, compact);
        }
    };
    let compact = graded_compact(&roots, &h4);
    (roots, compact)
}

// ---------------------------------------------------------------- geometry

/// Heisenberg metric in exponential coordinates, written from the frame
/// `X = ∂x − (y/2)∂t`, `Y = ∂y + (x/2)∂t`, `T = ∂t` being orthonormal: the
/// coframe is `dx, dy, dt + (y/2)dx − (x/2)dy`.
pub fn heis_metric(p: &[f64]) -> [[f64; 3]; 3] {
    let (x, y) = (p[0], p[1]);
    let th = [0.5 * y, -0.5 * x, 1.0];
    let mut g = [[0.0; 3]; 3];
    for a in 0..3 {
        for b in 0..3 {
            g[a][b] = th[a] * th[b] + if a == b && a < 2 { 1.0 } else { 0.0 };
        }
    }
    g
}

pub fn heis_x(p: &[f64]) -> [f64; 3] {
    [1.0, 0.0, -0.5 * p[1]]
}

pub fn heis_y(p: &[f64]) -> [f64; 3] {
    [0.0, 1.0, 0.5 * p[0]]
}

pub fn heis_theta(p: &[f64], v: &[f64]) -> f64 {
    v[2] + 0.5 * p[1] * v[0] - 0.5 * p[0] * v[1]
}

pub fn inv3(m: [[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    let mut r = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (a, b) = ((j + 1) % 3, (j + 2) % 3);
            let (c, d) = ((i + 1) % 3, (i + 2) % 3);
            r[i][j] = (m[a][c] * m[b][d] - m[a][d] * m[b][c]) / det;
        }
    }
    r
}

fn shift(p: &[f64], k: usize, s: f64) -> Vec<f64> {
    let mut q = p.to_vec();
    q[k] += s;
    q
}

/// `Γ^a_bc` from central differences of a metric on ℝ³.
pub fn christoffel_fd(metric: &dyn Fn(&[f64]) -> [[f64; 3]; 3], p: &[f64]) -> [[[f64; 3]; 3]; 3] {
    let h = 1e-3;
    let dg: Vec<[[f64; 3]; 3]> = (0..3)
        .map(|k| {
            let (gp, gm) = (metric(&shift(p, k, h)), metric(&shift(p, k, -h)));
            let mut d = [[0.0; 3]; 3];
            for a in 0..3 {
                for b in 0..3 {
                    d[a][b] = (gp[a][b] - gm[a][b]) / (2.0 * h);
                }
            }
            d
        })
        .collect();
    let gi = inv3(metric(p));
    let mut gam = [[[0.0; 3]; 3]; 3];
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                gam[a][b][c] = 0.5
                    * (0..3)
                        .map(|e| gi[a][e] * (dg[b][e][c] + dg[c][e][b] - dg[e][b][c]))
                        .sum::<f64>();
            }
        }
    }
    gam
}

/// `⟨R(Y,Z)U,V⟩` with `R(Y,Z) = ∇_Y∇_Z − ∇_Z∇_Y − ∇_[Y,Z]`, paired so that
/// `⟨R(Y,Z)Y,Z⟩` is the sectional curvature, from Christoffel symbols
/// differentiated by a five-point stencil.
pub fn riemann4_fd(
    metric: &dyn Fn(&[f64]) -> [[f64; 3]; 3],
    p: &[f64],
    y: &[f64],
    z: &[f64],
    u: &[f64],
    v: &[f64],
) -> f64 {
    let h = 0.1;
    let g0 = christoffel_fd(metric, p);
    let dgam: Vec<[[[f64; 3]; 3]; 3]> = (0..3)
        .map(|k| {
            let s = [-2.0, -1.0, 1.0, 2.0].map(|m| christoffel_fd(metric, &shift(p, k, m * h)));
            let mut d = [[[0.0; 3]; 3]; 3];
            for a in 0..3 {
                for b in 0..3 {
                    for c in 0..3 {
                        d[a][b][c] = (s[0][a][b][c] - 8.0 * s[1][a][b][c] + 8.0 * s[2][a][b][c]
                            - s[3][a][b][c])
                            / (12.0 * h);
                    }
                }
            }
            d
        })
        .collect();
    // R^a_bcd = ∂_c Γ^a_db − ∂_d Γ^a_cb + Γ^a_ce Γ^e_db − Γ^a_de Γ^e_cb
    let r = |a: usize, b: usize, c: usize, d: usize| {
        let mut s = dgam[c][a][d][b] - dgam[d][a][c][b];
        for e in 0..3 {
            s += g0[a][c][e] * g0[e][d][b] - g0[a][d][e] * g0[e][c][b];
        }
        s
    };
    let mut w = [0.0; 3];
    for (a, wa) in w.iter_mut().enumerate() {
        for b in 0..3 {
            for c in 0..3 {
                for d in 0..3 {
                    *wa += r(a, b, c, d) * v[b] * y[c] * z[d];
                }
            }
        }
    }
    let g = metric(p);
    (0..3)
        .flat_map(|a| (0..3).map(move |b| (a, b)))
        .map(|(a, b)| g[a][b] * w[a] * u[b])
        .sum()
}

/// Lie bracket of the vector fields `p ↦ F(p)·cy` and `p ↦ F(p)·cz`, by
/// central differences of their chart components; exact up to rounding for
/// fields affine in the chart.
pub fn fd_bracket(
    field: &dyn Fn(&[f64], &[f64]) -> Vec<f64>,
    p: &[f64],
    cy: &[f64],
    cz: &[f64],
) -> Vec<f64> {
    let h = 1e-3;
    let d = p.len();
    let y = field(p, cy);
    let z = field(p, cz);
    let dir = |w: &[f64], c: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; d];
        for k in 0..d {
            let fp = field(&shift(p, k, h), c);
            let fm = field(&shift(p, k, -h), c);
            for a in 0..d {
                out[a] += w[k] * (fp[a] - fm[a]) / (2.0 * h);
            }
        }
        out
    };
    let yz = dir(&y, cz);
    let zy = dir(&z, cy);
    yz.iter().zip(&zy).map(|(a, b)| a - b).collect()
}

// -------------------------------------------------------------- sl(2, R)

type M2 = [[f64; 2]; 2];

fn mm(a: M2, b: M2) -> M2 {
    let mut r = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    r
}

/// Coefficients of a traceless 2×2 matrix on `h = ½diag(1,−1)`,
/// `s = ½(E12 + E21)`, `k = ½(E12 − E21)`.
fn coeffs(m: M2) -> [f64; 3] {
    [2.0 * m[0][0], m[0][1] + m[1][0], m[0][1] - m[1][0]]
}

fn matrix(c: &[f64]) -> M2 {
    [
        [0.5 * c[0], 0.5 * (c[1] + c[2])],
        [0.5 * (c[1] - c[2]), -0.5 * c[0]],
    ]
}

/// Matrix commutator in `(h, s, k)` coefficients.
pub fn sl2_bracket(y: &[f64], z: &[f64]) -> [f64; 3] {
    let (a, b) = (matrix(y), matrix(z));
    let (p, q) = (mm(a, b), mm(b, a));
    coeffs([[p[0][0] - q[0][0], p[0][1] - q[0][1]], [p[1][0] - q[1][0], p[1][1] - q[1][1]]])
}

fn dot3(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Levi-Civita connection of the left-invariant metric with `(h, s, k)`
/// orthonormal, by the Koszul formula.
pub fn koszul(y: &[f64], z: &[f64]) -> [f64; 3] {
    let mut out = [0.0; 3];
    for (i, o) in out.iter_mut().enumerate() {
        let mut w = [0.0; 3];
        w[i] = 1.0;
        *o = 0.5
            * (dot3(&sl2_bracket(y, z), &w) - dot3(&sl2_bracket(z, &w), y)
                + dot3(&sl2_bracket(&w, y), z));
    }
    out
}

/// `⟨R(Y,Z)Z,Y⟩` for left-invariant fields with the Koszul connection.
pub fn koszul_sectional(y: &[f64], z: &[f64]) -> f64 {
    let nz = koszul(z, z);
    let a = koszul(y, &nz);
    let yz = koszul(y, z);
    let b = koszul(z, &yz);
    let c = koszul(&sl2_bracket(y, z), z);
    let r: Vec<f64> = (0..3).map(|i| a[i] - b[i] - c[i]).collect();
    let area = dot3(y, y) * dot3(z, z) - dot3(y, z).powi(2);
    dot3(&r, y) / area
}

// ------------------------------------------------------ manufactured map

/// A closed test curve in the Heisenberg chart with its first and second
/// derivatives: `(x, y, t)` and `d/ds`, `d²/ds²`.
pub fn test_curve(s: f64) -> [[f64; 3]; 3] {
    let x = [
        s.sin() + 0.3 * (2.0 * s).cos(),
        s.cos() - 0.6 * (2.0 * s).sin(),
        -s.sin() - 1.2 * (2.0 * s).cos(),
    ];
    let y = [
        0.5 * s.cos() + 0.2 * (3.0 * s).sin(),
        -0.5 * s.sin() + 0.6 * (3.0 * s).cos(),
        -0.5 * s.cos() - 1.8 * (3.0 * s).sin(),
    ];
    let t = [
        0.4 * s.sin() + 0.1 * (2.0 * s).cos(),
        0.4 * s.cos() - 0.2 * (2.0 * s).sin(),
        -0.4 * s.sin() - 0.4 * (2.0 * s).cos(),
    ];
    [
        [x[0], y[0], t[0]],
        [x[1], y[1], t[1]],
        [x[2], y[2], t[2]],
    ]
}

/// Tension of a curve in the Heisenberg group from its frame components:
/// with `a = x′`, `b = y′`, `c = θ(u′)`,
/// `τ = (a′ + bc)X + (b′ − ac)Y + c′T`.
pub fn heis_curve_tension(u: [f64; 3], du: [f64; 3], ddu: [f64; 3]) -> [f64; 3] {
    let (x, y) = (u[0], u[1]);
    let (a, b) = (du[0], du[1]);
    let c = du[2] + 0.5 * (y * du[0] - x * du[1]);
    let (da, db) = (ddu[0], ddu[1]);
    // c′ = t″ + ½(y x″ − x y″); the y′x′ terms cancel
    let dc = ddu[2] + 0.5 * (y * ddu[0] - x * ddu[1]);
    let tx = da + b * c;
    let ty = db - a * c;
    [tx, ty, -0.5 * y * tx + 0.5 * x * ty + dc]
}

/// Least-squares slope of `log err` against `log h`.
pub fn fitted_order(hs: &[f64], errs: &[f64]) -> f64 {
    let xs: Vec<f64> = hs.iter().map(|h| h.ln()).collect();
    let ys: Vec<f64> = errs.iter().map(|e| e.ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    num / den
}
