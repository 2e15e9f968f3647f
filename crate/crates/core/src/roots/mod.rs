//! Root systems with exact integer arithmetic.
//!
//! Every root except those of G2 is stored with doubled Euclidean
//! coordinates, so the half-integer roots of E and F become odd integers and
//! no floating-point comparison is ever needed. G2 is stored in the basis of
//! its two simple roots `α = e1`, `β = -3/2 e1 + √3/2 e2`.

mod hodge;
mod verify;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::{Error, Result};

pub use hodge::{e7_m5_d6_block, split_roots, CompactSplit, HodgeGroup, RootClass};
pub use verify::{
    count_report, verify_all, verify_bracket_consistency, verify_prop2, write_tsv, CountRow,
    GroupWitnesses, Prop2Report, Witness, TSV_HEADER,
};

/// Coordinate convention of a [`RootVector`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    /// Stored value is twice the Euclidean coordinate.
    EuclideanDoubled,
    /// `(a, b)` stands for `aα + bβ`.
    G2Simple,
}

/// A root as an integer vector. Ordering is lexicographic on the coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootVector {
    coords: Vec<i32>,
    basis: Basis,
}

impl RootVector {
    pub fn new(coords: Vec<i32>, basis: Basis) -> Result<Self> {
        if coords.iter().all(|&c| c == 0) {
            return Err(Error::UnsupportedRootSystem {
                label: "root".into(),
                reason: "the zero vector is not a root".into(),
            });
        }
        Ok(RootVector { coords, basis })
    }

    /// Builds a root from Euclidean coordinates already multiplied by two.
    pub(crate) fn doubled(coords: Vec<i32>) -> Self {
        debug_assert!(coords.iter().any(|&c| c != 0));
        RootVector {
            coords,
            basis: Basis::EuclideanDoubled,
        }
    }

    pub(crate) fn g2(a: i32, b: i32) -> Self {
        debug_assert!(a != 0 || b != 0);
        RootVector {
            coords: vec![a, b],
            basis: Basis::G2Simple,
        }
    }

    pub fn coords(&self) -> &[i32] {
        &self.coords
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn neg(&self) -> RootVector {
        RootVector {
            coords: self.coords.iter().map(|c| -c).collect(),
            basis: self.basis,
        }
    }

    /// Componentwise sum; `None` when the sum is the zero vector.
    pub fn checked_add(&self, other: &RootVector) -> Option<RootVector> {
        debug_assert_eq!(self.basis, other.basis);
        let coords: Vec<i32> = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        if coords.iter().all(|&c| c == 0) {
            None
        } else {
            Some(RootVector {
                coords,
                basis: self.basis,
            })
        }
    }

    pub fn sub(&self, other: &RootVector) -> Option<RootVector> {
        self.checked_add(&other.neg())
    }

    /// Squared length in doubled units (4× the Euclidean squared length).
    /// Only meaningful for [`Basis::EuclideanDoubled`].
    pub fn norm2_doubled(&self) -> i32 {
        self.coords.iter().map(|c| c * c).sum()
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.basis {
            Basis::G2Simple => write!(f, "{}a{:+}b", self.coords[0], self.coords[1]),
            Basis::EuclideanDoubled => {
                write!(f, "(")?;
                for (i, c) in self.coords.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    if c % 2 == 0 {
                        write!(f, "{}", c / 2)?;
                    } else {
                        write!(f, "{}/2", c)?;
                    }
                }
                write!(f, ")")
            }
        }
    }
}

impl Serialize for RootVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}

/// Cartan family letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        Some(match s.trim().to_ascii_uppercase().as_str() {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "E" => Family::E,
            "F" => Family::F,
            "G" => Family::G,
            _ => return None,
        })
    }
}

/// Largest rank accepted for the classical families.
pub const MAX_CLASSICAL_RANK: usize = 12;

/// A validated Cartan type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<CartanType> {
        let reject = |reason: String| {
            Err(Error::UnsupportedRootSystem {
                label: format!("{family:?}{rank}"),
                reason,
            })
        };
        let classical = |min: usize| -> std::result::Result<(), String> {
            if rank < min || rank > MAX_CLASSICAL_RANK {
                Err(format!(
                    "classical rank must lie in {min}..={MAX_CLASSICAL_RANK}"
                ))
            } else {
                Ok(())
            }
        };
        let ty = match family {
            Family::A => classical(1).map(|_| CartanType::A(rank)),
            Family::B => classical(1).map(|_| CartanType::B(rank)),
            Family::C => classical(1).map(|_| CartanType::C(rank)),
            // D1 has no roots
            Family::D => classical(2).map(|_| CartanType::D(rank)),
            Family::E => match rank {
                6 => Ok(CartanType::E6),
                7 => Ok(CartanType::E7),
                8 => Ok(CartanType::E8),
                _ => Err("E exists only in ranks 6, 7, 8".to_string()),
            },
            Family::F if rank == 4 => Ok(CartanType::F4),
            Family::F => Err("F exists only in rank 4".to_string()),
            Family::G if rank == 2 => Ok(CartanType::G2),
            Family::G => Err("G exists only in rank 2".to_string()),
        };
        ty.or_else(reject)
    }

    pub fn rank(self) -> usize {
        match self {
            CartanType::A(n) | CartanType::B(n) | CartanType::C(n) | CartanType::D(n) => n,
            CartanType::E6 => 6,
            CartanType::E7 => 7,
            CartanType::E8 => 8,
            CartanType::F4 => 4,
            CartanType::G2 => 2,
        }
    }

    /// Dimension of the coordinate space the roots live in.
    pub fn ambient_dim(self) -> usize {
        match self {
            CartanType::A(n) => n + 1,
            CartanType::B(n) | CartanType::C(n) | CartanType::D(n) => n,
            CartanType::E6 | CartanType::E7 | CartanType::E8 => 8,
            CartanType::F4 => 4,
            CartanType::G2 => 2,
        }
    }

    /// Number of roots.
    pub fn expected_count(self) -> usize {
        match self {
            CartanType::A(n) => n * (n + 1),
            CartanType::B(n) | CartanType::C(n) => 2 * n * n,
            CartanType::D(n) => 2 * n * (n - 1),
            CartanType::E6 => 72,
            CartanType::E7 => 126,
            CartanType::E8 => 240,
            CartanType::F4 => 48,
            CartanType::G2 => 12,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::B(n) => write!(f, "B{n}"),
            CartanType::C(n) => write!(f, "C{n}"),
            CartanType::D(n) => write!(f, "D{n}"),
            CartanType::E6 => write!(f, "E6"),
            CartanType::E7 => write!(f, "E7"),
            CartanType::E8 => write!(f, "E8"),
            CartanType::F4 => write!(f, "F4"),
            CartanType::G2 => write!(f, "G2"),
        }
    }
}

/// A finite, sorted, duplicate-free set of roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    ty: CartanType,
    roots: Vec<RootVector>,
}

impl RootSystem {
    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ty.ambient_dim()
    }

    /// Roots in lexicographic order.
    pub fn roots(&self) -> &[RootVector] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, r: &RootVector) -> bool {
        self.roots.binary_search(r).is_ok()
    }

    pub fn position(&self, r: &RootVector) -> Option<usize> {
        self.roots.binary_search(r).ok()
    }
}

/// Builds the root system of the given family and rank in canonical order.
pub fn build_root_system(family: Family, rank: usize) -> Result<RootSystem> {
    let ty = CartanType::new(family, rank)?;
    Ok(build(ty))
}

pub(crate) fn build(ty: CartanType) -> RootSystem {
    let roots = match ty {
        CartanType::A(n) => type_a(n + 1, 0..n + 1),
        CartanType::B(n) => {
            let mut r = pm_pairs(n, 0..n);
            r.extend(pm_units(n, 0..n, 2));
            r
        }
        CartanType::C(n) => {
            let mut r = pm_pairs(n, 0..n);
            r.extend(pm_units(n, 0..n, 4));
            r
        }
        CartanType::D(n) => pm_pairs(n, 0..n),
        CartanType::E6 => e6_roots(),
        CartanType::E7 => e7_roots(),
        CartanType::E8 => e8_roots(),
        CartanType::F4 => {
            let mut r = pm_pairs(4, 0..4);
            r.extend(pm_units(4, 0..4, 2));
            r.extend(sign_vectors(4, |_| true));
            r
        }
        CartanType::G2 => [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)]
            .iter()
            .flat_map(|&(a, b)| [RootVector::g2(a, b), RootVector::g2(-a, -b)])
            .collect(),
    };
    RootSystem {
        ty,
        roots: canonical(roots),
    }
}

pub(crate) fn canonical(mut roots: Vec<RootVector>) -> Vec<RootVector> {
    roots.sort();
    roots.dedup();
    roots
}

/// `e_i - e_j` for distinct `i, j` in `idx`.
pub(crate) fn type_a(dim: usize, idx: std::ops::Range<usize>) -> Vec<RootVector> {
    let mut out = Vec::new();
    for i in idx.clone() {
        for j in idx.clone() {
            if i != j {
                let mut c = vec![0; dim];
                c[i] = 2;
                c[j] = -2;
                out.push(RootVector::doubled(c));
            }
        }
    }
    out
}

/// `±e_i ± e_j` for `i < j` in `idx`.
pub(crate) fn pm_pairs(dim: usize, idx: std::ops::Range<usize>) -> Vec<RootVector> {
    let mut out = Vec::new();
    for i in idx.clone() {
        for j in (i + 1)..idx.end {
            for (si, sj) in [(2, 2), (2, -2), (-2, 2), (-2, -2)] {
                let mut c = vec![0; dim];
                c[i] = si;
                c[j] = sj;
                out.push(RootVector::doubled(c));
            }
        }
    }
    out
}

/// `±(scale/2) e_i` for `i` in `idx` (scale 2 gives `±e_i`, 4 gives `±2e_i`).
pub(crate) fn pm_units(dim: usize, idx: std::ops::Range<usize>, scale: i32) -> Vec<RootVector> {
    idx.flat_map(|i| {
        [scale, -scale].map(|s| {
            let mut c = vec![0; dim];
            c[i] = s;
            RootVector::doubled(c)
        })
    })
    .collect()
}

/// All `½(±1, …, ±1)` in `dim` coordinates accepted by `keep`.
pub(crate) fn sign_vectors(dim: usize, keep: impl Fn(&[i32]) -> bool) -> Vec<RootVector> {
    (0u32..(1 << dim))
        .map(|mask| {
            (0..dim)
                .map(|i| if mask & (1 << i) != 0 { -1 } else { 1 })
                .collect::<Vec<i32>>()
        })
        .filter(|c| keep(c))
        .map(RootVector::doubled)
        .collect()
}

fn count_positive(c: &[i32]) -> usize {
    c.iter().filter(|&&x| x > 0).count()
}

/// `½ Σ ±e_i` over 8 coordinates with four plus and four minus signs.
pub(crate) fn half_four_four() -> Vec<RootVector> {
    sign_vectors(8, |c| count_positive(c) == 4)
}

fn e6_roots() -> Vec<RootVector> {
    let mut r = type_a(8, 0..6);
    r.extend(e7_minus_e8());
    // three plus and three minus among e1..e6, then ±(e7 - e8)
    r.extend(sign_vectors(8, |c| {
        count_positive(&c[..6]) == 3 && c[6] == -c[7]
    }));
    r
}

/// `±(e7 - e8)`.
pub(crate) fn e7_minus_e8() -> Vec<RootVector> {
    let mut p = vec![0; 8];
    p[6] = 2;
    p[7] = -2;
    let v = RootVector::doubled(p);
    vec![v.neg(), v]
}

fn e7_roots() -> Vec<RootVector> {
    let mut r = type_a(8, 0..8);
    r.extend(half_four_four());
    r
}

fn e8_roots() -> Vec<RootVector> {
    let mut r = pm_pairs(8, 0..8);
    // even number of minus signs
    r.extend(sign_vectors(8, |c| (8 - count_positive(c)).is_multiple_of(2)));
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g2_matches_listed_roots() {
        let g2 = build_root_system(Family::G, 2).unwrap();
        assert_eq!(g2.len(), 12);
        for (a, b) in [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)] {
            assert!(g2.contains(&RootVector::g2(a, b)));
            assert!(g2.contains(&RootVector::g2(-a, -b)));
        }
    }

    #[test]
    fn a1_is_a_single_pair() {
        let a1 = build_root_system(Family::A, 1).unwrap();
        assert_eq!(
            a1.roots(),
            &[
                RootVector::doubled(vec![-2, 2]),
                RootVector::doubled(vec![2, -2])
            ]
        );
    }

    #[test]
    fn d6_has_sixty_roots() {
        assert_eq!(build_root_system(Family::D, 6).unwrap().len(), 60);
    }

    #[test]
    fn e8_splits_into_integer_and_half_integer_roots() {
        let e8 = build_root_system(Family::E, 8).unwrap();
        assert_eq!(e8.len(), 240);
        let half = e8
            .roots()
            .iter()
            .filter(|r| r.coords().iter().all(|c| c % 2 != 0))
            .count();
        assert_eq!(half, 128);
        assert_eq!(e8.len() - half, 112);
    }

    #[test]
    fn rejects_out_of_range() {
        for (fam, rank) in [
            (Family::A, 0),
            (Family::B, 13),
            (Family::D, 1),
            (Family::E, 5),
            (Family::F, 3),
            (Family::G, 3),
        ] {
            let err = build_root_system(fam, rank).unwrap_err();
            assert!(matches!(err, Error::UnsupportedRootSystem { .. }), "{err}");
        }
    }

    #[test]
    fn zero_vector_rejected() {
        assert!(RootVector::new(vec![0, 0, 0], Basis::EuclideanDoubled).is_err());
    }

    #[test]
    fn canonical_order_is_lexicographic() {
        let b3 = build_root_system(Family::B, 3).unwrap();
        assert!(b3.roots().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn display_halves() {
        let r = RootVector::doubled(vec![1, -1, 2, 0]);
        assert_eq!(r.to_string(), "(1/2,-1/2,1,0)");
        assert_eq!(RootVector::g2(3, 2).to_string(), "3a+2b");
    }
}
