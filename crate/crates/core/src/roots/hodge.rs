//! The ten groups of Hodge type that are not of Hermitian type, and the
//! compact/noncompact splitting of their complex root systems.
//!
//! For each group the compact set Δ(k) is the root system of the maximal
//! compact subgroup, embedded exactly as listed in the classification; the
//! noncompact set Δ(p) is its complement.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{
    build, canonical, e7_minus_e8, half_four_four, pm_pairs, pm_units, sign_vectors, type_a,
    CartanType, RootSystem, RootVector, MAX_CLASSICAL_RANK,
};
use crate::{Error, Result};

/// One of the ten groups; the SO family is split by parity of the first
/// block, giving eleven variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HodgeGroup {
    /// SO(2p, 2q)
    SoEven { p: usize, q: usize },
    /// SO(2p+1, 2q)
    SoOdd { p: usize, q: usize },
    /// Sp(p, q)
    Sp { p: usize, q: usize },
    E6_2,
    E7_7,
    E7M5,
    E8_8,
    E8M24,
    F4_4,
    F4M20,
    G2_2,
}

impl HodgeGroup {
    /// The default table: SO cases at p = q = 2, then the listing order.
    pub fn default_list() -> Vec<HodgeGroup> {
        vec![
            HodgeGroup::SoEven { p: 2, q: 2 },
            HodgeGroup::SoOdd { p: 2, q: 2 },
            HodgeGroup::Sp { p: 2, q: 2 },
            HodgeGroup::E6_2,
            HodgeGroup::E7_7,
            HodgeGroup::E7M5,
            HodgeGroup::E8_8,
            HodgeGroup::E8M24,
            HodgeGroup::F4_4,
            HodgeGroup::F4M20,
            HodgeGroup::G2_2,
        ]
    }

    /// Builds a group from its command-line id (`so_even`, `g2_2`, …).
    /// `p`/`q` are required for the classical families and ignored otherwise.
    pub fn from_id(id: &str, p: Option<usize>, q: Option<usize>) -> Result<HodgeGroup> {
        let need = |v: Option<usize>, name: &str| {
            v.ok_or_else(|| Error::InvalidGroup {
                group: id.to_string(),
                reason: format!("parameter {name} is required"),
            })
        };
        let g = match id.to_ascii_lowercase().as_str() {
            "so_even" => HodgeGroup::SoEven {
                p: need(p, "p")?,
                q: need(q, "q")?,
            },
            "so_odd" => HodgeGroup::SoOdd {
                p: need(p, "p")?,
                q: need(q, "q")?,
            },
            "sp" => HodgeGroup::Sp {
                p: need(p, "p")?,
                q: need(q, "q")?,
            },
            other => other.parse()?,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn id(&self) -> &'static str {
        match self {
            HodgeGroup::SoEven { .. } => "so_even",
            HodgeGroup::SoOdd { .. } => "so_odd",
            HodgeGroup::Sp { .. } => "sp",
            HodgeGroup::E6_2 => "e6_2",
            HodgeGroup::E7_7 => "e7_7",
            HodgeGroup::E7M5 => "e7_m5",
            HodgeGroup::E8_8 => "e8_8",
            HodgeGroup::E8M24 => "e8_m24",
            HodgeGroup::F4_4 => "f4_4",
            HodgeGroup::F4M20 => "f4_m20",
            HodgeGroup::G2_2 => "g2_2",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |reason: &str| {
            Err(Error::InvalidGroup {
                group: self.to_string(),
                reason: reason.to_string(),
            })
        };
        match *self {
            HodgeGroup::SoEven { p, q } | HodgeGroup::SoOdd { p, q } => {
                if p < 1 {
                    return bad("p must be at least 1");
                }
                if q < 2 {
                    return bad("q must be at least 2");
                }
                if p + q > MAX_CLASSICAL_RANK {
                    return bad("p + q must not exceed 12");
                }
            }
            HodgeGroup::Sp { p, q } => {
                if p < 1 || q < 1 {
                    return bad("p and q must be at least 1");
                }
                if p + q > MAX_CLASSICAL_RANK {
                    return bad("p + q must not exceed 12");
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// True for parameter choices accepted here but outside the case
    /// analysis of the classification list, which assumes p ≥ 2 for SO.
    pub fn outside_listed_analysis(&self) -> bool {
        matches!(
            self,
            HodgeGroup::SoEven { p: 1, .. } | HodgeGroup::SoOdd { p: 1, .. }
        )
    }

    pub fn cartan_type(&self) -> CartanType {
        match *self {
            HodgeGroup::SoEven { p, q } => CartanType::D(p + q),
            HodgeGroup::SoOdd { p, q } => CartanType::B(p + q),
            HodgeGroup::Sp { p, q } => CartanType::C(p + q),
            HodgeGroup::E6_2 => CartanType::E6,
            HodgeGroup::E7_7 | HodgeGroup::E7M5 => CartanType::E7,
            HodgeGroup::E8_8 | HodgeGroup::E8M24 => CartanType::E8,
            HodgeGroup::F4_4 | HodgeGroup::F4M20 => CartanType::F4,
            HodgeGroup::G2_2 => CartanType::G2,
        }
    }

    /// dim G − dim K, which equals the number of noncompact roots.
    pub fn noncompact_dimension(&self) -> usize {
        match *self {
            HodgeGroup::SoEven { p, q } => 4 * p * q,
            HodgeGroup::SoOdd { p, q } => 4 * p * q + 2 * q,
            HodgeGroup::Sp { p, q } => 4 * p * q,
            HodgeGroup::E6_2 => 40,
            HodgeGroup::E7_7 => 70,
            HodgeGroup::E7M5 => 64,
            HodgeGroup::E8_8 => 128,
            HodgeGroup::E8M24 => 112,
            HodgeGroup::F4_4 => 28,
            HodgeGroup::F4M20 => 16,
            HodgeGroup::G2_2 => 8,
        }
    }
}

impl fmt::Display for HodgeGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            HodgeGroup::SoEven { p, q } => write!(f, "SO({},{})", 2 * p, 2 * q),
            HodgeGroup::SoOdd { p, q } => write!(f, "SO({},{})", 2 * p + 1, 2 * q),
            HodgeGroup::Sp { p, q } => write!(f, "Sp({p},{q})"),
            HodgeGroup::E6_2 => f.write_str("e6(2)"),
            HodgeGroup::E7_7 => f.write_str("e7(7)"),
            HodgeGroup::E7M5 => f.write_str("e7(-5)"),
            HodgeGroup::E8_8 => f.write_str("e8(8)"),
            HodgeGroup::E8M24 => f.write_str("e8(-24)"),
            HodgeGroup::F4_4 => f.write_str("f4(4)"),
            HodgeGroup::F4M20 => f.write_str("f4(-20)"),
            HodgeGroup::G2_2 => f.write_str("g2(2)"),
        }
    }
}

impl FromStr for HodgeGroup {
    type Err = Error;

    /// Parses the exceptional ids; the classical ids need `p`, `q` and go
    /// through [`HodgeGroup::from_id`].
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "e6_2" => HodgeGroup::E6_2,
            "e7_7" => HodgeGroup::E7_7,
            "e7_m5" => HodgeGroup::E7M5,
            "e8_8" => HodgeGroup::E8_8,
            "e8_m24" => HodgeGroup::E8M24,
            "f4_4" => HodgeGroup::F4_4,
            "f4_m20" => HodgeGroup::F4M20,
            "g2_2" => HodgeGroup::G2_2,
            other => {
                return Err(Error::InvalidGroup {
                    group: other.to_string(),
                    reason: "unknown group id".into(),
                })
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RootClass {
    Compact,
    Noncompact,
}

/// Partition of a root system into compact and noncompact roots.
#[derive(Debug, Clone)]
pub struct CompactSplit {
    group: HodgeGroup,
    system: RootSystem,
    compact: Vec<RootVector>,
    noncompact: Vec<RootVector>,
}

impl CompactSplit {
    /// Builds a split from an explicit compact set. Every compact root must
    /// belong to the system; the noncompact set is the complement.
    pub fn from_compact(
        group: HodgeGroup,
        system: RootSystem,
        compact: Vec<RootVector>,
    ) -> Result<Self> {
        let compact = canonical(compact);
        if let Some(stray) = compact.iter().find(|r| !system.contains(r)) {
            return Err(Error::InvalidGroup {
                group: group.to_string(),
                reason: format!("compact root {stray} is not in {}", system.cartan_type()),
            });
        }
        let noncompact = system
            .roots()
            .iter()
            .filter(|r| compact.binary_search(r).is_err())
            .cloned()
            .collect();
        Ok(CompactSplit {
            group,
            system,
            compact,
            noncompact,
        })
    }

    pub fn group(&self) -> HodgeGroup {
        self.group
    }

    pub fn system(&self) -> &RootSystem {
        &self.system
    }

    pub fn compact(&self) -> &[RootVector] {
        &self.compact
    }

    pub fn noncompact(&self) -> &[RootVector] {
        &self.noncompact
    }

    pub fn class_of(&self, r: &RootVector) -> Option<RootClass> {
        if self.compact.binary_search(r).is_ok() {
            Some(RootClass::Compact)
        } else if self.noncompact.binary_search(r).is_ok() {
            Some(RootClass::Noncompact)
        } else {
            None
        }
    }

    /// Moves one root (and nothing else) across the partition. Used to seed
    /// faults in the consistency checker.
    pub fn with_root_moved(&self, r: &RootVector) -> CompactSplit {
        let mut out = self.clone();
        if let Ok(i) = out.compact.binary_search(r) {
            let v = out.compact.remove(i);
            let j = out.noncompact.binary_search(&v).unwrap_err();
            out.noncompact.insert(j, v);
        } else if let Ok(i) = out.noncompact.binary_search(r) {
            let v = out.noncompact.remove(i);
            let j = out.compact.binary_search(&v).unwrap_err();
            out.compact.insert(j, v);
        }
        out
    }

    /// Both parts closed under negation and the parts partition the system.
    pub fn is_well_formed(&self) -> bool {
        let closed = |set: &[RootVector]| set.iter().all(|r| set.binary_search(&r.neg()).is_ok());
        self.compact.len() + self.noncompact.len() == self.system.len()
            && self.compact.iter().all(|r| self.noncompact.binary_search(r).is_err())
            && self
                .system
                .roots()
                .iter()
                .all(|r| self.class_of(r).is_some())
            && closed(&self.compact)
            && closed(&self.noncompact)
    }
}

/// The sixty-root D6 block of the e7(−5) compact set: `e_i − e_j` on the
/// first six coordinates together with `±½(four plus, two minus among
/// e1..e6, −e7 − e8)`.
pub fn e7_m5_d6_block() -> Vec<RootVector> {
    let mut r = type_a(8, 0..6);
    r.extend(sign_vectors(8, |c| {
        let pos = c[..6].iter().filter(|&&x| x > 0).count();
        // the listed vector has (-,-) on e7,e8; its negative has (+,+)
        (pos == 4 && c[6] < 0 && c[7] < 0) || (pos == 2 && c[6] > 0 && c[7] > 0)
    }));
    canonical(r)
}

/// Splits the root system of `group` into compact and noncompact roots.
pub fn split_roots(group: HodgeGroup) -> Result<CompactSplit> {
    group.validate()?;
    let ty = group.cartan_type();
    let system = build(ty);
    let dim = ty.ambient_dim();
    let compact = match group {
        HodgeGroup::SoEven { p, q } => {
            // D_p + D_q
            let mut c = pm_pairs(dim, 0..p);
            c.extend(pm_pairs(dim, p..p + q));
            c
        }
        HodgeGroup::SoOdd { p, q } => {
            // B_p + D_q
            let mut c = pm_pairs(dim, 0..p);
            c.extend(pm_units(dim, 0..p, 2));
            c.extend(pm_pairs(dim, p..p + q));
            c
        }
        HodgeGroup::Sp { p, q } => {
            // C_p + C_q
            let mut c = Vec::new();
            for block in [0..p, p..p + q] {
                c.extend(pm_pairs(dim, block.clone()));
                c.extend(pm_units(dim, block, 4));
            }
            c
        }
        HodgeGroup::E6_2 => {
            // A5 + A1
            let mut c = type_a(8, 0..6);
            c.extend(e7_minus_e8());
            c
        }
        HodgeGroup::E7_7 => type_a(8, 0..8),
        HodgeGroup::E7M5 => {
            // D6 + A1
            let mut c = e7_m5_d6_block();
            c.extend(e7_minus_e8());
            c
        }
        HodgeGroup::E8_8 => pm_pairs(8, 0..8),
        HodgeGroup::E8M24 => {
            // E7 + A1
            let mut c = type_a(8, 0..8);
            c.extend(half_four_four());
            c.extend(sign_vectors(8, |s| s.iter().all(|&x| x == s[0])));
            c
        }
        HodgeGroup::F4_4 => f4_4_compact(),
        HodgeGroup::F4M20 => {
            // B4
            let mut c = pm_pairs(4, 0..4);
            c.extend(pm_units(4, 0..4, 2));
            c
        }
        HodgeGroup::G2_2 => vec![
            RootVector::g2(0, 1),
            RootVector::g2(0, -1),
            RootVector::g2(2, 1),
            RootVector::g2(-2, -1),
        ],
    };
    CompactSplit::from_compact(group, system, compact)
}

/// C3 + A1 inside F4, written through `f1 = ½(e1−e2)`, `f2 = ½(e1+e2)`,
/// `f3 = ½(e3−e4)`: `{±2f_i, ±f_i±f_j} ∪ {±(e3+e4)}`.
fn f4_4_compact() -> Vec<RootVector> {
    // f_i in doubled coordinates
    let f = [[1, -1, 0, 0], [1, 1, 0, 0], [0, 0, 1, -1]];
    let mut c = Vec::new();
    for fi in &f {
        for s in [2, -2] {
            c.push(RootVector::doubled(fi.iter().map(|x| s * x).collect()));
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let v: Vec<i32> = (0..4).map(|k| si * f[i][k] + sj * f[j][k]).collect();
                c.push(RootVector::doubled(v));
            }
        }
    }
    c.push(RootVector::doubled(vec![0, 0, 2, 2]));
    c.push(RootVector::doubled(vec![0, 0, -2, -2]));
    c
}
