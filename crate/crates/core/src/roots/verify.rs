//! Exhaustive checks on a [`CompactSplit`]: every compact root is a sum of
//! two noncompact roots, and root sums respect the k/p bracket relations.

use std::io::Write;

use serde::Serialize;

use super::{split_roots, CompactSplit, HodgeGroup, RootClass, RootVector};
use crate::{Exec, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub root: RootVector,
    pub beta: RootVector,
    pub gamma: RootVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prop2Report {
    pub witnesses: Vec<Witness>,
    pub counterexamples: Vec<RootVector>,
}

impl Prop2Report {
    pub fn success(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// For every compact root `α` finds the lexicographically least pair of
/// noncompact roots `(β, γ)` with `β + γ = α`, or records `α` as a
/// counterexample.
pub fn verify_prop2(split: &CompactSplit) -> Prop2Report {
    let nc = split.noncompact();
    let mut witnesses = Vec::with_capacity(split.compact().len());
    let mut counterexamples = Vec::new();
    for alpha in split.compact() {
        // nc is sorted, so the first hit has the least β and γ is forced
        let found = nc.iter().find_map(|beta| {
            let gamma = alpha.sub(beta)?;
            nc.binary_search(&gamma).ok().map(|_| (beta.clone(), gamma))
        });
        match found {
            Some((beta, gamma)) => witnesses.push(Witness {
                root: alpha.clone(),
                beta,
                gamma,
            }),
            None => counterexamples.push(alpha.clone()),
        }
    }
    Prop2Report {
        witnesses,
        counterexamples,
    }
}

/// Checks `[k,k] ⊂ k`, `[k,p] ⊂ p`, `[p,p] ⊂ k` at the level of roots: for
/// every ordered pair whose sum is a root, the class of the sum must match.
pub fn verify_bracket_consistency(split: &CompactSplit) -> bool {
    let roots = split.system().roots();
    let classes: Vec<RootClass> = match roots.iter().map(|r| split.class_of(r)).collect() {
        Some(c) => c,
        None => return false,
    };
    for (i, a) in roots.iter().enumerate() {
        for (j, b) in roots.iter().enumerate() {
            let Some(sum) = a.checked_add(b) else { continue };
            let Some(k) = split.system().position(&sum) else { continue };
            let expected = if classes[i] == classes[j] {
                RootClass::Compact
            } else {
                RootClass::Noncompact
            };
            if classes[k] != expected {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub group: String,
    pub total: usize,
    pub compact: usize,
    pub noncompact: usize,
    pub prop2: bool,
    pub consistency: bool,
}

impl CountRow {
    pub fn passed(&self) -> bool {
        self.prop2 && self.consistency
    }

    pub fn tsv_line(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.group, self.total, self.compact, self.noncompact, self.prop2, self.consistency
        )
    }
}

/// Witnesses for one group, as written to the witness JSON file.
#[derive(Debug, Clone, Serialize)]
pub struct GroupWitnesses {
    pub group: String,
    pub success: bool,
    pub witnesses: Vec<Witness>,
    pub counterexamples: Vec<RootVector>,
}

pub const TSV_HEADER: &str = "group\ttotal\tcompact\tnoncompact\tprop2\tconsistency";

pub fn count_report(group: HodgeGroup) -> Result<CountRow> {
    Ok(row_and_witnesses(group)?.0)
}

fn row_and_witnesses(group: HodgeGroup) -> Result<(CountRow, GroupWitnesses)> {
    let split = split_roots(group)?;
    let prop2 = verify_prop2(&split);
    let row = CountRow {
        group: group.to_string(),
        total: split.system().len(),
        compact: split.compact().len(),
        noncompact: split.noncompact().len(),
        prop2: prop2.success(),
        consistency: split.is_well_formed() && verify_bracket_consistency(&split),
    };
    let w = GroupWitnesses {
        group: group.to_string(),
        success: prop2.success(),
        witnesses: prop2.witnesses,
        counterexamples: prop2.counterexamples,
    };
    Ok((row, w))
}

/// Verifies every group, in the given order, possibly in parallel.
pub fn verify_all(
    groups: &[HodgeGroup],
    exec: Exec,
) -> Result<(Vec<CountRow>, Vec<GroupWitnesses>)> {
    let results = exec.map(groups.len(), |i| row_and_witnesses(groups[i]));
    let mut rows = Vec::with_capacity(groups.len());
    let mut wits = Vec::with_capacity(groups.len());
    for r in results {
        let (row, w) = r?;
        rows.push(row);
        wits.push(w);
    }
    Ok((rows, wits))
}

/// Writes the header and one line per row, `\n` terminated.
pub fn write_tsv<W: Write>(mut w: W, rows: &[CountRow]) -> std::io::Result<()> {
    writeln!(w, "{TSV_HEADER}")?;
    for r in rows {
        writeln!(w, "{}", r.tsv_line())?;
    }
    Ok(())
}
