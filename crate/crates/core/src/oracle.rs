//! Exhaustive enumeration of labeled realizations for small sequences.
//!
//! Nodes keep the labels of the sorted sequence. Facets are placed as rows of
//! the incidence matrix in size order; rows of equal size are forced into
//! strictly increasing lexicographic order so every facet set is produced
//! exactly once. Only the marginal sums and the no-inclusion constraint are
//! used, none of the search's pruning rules.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::model::{DegreeSizeSequence, Realization};

pub const DEFAULT_GUARD: u64 = 14;
const HARD_LIMIT: usize = 64;

/// All distinct realizations of a sequence, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationSet {
    members: BTreeSet<Vec<Vec<u32>>>,
    n: usize,
}

impl RealizationSet {
    pub fn count(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, real: &Realization) -> bool {
        self.members.contains(real.canonical().facets())
    }

    pub fn iter(&self) -> impl Iterator<Item = Realization> + '_ {
        self.members
            .iter()
            .map(|facets| Realization::new(self.n, facets.clone()))
    }
}

struct Enumerator<'a> {
    sizes: &'a [u32],
    residual: Vec<u32>,
    rows: Vec<u64>,
    members: Vec<Vec<u32>>,
}

impl Enumerator<'_> {
    /// Calls `visit` on each completed matrix; stops when it returns false.
    fn run(&mut self, row: usize, visit: &mut dyn FnMut(&[Vec<u32>]) -> bool) -> bool {
        if row == self.sizes.len() {
            return if self.residual.iter().all(|&d| d == 0) {
                visit(&self.members)
            } else {
                true
            };
        }
        let rows_left = (self.sizes.len() - row) as u32;
        if self.residual.iter().any(|&d| d > rows_left) {
            return true;
        }
        let k = self.sizes[row] as usize;
        let avail: Vec<u32> = (0..self.residual.len() as u32)
            .filter(|&v| self.residual[v as usize] > 0)
            .collect();
        if avail.len() < k {
            return true;
        }
        let lower =
            (row > 0 && self.sizes[row - 1] as usize == k).then(|| self.members[row - 1].clone());
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let combo: Vec<u32> = idx.iter().map(|&i| avail[i]).collect();
            if lower.as_ref().is_none_or(|l| combo > *l) {
                let mask = combo.iter().fold(0u64, |m, &v| m | 1 << v);
                if self.rows.iter().all(|&r| mask & !r != 0) {
                    for &v in &combo {
                        self.residual[v as usize] -= 1;
                    }
                    self.rows.push(mask);
                    self.members.push(combo.clone());
                    let go_on = self.run(row + 1, visit);
                    self.members.pop();
                    self.rows.pop();
                    for &v in &combo {
                        self.residual[v as usize] += 1;
                    }
                    if !go_on {
                        return false;
                    }
                }
            }
            // next k-combination of 0..avail.len()
            let Some(i) = (0..k).rev().find(|&i| idx[i] < avail.len() - k + i) else {
                return true;
            };
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
}

fn guard(seq: &DegreeSizeSequence, limit: u64) -> Result<()> {
    if seq.total() > limit {
        return Err(Error::Guard {
            what: "E",
            value: seq.total() as usize,
            guard: limit as usize,
        });
    }
    if seq.n() > HARD_LIMIT {
        return Err(Error::Guard {
            what: "n",
            value: seq.n(),
            guard: HARD_LIMIT,
        });
    }
    Ok(())
}

fn walk(seq: &DegreeSizeSequence, visit: &mut dyn FnMut(&[Vec<u32>]) -> bool) {
    if seq.total() != seq.size_total() {
        return;
    }
    let mut e = Enumerator {
        sizes: seq.sizes(),
        residual: seq.degrees().to_vec(),
        rows: Vec::new(),
        members: Vec::new(),
    };
    e.run(0, visit);
}

/// Every labeled realization of `seq`, refusing when `E > limit`.
pub fn enumerate_realizations(seq: &DegreeSizeSequence, limit: u64) -> Result<RealizationSet> {
    guard(seq, limit)?;
    let mut members = BTreeSet::new();
    walk(seq, &mut |facets| {
        members.insert(facets.to_vec());
        true
    });
    Ok(RealizationSet {
        members,
        n: seq.n(),
    })
}

/// Whether `seq` has at least one realization; stops at the first witness.
pub fn decide_bruteforce(seq: &DegreeSizeSequence, limit: u64) -> Result<bool> {
    guard(seq, limit)?;
    let mut found = false;
    walk(seq, &mut |_| {
        found = true;
        false
    });
    Ok(found)
}
