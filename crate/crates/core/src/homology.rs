//! Betti numbers b0 and b1 over GF(2) from the 2-skeleton of a facet list.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Realization;

/// Largest facet whose triangles are materialized (C(25, 3) = 2300).
pub const DEFAULT_SKELETON_GUARD: usize = 25;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton2 {
    pub n0: usize,
    pub edges: Vec<(u32, u32)>,
    pub triangles: Vec<[u32; 3]>,
}

impl Skeleton2 {
    pub fn n1(&self) -> usize {
        self.edges.len()
    }

    pub fn n2(&self) -> usize {
        self.triangles.len()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BettiPair {
    pub beta0: usize,
    pub beta1: usize,
}

impl std::ops::Add for BettiPair {
    type Output = BettiPair;

    fn add(self, rhs: BettiPair) -> BettiPair {
        BettiPair {
            beta0: self.beta0 + rhs.beta0,
            beta1: self.beta1 + rhs.beta1,
        }
    }
}

fn check_guard(real: &Realization, guard: usize) -> Result<()> {
    match real.facets().iter().map(Vec::len).max() {
        Some(big) if big > guard => Err(Error::Guard {
            what: "facet size for the 2-skeleton (raise the skeleton guard)",
            value: big,
            guard,
        }),
        _ => Ok(()),
    }
}

/// Deduplicated vertices, edges and triangles of every facet.
pub fn build_skeleton(real: &Realization, guard: usize) -> Result<Skeleton2> {
    check_guard(real, guard)?;
    let mut edges = HashSet::new();
    let mut triangles = HashSet::new();
    for f in real.facets() {
        for (i, &a) in f.iter().enumerate() {
            for (j, &b) in f.iter().enumerate().skip(i + 1) {
                edges.insert((a, b));
                for &c in &f[j + 1..] {
                    triangles.insert([a, b, c]);
                }
            }
        }
    }
    let mut edges: Vec<_> = edges.into_iter().collect();
    edges.sort_unstable();
    let mut triangles: Vec<_> = triangles.into_iter().collect();
    triangles.sort_unstable();
    Ok(Skeleton2 {
        n0: real.n(),
        edges,
        triangles,
    })
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if the two were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Rank over GF(2) of the rows, each a list of column indices.
///
/// Rows are reduced shortest first; each reduced row is stored under its
/// largest column so later rows can eliminate against it.
pub fn rank_gf2(rows: &[Vec<usize>]) -> usize {
    let mut order: Vec<Vec<usize>> = rows
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.sort_unstable();
            // repeated entries cancel in pairs
            let mut out: Vec<usize> = Vec::with_capacity(r.len());
            for c in r {
                if out.last() == Some(&c) {
                    out.pop();
                } else {
                    out.push(c);
                }
            }
            out
        })
        .collect();
    order.sort_by_key(Vec::len);

    let mut pivots: HashMap<usize, Vec<usize>> = HashMap::new();
    for mut row in order {
        while let Some(&low) = row.last() {
            match pivots.get(&low) {
                Some(p) => row = xor_sorted(&row, p),
                None => {
                    pivots.insert(low, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

fn xor_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// b0 and b1 with the default skeleton guard.
pub fn betti_numbers(real: &Realization) -> Result<BettiPair> {
    betti_numbers_guarded(real, DEFAULT_SKELETON_GUARD)
}

/// b0 by union-find, b1 = n1 - (n0 - b0) - rank(boundary_2).
///
/// The boundary image of a facet's triangles is the cycle space of its
/// complete graph, which the triangles through its smallest vertex already
/// span, so only those "fan" triangles enter the elimination.
pub fn betti_numbers_guarded(real: &Realization, guard: usize) -> Result<BettiPair> {
    check_guard(real, guard)?;
    let mut edge_index: HashMap<(u32, u32), usize> = HashMap::new();
    let mut uf = UnionFind::new(real.n());
    let mut components = real.n();
    for f in real.facets() {
        for (i, &a) in f.iter().enumerate() {
            for &b in &f[i + 1..] {
                let next = edge_index.len();
                edge_index.entry((a, b)).or_insert(next);
            }
        }
        if let Some((&first, rest)) = f.split_first() {
            for &v in rest {
                if uf.union(first as usize, v as usize) {
                    components -= 1;
                }
            }
        }
    }

    let mut rows = Vec::new();
    for f in real.facets() {
        let Some((&apex, rest)) = f.split_first() else {
            continue;
        };
        for (i, &b) in rest.iter().enumerate() {
            for &c in &rest[i + 1..] {
                rows.push(vec![
                    edge_index[&(apex, b)],
                    edge_index[&(apex, c)],
                    edge_index[&(b, c)],
                ]);
            }
        }
    }
    let rank1 = real.n() - components;
    let rank2 = rank_gf2(&rows);
    Ok(BettiPair {
        beta0: components,
        beta1: edge_index.len() - rank1 - rank2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(n: usize, facets: &[&[u32]]) -> Realization {
        Realization::new(n, facets.iter().map(|f| f.to_vec()).collect())
    }

    #[test]
    fn skeleton_counts() {
        let s = build_skeleton(&real(3, &[&[0, 1, 2]]), DEFAULT_SKELETON_GUARD).unwrap();
        assert_eq!((s.n0, s.n1(), s.n2()), (3, 3, 1));
        let s = build_skeleton(&real(3, &[&[0, 1], &[1, 2], &[0, 2]]), 25).unwrap();
        assert_eq!((s.n0, s.n1(), s.n2()), (3, 3, 0));
        let s = build_skeleton(&real(4, &[&[0, 1], &[2, 3]]), 25).unwrap();
        assert_eq!((s.n0, s.n1(), s.n2()), (4, 2, 0));
    }

    #[test]
    fn skeleton_dedups_shared_faces() {
        let s = build_skeleton(&real(4, &[&[0, 1, 2], &[0, 1, 3]]), 25).unwrap();
        assert_eq!((s.n1(), s.n2()), (5, 2));
    }

    #[test]
    fn betti_small_cases() {
        let b = |r: Realization| betti_numbers(&r).unwrap();
        assert_eq!(
            b(real(3, &[&[0, 1], &[1, 2], &[0, 2]])),
            BettiPair { beta0: 1, beta1: 1 }
        );
        assert_eq!(b(real(3, &[&[0, 1, 2]])), BettiPair { beta0: 1, beta1: 0 });
        assert_eq!(
            b(real(4, &[&[0, 1], &[2, 3]])),
            BettiPair { beta0: 2, beta1: 0 }
        );
        // hollow tetrahedron: connected, no 1-cycles
        assert_eq!(
            b(real(4, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]])),
            BettiPair { beta0: 1, beta1: 0 }
        );
        // square with one diagonal filled on one side only
        assert_eq!(
            b(real(4, &[&[0, 1, 2], &[2, 3], &[0, 3]])),
            BettiPair { beta0: 1, beta1: 1 }
        );
    }

    #[test]
    fn guard_refuses_huge_facets() {
        let big = real(30, &[&(0..30).collect::<Vec<_>>()]);
        assert!(matches!(betti_numbers(&big), Err(Error::Guard { .. })));
        assert!(build_skeleton(&big, 25).is_err());
        assert_eq!(
            betti_numbers_guarded(&big, 30).unwrap(),
            BettiPair { beta0: 1, beta1: 0 }
        );
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_gf2(&[vec![0], vec![1], vec![2]]), 3);
        // boundary of one triangle on its three edges
        assert_eq!(rank_gf2(&[vec![0, 1, 2]]), 1);
        assert_eq!(rank_gf2(&[vec![0, 1], vec![1, 2], vec![0, 2]]), 2);
        assert_eq!(rank_gf2(&[vec![3, 3]]), 0);
        assert_eq!(rank_gf2(&[]), 0);
    }
}
