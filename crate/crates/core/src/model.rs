//! Domain types shared by every other module: degree-size sequences,
//! realizations (facet lists), incidence matrices and convergence counters.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::NodeSet;
use crate::error::{Error, Result};

/// A pair of nonincreasing integer sequences: node degrees and facet sizes.
///
/// Node labels `0..n` follow the sorted order of `degrees` (ties broken by
/// input position), and `input_position[label]` maps a label back to where
/// that node appeared in the caller's degree list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSizeSequence {
    degrees: Vec<u32>,
    sizes: Vec<u32>,
    input_position: Vec<usize>,
}

impl DegreeSizeSequence {
    /// Sorts both lists nonincreasing and records the node relabeling.
    pub fn normalize(degrees: &[u32], sizes: &[u32]) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::InvalidInput("degree list is empty".into()));
        }
        if sizes.is_empty() {
            return Err(Error::InvalidInput("size list is empty".into()));
        }
        if let Some(pos) = degrees.iter().position(|&d| d == 0) {
            return Err(Error::InvalidInput(format!(
                "degree at position {pos} is not positive"
            )));
        }
        if let Some(pos) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::InvalidInput(format!(
                "size at position {pos} is not positive"
            )));
        }
        let mut order: Vec<usize> = (0..degrees.len()).collect();
        order.sort_by(|&a, &b| degrees[b].cmp(&degrees[a]).then(a.cmp(&b)));
        let mut sorted_sizes = sizes.to_vec();
        sorted_sizes.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self {
            degrees: order.iter().map(|&i| degrees[i]).collect(),
            sizes: sorted_sizes,
            input_position: order,
        })
    }

    /// Builds a sequence from lists that are already nonincreasing, keeping
    /// labels as given. Empty lists are allowed (the residue of preprocessing).
    pub(crate) fn from_sorted(
        degrees: Vec<u32>,
        sizes: Vec<u32>,
        input_position: Vec<usize>,
    ) -> Self {
        debug_assert!(degrees.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(sizes.windows(2).all(|w| w[0] >= w[1]));
        Self {
            degrees,
            sizes,
            input_position,
        }
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    /// Number of nodes.
    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    /// Number of facets.
    pub fn m(&self) -> usize {
        self.sizes.len()
    }

    /// Total incidence count of the degree list.
    pub fn total(&self) -> u64 {
        self.degrees.iter().map(|&d| u64::from(d)).sum()
    }

    pub fn size_total(&self) -> u64 {
        self.sizes.iter().map(|&s| u64::from(s)).sum()
    }

    pub fn input_position(&self) -> &[usize] {
        &self.input_position
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty() && self.sizes.is_empty()
    }
}

impl fmt::Display for DegreeSizeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={:?} s={:?}", self.degrees, self.sizes)
    }
}

/// Why a sequence fails the cheap feasibility checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RejectReason {
    SumMismatch,
    OnesDeficit,
    DegreeExceedsFacets,
    SizeExceedsNodes,
}

impl RejectReason {
    pub fn as_str(self) -> &'static str {
        match self {
            RejectReason::SumMismatch => "SUM_MISMATCH",
            RejectReason::OnesDeficit => "ONES_DEFICIT",
            RejectReason::DegreeExceedsFacets => "DEGREE_EXCEEDS_FACETS",
            RejectReason::SizeExceedsNodes => "SIZE_EXCEEDS_NODES",
        }
    }
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Rejects sequences that cannot form a valid incidence matrix, or whose
/// singleton facets outnumber the degree-1 nodes able to carry them.
pub fn check_trivial(seq: &DegreeSizeSequence) -> std::result::Result<(), RejectReason> {
    if seq.total() != seq.size_total() {
        return Err(RejectReason::SumMismatch);
    }
    let ones = |xs: &[u32]| xs.iter().filter(|&&x| x == 1).count();
    if ones(seq.degrees()) < ones(seq.sizes()) {
        return Err(RejectReason::OnesDeficit);
    }
    if seq.degrees().first().is_some_and(|&d| d as usize > seq.m()) {
        return Err(RejectReason::DegreeExceedsFacets);
    }
    if seq.sizes().first().is_some_and(|&s| s as usize > seq.n()) {
        return Err(RejectReason::SizeExceedsNodes);
    }
    Ok(())
}

/// The result of matching every size-1 facet with its own degree-1 node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preprocessed {
    /// The sequence with all matched pairs removed. Its node labels coincide
    /// with the labels of the original sequence.
    pub reduced: DegreeSizeSequence,
    /// Singleton facets, one per size-1 facet of the input.
    pub singletons: Vec<Vec<u32>>,
}

/// Pairs the size-1 facets with the highest-labeled degree-1 nodes.
pub fn preprocess_pair_ones(seq: &DegreeSizeSequence) -> Result<Preprocessed> {
    let size_ones = seq.sizes().iter().filter(|&&s| s == 1).count();
    let degree_ones = seq.degrees().iter().filter(|&&d| d == 1).count();
    if degree_ones < size_ones {
        return Err(Error::Precondition(format!(
            "{size_ones} singleton facets but only {degree_ones} degree-1 nodes; run the trivial check first"
        )));
    }
    let n_kept = seq.n() - size_ones;
    let m_kept = seq.m() - size_ones;
    let singletons = (n_kept..seq.n()).map(|v| vec![v as u32]).collect();
    let reduced = DegreeSizeSequence::from_sorted(
        seq.degrees()[..n_kept].to_vec(),
        seq.sizes()[..m_kept].to_vec(),
        seq.input_position()[..n_kept].to_vec(),
    );
    Ok(Preprocessed {
        reduced,
        singletons,
    })
}

/// A complex given by its facets over nodes `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Realization {
    n: usize,
    facets: Vec<Vec<u32>>,
}

impl Realization {
    /// Facet members are sorted; facet order is kept.
    pub fn new(n: usize, facets: Vec<Vec<u32>>) -> Self {
        let facets = facets
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f
            })
            .collect();
        Self { n, facets }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.facets.len()
    }

    pub fn facets(&self) -> &[Vec<u32>] {
        &self.facets
    }

    pub fn into_facets(self) -> Vec<Vec<u32>> {
        self.facets
    }

    /// Node degrees indexed by label.
    pub fn node_degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.n];
        for f in &self.facets {
            for &v in f {
                if let Some(d) = deg.get_mut(v as usize) {
                    *d += 1;
                }
            }
        }
        deg
    }

    pub fn facet_sizes(&self) -> Vec<u32> {
        self.facets.iter().map(|f| f.len() as u32).collect()
    }

    /// Applies `new_label = map[old_label]` to every node.
    pub fn relabel(&self, map: &[usize]) -> Self {
        let facets = self
            .facets
            .iter()
            .map(|f| f.iter().map(|&v| map[v as usize] as u32).collect())
            .collect();
        Self::new(self.n, facets)
    }

    /// Relabels from the sorted labels of `seq` back to the caller's input order.
    pub fn to_input_labels(&self, seq: &DegreeSizeSequence) -> Self {
        self.relabel(seq.input_position())
    }

    /// Facets sorted by size (descending), then by member list.
    pub fn canonical(&self) -> Self {
        let mut facets = self.facets.clone();
        facets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        Self { n: self.n, facets }
    }

    pub fn node_sets(&self) -> Vec<NodeSet> {
        self.facets
            .iter()
            .map(|f| NodeSet::from_indices(self.n, f.iter().map(|&v| v as usize)))
            .collect()
    }

    /// True if no facet is contained in (or equal to) another.
    pub fn has_no_inclusion(&self) -> bool {
        let sets = self.node_sets();
        for i in 0..sets.len() {
            for j in 0..sets.len() {
                if i != j
                    && self.facets[i].len() <= self.facets[j].len()
                    && sets[i].is_subset(&sets[j])
                {
                    return false;
                }
            }
        }
        true
    }

    /// Checks the structural invariants: members in range and distinct,
    /// every node covered, no inclusion between facets.
    pub fn is_valid(&self) -> bool {
        for f in &self.facets {
            if f.is_empty() || f.windows(2).any(|w| w[0] == w[1]) {
                return false;
            }
            if f.iter().any(|&v| v as usize >= self.n) {
                return false;
            }
        }
        self.node_degrees().iter().all(|&d| d > 0) && self.has_no_inclusion()
    }
}

/// True iff `real` is a simplicial complex whose degree and size multisets
/// equal those of `seq`.
pub fn verify_realization(seq: &DegreeSizeSequence, real: &Realization) -> bool {
    if real.n() != seq.n() || real.m() != seq.m() || !real.is_valid() {
        return false;
    }
    let mut deg = real.node_degrees();
    deg.sort_unstable_by(|a, b| b.cmp(a));
    let mut sizes = real.facet_sizes();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    deg == seq.degrees() && sizes == seq.sizes()
}

/// Dense facet-by-node incidence matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    rows: Vec<Vec<bool>>,
    n: usize,
}

impl IncidenceMatrix {
    pub fn from_realization(real: &Realization) -> Self {
        let rows = real
            .facets()
            .iter()
            .map(|f| {
                let mut row = vec![false; real.n()];
                for &v in f {
                    row[v as usize] = true;
                }
                row
            })
            .collect();
        Self { rows, n: real.n() }
    }

    pub fn rows(&self) -> &[Vec<bool>] {
        &self.rows
    }

    pub fn row_sums(&self) -> Vec<u32> {
        self.rows
            .iter()
            .map(|r| r.iter().filter(|&&x| x).count() as u32)
            .collect()
    }

    pub fn column_sums(&self) -> Vec<u32> {
        (0..self.n)
            .map(|c| self.rows.iter().filter(|r| r[c]).count() as u32)
            .collect()
    }

    pub fn to_realization(&self) -> Realization {
        let facets = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, &x)| x)
                    .map(|(i, _)| i as u32)
                    .collect()
            })
            .collect();
        Realization::new(self.n, facets)
    }
}

/// Backtrack and rejection counters of a search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceStats {
    pub tau_b: u64,
    pub tau_r: u64,
    pub hit_cutoff: bool,
}

impl ConvergenceStats {
    pub fn tau_c(&self) -> u64 {
        self.tau_b + self.tau_r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn eight_node() -> DegreeSizeSequence {
        DegreeSizeSequence::normalize(&[3, 3, 2, 2, 1, 1, 1, 1], &[4, 3, 2, 2, 2, 1]).unwrap()
    }

    /// A realization of the eight-node sequence, checked by hand.
    fn eight_node_realization() -> Realization {
        Realization::new(
            8,
            vec![
                vec![0, 1, 2, 4],
                vec![0, 1, 3],
                vec![0, 5],
                vec![1, 6],
                vec![2, 3],
                vec![7],
            ],
        )
    }

    #[test]
    fn normalize_sorts_and_keeps_permutation() {
        let seq = DegreeSizeSequence::normalize(&[1, 3, 2], &[3, 3]).unwrap();
        assert_eq!(seq.degrees(), &[3, 2, 1]);
        assert_eq!(seq.sizes(), &[3, 3]);
        assert_eq!(seq.total(), 6);
        assert_eq!(seq.input_position(), &[1, 2, 0]);
    }

    #[test]
    fn normalize_sorted_input_unchanged() {
        let seq = eight_node();
        assert_eq!(seq.degrees(), &[3, 3, 2, 2, 1, 1, 1, 1]);
        assert_eq!(seq.sizes(), &[4, 3, 2, 2, 2, 1]);
        assert_eq!(seq.total(), 14);
        assert_eq!((seq.n(), seq.m()), (8, 6));
    }

    #[test]
    fn normalize_rejects_zero_and_empty() {
        assert!(matches!(
            DegreeSizeSequence::normalize(&[0, 1], &[1]),
            Err(Error::InvalidInput(_))
        ));
        assert!(DegreeSizeSequence::normalize(&[], &[1]).is_err());
        assert!(DegreeSizeSequence::normalize(&[1], &[]).is_err());
        assert!(DegreeSizeSequence::normalize(&[1], &[0]).is_err());
    }

    #[test]
    fn trivial_check_reasons() {
        let seq = |d: &[u32], s: &[u32]| DegreeSizeSequence::normalize(d, s).unwrap();
        assert_eq!(
            check_trivial(&seq(&[2, 1], &[2, 2])),
            Err(RejectReason::SumMismatch)
        );
        assert_eq!(
            check_trivial(&seq(&[3, 1], &[2, 2])),
            Err(RejectReason::DegreeExceedsFacets)
        );
        assert_eq!(check_trivial(&eight_node()), Ok(()));
        assert_eq!(
            check_trivial(&seq(&[2, 2], &[1, 1, 1, 1])),
            Err(RejectReason::OnesDeficit)
        );
        assert_eq!(
            check_trivial(&seq(&[2, 2, 1, 1], &[5, 1])),
            Err(RejectReason::SizeExceedsNodes)
        );
        assert_eq!(check_trivial(&seq(&[1, 1, 1], &[3])), Ok(()));
        assert_eq!(RejectReason::OnesDeficit.to_string(), "ONES_DEFICIT");
    }

    #[test]
    fn preprocess_examples() {
        let pre = preprocess_pair_ones(&eight_node()).unwrap();
        assert_eq!(pre.reduced.degrees(), &[3, 3, 2, 2, 1, 1, 1]);
        assert_eq!(pre.reduced.sizes(), &[4, 3, 2, 2, 2]);
        assert_eq!(pre.singletons, vec![vec![7]]);

        let seq = DegreeSizeSequence::normalize(&[1, 1, 1], &[3]).unwrap();
        let pre = preprocess_pair_ones(&seq).unwrap();
        assert_eq!(pre.reduced, seq);
        assert!(pre.singletons.is_empty());

        let seq = DegreeSizeSequence::normalize(&[1, 1], &[1, 1]).unwrap();
        let pre = preprocess_pair_ones(&seq).unwrap();
        assert!(pre.reduced.is_empty());
        assert_eq!(pre.singletons, vec![vec![0], vec![1]]);
    }

    #[test]
    fn preprocess_requires_trivial_check() {
        let seq = DegreeSizeSequence::normalize(&[2, 2], &[1, 1, 1, 1]).unwrap();
        assert!(matches!(
            preprocess_pair_ones(&seq),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn verify_examples() {
        assert!(verify_realization(&eight_node(), &eight_node_realization()));
        // right counts, but {0,2} sits inside {0,1,2,3}
        let nested = Realization::new(
            8,
            vec![
                vec![0, 1, 2, 3],
                vec![0, 1, 4],
                vec![0, 2],
                vec![1, 5],
                vec![3, 6],
                vec![7],
            ],
        );
        assert!(!verify_realization(&eight_node(), &nested));

        let seq = DegreeSizeSequence::normalize(&[2, 2, 1], &[3, 2]).unwrap();
        let real = Realization::new(3, vec![vec![0, 1], vec![0, 1, 2]]);
        assert!(!verify_realization(&seq, &real));

        let seq = DegreeSizeSequence::normalize(&[1, 1, 1], &[3]).unwrap();
        assert!(verify_realization(
            &seq,
            &Realization::new(3, vec![vec![0, 1, 2]])
        ));
    }

    #[test]
    fn verify_rejects_malformed() {
        let seq = DegreeSizeSequence::normalize(&[2, 2], &[2, 2]).unwrap();
        // duplicate facets are an inclusion
        assert!(!verify_realization(
            &seq,
            &Realization::new(2, vec![vec![0, 1], vec![0, 1]])
        ));
        // uncovered node / out of range
        let seq = DegreeSizeSequence::normalize(&[1, 1], &[2]).unwrap();
        assert!(!verify_realization(
            &seq,
            &Realization::new(2, vec![vec![0, 2]])
        ));
        assert!(!verify_realization(
            &seq,
            &Realization::new(3, vec![vec![0, 1]])
        ));
    }

    #[test]
    fn incidence_matrix_sums() {
        let real = eight_node_realization();
        let mat = IncidenceMatrix::from_realization(&real);
        let mut rows = mat.row_sums();
        rows.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(rows, eight_node().sizes());
        assert_eq!(mat.column_sums(), eight_node().degrees());
        assert_eq!(mat.to_realization(), real);
    }

    #[test]
    fn relabel_to_input_order() {
        let seq = DegreeSizeSequence::normalize(&[1, 2, 1], &[2, 2]).unwrap();
        // sorted labels: 0 <- input 1 (deg 2), 1 <- input 0, 2 <- input 2
        let real = Realization::new(3, vec![vec![0, 1], vec![0, 2]]);
        assert!(verify_realization(&seq, &real));
        let back = real.to_input_labels(&seq);
        assert_eq!(back.facets(), &[vec![0, 1], vec![1, 2]]);
        assert_eq!(back.node_degrees(), vec![1, 2, 1]);
    }

    #[test]
    fn stats_sum() {
        let stats = ConvergenceStats {
            tau_b: 2,
            tau_r: 3,
            hit_cutoff: false,
        };
        assert_eq!(stats.tau_c(), 5);
    }
}
