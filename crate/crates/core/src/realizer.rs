//! Depth-bounded backtracking search for a realization of a degree-size
//! sequence.
//!
//! Facets are built largest first. At every stage the candidate facets are
//! proposed in a fixed order that favours nodes with high residual degree;
//! each candidate is checked against the accepted ("blocking") facets and a
//! set of necessary conditions on the residual problem before the search
//! descends. The search counts rejected candidates and backtracks, which is
//! what the hardness experiments measure.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bitset::NodeSet;
use crate::model::{
    check_trivial, preprocess_pair_ones, ConvergenceStats, DegreeSizeSequence, Realization,
};

pub const DEFAULT_CUTOFF: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// The search stops with [`Outcome::Cutoff`] once `tau_c` reaches this value.
    pub cutoff: u64,
    /// Branch only on the least-labeled member of each run of interchangeable nodes.
    pub symmetry_pruning: bool,
    /// Apply rules 2 and 3 in addition to the inclusion check and rule 1.
    pub pruning_rules: bool,
    /// Count candidates contained in an accepted facet towards `tau_r`.
    /// They are always skipped and always tallied under [`Rule::Inclusion`].
    pub count_inclusion: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            cutoff: DEFAULT_CUTOFF,
            symmetry_pruning: true,
            pruning_rules: true,
            count_inclusion: false,
        }
    }
}

impl SolverOptions {
    pub fn with_cutoff(cutoff: u64) -> Self {
        Self {
            cutoff,
            ..Self::default()
        }
    }
}

/// Which check turned a candidate (or a whole branch) down.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// The input failed the cheap feasibility checks.
    Trivial,
    /// More forced nodes than the current facet can hold.
    Forced,
    /// The candidate is contained in an accepted facet.
    Inclusion,
    Rule1,
    Rule2,
    Rule3,
}

impl Rule {
    pub const ALL: [Rule; 6] = [
        Rule::Trivial,
        Rule::Forced,
        Rule::Inclusion,
        Rule::Rule1,
        Rule::Rule2,
        Rule::Rule3,
    ];

    fn index(self) -> usize {
        self as usize
    }
}

/// Rejection counts broken down by [`Rule`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleTally([u64; 6]);

impl RuleTally {
    pub fn get(&self, rule: Rule) -> u64 {
        self.0[rule.index()]
    }

    fn bump(&mut self, rule: Rule) {
        self.0[rule.index()] += 1;
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Simplicial(Realization),
    NonSimplicial,
    Cutoff,
}

impl Outcome {
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Simplicial(_) => "simplicial",
            Outcome::NonSimplicial => "non_simplicial",
            Outcome::Cutoff => "cutoff",
        }
    }

    pub fn is_simplicial(&self) -> bool {
        matches!(self, Outcome::Simplicial(_))
    }

    pub fn realization(&self) -> Option<&Realization> {
        match self {
            Outcome::Simplicial(r) => Some(r),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverVerdict {
    pub outcome: Outcome,
    pub stats: ConvergenceStats,
    pub rejections: RuleTally,
}

impl SolverVerdict {
    /// Solved greedily: a realization with no counted rejection, or a
    /// refusal settled by exactly one.
    pub fn is_easy(&self) -> bool {
        match self.outcome {
            Outcome::Simplicial(_) => self.stats.tau_c() == 0,
            Outcome::NonSimplicial => self.stats.tau_c() <= 1,
            Outcome::Cutoff => false,
        }
    }
}

/// The residual problem at one stage of the search.
#[derive(Clone, Debug)]
pub struct SearchState {
    residual: Vec<u32>,
    sizes: Vec<u32>,
    level: usize,
    blocking: Vec<NodeSet>,
    positive: usize,
}

impl SearchState {
    /// `sizes` must be nonincreasing; `blocking` lists previously accepted facets.
    pub fn new(residual: Vec<u32>, mut sizes: Vec<u32>, blocking: Vec<Vec<usize>>) -> Self {
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        let n = residual.len();
        let positive = residual.iter().filter(|&&d| d > 0).count();
        Self {
            blocking: blocking
                .into_iter()
                .map(|b| NodeSet::from_indices(n, b))
                .collect(),
            residual,
            sizes,
            level: 0,
            positive,
        }
    }

    pub fn residual(&self) -> &[u32] {
        &self.residual
    }

    /// Sizes of the facets still to be built, largest first.
    pub fn remaining_sizes(&self) -> &[u32] {
        &self.sizes[self.level..]
    }

    pub fn blocking(&self) -> &[NodeSet] {
        &self.blocking
    }

    pub fn n(&self) -> usize {
        self.residual.len()
    }

    fn accept(&mut self, cand: &CandidateFacet) {
        for &v in &cand.members {
            self.residual[v] -= 1;
            if self.residual[v] == 0 {
                self.positive -= 1;
            }
        }
        self.level += 1;
        self.blocking.push(cand.set.clone());
    }

    fn undo(&mut self, cand: &CandidateFacet) {
        self.blocking.pop();
        self.level -= 1;
        for &v in &cand.members {
            if self.residual[v] == 0 {
                self.positive += 1;
            }
            self.residual[v] += 1;
        }
    }

    /// Rule 1 applied to the state itself rather than to a successor.
    fn satisfies_rule1(&self) -> bool {
        let remaining = self.remaining_sizes();
        let Some(&s_max) = remaining.first() else {
            return self.positive == 0;
        };
        let d_max = self.residual.iter().copied().max().unwrap_or(0);
        let s_max = s_max as usize;
        d_max as usize <= remaining.len()
            && (s_max < self.positive || (s_max == self.positive && remaining.len() == 1))
    }
}

/// A proposed facet: node indices in ranked order plus their bit set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateFacet {
    members: Vec<usize>,
    set: NodeSet,
}

impl CandidateFacet {
    pub fn new(n: usize, members: Vec<usize>) -> Self {
        let set = NodeSet::from_indices(n, members.iter().copied());
        Self { members, set }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn sorted_members(&self) -> Vec<usize> {
        self.set.iter().collect()
    }

    /// Positive-residual nodes that are not in the candidate.
    pub fn non_shielding(&self, state: &SearchState) -> Vec<usize> {
        (0..state.n())
            .filter(|&v| state.residual[v] > 0 && !self.set.contains(v))
            .collect()
    }
}

/// Nodes whose residual degree equals the number of facets still to build;
/// each of them must belong to all remaining facets.
pub fn compute_forced_nodes(state: &SearchState) -> Vec<usize> {
    let remaining = state.remaining_sizes().len() as u32;
    if remaining == 0 {
        return Vec::new();
    }
    (0..state.n())
        .filter(|&v| state.residual[v] == remaining)
        .collect()
}

/// Lazily yields candidate facets for the current stage.
///
/// Forced nodes are always included. The remaining slots are filled from the
/// other positive nodes ranked by (residual degree desc, label asc), in
/// lexicographic order of ranked positions. With symmetry pruning, nodes
/// sharing residual degree and membership across the blocking facets form a
/// class, and only candidates using a prefix of each class are produced.
#[derive(Clone, Debug)]
pub struct CandidateStream {
    n: usize,
    forced: Vec<usize>,
    free: Vec<usize>,
    prev_in_class: Vec<Option<usize>>,
    k: usize,
    stack: Vec<usize>,
    picked: Vec<bool>,
    started: bool,
    done: bool,
}

impl CandidateStream {
    fn new(state: &SearchState, forced: &[usize], symmetry_pruning: bool) -> Self {
        let n = state.n();
        let s = state.remaining_sizes().first().copied().unwrap_or(0) as usize;
        let mut is_forced = vec![false; n];
        for &v in forced {
            is_forced[v] = true;
        }
        let mut free: Vec<usize> = (0..n)
            .filter(|&v| state.residual[v] > 0 && !is_forced[v])
            .collect();
        free.sort_by(|&a, &b| state.residual[b].cmp(&state.residual[a]).then(a.cmp(&b)));

        let mut prev_in_class = vec![None; free.len()];
        if symmetry_pruning {
            let words = state.blocking.len().div_ceil(64);
            let mut last: HashMap<(u32, Vec<u64>), usize> = HashMap::new();
            for (pos, &v) in free.iter().enumerate() {
                let mut pattern = vec![0u64; words];
                for (j, b) in state.blocking.iter().enumerate() {
                    if b.contains(v) {
                        pattern[j / 64] |= 1 << (j % 64);
                    }
                }
                prev_in_class[pos] = last.insert((state.residual[v], pattern), pos);
            }
        }

        let done = forced.len() > s || s - forced.len() > free.len();
        Self {
            n,
            forced: forced.to_vec(),
            k: s.saturating_sub(forced.len()),
            picked: vec![false; free.len()],
            free,
            prev_in_class,
            stack: Vec::new(),
            started: false,
            done,
        }
    }

    fn allowed(&self, pos: usize) -> bool {
        self.prev_in_class[pos].is_none_or(|q| self.picked[q])
    }

    /// Extends the partial combination in `stack` to length `k`, trying
    /// positions from `start` on and backtracking as needed.
    fn fill(&mut self, mut start: usize) -> bool {
        loop {
            let slot = self.stack.len();
            if slot == self.k {
                return true;
            }
            let last = self.free.len() - (self.k - slot);
            let next = (start..=last).find(|&p| self.allowed(p));
            match next {
                Some(p) => {
                    self.stack.push(p);
                    self.picked[p] = true;
                    start = p + 1;
                }
                None => match self.stack.pop() {
                    Some(q) => {
                        self.picked[q] = false;
                        start = q + 1;
                    }
                    None => return false,
                },
            }
        }
    }
}

impl Iterator for CandidateStream {
    type Item = CandidateFacet;

    fn next(&mut self) -> Option<CandidateFacet> {
        if self.done {
            return None;
        }
        let found = if !self.started {
            self.started = true;
            self.fill(0)
        } else {
            match self.stack.pop() {
                Some(q) => {
                    self.picked[q] = false;
                    self.fill(q + 1)
                }
                None => false,
            }
        };
        if !found {
            self.done = true;
            return None;
        }
        let members: Vec<usize> = self
            .forced
            .iter()
            .copied()
            .chain(self.stack.iter().map(|&p| self.free[p]))
            .collect();
        Some(CandidateFacet::new(self.n, members))
    }
}

/// Candidate facets for the next stage, in the search's proposal order.
/// Empty when the forced nodes alone overflow the facet.
pub fn enumerate_candidates(state: &SearchState, symmetry_pruning: bool) -> CandidateStream {
    let forced = compute_forced_nodes(state);
    CandidateStream::new(state, &forced, symmetry_pruning)
}

/// Accepts `cand` iff it is not contained in a blocking facet and the
/// successor state passes rules 1-3 (rules 2-3 only when `pruning_rules`).
pub fn validate_candidate(
    state: &SearchState,
    cand: &CandidateFacet,
    pruning_rules: bool,
) -> Result<(), Rule> {
    if state.blocking.iter().any(|b| cand.set.is_subset(b)) {
        return Err(Rule::Inclusion);
    }
    let next_sizes = &state.remaining_sizes()[1..];
    let mut d_max = 0u32;
    let mut v_next = 0usize;
    let mut q_sum = 0u64;
    let mut q_count = 0usize;
    let mut v_set = NodeSet::new(state.n());
    for (v, &d) in state.residual.iter().enumerate() {
        if d == 0 {
            continue;
        }
        let in_cand = cand.set.contains(v);
        let next = if in_cand { d - 1 } else { d };
        if !in_cand {
            q_sum += u64::from(d);
            q_count += 1;
        }
        if next > 0 {
            v_next += 1;
            d_max = d_max.max(next);
            v_set.insert(v);
        }
    }
    let Some(&s_max) = next_sizes.first() else {
        return if v_next == 0 {
            Ok(())
        } else {
            Err(Rule::Rule1)
        };
    };
    let s_max = s_max as usize;
    let remaining = next_sizes.len();

    if d_max as usize > remaining || s_max > v_next || (s_max == v_next && remaining > 1) {
        return Err(Rule::Rule1);
    }
    if !pruning_rules {
        return Ok(());
    }
    if remaining as u64 > q_sum || (remaining as u64 == q_sum && s_max - 1 > v_next - q_count) {
        return Err(Rule::Rule2);
    }
    if state
        .blocking
        .iter()
        .chain(std::iter::once(&cand.set))
        .any(|b| v_set.is_subset(b))
    {
        return Err(Rule::Rule3);
    }
    Ok(())
}

enum Flow {
    Found,
    Exhausted,
    Cutoff,
}

struct Search {
    state: SearchState,
    accepted: Vec<CandidateFacet>,
    stats: ConvergenceStats,
    tally: RuleTally,
    opts: SolverOptions,
}

impl Search {
    fn reject(&mut self, rule: Rule) {
        if rule != Rule::Inclusion || self.opts.count_inclusion {
            self.stats.tau_r += 1;
        }
        self.tally.bump(rule);
    }

    fn out_of_budget(&self) -> bool {
        self.stats.tau_c() >= self.opts.cutoff
    }

    fn exhausted(&mut self, root: bool) -> Flow {
        if root {
            Flow::Exhausted
        } else if self.out_of_budget() {
            Flow::Cutoff
        } else {
            self.stats.tau_b += 1;
            Flow::Exhausted
        }
    }

    fn descend(&mut self, root: bool) -> Flow {
        if self.state.remaining_sizes().is_empty() {
            return Flow::Found;
        }
        if self.out_of_budget() {
            return Flow::Cutoff;
        }
        let forced = compute_forced_nodes(&self.state);
        let s = self.state.remaining_sizes()[0] as usize;
        if forced.len() > s {
            self.reject(Rule::Forced);
            return self.exhausted(root);
        }
        let stream = CandidateStream::new(&self.state, &forced, self.opts.symmetry_pruning);
        for cand in stream {
            if self.out_of_budget() {
                return Flow::Cutoff;
            }
            if let Err(rule) = validate_candidate(&self.state, &cand, self.opts.pruning_rules) {
                self.reject(rule);
                continue;
            }
            self.state.accept(&cand);
            self.accepted.push(cand);
            match self.descend(false) {
                Flow::Found => return Flow::Found,
                Flow::Cutoff => return Flow::Cutoff,
                Flow::Exhausted => {
                    let cand = self.accepted.pop().expect("accepted facet");
                    self.state.undo(&cand);
                }
            }
        }
        self.exhausted(root)
    }
}

/// Decides `seq` with the default options and the given cutoff.
pub fn realize(seq: &DegreeSizeSequence, cutoff: u64) -> SolverVerdict {
    realize_with(seq, SolverOptions::with_cutoff(cutoff))
}

/// Decides whether `seq` is simplicial, returning a realization (in the
/// sorted labels of `seq`) when it is.
pub fn realize_with(seq: &DegreeSizeSequence, opts: SolverOptions) -> SolverVerdict {
    let mut stats = ConvergenceStats::default();
    let mut tally = RuleTally::default();
    let non_simplicial = |stats: ConvergenceStats, tally: RuleTally| SolverVerdict {
        outcome: Outcome::NonSimplicial,
        stats,
        rejections: tally,
    };

    if check_trivial(seq).is_err() {
        stats.tau_r = 1;
        tally.bump(Rule::Trivial);
        return non_simplicial(stats, tally);
    }
    let pre = preprocess_pair_ones(seq).expect("trivial check passed");
    let finish = |facets: Vec<Vec<u32>>, stats, tally| SolverVerdict {
        outcome: Outcome::Simplicial(Realization::new(seq.n(), facets)),
        stats,
        rejections: tally,
    };
    if pre.reduced.is_empty() {
        return finish(pre.singletons, stats, tally);
    }
    if opts.cutoff == 0 {
        stats.hit_cutoff = true;
        return SolverVerdict {
            outcome: Outcome::Cutoff,
            stats,
            rejections: tally,
        };
    }

    let state = SearchState::new(
        pre.reduced.degrees().to_vec(),
        pre.reduced.sizes().to_vec(),
        Vec::new(),
    );
    if !state.satisfies_rule1() {
        stats.tau_r = 1;
        tally.bump(Rule::Rule1);
        return non_simplicial(stats, tally);
    }

    let mut search = Search {
        state,
        accepted: Vec::new(),
        stats,
        tally,
        opts,
    };
    match search.descend(true) {
        Flow::Found => {
            let mut facets = pre.singletons;
            facets.extend(
                search
                    .accepted
                    .iter()
                    .map(|c| c.sorted_members().into_iter().map(|v| v as u32).collect()),
            );
            let verdict = finish(facets, search.stats, search.tally);
            debug_assert!(verdict
                .outcome
                .realization()
                .is_some_and(|r| crate::model::verify_realization(seq, r)));
            verdict
        }
        Flow::Exhausted => non_simplicial(search.stats, search.tally),
        Flow::Cutoff => {
            search.stats.hit_cutoff = true;
            SolverVerdict {
                outcome: Outcome::Cutoff,
                stats: search.stats,
                rejections: search.tally,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::verify_realization;

    fn seq(d: &[u32], s: &[u32]) -> DegreeSizeSequence {
        DegreeSizeSequence::normalize(d, s).unwrap()
    }

    fn members(stream: CandidateStream) -> Vec<Vec<usize>> {
        stream.map(|c| c.sorted_members()).collect()
    }

    #[test]
    fn eight_node_is_simplicial() {
        let s = seq(&[3, 3, 2, 2, 1, 1, 1, 1], &[4, 3, 2, 2, 2, 1]);
        let v = realize(&s, DEFAULT_CUTOFF);
        let real = v.outcome.realization().expect("simplicial");
        assert!(verify_realization(&s, real));
        // {0,1,2,3} leaves four facets but only three fresh nodes, so the
        // second candidate is kept
        assert_eq!(real.facets()[0], vec![7]);
        assert_eq!(real.facets()[1], vec![0, 1, 2, 4]);
    }

    #[test]
    fn inclusion_skips_are_optional_in_tau() {
        let s = seq(&[11, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 3, 3, 2, 1], &[3; 20]);
        let quiet = realize(&s, DEFAULT_CUTOFF);
        let counted = realize_with(
            &s,
            SolverOptions {
                count_inclusion: true,
                ..SolverOptions::default()
            },
        );
        let skipped = quiet.rejections.get(Rule::Inclusion);
        assert!(skipped > 0);
        assert_eq!(quiet.rejections, counted.rejections);
        assert_eq!(quiet.outcome, counted.outcome);
        assert_eq!(counted.stats.tau_c(), quiet.stats.tau_c() + skipped);
        assert!(quiet.is_easy() && !counted.is_easy());
    }

    #[test]
    fn all_ones_degrees_are_easy() {
        let s = seq(&[1, 1, 1, 1, 1], &[3, 2]);
        let v = realize(&s, DEFAULT_CUTOFF);
        assert!(v.outcome.is_simplicial());
        assert_eq!(v.stats.tau_c(), 0);
    }

    #[test]
    fn twin_pairs_rejected_in_one_step() {
        let v = realize(&seq(&[2, 2], &[2, 2]), DEFAULT_CUTOFF);
        assert_eq!(v.outcome, Outcome::NonSimplicial);
        assert_eq!(v.stats.tau_c(), 1);
    }

    #[test]
    fn trivial_rejection_counts_once() {
        let v = realize(&seq(&[2, 2], &[1, 1, 1, 1]), DEFAULT_CUTOFF);
        assert_eq!(v.outcome, Outcome::NonSimplicial);
        assert_eq!(v.stats.tau_r, 1);
        assert_eq!(v.rejections.get(Rule::Trivial), 1);
    }

    #[test]
    fn zero_cutoff() {
        let v = realize(&seq(&[1, 1, 1, 1, 1], &[3, 2]), 0);
        assert_eq!(v.outcome, Outcome::Cutoff);
        assert!(v.stats.hit_cutoff);
        // nothing left to search after pairing the ones
        let v = realize(&seq(&[1, 1], &[1, 1]), 0);
        assert!(v.outcome.is_simplicial());
    }

    #[test]
    fn ranked_lexicographic_order() {
        let state = SearchState::new(vec![2, 2, 1], vec![2, 2, 1], vec![]);
        assert_eq!(
            members(enumerate_candidates(&state, false)),
            vec![vec![0, 1], vec![0, 2], vec![1, 2]]
        );
        // nodes 0 and 1 are interchangeable
        assert_eq!(
            members(enumerate_candidates(&state, true)),
            vec![vec![0, 1], vec![0, 2]]
        );
        let state = SearchState::new(vec![1, 1, 1], vec![3], vec![]);
        assert_eq!(
            members(enumerate_candidates(&state, false)),
            vec![vec![0, 1, 2]]
        );
    }

    #[test]
    fn ranking_prefers_high_residual() {
        let state = SearchState::new(vec![1, 3, 1, 2], vec![2, 2, 2, 1], vec![]);
        let first = enumerate_candidates(&state, false).next().unwrap();
        assert_eq!(first.members(), &[1, 3]);
    }

    #[test]
    fn symmetry_respects_blocking_membership() {
        // 0 and 2 share the blocking facet, 1 does not
        let state = SearchState::new(vec![1, 1, 1], vec![2, 1], vec![vec![0, 2]]);
        assert_eq!(
            members(enumerate_candidates(&state, true)),
            vec![vec![0, 1], vec![0, 2]]
        );
        assert_eq!(
            members(enumerate_candidates(&state, false)),
            vec![vec![0, 1], vec![0, 2], vec![1, 2]]
        );
    }

    #[test]
    fn first_candidate_for_eight_node() {
        let s = seq(&[3, 3, 2, 2, 1, 1, 1, 1], &[4, 3, 2, 2, 2, 1]);
        let pre = preprocess_pair_ones(&s).unwrap();
        let state = SearchState::new(
            pre.reduced.degrees().to_vec(),
            pre.reduced.sizes().to_vec(),
            vec![],
        );
        let first = enumerate_candidates(&state, true).next().unwrap();
        assert_eq!(first.sorted_members(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn rule3_fires_on_covered_residue() {
        let state = SearchState::new(vec![1, 2, 0, 1], vec![2, 2], vec![vec![0, 1, 2]]);
        let cand = CandidateFacet::new(4, vec![1, 3]);
        assert_eq!(validate_candidate(&state, &cand, true), Err(Rule::Rule3));
        assert_eq!(validate_candidate(&state, &cand, false), Ok(()));
    }

    #[test]
    fn rule1_forbids_two_facets_on_two_nodes() {
        let state = SearchState::new(vec![2, 2], vec![2, 2, 2], vec![]);
        let cand = CandidateFacet::new(2, vec![0, 1]);
        assert_eq!(validate_candidate(&state, &cand, true), Err(Rule::Rule1));
    }

    #[test]
    fn inclusion_checked_first() {
        let state = SearchState::new(vec![1, 1, 1], vec![2], vec![vec![0, 1, 2]]);
        let cand = CandidateFacet::new(3, vec![0, 1]);
        assert_eq!(
            validate_candidate(&state, &cand, true),
            Err(Rule::Inclusion)
        );
    }

    #[test]
    fn non_shielding_nodes() {
        let state = SearchState::new(vec![2, 1, 0, 1], vec![2, 2], vec![]);
        let cand = CandidateFacet::new(4, vec![0, 1]);
        assert_eq!(cand.non_shielding(&state), vec![3]);
    }

    #[test]
    fn forced_nodes() {
        let state = SearchState::new(vec![2, 1, 1], vec![2, 2], vec![]);
        assert_eq!(compute_forced_nodes(&state), vec![0]);
        let v = realize(&seq(&[2, 1, 1], &[2, 2]), DEFAULT_CUTOFF);
        let real = v.outcome.realization().unwrap();
        assert_eq!(real.facets(), &[vec![0, 1], vec![0, 2]]);
        assert_eq!(v.stats.tau_c(), 0);

        let state = SearchState::new(vec![1, 1, 1], vec![3], vec![]);
        assert_eq!(compute_forced_nodes(&state), vec![0, 1, 2]);

        let state = SearchState::new(vec![3, 3, 1, 1], vec![2, 2, 2], vec![]);
        assert_eq!(compute_forced_nodes(&state), vec![0, 1]);
        assert_eq!(
            members(enumerate_candidates(&state, false)),
            vec![vec![0, 1]]
        );
        let v = realize(&seq(&[3, 3], &[2, 2, 2]), DEFAULT_CUTOFF);
        assert_eq!(v.outcome, Outcome::NonSimplicial);
    }

    #[test]
    fn forced_overflow_rejects_branch() {
        let state = SearchState::new(vec![2, 2, 2], vec![2, 2], vec![]);
        // only reachable from states whose sums disagree
        assert_eq!(enumerate_candidates(&state, true).count(), 0);
    }

    #[test]
    fn root_rule1_rejection() {
        // passes the trivial check, but after pairing the ones a size-2 facet
        // has only one node left to use
        let v = realize(&seq(&[2, 1], &[2, 1]), DEFAULT_CUTOFF);
        assert_eq!(v.outcome, Outcome::NonSimplicial);
        assert_eq!(v.rejections.get(Rule::Rule1), 1);
    }

    #[test]
    fn deterministic() {
        let s = seq(&[3, 3, 3, 2, 2, 2, 1, 1], &[3, 3, 3, 3, 3, 2]);
        let a = realize(&s, DEFAULT_CUTOFF);
        let b = realize(&s, DEFAULT_CUTOFF);
        assert_eq!(a, b);
    }

    #[test]
    fn cutoff_bounds_tau_c() {
        let s = seq(&[3, 3, 3, 3, 2, 2, 2, 2, 1], &[3, 3, 3, 3, 3, 3, 3]);
        let full = realize(&s, DEFAULT_CUTOFF);
        for cutoff in 1..full.stats.tau_c() {
            let v = realize(&s, cutoff);
            assert_eq!(v.outcome, Outcome::Cutoff);
            assert!(v.stats.tau_c() <= cutoff);
        }
    }
}
