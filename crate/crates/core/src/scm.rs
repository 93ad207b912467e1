//! Markov chain over simplicial complexes with a fixed degree-size sequence.
//!
//! The state is a flat list of (facet, node) incidences. A step picks two
//! distinct incidences uniformly and exchanges their nodes; the move is kept
//! only if the result is still a simplicial complex, otherwise the chain
//! stays put. Proposals are symmetric, so the stationary law is uniform over
//! labeled realizations in the reachable class.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bitset::NodeSet;
use crate::model::Realization;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScmConfig {
    pub burn_in: u64,
    pub gap: u64,
    pub n_samples: usize,
    pub seed: u64,
}

impl ScmConfig {
    /// Burn-in of 50 E steps and a gap of 10 E steps.
    pub fn for_size(total: u64, n_samples: usize, seed: u64) -> Self {
        Self {
            burn_in: 50 * total,
            gap: (10 * total).max(1),
            n_samples,
            seed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RejectKind {
    DuplicateMembership,
    Inclusion,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    Accepted,
    Rejected(RejectKind),
}

/// Two incidence positions whose nodes would be exchanged.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Proposal {
    pub first: usize,
    pub second: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainDiagnostics {
    pub steps: u64,
    pub accepted: u64,
    pub rejected_duplicate: u64,
    pub rejected_inclusion: u64,
}

impl ChainDiagnostics {
    pub fn acceptance_rate(&self) -> f64 {
        if self.steps == 0 {
            0.0
        } else {
            self.accepted as f64 / self.steps as f64
        }
    }
}

#[derive(Clone, Debug)]
pub struct ChainState {
    n: usize,
    sets: Vec<NodeSet>,
    sizes: Vec<usize>,
    incidences: Vec<(u32, u32)>,
    node_facets: Vec<Vec<u32>>,
    rng: ChaCha8Rng,
    diagnostics: ChainDiagnostics,
}

impl ChainState {
    /// Starts a chain at `seed_real`, which must be a valid realization.
    pub fn new(seed_real: &Realization, seed: u64) -> Self {
        let n = seed_real.n();
        let mut node_facets = vec![Vec::new(); n];
        let mut incidences = Vec::new();
        for (j, f) in seed_real.facets().iter().enumerate() {
            for &v in f {
                incidences.push((j as u32, v));
                node_facets[v as usize].push(j as u32);
            }
        }
        Self {
            n,
            sets: seed_real.node_sets(),
            sizes: seed_real.facets().iter().map(Vec::len).collect(),
            incidences,
            node_facets,
            rng: ChaCha8Rng::seed_from_u64(seed),
            diagnostics: ChainDiagnostics::default(),
        }
    }

    pub fn diagnostics(&self) -> ChainDiagnostics {
        self.diagnostics
    }

    pub fn incidence_count(&self) -> usize {
        self.incidences.len()
    }

    /// Snapshot of the current complex; facet order follows facet ids.
    pub fn realization(&self) -> Realization {
        let facets = self
            .sets
            .iter()
            .map(|s| s.iter().map(|v| v as u32).collect())
            .collect();
        Realization::new(self.n, facets)
    }

    /// Two distinct positions, uniform over unordered pairs. `None` when
    /// there are fewer than two incidences.
    pub fn propose_swap(&mut self) -> Option<Proposal> {
        let e = self.incidences.len();
        if e < 2 {
            return None;
        }
        let first = self.rng.random_range(0..e);
        let mut second = self.rng.random_range(0..e - 1);
        if second >= first {
            second += 1;
        }
        Some(Proposal { first, second })
    }

    fn related(&self, a: &NodeSet, a_len: usize, b: usize) -> bool {
        let b_len = self.sizes[b];
        (a_len <= b_len && a.is_subset(&self.sets[b]))
            || (b_len <= a_len && self.sets[b].is_subset(a))
    }

    /// Checks a proposal against the current state without applying it.
    pub fn evaluate(&self, p: Proposal) -> StepOutcome {
        let (f1, v1) = self.incidences[p.first];
        let (f2, v2) = self.incidences[p.second];
        if f1 == f2 || v1 == v2 {
            return StepOutcome::Accepted;
        }
        let (f1, f2, v1, v2) = (f1 as usize, f2 as usize, v1 as usize, v2 as usize);
        if self.sets[f1].contains(v2) || self.sets[f2].contains(v1) {
            return StepOutcome::Rejected(RejectKind::DuplicateMembership);
        }
        let mut new1 = self.sets[f1].clone();
        new1.remove(v1);
        new1.insert(v2);
        let mut new2 = self.sets[f2].clone();
        new2.remove(v2);
        new2.insert(v1);
        let (len1, len2) = (self.sizes[f1], self.sizes[f2]);

        if (len1 <= len2 && new1.is_subset(&new2)) || (len2 <= len1 && new2.is_subset(&new1)) {
            return StepOutcome::Rejected(RejectKind::Inclusion);
        }
        // A facet other than f1 and f2 can only be comparable with the new
        // f1 if it contains v2 (and with the new f2 if it contains v1);
        // anything else would already be comparable with the old facet.
        let clash1 = self.node_facets[v2]
            .iter()
            .map(|&g| g as usize)
            .filter(|&g| g != f2)
            .any(|g| self.related(&new1, len1, g));
        let clash2 = clash1
            || self.node_facets[v1]
                .iter()
                .map(|&g| g as usize)
                .filter(|&g| g != f1)
                .any(|g| self.related(&new2, len2, g));
        if clash2 {
            StepOutcome::Rejected(RejectKind::Inclusion)
        } else {
            StepOutcome::Accepted
        }
    }

    fn apply(&mut self, p: Proposal) {
        let (f1, v1) = self.incidences[p.first];
        let (f2, v2) = self.incidences[p.second];
        if f1 == f2 || v1 == v2 {
            return;
        }
        self.incidences[p.first].1 = v2;
        self.incidences[p.second].1 = v1;
        let (fu1, fu2, vu1, vu2) = (f1 as usize, f2 as usize, v1 as usize, v2 as usize);
        self.sets[fu1].remove(vu1);
        self.sets[fu1].insert(vu2);
        self.sets[fu2].remove(vu2);
        self.sets[fu2].insert(vu1);
        for (v, old, new) in [(vu1, f1, f2), (vu2, f2, f1)] {
            let list = &mut self.node_facets[v];
            let at = list.iter().position(|&g| g == old).expect("membership");
            list[at] = new;
        }
    }

    /// One step of the lazy chain.
    pub fn apply_step(&mut self) -> StepOutcome {
        self.diagnostics.steps += 1;
        let Some(p) = self.propose_swap() else {
            self.diagnostics.accepted += 1;
            return StepOutcome::Accepted;
        };
        let outcome = self.evaluate(p);
        match outcome {
            StepOutcome::Accepted => {
                self.apply(p);
                self.diagnostics.accepted += 1;
            }
            StepOutcome::Rejected(RejectKind::DuplicateMembership) => {
                self.diagnostics.rejected_duplicate += 1
            }
            StepOutcome::Rejected(RejectKind::Inclusion) => {
                self.diagnostics.rejected_inclusion += 1
            }
        }
        outcome
    }

    pub fn run(&mut self, steps: u64) {
        for _ in 0..steps {
            self.apply_step();
        }
    }
}

#[derive(Clone, Debug)]
pub struct Ensemble {
    pub samples: Vec<Realization>,
    pub diagnostics: ChainDiagnostics,
}

/// Burns in, then keeps one snapshot every `gap` steps.
pub fn sample_ensemble(seed_real: &Realization, cfg: &ScmConfig) -> Ensemble {
    let mut chain = ChainState::new(seed_real, cfg.seed);
    let mut samples = Vec::with_capacity(cfg.n_samples);
    if cfg.n_samples > 0 {
        chain.run(cfg.burn_in);
        for i in 0..cfg.n_samples {
            if i > 0 {
                chain.run(cfg.gap.max(1));
            }
            samples.push(chain.realization());
        }
    }
    Ensemble {
        samples,
        diagnostics: chain.diagnostics(),
    }
}

/// Like [`sample_ensemble`] but hands each snapshot to `visit` instead of
/// collecting them.
pub fn for_each_sample(
    seed_real: &Realization,
    cfg: &ScmConfig,
    mut visit: impl FnMut(usize, &Realization),
) -> ChainDiagnostics {
    let mut chain = ChainState::new(seed_real, cfg.seed);
    if cfg.n_samples > 0 {
        chain.run(cfg.burn_in);
        for i in 0..cfg.n_samples {
            if i > 0 {
                chain.run(cfg.gap.max(1));
            }
            visit(i, &chain.realization());
        }
    }
    chain.diagnostics()
}
