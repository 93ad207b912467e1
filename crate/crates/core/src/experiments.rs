//! Ensemble experiments: hardness scans over partition pairs, random-pair
//! fractions, Betti sweeps over generated ensembles, and the empirical
//! facet-list pipeline.
//!
//! Every instance draws from its own ChaCha stream derived from the master
//! seed and the instance index, so results do not depend on scheduling.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{betti_numbers_guarded, BettiPair};
use crate::model::{DegreeSizeSequence, Realization};
use crate::realizer::{realize_with, Outcome, SolverOptions};
use crate::scm::{for_each_sample, ChainDiagnostics, ScmConfig};
use crate::seqgen::{
    ascending_partitions, poisson_pair, regular_degree_pair, GeneratedPair, PartitionTable,
    PoissonPairSpec, DEFAULT_RETRY_CAP,
};
use crate::stats;

pub const GRID_GUARD: usize = 20;

/// Independent generator for instance `index` under `master`.
pub fn instance_rng(master: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(index);
    rng
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutcomeKind {
    Simplicial,
    NonSimplicial,
    Cutoff,
}

impl OutcomeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            OutcomeKind::Simplicial => "simplicial",
            OutcomeKind::NonSimplicial => "non_simplicial",
            OutcomeKind::Cutoff => "cutoff",
        }
    }
}

impl From<&Outcome> for OutcomeKind {
    fn from(o: &Outcome) -> Self {
        match o {
            Outcome::Simplicial(_) => OutcomeKind::Simplicial,
            Outcome::NonSimplicial => OutcomeKind::NonSimplicial,
            Outcome::Cutoff => OutcomeKind::Cutoff,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HardnessRecord {
    pub index: usize,
    pub degrees: Vec<u32>,
    pub sizes: Vec<u32>,
    pub outcome: OutcomeKind,
    pub tau_b: u64,
    pub tau_r: u64,
    pub tau_c: u64,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl HardnessRecord {
    /// Not solved greedily; see [`SolverVerdict::is_easy`](crate::realizer::SolverVerdict::is_easy).
    pub fn is_hard(&self) -> bool {
        match self.outcome {
            OutcomeKind::Simplicial => self.tau_c > 0,
            OutcomeKind::NonSimplicial => self.tau_c > 1,
            OutcomeKind::Cutoff => true,
        }
    }
}

fn classify(index: usize, degrees: &[u32], sizes: &[u32], opts: SolverOptions) -> HardnessRecord {
    let start = Instant::now();
    let seq = DegreeSizeSequence::normalize(degrees, sizes).expect("positive partitions");
    let v = realize_with(&seq, opts);
    HardnessRecord {
        index,
        degrees: seq.degrees().to_vec(),
        sizes: seq.sizes().to_vec(),
        outcome: OutcomeKind::from(&v.outcome),
        tau_b: v.stats.tau_b,
        tau_r: v.stats.tau_r,
        tau_c: v.stats.tau_c(),
        wall_time: start.elapsed(),
    }
}

fn join(xs: &[u32]) -> String {
    xs.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

/// CSV with header `index,degrees,sizes,outcome,tau_b,tau_r,tau_c`, plus
/// `wall_us` when `timing` is set. Lists are space separated.
pub fn hardness_csv(records: &[HardnessRecord], timing: bool) -> String {
    let mut out = String::from("index,degrees,sizes,outcome,tau_b,tau_r,tau_c");
    out.push_str(if timing { ",wall_us\n" } else { "\n" });
    for r in records {
        let _ = write!(
            out,
            "{},{},{},{},{},{},{}",
            r.index,
            join(&r.degrees),
            join(&r.sizes),
            r.outcome.as_str(),
            r.tau_b,
            r.tau_r,
            r.tau_c
        );
        if timing {
            let _ = write!(out, ",{}", r.wall_time.as_micros());
        }
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct HardnessSummary {
    pub total: usize,
    pub simplicial: usize,
    pub non_simplicial: usize,
    pub cutoff: usize,
    pub hard: usize,
    pub hard_fraction: f64,
    pub easy_fraction: f64,
    pub simplicial_fraction: f64,
}

impl HardnessSummary {
    pub fn of(records: &[HardnessRecord]) -> Self {
        let count = |k| records.iter().filter(|r| r.outcome == k).count();
        let total = records.len();
        let hard = records.iter().filter(|r| r.is_hard()).count();
        let frac = |x: usize| {
            if total == 0 {
                0.0
            } else {
                x as f64 / total as f64
            }
        };
        Self {
            total,
            simplicial: count(OutcomeKind::Simplicial),
            non_simplicial: count(OutcomeKind::NonSimplicial),
            cutoff: count(OutcomeKind::Cutoff),
            hard,
            hard_fraction: frac(hard),
            easy_fraction: frac(total - hard),
            simplicial_fraction: frac(count(OutcomeKind::Simplicial)),
        }
    }
}

/// Every ordered pair of partitions of one size.
#[derive(Clone, Debug)]
pub struct PairGrid {
    pub total: usize,
    /// Partitions in ascending-composition order; grid axis labels.
    pub partitions: Vec<Vec<u32>>,
    /// Row-major: `records[i * a + j]` has degrees `partitions[i]` and sizes `partitions[j]`.
    pub records: Vec<HardnessRecord>,
    pub summary: HardnessSummary,
}

impl PairGrid {
    pub fn record(&self, d_index: usize, s_index: usize) -> &HardnessRecord {
        &self.records[d_index * self.partitions.len() + s_index]
    }
}

/// Runs the solver on all a(E) x a(E) partition pairs of `total`.
pub fn scan_all_pairs(total: usize, opts: SolverOptions) -> Result<PairGrid> {
    scan_all_pairs_guarded(total, opts, GRID_GUARD)
}

pub fn scan_all_pairs_guarded(total: usize, opts: SolverOptions, guard: usize) -> Result<PairGrid> {
    if total > guard {
        return Err(Error::Guard {
            what: "grid size E",
            value: total,
            guard,
        });
    }
    if total == 0 {
        return Err(Error::InvalidInput("E must be at least 1".into()));
    }
    let partitions = ascending_partitions(total);
    let a = partitions.len();
    let records: Vec<HardnessRecord> = (0..a * a)
        .into_par_iter()
        .map(|idx| classify(idx, &partitions[idx / a], &partitions[idx % a], opts))
        .collect();
    let summary = HardnessSummary::of(&records);
    Ok(PairGrid {
        total,
        partitions,
        records,
        summary,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DegreeSource {
    /// Every partition of the degree total.
    Exhaustive,
    /// This many uniform random partitions.
    Sampled { count: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniformSizeReport {
    pub degree_total: usize,
    pub size_value: u32,
    pub facet_count: usize,
    pub summary: HardnessSummary,
    /// Easy fraction among degree partitions whose largest part fits the facet count.
    pub feasible_easy_fraction: f64,
    pub feasible_count: usize,
    /// Counts of tau_c in bins `0`, `1`, `2-9`, `10-99`, ... keyed by lower bound.
    pub tau_histogram: BTreeMap<u64, usize>,
}

fn tau_bin(tau: u64) -> u64 {
    match tau {
        0 | 1 => tau,
        2..=9 => 2,
        t => 10u64.pow(t.ilog10()),
    }
}

/// Fixed uniform size sequence (`facet_count` facets of `size_value`)
/// against partitions of the same total as degrees.
pub fn scan_uniform_sizes(
    degree_total: usize,
    size_value: u32,
    facet_count: usize,
    source: DegreeSource,
    opts: SolverOptions,
) -> Result<(Vec<HardnessRecord>, UniformSizeReport)> {
    if size_value == 0 || facet_count == 0 || size_value as usize * facet_count != degree_total {
        return Err(Error::InvalidInput(format!(
            "{facet_count} facets of size {size_value} do not sum to {degree_total}"
        )));
    }
    let sizes = vec![size_value; facet_count];
    let degree_lists: Vec<Vec<u32>> = match source {
        DegreeSource::Exhaustive => ascending_partitions(degree_total),
        DegreeSource::Sampled { count, seed } => {
            let table = PartitionTable::new(degree_total)?;
            (0..count)
                .map(|i| table.sample(degree_total, &mut instance_rng(seed, i as u64)))
                .collect::<Result<_>>()?
        }
    };
    let records: Vec<HardnessRecord> = degree_lists
        .par_iter()
        .enumerate()
        .map(|(i, d)| classify(i, d, &sizes, opts))
        .collect();
    let feasible: Vec<&HardnessRecord> = records
        .iter()
        .filter(|r| r.degrees[0] as usize <= facet_count)
        .collect();
    let feasible_easy = feasible.iter().filter(|r| !r.is_hard()).count();
    let mut tau_histogram = BTreeMap::new();
    for r in &records {
        *tau_histogram.entry(tau_bin(r.tau_c)).or_insert(0) += 1;
    }
    let report = UniformSizeReport {
        degree_total,
        size_value,
        facet_count,
        summary: HardnessSummary::of(&records),
        feasible_easy_fraction: if feasible.is_empty() {
            0.0
        } else {
            feasible_easy as f64 / feasible.len() as f64
        },
        feasible_count: feasible.len(),
        tau_histogram,
    };
    Ok((records, report))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomPairReport {
    pub total: usize,
    pub n: usize,
    pub simplicial: usize,
    pub polynomial: usize,
    pub simplicial_polynomial: usize,
    pub cutoff: usize,
    /// S / N
    pub s: f64,
    /// P / N
    pub p: f64,
    /// S_p / S
    pub s_p: f64,
    pub s_ci: (f64, f64),
    pub p_ci: (f64, f64),
    pub s_p_ci: (f64, f64),
}

/// Classifies `n` pairs of independent uniform partitions for every total.
pub fn scan_random_pairs(
    totals: &[usize],
    n: usize,
    opts: SolverOptions,
    seed: u64,
) -> Result<Vec<RandomPairReport>> {
    totals
        .iter()
        .map(|&total| {
            let table = PartitionTable::new(total)?;
            let records: Vec<HardnessRecord> = (0..n)
                .into_par_iter()
                .map(|i| {
                    let mut rng = instance_rng(seed ^ (total as u64).rotate_left(32), i as u64);
                    let d = table.sample(total, &mut rng)?;
                    let s = table.sample(total, &mut rng)?;
                    Ok(classify(i, &d, &s, opts))
                })
                .collect::<Result<_>>()?;
            Ok(random_pair_report(total, &records))
        })
        .collect()
}

fn random_pair_report(total: usize, records: &[HardnessRecord]) -> RandomPairReport {
    let n = records.len();
    let simplicial = records
        .iter()
        .filter(|r| r.outcome == OutcomeKind::Simplicial)
        .count();
    let polynomial = records.iter().filter(|r| !r.is_hard()).count();
    let simplicial_polynomial = records
        .iter()
        .filter(|r| r.outcome == OutcomeKind::Simplicial && !r.is_hard())
        .count();
    let cutoff = records
        .iter()
        .filter(|r| r.outcome == OutcomeKind::Cutoff)
        .count();
    let frac = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
    let z = 1.96;
    RandomPairReport {
        total,
        n,
        simplicial,
        polynomial,
        simplicial_polynomial,
        cutoff,
        s: frac(simplicial, n),
        p: frac(polynomial, n),
        s_p: frac(simplicial_polynomial, simplicial),
        s_ci: stats::wilson_interval(simplicial, n, z),
        p_ci: stats::wilson_interval(polynomial, n, z),
        s_p_ci: stats::wilson_interval(simplicial_polynomial, simplicial, z),
    }
}

pub fn random_pairs_csv(reports: &[RandomPairReport]) -> String {
    let mut out = String::from(
        "E,n,simplicial,polynomial,simplicial_polynomial,cutoff,s,s_lo,s_hi,p,p_lo,p_hi,s_p,s_p_lo,s_p_hi\n",
    );
    for r in reports {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}",
            r.total,
            r.n,
            r.simplicial,
            r.polynomial,
            r.simplicial_polynomial,
            r.cutoff,
            r.s,
            r.s_ci.0,
            r.s_ci.1,
            r.p,
            r.p_ci.0,
            r.p_ci.1,
            r.s_p,
            r.s_p_ci.0,
            r.s_p_ci.1
        );
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Poisson { lambda_d: f64 },
    Regular { degree: u32 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Poisson { .. } => "poisson",
            Family::Regular { .. } => "regular",
        }
    }

    /// The degree parameter: Poisson mean or the regular degree.
    pub fn degree_parameter(&self) -> f64 {
        match *self {
            Family::Poisson { lambda_d } => lambda_d,
            Family::Regular { degree } => f64::from(degree),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub family: Family,
    pub lambda_s: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BettiScanConfig {
    pub total: u64,
    pub grid: Vec<GridPoint>,
    /// Simplicial sequences wanted per grid point.
    pub replicates: usize,
    /// SCM samples averaged per sequence.
    pub scm_samples: usize,
    /// Burn-in and gap, in multiples of E.
    pub burn_in_factor: u64,
    pub gap_factor: u64,
    pub solver: SolverOptions,
    /// Draws a replicate may spend before the grid point is declared unreachable.
    pub draw_cap: usize,
    pub skeleton_guard: usize,
    pub seed: u64,
}

impl BettiScanConfig {
    pub fn new(
        total: u64,
        grid: Vec<GridPoint>,
        replicates: usize,
        scm_samples: usize,
        seed: u64,
    ) -> Self {
        Self {
            total,
            grid,
            replicates,
            scm_samples,
            burn_in_factor: 50,
            gap_factor: 10,
            solver: SolverOptions::default(),
            draw_cap: 50,
            skeleton_guard: 64,
            seed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BettiScanRecord {
    pub family: String,
    pub degree_parameter: f64,
    pub lambda_s: f64,
    pub requested: usize,
    pub replicates: usize,
    pub rejected_draws: usize,
    pub unreachable: bool,
    /// Empirical means over replicates of the generated d-bar and s-bar.
    pub mean_degree: f64,
    pub mean_size: f64,
    /// Per replicate: SCM-averaged b0 and b1.
    pub beta0: Vec<f64>,
    pub beta1: Vec<f64>,
    pub beta0_median: f64,
    pub beta0_q25: f64,
    pub beta0_q75: f64,
    pub beta1_median: f64,
    pub beta1_q25: f64,
    pub beta1_q75: f64,
}

struct Replicate {
    rejected: usize,
    found: Option<(GeneratedPair, f64, f64)>,
}

fn generate(point: &GridPoint, total: u64, rng: &mut ChaCha8Rng) -> Result<GeneratedPair> {
    match point.family {
        Family::Poisson { lambda_d } => poisson_pair(
            &PoissonPairSpec {
                total,
                lambda_d,
                lambda_s: point.lambda_s,
            },
            rng,
        ),
        Family::Regular { degree } => {
            regular_degree_pair(total, degree, point.lambda_s, DEFAULT_RETRY_CAP, rng)
        }
    }
}

/// Average Betti pair over `cfg.n_samples` SCM states seeded at `real`.
pub fn scm_mean_betti(
    real: &Realization,
    cfg: &ScmConfig,
    guard: usize,
) -> Result<(f64, f64, ChainDiagnostics)> {
    let mut b0 = 0.0;
    let mut b1 = 0.0;
    let mut err = None;
    let diag = for_each_sample(real, cfg, |_, sample| {
        match betti_numbers_guarded(sample, guard) {
            Ok(b) => {
                b0 += b.beta0 as f64;
                b1 += b.beta1 as f64;
            }
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let k = cfg.n_samples.max(1) as f64;
    Ok((b0 / k, b1 / k, diag))
}

fn run_replicate(point: &GridPoint, cfg: &BettiScanConfig, stream: u64) -> Result<Replicate> {
    let mut rng = instance_rng(cfg.seed, stream);
    let mut rejected = 0;
    for _ in 0..cfg.draw_cap {
        let pair = match generate(point, cfg.total, &mut rng) {
            Ok(p) => p,
            Err(Error::Generation(_)) => {
                rejected += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let verdict = realize_with(&pair.sequence, cfg.solver);
        let Outcome::Simplicial(real) = verdict.outcome else {
            rejected += 1;
            continue;
        };
        let scm = ScmConfig {
            burn_in: cfg.burn_in_factor * cfg.total,
            gap: (cfg.gap_factor * cfg.total).max(1),
            n_samples: cfg.scm_samples,
            seed: rand::Rng::random(&mut rng),
        };
        let (b0, b1, _) = scm_mean_betti(&real, &scm, cfg.skeleton_guard)?;
        return Ok(Replicate {
            rejected,
            found: Some((pair, b0, b1)),
        });
    }
    Ok(Replicate {
        rejected,
        found: None,
    })
}

/// For each grid point: draw sequences until `replicates` simplicial ones are
/// realized, run the SCM from each realization, average the Betti numbers
/// over the SCM samples, then summarize across replicates.
pub fn betti_scan(cfg: &BettiScanConfig) -> Result<Vec<BettiScanRecord>> {
    let jobs: Vec<(usize, usize)> = (0..cfg.grid.len())
        .flat_map(|g| (0..cfg.replicates).map(move |r| (g, r)))
        .collect();
    let results: Vec<Replicate> = jobs
        .par_iter()
        .map(|&(g, r)| run_replicate(&cfg.grid[g], cfg, (g * cfg.replicates + r) as u64))
        .collect::<Result<_>>()?;

    let records = cfg
        .grid
        .iter()
        .enumerate()
        .map(|(g, point)| {
            let reps = &results[g * cfg.replicates..(g + 1) * cfg.replicates];
            let found: Vec<&(GeneratedPair, f64, f64)> =
                reps.iter().filter_map(|r| r.found.as_ref()).collect();
            let beta0: Vec<f64> = found.iter().map(|f| f.1).collect();
            let beta1: Vec<f64> = found.iter().map(|f| f.2).collect();
            let s0 = stats::sorted(&beta0);
            let s1 = stats::sorted(&beta1);
            BettiScanRecord {
                family: point.family.name().to_string(),
                degree_parameter: point.family.degree_parameter(),
                lambda_s: point.lambda_s,
                requested: cfg.replicates,
                replicates: found.len(),
                rejected_draws: reps.iter().map(|r| r.rejected).sum(),
                unreachable: found.len() < cfg.replicates,
                mean_degree: stats::mean(
                    &found.iter().map(|f| f.0.mean_degree).collect::<Vec<_>>(),
                ),
                mean_size: stats::mean(&found.iter().map(|f| f.0.mean_size).collect::<Vec<_>>()),
                beta0_median: stats::quantile_sorted(&s0, 0.5),
                beta0_q25: stats::quantile_sorted(&s0, 0.25),
                beta0_q75: stats::quantile_sorted(&s0, 0.75),
                beta1_median: stats::quantile_sorted(&s1, 0.5),
                beta1_q25: stats::quantile_sorted(&s1, 0.25),
                beta1_q75: stats::quantile_sorted(&s1, 0.75),
                beta0,
                beta1,
            }
        })
        .collect();
    Ok(records)
}

pub fn betti_scan_csv(records: &[BettiScanRecord]) -> String {
    let mut out = String::from(
        "family,degree_parameter,lambda_s,mean_degree,mean_size,replicates,requested,rejected_draws,unreachable,\
beta0_median,beta0_q25,beta0_q75,beta1_median,beta1_q25,beta1_q75\n",
    );
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{:.6},{:.6},{},{},{},{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}",
            r.family,
            r.degree_parameter,
            r.lambda_s,
            r.mean_degree,
            r.mean_size,
            r.replicates,
            r.requested,
            r.rejected_draws,
            r.unreachable,
            r.beta0_median,
            r.beta0_q25,
            r.beta0_q75,
            r.beta1_median,
            r.beta1_q25,
            r.beta1_q75
        );
    }
    out
}

/// Removes repeated facets and facets contained in another, then drops
/// unused node labels (keeping relative order).
pub fn prune_included_faces(raw: &Realization) -> Realization {
    let mut facets: Vec<Vec<u32>> = raw.facets().to_vec();
    facets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    facets.dedup();
    let sets: Vec<_> = Realization::new(raw.n(), facets.clone()).node_sets();
    let kept: Vec<Vec<u32>> = (0..facets.len())
        .filter(|&i| {
            !(0..i).any(|j| facets[j].len() > facets[i].len() && sets[i].is_subset(&sets[j]))
        })
        .map(|i| facets[i].clone())
        .collect();
    let mut used: Vec<u32> = kept.iter().flatten().copied().collect();
    used.sort_unstable();
    used.dedup();
    let mut relabel = vec![u32::MAX; raw.n()];
    for (new, &old) in used.iter().enumerate() {
        relabel[old as usize] = new as u32;
    }
    Realization::new(
        used.len(),
        kept.into_iter()
            .map(|f| f.into_iter().map(|v| relabel[v as usize]).collect())
            .collect(),
    )
}

/// The degree-size sequence of a complex.
pub fn extract_sequence(real: &Realization) -> Result<DegreeSizeSequence> {
    DegreeSizeSequence::normalize(&real.node_degrees(), &real.facet_sizes())
}

#[derive(Clone, Debug, Serialize)]
pub struct EmpiricalReport {
    pub n: usize,
    pub m: usize,
    pub dropped_facets: usize,
    pub outcome: OutcomeKind,
    pub tau_c: u64,
    pub constructed: Option<BettiPair>,
    pub samples: usize,
    pub mean_beta0: f64,
    pub mean_beta1: f64,
    /// Joint histogram of SCM sample Betti pairs as `(b0, b1, count)`.
    pub histogram: Vec<(usize, usize, usize)>,
    pub diagnostics: ChainDiagnostics,
    #[serde(skip)]
    pub realization: Option<Realization>,
}

/// Prunes the corpus, realizes its sequence, and compares the realization's
/// Betti pair with the SCM distribution seeded from it.
pub fn empirical_pipeline(
    raw: &Realization,
    solver: SolverOptions,
    scm: &ScmConfig,
    skeleton_guard: usize,
) -> Result<EmpiricalReport> {
    let corpus = prune_included_faces(raw);
    let dropped_facets = raw.m() - corpus.m();
    let seq = extract_sequence(&corpus)?;
    let verdict = realize_with(&seq, solver);
    let mut report = EmpiricalReport {
        n: seq.n(),
        m: seq.m(),
        dropped_facets,
        outcome: OutcomeKind::from(&verdict.outcome),
        tau_c: verdict.stats.tau_c(),
        constructed: None,
        samples: 0,
        mean_beta0: f64::NAN,
        mean_beta1: f64::NAN,
        histogram: Vec::new(),
        diagnostics: ChainDiagnostics::default(),
        realization: None,
    };
    let Outcome::Simplicial(real) = verdict.outcome else {
        return Ok(report);
    };
    report.constructed = Some(betti_numbers_guarded(&real, skeleton_guard)?);

    const BATCH: usize = 256;
    let mut pairs: Vec<BettiPair> = Vec::with_capacity(scm.n_samples);
    let mut pending: Vec<Realization> = Vec::with_capacity(BATCH);
    let mut failure = None;
    let mut flush = |pending: &mut Vec<Realization>, pairs: &mut Vec<BettiPair>| {
        let batch: Vec<Result<BettiPair>> = pending
            .par_iter()
            .map(|r| betti_numbers_guarded(r, skeleton_guard))
            .collect();
        pending.clear();
        for b in batch {
            match b {
                Ok(b) => pairs.push(b),
                Err(e) => failure = Some(e),
            }
        }
    };
    report.diagnostics = for_each_sample(&real, scm, |_, sample| {
        pending.push(sample.clone());
        if pending.len() == BATCH {
            flush(&mut pending, &mut pairs);
        }
    });
    flush(&mut pending, &mut pairs);
    if let Some(e) = failure {
        return Err(e);
    }

    let mut hist: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for b in &pairs {
        *hist.entry((b.beta0, b.beta1)).or_insert(0) += 1;
    }
    report.samples = pairs.len();
    report.mean_beta0 = stats::mean(&pairs.iter().map(|b| b.beta0 as f64).collect::<Vec<_>>());
    report.mean_beta1 = stats::mean(&pairs.iter().map(|b| b.beta1 as f64).collect::<Vec<_>>());
    report.histogram = hist.into_iter().map(|((a, b), c)| (a, b, c)).collect();
    report.realization = Some(real);
    Ok(report)
}

/// Joint histogram as CSV with header `beta0,beta1,count`.
pub fn histogram_csv(histogram: &[(usize, usize, usize)]) -> String {
    let mut out = String::from("beta0,beta1,count\n");
    for (b0, b1, c) in histogram {
        let _ = writeln!(out, "{b0},{b1},{c}");
    }
    out
}
