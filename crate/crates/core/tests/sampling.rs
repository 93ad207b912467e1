use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use simplicial::experiments::{scan_all_pairs, scan_random_pairs};
use simplicial::scm::ChainState;
use simplicial::seqgen::{ascending_partitions, poisson_pair, PartitionTable, PoissonPairSpec};
use simplicial::{Realization, SolverOptions};

fn chi_square_p(counts: &[u64], expected: f64) -> f64 {
    let stat: f64 = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    ChiSquared::new((counts.len() - 1) as f64).unwrap().sf(stat)
}

#[test]
fn partitions_are_uniform() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for total in 1..=8 {
        let table = PartitionTable::new(total).unwrap();
        let all = ascending_partitions(total);
        let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
        for (i, p) in all.iter().enumerate() {
            let mut desc = p.clone();
            desc.reverse();
            index.insert(desc, i);
        }
        let draws = 4000 * all.len() as u64;
        let mut counts = vec![0u64; all.len()];
        for _ in 0..draws {
            counts[index[&table.sample(total, &mut rng).unwrap()]] += 1;
        }
        if all.len() > 1 {
            let p = chi_square_p(&counts, draws as f64 / all.len() as f64);
            assert!(p > 0.001, "E={total}: p={p} counts={counts:?}");
        }
    }
}

#[test]
fn swap_proposals_are_uniform_over_pairs() {
    let real = Realization::new(5, vec![vec![0, 1, 2], vec![3, 4]]);
    let mut chain = ChainState::new(&real, 99);
    assert_eq!(chain.incidence_count(), 5);
    let draws = 1_000_000u64;
    let mut counts = HashMap::new();
    for _ in 0..draws {
        let p = chain.propose_swap().unwrap();
        assert_ne!(p.first, p.second);
        *counts
            .entry((p.first.min(p.second), p.first.max(p.second)))
            .or_insert(0u64) += 1;
    }
    assert_eq!(counts.len(), 10);
    let sigma = (draws as f64 * 0.1 * 0.9).sqrt();
    for (&pair, &c) in &counts {
        assert!(
            (c as f64 - draws as f64 / 10.0).abs() < 4.0 * sigma,
            "{pair:?}: {c}"
        );
    }
    let counts: Vec<u64> = counts.into_values().collect();
    assert!(chi_square_p(&counts, draws as f64 / 10.0) > 0.001);
}

#[test]
fn poisson_pair_means_track_the_truncated_mean() {
    let spec = PoissonPairSpec {
        total: 1000,
        lambda_d: 3.0,
        lambda_s: 4.0,
    };
    let truncated = |l: f64| l / (1.0 - (-l).exp());
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let (mut s_bar, mut d_bar) = (0.0, 0.0);
    let runs = 1000;
    for _ in 0..runs {
        let g = poisson_pair(&spec, &mut rng).unwrap();
        assert!((g.mean_size - 1000.0 / g.sequence.m() as f64).abs() < 1e-9);
        s_bar += g.mean_size;
        d_bar += g.mean_degree;
    }
    s_bar /= runs as f64;
    d_bar /= runs as f64;
    // the clamped final draw and the ratio estimator bias by O(1/m) only
    assert!((s_bar - truncated(4.0)).abs() < 0.05, "s_bar={s_bar}");
    assert!((d_bar - truncated(3.0)).abs() < 0.05, "d_bar={d_bar}");
}

#[test]
fn random_pairs_agree_with_the_exhaustive_grid() {
    let grid = scan_all_pairs(13, SolverOptions::default()).unwrap();
    let recs = &grid.records;
    let total = recs.len() as f64;
    let simplicial: Vec<_> = recs
        .iter()
        .filter(|r| r.outcome == simplicial::experiments::OutcomeKind::Simplicial)
        .collect();
    let s = simplicial.len() as f64 / total;
    let p = recs.iter().filter(|r| !r.is_hard()).count() as f64 / total;
    let s_p = simplicial.iter().filter(|r| !r.is_hard()).count() as f64 / simplicial.len() as f64;

    let n = 10_000;
    let report = &scan_random_pairs(&[13], n, SolverOptions::default(), 5).unwrap()[0];
    let within = |est: f64, truth: f64, count: f64| {
        let sigma = (truth * (1.0 - truth) / count).sqrt();
        (est - truth).abs() <= 3.0 * sigma.max(1e-12)
    };
    assert!(within(report.s, s, n as f64), "s {} vs {}", report.s, s);
    assert!(within(report.p, p, n as f64), "p {} vs {}", report.p, p);
    assert!(
        within(report.s_p, s_p, report.simplicial as f64),
        "s_p {} vs {}",
        report.s_p,
        s_p
    );
}
