//! Random degree-size sequences: uniform integer partitions, Poisson-Poisson
//! pairs, and d-regular degrees with Poisson sizes.

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::DegreeSizeSequence;

pub const PARTITION_GUARD: usize = 2000;
pub const DEFAULT_RETRY_CAP: usize = 1000;

/// Counts `p(n, k)` of partitions of `n` into parts no larger than `k`.
///
/// Stored as `f64`: p(2000) is about 4.7e45, beyond `u128`, and the
/// relative rounding error (~1e-16) is far below any sampling resolution.
#[derive(Clone, Debug)]
pub struct PartitionTable {
    max_n: usize,
    counts: Vec<f64>,
}

impl PartitionTable {
    pub fn new(max_n: usize) -> Result<Self> {
        if max_n > PARTITION_GUARD {
            return Err(Error::Guard {
                what: "partition size",
                value: max_n,
                guard: PARTITION_GUARD,
            });
        }
        let w = max_n + 1;
        let mut counts = vec![0.0; w * w];
        counts[..w].fill(1.0);
        for n in 1..w {
            for k in 1..w {
                let without_k = counts[n * w + k - 1];
                let with_k = if k <= n { counts[(n - k) * w + k] } else { 0.0 };
                counts[n * w + k] = without_k + with_k;
            }
        }
        Ok(Self { max_n, counts })
    }

    /// Partitions of `n` with largest part at most `k`.
    pub fn count(&self, n: usize, k: usize) -> f64 {
        let k = k.min(self.max_n);
        self.counts[n * (self.max_n + 1) + k]
    }

    /// Total number of partitions of `n`.
    pub fn total(&self, n: usize) -> f64 {
        self.count(n, n)
    }

    /// Draws a partition of `n` (nonincreasing) with probability 1/p(n).
    ///
    /// Walking down from the largest allowed part `k`, a part of size `k` is
    /// taken with probability p(n-k, k)/p(n, k), otherwise the bound drops.
    pub fn sample<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<Vec<u32>> {
        if n == 0 || n > self.max_n {
            return Err(Error::InvalidInput(format!(
                "partition size {n} outside 1..={}",
                self.max_n
            )));
        }
        let mut parts = Vec::new();
        let (mut rest, mut k) = (n, n);
        while rest > 0 {
            let total = self.count(rest, k);
            let with_k = if k <= rest {
                self.count(rest - k, k)
            } else {
                0.0
            };
            let u: f64 = rng.random::<f64>() * total;
            if u < with_k {
                parts.push(k as u32);
                rest -= k;
            } else {
                k -= 1;
            }
        }
        Ok(parts)
    }
}

/// One uniformly random partition of `total`.
pub fn uniform_partition<R: Rng + ?Sized>(total: usize, rng: &mut R) -> Result<Vec<u32>> {
    PartitionTable::new(total)?.sample(total, rng)
}

/// All partitions of `n` as ascending compositions, in lexicographic order
/// (`1+1+...+1` first, `n` last).
pub fn ascending_partitions(n: usize) -> Vec<Vec<u32>> {
    // Kelleher's accelerated ascending-composition generator
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut a = vec![0usize; n + 1];
    let mut k = 1;
    let mut y = n - 1;
    while k != 0 {
        k -= 1;
        let mut x = a[k] + 1;
        while 2 * x <= y {
            a[k] = x;
            y -= x;
            k += 1;
        }
        let l = k + 1;
        while x <= y {
            a[k] = x;
            a[l] = y;
            out.push(a[..k + 2].iter().map(|&v| v as u32).collect());
            x += 1;
            y -= 1;
        }
        a[k] = x + y;
        y = x + y - 1;
        out.push(a[..k + 1].iter().map(|&v| v as u32).collect());
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoissonPairSpec {
    pub total: u64,
    pub lambda_d: f64,
    pub lambda_s: f64,
}

impl PoissonPairSpec {
    fn validate(&self) -> Result<()> {
        if self.total == 0 {
            return Err(Error::InvalidInput("E must be at least 1".into()));
        }
        if !(self.lambda_d > 0.0 && self.lambda_s > 0.0) {
            return Err(Error::InvalidInput("Poisson means must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratedPair {
    pub sequence: DegreeSizeSequence,
    /// Degree-1 nodes added only to carry size-1 facets.
    pub matched_nodes: usize,
    /// Mean degree over the nodes that were not added for matching.
    pub mean_degree: f64,
    pub mean_size: f64,
}

fn zero_truncated<R: Rng + ?Sized>(dist: &Poisson<f64>, rng: &mut R) -> u64 {
    loop {
        let x = dist.sample(rng) as u64;
        if x >= 1 {
            return x;
        }
    }
}

/// i.i.d. zero-truncated Poisson draws until they sum to `budget`, the last
/// one clamped to fit.
fn fill_budget<R: Rng + ?Sized>(budget: u64, lambda: f64, rng: &mut R) -> Result<Vec<u32>> {
    let dist = Poisson::new(lambda).map_err(|e| Error::InvalidInput(e.to_string()))?;
    let mut out = Vec::new();
    let mut sum = 0;
    while sum < budget {
        let x = zero_truncated(&dist, rng).min(budget - sum);
        out.push(x as u32);
        sum += x;
    }
    Ok(out)
}

fn mean(xs: &[u32]) -> f64 {
    if xs.is_empty() {
        0.0
    } else {
        xs.iter().map(|&x| f64::from(x)).sum::<f64>() / xs.len() as f64
    }
}

fn assemble(sizes: Vec<u32>, matched: usize, free_degrees: Vec<u32>) -> Result<GeneratedPair> {
    let mean_degree = mean(&free_degrees);
    let mean_size = mean(&sizes);
    let mut degrees = free_degrees;
    degrees.extend(std::iter::repeat_n(1, matched));
    Ok(GeneratedPair {
        sequence: DegreeSizeSequence::normalize(&degrees, &sizes)?,
        matched_nodes: matched,
        mean_degree,
        mean_size,
    })
}

/// Poisson sizes and Poisson degrees, every size-1 facet matched with an
/// extra degree-1 node.
pub fn poisson_pair<R: Rng + ?Sized>(spec: &PoissonPairSpec, rng: &mut R) -> Result<GeneratedPair> {
    spec.validate()?;
    let sizes = fill_budget(spec.total, spec.lambda_s, rng)?;
    let matched = sizes.iter().filter(|&&s| s == 1).count();
    let budget = spec.total - matched as u64;
    let degrees = if budget > 0 {
        fill_budget(budget, spec.lambda_d, rng)?
    } else {
        Vec::new()
    };
    assemble(sizes, matched, degrees)
}

/// Poisson sizes with every remaining node of degree exactly `degree`.
/// Size sequences whose leftover budget is not a multiple of `degree` are
/// redrawn, up to `retry_cap` times.
pub fn regular_degree_pair<R: Rng + ?Sized>(
    total: u64,
    degree: u32,
    lambda_s: f64,
    retry_cap: usize,
    rng: &mut R,
) -> Result<GeneratedPair> {
    PoissonPairSpec {
        total,
        lambda_d: 1.0,
        lambda_s,
    }
    .validate()?;
    if degree == 0 {
        return Err(Error::InvalidInput("degree must be positive".into()));
    }
    for _ in 0..retry_cap.max(1) {
        let sizes = fill_budget(total, lambda_s, rng)?;
        let matched = sizes.iter().filter(|&&s| s == 1).count();
        let budget = total - matched as u64;
        if !budget.is_multiple_of(u64::from(degree)) {
            continue;
        }
        let free = vec![degree; (budget / u64::from(degree)) as usize];
        return assemble(sizes, matched, free);
    }
    Err(Error::Generation(format!(
        "no size sequence left a budget divisible by {degree} after {retry_cap} tries"
    )))
}
