//! Copula entropy estimation: rank-based pseudo-observations followed by a
//! Kozachenko–Leonenko k-nearest-neighbor entropy estimate under the max
//! metric. All values are in nats.

use rand::RngCore;

use crate::error::{contract, Error, Result};
use crate::knn::{kth_neighbor_distances_with, NeighborSearch, PointSet};
use crate::math::digamma;
use crate::rng::{mix, open_unit, rng_for};
use crate::sample::Sample;

/// How tied values are ranked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TiePolicy {
    /// Seeded jitter breaks ties, so every column ranks to a permutation of 1..n.
    #[default]
    DistinctRandom,
    /// Tied values share the mean rank of their block.
    Average,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimatorConfig {
    /// Neighbor order.
    pub k: usize,
    pub tie_policy: TiePolicy,
    /// Jitter magnitude relative to the column range.
    pub jitter_scale: f64,
    /// Seed for tie-breaking jitter.
    pub seed: u64,
    pub search: NeighborSearch,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        Self {
            k: 3,
            tie_policy: TiePolicy::DistinctRandom,
            jitter_scale: 1e-10,
            seed: 0,
            search: NeighborSearch::BruteForce,
        }
    }
}

impl EstimatorConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(contract("estimator k must be at least 1"));
        }
        if !(self.jitter_scale >= 0.0 && self.jitter_scale.is_finite()) {
            return Err(contract(format!(
                "jitter_scale must be finite and >= 0, got {}",
                self.jitter_scale
            )));
        }
        Ok(())
    }
}

/// Empirical copula coordinates: column ranks divided by n, entries in (0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoObservations(Sample);

impl PseudoObservations {
    pub fn points(&self) -> &PointSet {
        &self.0
    }

    pub fn into_inner(self) -> Sample {
        self.0
    }
}

/// Ranks of `values` divided by n, ties broken by seeded jitter and then by a
/// random key so the result is always a permutation of {1/n, …, n/n}.
pub(crate) fn distinct_ranks(values: &[f64], jitter_scale: f64, key: u64) -> Vec<f64> {
    let n = values.len();
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let range = hi - lo;
    let scale = jitter_scale * if range > 0.0 { range } else { 1.0 };
    let mut rng = rng_for(key);
    let keyed: Vec<(f64, u64)> = values
        .iter()
        .map(|&v| {
            let u = open_unit(rng.next_u64()) - 0.5;
            (v + scale * u, rng.next_u64())
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        keyed[a]
            .0
            .total_cmp(&keyed[b].0)
            .then(keyed[a].1.cmp(&keyed[b].1))
    });
    let mut out = vec![0.0; n];
    let nf = n as f64;
    for (r, &i) in order.iter().enumerate() {
        out[i] = (r + 1) as f64 / nf;
    }
    out
}

pub(crate) fn average_ranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut out = vec![0.0; n];
    let nf = n as f64;
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // ranks start+1 ..= end
        let mean_rank = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            out[i] = mean_rank / nf;
        }
        start = end;
    }
    out
}

/// Column key for jitter: derived from the config seed and the column index.
#[inline]
pub(crate) fn column_key(seed: u64, column: usize) -> u64 {
    mix(seed, column as u64)
}

pub(crate) fn rank_column(values: &[f64], column: usize, cfg: &EstimatorConfig) -> Vec<f64> {
    match cfg.tie_policy {
        TiePolicy::DistinctRandom => distinct_ranks(values, cfg.jitter_scale, column_key(cfg.seed, column)),
        TiePolicy::Average => average_ranks(values),
    }
}

/// Assembles pseudo-observations from per-column ranks.
pub(crate) fn from_columns(columns: &[Vec<f64>], nrows: usize) -> Result<Sample> {
    let d = columns.len();
    let mut data = Vec::with_capacity(nrows * d);
    for i in 0..nrows {
        data.extend(columns.iter().map(|c| c[i]));
    }
    Sample::new(data, nrows, d)
}

/// Empirical copula transform of `s`.
pub fn rank_transform(s: &Sample, cfg: &EstimatorConfig) -> Result<PseudoObservations> {
    cfg.validate()?;
    let n = s.nrows();
    let columns: Vec<Vec<f64>> = (0..s.ncols())
        .map(|j| rank_column(&s.column(j), j, cfg))
        .collect();
    if cfg.tie_policy == TiePolicy::Average && columns.iter().all(|c| c.iter().all(|&v| v == c[0])) {
        return Err(Error::Degenerate(
            "every column is constant; all pseudo-observations coincide".into(),
        ));
    }
    Ok(PseudoObservations(from_columns(&columns, n)?))
}

/// Kozachenko–Leonenko entropy estimate with the max metric:
/// −ψ(k) + ψ(n) + (d/n) Σᵢ ln(2εᵢ), where εᵢ is the k-th neighbor distance.
pub fn kl_entropy(points: &PointSet, k: usize) -> Result<f64> {
    kl_entropy_with(points, k, NeighborSearch::BruteForce)
}

pub fn kl_entropy_with(points: &PointSet, k: usize, search: NeighborSearch) -> Result<f64> {
    let eps = kth_neighbor_distances_with(points, k, search)?;
    let zeros: Vec<usize> = eps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e == 0.0)
        .map(|(i, _)| i)
        .collect();
    if !zeros.is_empty() {
        return Err(Error::DuplicatePoints { indices: zeros });
    }
    let n = points.nrows();
    let d = points.ncols() as f64;
    let log_sum: f64 = eps.iter().map(|&e| (2.0 * e).ln()).sum();
    Ok(-digamma(k as f64)? + digamma(n as f64)? + d * log_sum / n as f64)
}

fn check_size(n: usize, k: usize) -> Result<()> {
    if n < k + 1 {
        return Err(contract(format!("need at least k + 1 = {} rows, got {n}", k + 1)));
    }
    Ok(())
}

/// Copula entropy of `s`: entropy of its pseudo-observations.
pub fn copula_entropy(s: &Sample, cfg: &EstimatorConfig) -> Result<f64> {
    check_size(s.nrows(), cfg.k)?;
    let u = rank_transform(s, cfg)?;
    kl_entropy_with(u.points(), cfg.k, cfg.search)
}

/// Mutual information among the columns of `s`, the negated copula entropy.
pub fn mutual_information(s: &Sample, cfg: &EstimatorConfig) -> Result<f64> {
    Ok(-copula_entropy(s, cfg)?)
}
