//! Two-sample statistics: the copula-entropy difference T_ce, the
//! mutual-information baseline, Gaussian-kernel MMD² and the energy statistic.

use std::cmp::Ordering;

use crate::copula::{column_key, distinct_ranks, from_columns, rank_column, EstimatorConfig};
use crate::error::{contract, domain, Result};
use crate::knn::PointSet;
use crate::sample::{sample_cmp, Sample};

/// Which hypothesis a label column encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    /// Both samples share one distribution: every row labelled 1.
    H0,
    /// Group membership: m zeros followed by n ones.
    H1,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabelVector {
    pub labels: Vec<f64>,
    pub hypothesis: Hypothesis,
    pub m: usize,
    pub n: usize,
}

pub fn build_labels(m: usize, n: usize, hypothesis: Hypothesis) -> Result<LabelVector> {
    if m == 0 || n == 0 {
        return Err(contract(format!("group sizes must be positive, got m = {m}, n = {n}")));
    }
    let labels = match hypothesis {
        Hypothesis::H0 => vec![1.0; m + n],
        Hypothesis::H1 => std::iter::repeat(0.0)
            .take(m)
            .chain(std::iter::repeat(1.0).take(n))
            .collect(),
    };
    Ok(LabelVector {
        labels,
        hypothesis,
        m,
        n,
    })
}

fn check_pair(x1: &Sample, x2: &Sample) -> Result<()> {
    if x1.ncols() != x2.ncols() {
        return Err(contract(format!(
            "samples differ in dimension: {} vs {}",
            x1.ncols(),
            x2.ncols()
        )));
    }
    Ok(())
}

/// Ranks of the pooled data, one column per coordinate, under `cfg`'s tie policy.
fn pooled_ranks(pooled: &Sample, cfg: &EstimatorConfig) -> Vec<Vec<f64>> {
    (0..pooled.ncols())
        .map(|j| rank_column(&pooled.column(j), j, cfg))
        .collect()
}

/// Copula entropy of the pooled data with `labels` appended as a last column.
/// The label column is always ranked with seeded jitter.
fn labelled_ce(ranks: &[Vec<f64>], labels: &[f64], cfg: &EstimatorConfig) -> Result<f64> {
    let d = ranks.len();
    let label_ranks = distinct_ranks(labels, cfg.jitter_scale, column_key(cfg.seed, d));
    let mut columns = ranks.to_vec();
    columns.push(label_ranks);
    let u = from_columns(&columns, labels.len())?;
    crate::copula::kl_entropy_with(&u, cfg.k, cfg.search)
}

fn unlabelled_ce(ranks: &[Vec<f64>], cfg: &EstimatorConfig) -> Result<f64> {
    let u: PointSet = from_columns(ranks, ranks[0].len())?;
    crate::copula::kl_entropy_with(&u, cfg.k, cfg.search)
}

fn prepare(x1: &Sample, x2: &Sample, cfg: &EstimatorConfig) -> Result<(Sample, usize, usize)> {
    cfg.validate()?;
    check_pair(x1, x2)?;
    let (m, n) = (x1.nrows(), x2.nrows());
    if m + n < cfg.k + 2 {
        return Err(contract(format!(
            "pooled size {} too small for k = {} (need k + 2)",
            m + n,
            cfg.k
        )));
    }
    Ok((x1.vstack(x2)?, m, n))
}

/// H_c(X, a) − H_c(X, b) for two label columns over the same pooled data.
fn ce_difference(pooled: &Sample, a: &[f64], b: &[f64], cfg: &EstimatorConfig) -> Result<f64> {
    let ranks = pooled_ranks(pooled, cfg);
    Ok(labelled_ce(&ranks, a, cfg)? - labelled_ce(&ranks, b, cfg)?)
}

/// T_ce = H_c(X, Y0) − H_c(X, Y1) on the pooled sample X = (x1; x2).
///
/// Close to zero when both samples come from one distribution; grows with
/// the dependence between the observations and their group label.
pub fn tce_statistic(x1: &Sample, x2: &Sample, cfg: &EstimatorConfig) -> Result<f64> {
    let (pooled, m, n) = prepare(x1, x2, cfg)?;
    let y0 = build_labels(m, n, Hypothesis::H0)?;
    let y1 = build_labels(m, n, Hypothesis::H1)?;
    ce_difference(&pooled, &y0.labels, &y1.labels, cfg)
}

/// Mutual-information baseline: −(H_c(X, Y1) − H_c(X)).
pub fn tmi_statistic(x1: &Sample, x2: &Sample, cfg: &EstimatorConfig) -> Result<f64> {
    let (pooled, m, n) = prepare(x1, x2, cfg)?;
    let y1 = build_labels(m, n, Hypothesis::H1)?;
    let ranks = pooled_ranks(&pooled, cfg);
    Ok(-(labelled_ce(&ranks, &y1.labels, cfg)? - unlabelled_ce(&ranks, cfg)?))
}

/// exp(−‖a − b‖² / (2δ²)).
pub fn gaussian_kernel(a: &[f64], b: &[f64], delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(domain("gaussian_kernel", format!("delta must be finite and > 0, got {delta}")));
    }
    if a.len() != b.len() {
        return Err(contract("gaussian_kernel: dimension mismatch"));
    }
    Ok(kernel(a, b, 1.0 / (2.0 * delta * delta)))
}

#[inline]
fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[inline]
fn kernel(a: &[f64], b: &[f64], gamma: f64) -> f64 {
    (-sq_dist(a, b) * gamma).exp()
}

#[inline]
fn euclid(a: &[f64], b: &[f64]) -> f64 {
    sq_dist(a, b).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MmdVariant {
    #[default]
    Biased,
    Unbiased,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelConfig {
    /// Gaussian kernel scale δ.
    pub delta: f64,
    pub variant: MmdVariant,
}

impl Default for KernelConfig {
    fn default() -> Self {
        Self {
            delta: 1.0,
            variant: MmdVariant::Biased,
        }
    }
}

/// Sums f over all ordered pairs (a, b), optionally skipping the diagonal.
fn pair_sum<F: Fn(&[f64], &[f64]) -> f64>(a: &Sample, b: &Sample, skip_diag: bool, f: F) -> f64 {
    let mut total = 0.0;
    for (i, ra) in a.rows().enumerate() {
        let mut row = 0.0;
        for (j, rb) in b.rows().enumerate() {
            if skip_diag && i == j {
                continue;
            }
            row += f(ra, rb);
        }
        total += row;
    }
    total
}

/// Rows sorted within each sample and the pair put in canonical order, so the
/// statistics are exactly symmetric and exactly zero on identical multisets.
fn canonical_pair(x1: &Sample, x2: &Sample) -> (Sample, Sample) {
    let (a, b) = (x1.sorted_rows(), x2.sorted_rows());
    match sample_cmp(&a, &b) {
        Ordering::Greater => (b, a),
        _ => (a, b),
    }
}

/// Squared maximum mean discrepancy with a Gaussian kernel.
pub fn mmd2_statistic(x1: &Sample, x2: &Sample, kc: &KernelConfig) -> Result<f64> {
    check_pair(x1, x2)?;
    if !(kc.delta > 0.0 && kc.delta.is_finite()) {
        return Err(domain("mmd2_statistic", format!("delta must be finite and > 0, got {}", kc.delta)));
    }
    let (x, y) = canonical_pair(x1, x2);
    let (m, n) = (x.nrows() as f64, y.nrows() as f64);
    let gamma = 1.0 / (2.0 * kc.delta * kc.delta);
    let k = |a: &[f64], b: &[f64]| kernel(a, b, gamma);
    let sxy = pair_sum(&x, &y, false, k);
    match kc.variant {
        MmdVariant::Biased => {
            let sxx = pair_sum(&x, &x, false, k);
            let syy = pair_sum(&y, &y, false, k);
            Ok(sxx / (m * m) + syy / (n * n) - 2.0 * sxy / (m * n))
        }
        MmdVariant::Unbiased => {
            if x.nrows() < 2 || y.nrows() < 2 {
                return Err(contract("unbiased MMD needs at least two rows per sample"));
            }
            let sxx = pair_sum(&x, &x, true, k);
            let syy = pair_sum(&y, &y, true, k);
            Ok(sxx / (m * (m - 1.0)) + syy / (n * (n - 1.0)) - 2.0 * sxy / (m * n))
        }
    }
}

/// Energy distance E = 2 E‖X − Y‖ − E‖X − X′‖ − E‖Y − Y′‖ (V-statistic form).
pub fn energy_distance(x1: &Sample, x2: &Sample) -> Result<f64> {
    check_pair(x1, x2)?;
    let (x, y) = canonical_pair(x1, x2);
    let (m, n) = (x.nrows() as f64, y.nrows() as f64);
    let sxy = pair_sum(&x, &y, false, euclid);
    let sxx = pair_sum(&x, &x, false, euclid);
    let syy = pair_sum(&y, &y, false, euclid);
    Ok(2.0 * sxy / (m * n) - (sxx / (m * m) + syy / (n * n)))
}

/// Energy test statistic (mn / (m + n)) · E.
pub fn energy_statistic(x1: &Sample, x2: &Sample) -> Result<f64> {
    let e = energy_distance(x1, x2)?;
    let (m, n) = (x1.nrows() as f64, x2.nrows() as f64);
    Ok(m * n / (m + n) * e)
}
