//! The three simulation designs and the grid runner.

use rayon::prelude::*;

use cetest::{
    energy_statistic, generate_scenario, mmd2_statistic, tce_statistic, tmi_statistic, EstimatorConfig,
    KernelConfig, ScenarioFamily, ScenarioSpec,
};

use crate::error::{Result, SimError};
use crate::table::{ExperimentRow, ExperimentTable};

/// Ten fixed seeds used when none are given.
pub const DEFAULT_SEEDS: [u64; 10] = [0, 1, 2, 3, 4, 5, 6, 7, 8, 9];

/// Sample size of every scenario.
pub const SAMPLE_SIZE: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Simulation {
    /// Mean shift (i, i), i = 0..9, correlation 0.5.
    MeanShift = 1,
    /// Correlation 0.0..0.9 against an uncorrelated reference.
    RhoSweep = 2,
    /// Gaussian copula, normal and exponential(0.5) marginals, rho 0.1..1.0.
    CopulaSweep = 3,
}

impl Simulation {
    pub const ALL: [Simulation; 3] = [Simulation::MeanShift, Simulation::RhoSweep, Simulation::CopulaSweep];

    pub fn from_id(id: u8) -> Result<Self> {
        match id {
            1 => Ok(Simulation::MeanShift),
            2 => Ok(Simulation::RhoSweep),
            3 => Ok(Simulation::CopulaSweep),
            _ => Err(SimError::Contract(format!("unknown simulation id {id}; expected 1, 2 or 3"))),
        }
    }

    pub fn id(self) -> u8 {
        self as u8
    }

    pub fn family(self) -> ScenarioFamily {
        match self {
            Simulation::MeanShift => ScenarioFamily::BvnMeanShift,
            Simulation::RhoSweep => ScenarioFamily::BvnRhoSweep,
            Simulation::CopulaSweep => ScenarioFamily::GaussCopulaSweep,
        }
    }

    /// The ten scenario parameters, in increasing order.
    pub fn parameters(self) -> Vec<f64> {
        match self {
            Simulation::MeanShift => (0..10).map(f64::from).collect(),
            Simulation::RhoSweep => (0..10).map(|i| f64::from(i) / 10.0).collect(),
            Simulation::CopulaSweep => (1..=10).map(|i| f64::from(i) / 10.0).collect(),
        }
    }

    pub fn parameter_label(self) -> &'static str {
        match self {
            Simulation::MeanShift => "mean shift i",
            Simulation::RhoSweep | Simulation::CopulaSweep => "rho",
        }
    }
}

fn evaluate_cell(
    sim: Simulation,
    param: f64,
    seed: u64,
    cfg: &EstimatorConfig,
    kc: &KernelConfig,
) -> Result<ExperimentRow> {
    let spec = ScenarioSpec {
        n: SAMPLE_SIZE,
        ..ScenarioSpec::new(sim.family(), param, seed)
    };
    let (reference, comparison) = generate_scenario(&spec)?;
    Ok(ExperimentRow {
        sim: sim.id(),
        param,
        t_ce: tce_statistic(&reference, &comparison, cfg)?,
        t_mi: tmi_statistic(&reference, &comparison, cfg)?,
        mmd2: mmd2_statistic(&reference, &comparison, kc)?,
        energy: energy_statistic(&reference, &comparison)?,
        seed,
    })
}

/// Evaluates all four statistics on every (seed, parameter) cell of `sim`.
///
/// Within one seed, every cell shares the same reference sample and the same
/// underlying normal deviates for the comparison sample. Rows are sorted by
/// seed, then parameter.
pub fn run_simulation(
    sim: Simulation,
    seeds: &[u64],
    cfg: &EstimatorConfig,
    kc: &KernelConfig,
) -> Result<ExperimentTable> {
    if seeds.is_empty() {
        return Err(SimError::Contract("at least one seed is required".into()));
    }
    let mut seeds = seeds.to_vec();
    seeds.sort_unstable();
    seeds.dedup();
    let params = sim.parameters();
    let cells: Vec<(u64, f64)> = seeds
        .iter()
        .flat_map(|&s| params.iter().map(move |&p| (s, p)))
        .collect();
    let rows = cells
        .par_iter()
        .map(|&(seed, param)| evaluate_cell(sim, param, seed, cfg, kc))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExperimentTable { rows })
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        f64::NAN
    } else if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Average ranks (1-based), ties sharing the mean rank.
fn ranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut out = vec![0.0; n];
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && values[order[end]] == values[order[start]] {
            end += 1;
        }
        let r = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            out[i] = r;
        }
        start = end;
    }
    out
}

/// Spearman rank correlation (Pearson correlation of average ranks).
pub fn spearman(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "spearman: length mismatch");
    let (ra, rb) = (ranks(a), ranks(b));
    let n = a.len() as f64;
    let (ma, mb) = (ra.iter().sum::<f64>() / n, rb.iter().sum::<f64>() / n);
    let cov: f64 = ra.iter().zip(&rb).map(|(x, y)| (x - ma) * (y - mb)).sum();
    let va: f64 = ra.iter().map(|x| (x - ma) * (x - ma)).sum();
    let vb: f64 = rb.iter().map(|y| (y - mb) * (y - mb)).sum();
    cov / (va * vb).sqrt()
}

/// Per-parameter medians across seeds, one curve per statistic.
#[derive(Debug, Clone, PartialEq)]
pub struct MedianCurves {
    pub params: Vec<f64>,
    pub t_ce: Vec<f64>,
    pub t_mi: Vec<f64>,
    pub mmd2: Vec<f64>,
    pub energy: Vec<f64>,
}

impl MedianCurves {
    pub fn series(&self) -> [(&'static str, &[f64]); 4] {
        [
            ("T_ce", &self.t_ce),
            ("T_mi", &self.t_mi),
            ("MMD^2", &self.mmd2),
            ("energy", &self.energy),
        ]
    }
}

pub fn median_curves(t: &ExperimentTable, sim: u8) -> Result<MedianCurves> {
    let mut params: Vec<f64> = t.for_sim(sim).map(|r| r.param).collect();
    if params.is_empty() {
        return Err(SimError::Contract(format!("table has no rows for simulation {sim}")));
    }
    params.sort_by(f64::total_cmp);
    params.dedup();
    let mut curves = MedianCurves {
        params: params.clone(),
        t_ce: Vec::new(),
        t_mi: Vec::new(),
        mmd2: Vec::new(),
        energy: Vec::new(),
    };
    for p in params {
        let cell: Vec<_> = t.for_sim(sim).filter(|r| r.param == p).collect();
        let col = |f: fn(&ExperimentRow) -> f64| median(&cell.iter().map(|r| f(r)).collect::<Vec<_>>());
        curves.t_ce.push(col(|r| r.t_ce));
        curves.t_mi.push(col(|r| r.t_mi));
        curves.mmd2.push(col(|r| r.mmd2));
        curves.energy.push(col(|r| r.energy));
    }
    Ok(curves)
}
