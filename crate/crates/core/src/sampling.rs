//! Seeded generators for the three simulation data families.
//!
//! Normal variates are produced by inverse-CDF transform of open-interval
//! uniforms drawn from a ChaCha8 stream, so output depends only on the seed
//! path and not on platform or thread count.

use rand::RngCore;

use crate::error::{contract, domain, Result};
use crate::math::{cdf_unchecked, cholesky2, exponential_quantile, quantile_unchecked, CorrelationMatrix2};
use crate::rng::{mix, open_unit, rng_for};
use crate::sample::Sample;

/// A splittable seed: children are derived by tag, never by draw order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedStream {
    key: u64,
}

impl SeedStream {
    pub fn new(seed: u64) -> Self {
        Self { key: mix(seed, 0) }
    }

    pub fn substream(&self, tag: u64) -> Self {
        Self {
            key: mix(self.key, tag.wrapping_add(1)),
        }
    }

    fn normals(&self, count: usize) -> Vec<f64> {
        let mut rng = rng_for(self.key);
        (0..count)
            .map(|_| quantile_unchecked(open_unit(rng.next_u64())))
            .collect()
    }
}

pub fn sample_std_normal(stream: &SeedStream, n: usize) -> Vec<f64> {
    stream.normals(n)
}

/// Rows mean + L·z with L the Cholesky factor of [[1, rho], [rho, 1]].
pub fn sample_bivariate_normal(stream: &SeedStream, n: usize, mean: [f64; 2], rho: f64) -> Result<Sample> {
    let l = cholesky2(CorrelationMatrix2::new(rho)?);
    if n == 0 {
        return Err(contract("sample size must be at least 1"));
    }
    let z = stream.normals(2 * n);
    let data = z
        .chunks_exact(2)
        .flat_map(|p| {
            [
                mean[0] + l[0][0] * p[0],
                mean[1] + l[1][0] * p[0] + l[1][1] * p[1],
            ]
        })
        .collect();
    Sample::new(data, n, 2)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MarginalSpec {
    StandardNormal,
    Exponential { rate: f64 },
}

impl MarginalSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            MarginalSpec::StandardNormal => Ok(()),
            MarginalSpec::Exponential { rate } if rate > 0.0 && rate.is_finite() => Ok(()),
            MarginalSpec::Exponential { rate } => {
                Err(domain("MarginalSpec", format!("exponential rate must be > 0, got {rate}")))
            }
        }
    }

    /// Maps a standard normal deviate z through Φ and then this marginal's quantile.
    fn from_normal(&self, z: f64) -> Result<f64> {
        match *self {
            MarginalSpec::StandardNormal => Ok(z),
            MarginalSpec::Exponential { rate } => {
                let u = cdf_unchecked(z);
                if u < 0.5 {
                    exponential_quantile(u, rate)
                } else {
                    // −ln(1 − u) with 1 − u = Φ(−z), exact in the upper tail
                    Ok(-cdf_unchecked(-z).ln() / rate)
                }
            }
        }
    }
}

/// Bivariate Gaussian copula with correlation `rho` and the given marginals.
pub fn sample_gaussian_copula(
    stream: &SeedStream,
    n: usize,
    rho: f64,
    marginals: [MarginalSpec; 2],
) -> Result<Sample> {
    marginals[0].validate()?;
    marginals[1].validate()?;
    let z = sample_bivariate_normal(stream, n, [0.0, 0.0], rho)?;
    let mut data = Vec::with_capacity(2 * n);
    for row in z.rows() {
        data.push(marginals[0].from_normal(row[0])?);
        data.push(marginals[1].from_normal(row[1])?);
    }
    Sample::new(data, n, 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScenarioFamily {
    /// Reference N((0,0), ρ = 0.5) against N((i,i), ρ = 0.5).
    BvnMeanShift,
    /// Reference N(0, ρ = 0) against N(0, ρ).
    BvnRhoSweep,
    /// Reference N(0, ρ = 0) against a Gaussian copula with the given marginals.
    GaussCopulaSweep,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioSpec {
    pub family: ScenarioFamily,
    pub n: usize,
    /// Mean shift i or correlation ρ, depending on the family.
    pub parameter: f64,
    pub marginals: [MarginalSpec; 2],
    pub seed: u64,
}

/// Correlation of the mean-shift family.
pub const MEAN_SHIFT_RHO: f64 = 0.5;

/// Marginals of the copula family: standard normal and exponential with rate 0.5.
pub const COPULA_MARGINALS: [MarginalSpec; 2] = [MarginalSpec::StandardNormal, MarginalSpec::Exponential { rate: 0.5 }];

impl ScenarioSpec {
    pub fn new(family: ScenarioFamily, parameter: f64, seed: u64) -> Self {
        Self {
            family,
            n: 500,
            parameter,
            marginals: COPULA_MARGINALS,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(contract(format!("scenario sample size must be >= 2, got {}", self.n)));
        }
        let p = self.parameter;
        match self.family {
            ScenarioFamily::BvnMeanShift => {
                if !(0.0..=9.0).contains(&p) || p.fract() != 0.0 {
                    return Err(contract(format!("mean shift must be an integer in 0..=9, got {p}")));
                }
            }
            ScenarioFamily::BvnRhoSweep | ScenarioFamily::GaussCopulaSweep => {
                if !(0.0..=1.0).contains(&p) {
                    return Err(contract(format!("rho must lie in [0, 1], got {p}")));
                }
            }
        }
        Ok(())
    }
}

/// Reference and comparison samples for one scenario cell, drawn from
/// independent substreams of the spec's seed.
pub fn generate_scenario(spec: &ScenarioSpec) -> Result<(Sample, Sample)> {
    spec.validate()?;
    let root = SeedStream::new(spec.seed);
    let (ref_stream, cmp_stream) = (root.substream(0), root.substream(1));
    let n = spec.n;
    match spec.family {
        ScenarioFamily::BvnMeanShift => {
            let i = spec.parameter;
            Ok((
                sample_bivariate_normal(&ref_stream, n, [0.0, 0.0], MEAN_SHIFT_RHO)?,
                sample_bivariate_normal(&cmp_stream, n, [i, i], MEAN_SHIFT_RHO)?,
            ))
        }
        ScenarioFamily::BvnRhoSweep => Ok((
            sample_bivariate_normal(&ref_stream, n, [0.0, 0.0], 0.0)?,
            sample_bivariate_normal(&cmp_stream, n, [0.0, 0.0], spec.parameter)?,
        )),
        ScenarioFamily::GaussCopulaSweep => Ok((
            sample_bivariate_normal(&ref_stream, n, [0.0, 0.0], 0.0)?,
            sample_gaussian_copula(&cmp_stream, n, spec.parameter, spec.marginals)?,
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mean_var(v: &[f64]) -> (f64, f64) {
        let n = v.len() as f64;
        let m = v.iter().sum::<f64>() / n;
        (m, v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1.0))
    }

    fn corr(s: &Sample) -> f64 {
        let (a, b) = (s.column(0), s.column(1));
        let (ma, va) = mean_var(&a);
        let (mb, vb) = mean_var(&b);
        let cov = a.iter().zip(&b).map(|(x, y)| (x - ma) * (y - mb)).sum::<f64>() / (a.len() as f64 - 1.0);
        cov / (va * vb).sqrt()
    }

    #[test]
    fn std_normal_moments_and_determinism() {
        let s = SeedStream::new(17);
        let v = sample_std_normal(&s, 10_000);
        let (m, var) = mean_var(&v);
        assert!((-0.05..=0.05).contains(&m), "mean {m}");
        assert!((0.94..=1.06).contains(&var), "var {var}");
        assert_eq!(v, sample_std_normal(&s, 10_000));
        assert_ne!(v, sample_std_normal(&SeedStream::new(18), 10_000));
        assert_ne!(s.substream(0), s.substream(1));
    }

    #[test]
    fn bivariate_normal_correlation_and_mean() {
        let s = SeedStream::new(3);
        let ind = sample_bivariate_normal(&s, 10_000, [0.0, 0.0], 0.0).unwrap();
        assert!(corr(&ind).abs() <= 0.04);
        let dep = sample_bivariate_normal(&s, 10_000, [0.0, 0.0], 0.5).unwrap();
        assert!((0.46..=0.54).contains(&corr(&dep)));
        let shifted = sample_bivariate_normal(&s, 10_000, [5.0, 5.0], 0.5).unwrap();
        for j in 0..2 {
            let (m, _) = mean_var(&shifted.column(j));
            assert!((4.95..=5.05).contains(&m));
        }
        assert!(sample_bivariate_normal(&s, 10, [0.0, 0.0], 1.5).is_err());
    }

    #[test]
    fn copula_marginals() {
        let s = SeedStream::new(5);
        let c = sample_gaussian_copula(&s, 10_000, 0.7, COPULA_MARGINALS).unwrap();
        let (m0, _) = mean_var(&c.column(0));
        let (m1, _) = mean_var(&c.column(1));
        assert!((-0.05..=0.05).contains(&m0));
        assert!((1.94..=2.06).contains(&m1), "exp mean {m1}");
        assert!(c.column(1).iter().all(|&v| v >= 0.0));
        assert!(sample_gaussian_copula(&s, 10, 0.5, [MarginalSpec::Exponential { rate: 0.0 }, MarginalSpec::StandardNormal]).is_err());
    }

    #[test]
    fn scenario_families() {
        let (r, c) = generate_scenario(&ScenarioSpec::new(ScenarioFamily::BvnMeanShift, 0.0, 1)).unwrap();
        assert_eq!((r.nrows(), c.nrows()), (500, 500));
        assert_ne!(r, c);
        let spec = ScenarioSpec {
            n: 10_000,
            ..ScenarioSpec::new(ScenarioFamily::BvnRhoSweep, 0.9, 2)
        };
        let (_, c) = generate_scenario(&spec).unwrap();
        assert!((0.87..=0.93).contains(&corr(&c)));

        let (_, c) = generate_scenario(&ScenarioSpec::new(ScenarioFamily::GaussCopulaSweep, 1.0, 3)).unwrap();
        let mut idx: Vec<usize> = (0..c.nrows()).collect();
        idx.sort_by(|&a, &b| c.row(a)[0].total_cmp(&c.row(b)[0]));
        assert!(idx.windows(2).all(|w| c.row(w[0])[1] < c.row(w[1])[1]));

        assert!(generate_scenario(&ScenarioSpec::new(ScenarioFamily::BvnMeanShift, 10.0, 1)).is_err());
        assert!(generate_scenario(&ScenarioSpec::new(ScenarioFamily::BvnMeanShift, 1.5, 1)).is_err());
        assert!(generate_scenario(&ScenarioSpec::new(ScenarioFamily::BvnRhoSweep, 1.1, 1)).is_err());
        let spec = ScenarioSpec::new(ScenarioFamily::GaussCopulaSweep, 0.4, 9);
        assert_eq!(generate_scenario(&spec).unwrap(), generate_scenario(&spec).unwrap());
    }
}
