//! Scalar special functions and the 2×2 correlation factorization used by
//! the estimators and samplers.

use crate::error::{domain, Result};

const SQRT_2: f64 = std::f64::consts::SQRT_2;
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

/// Digamma function ψ(x) for x > 0.
///
/// Shifts the argument upward with ψ(x) = ψ(x + 1) − 1/x until x ≥ 6, then
/// applies the asymptotic expansion
/// ψ(x) ≈ ln x − 1/(2x) − Σ B₂ₖ / (2k x²ᵏ).
pub fn digamma(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(domain("digamma", format!("argument must be finite and > 0, got {x}")));
    }
    let mut x = x;
    let mut shift = 0.0;
    while x < 6.0 {
        shift -= 1.0 / x;
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    // B2/2, B4/4, ..., B14/14
    let series = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2
                        * (1.0 / 252.0
                            - inv2
                                * (1.0 / 240.0
                                    - inv2 * (1.0 / 132.0 - inv2 * (691.0 / 32760.0 - inv2 / 12.0))))));
    Ok(shift + x.ln() - 0.5 * inv - series)
}

/// Standard normal CDF Φ(x).
pub fn std_normal_cdf(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(domain("std_normal_cdf", format!("argument must be finite, got {x}")));
    }
    Ok(cdf_unchecked(x))
}

#[inline]
pub(crate) fn cdf_unchecked(x: f64) -> f64 {
    0.5 * libm::erfc(-x / SQRT_2)
}

// Acklam's rational approximation, relative error ~1.15e-9 before refinement.
const A: [f64; 6] = [
    -3.969_683_028_665_376e1,
    2.209_460_984_245_205e2,
    -2.759_285_104_469_687e2,
    1.383_577_518_672_69e2,
    -3.066_479_806_614_716e1,
    2.506_628_277_459_239,
];
const B: [f64; 5] = [
    -5.447_609_879_822_406e1,
    1.615_858_368_580_409e2,
    -1.556_989_798_598_866e2,
    6.680_131_188_771_972e1,
    -1.328_068_155_288_572e1,
];
const C: [f64; 6] = [
    -7.784_894_002_430_293e-3,
    -3.223_964_580_411_365e-1,
    -2.400_758_277_161_838,
    -2.549_732_539_343_734,
    4.374_664_141_464_968,
    2.938_163_982_698_783,
];
const D: [f64; 4] = [
    7.784_695_709_041_462e-3,
    3.224_671_290_700_398e-1,
    2.445_134_137_142_996,
    3.754_408_661_907_416,
];
const P_LOW: f64 = 0.024_25;

/// Standard normal quantile Φ⁻¹(p) for p in (0, 1).
///
/// Rational approximation followed by one Halley refinement step against
/// [`std_normal_cdf`].
pub fn std_normal_quantile(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(domain("std_normal_quantile", format!("probability must lie in (0, 1), got {p}")));
    }
    Ok(quantile_unchecked(p))
}

pub(crate) fn quantile_unchecked(p: f64) -> f64 {
    let x = if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    };
    // Upper tail: refine against the survival function to avoid cancellation in 1 - p.
    let e = if p > 0.5 {
        (1.0 - p) - 0.5 * libm::erfc(x / SQRT_2)
    } else {
        cdf_unchecked(x) - p
    };
    let u = e * SQRT_2PI * (0.5 * x * x).exp();
    x - u / (1.0 + 0.5 * x * u)
}

/// Inverse CDF of the exponential distribution, −ln(1 − p) / rate.
pub fn exponential_quantile(p: f64, rate: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&p) {
        return Err(domain("exponential_quantile", format!("probability must lie in [0, 1), got {p}")));
    }
    if !(rate > 0.0 && rate.is_finite()) {
        return Err(domain("exponential_quantile", format!("rate must be finite and > 0, got {rate}")));
    }
    Ok(-(-p).ln_1p() / rate)
}

/// Unit-diagonal 2×2 correlation matrix [[1, rho], [rho, 1]].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationMatrix2 {
    rho: f64,
}

impl CorrelationMatrix2 {
    pub fn new(rho: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&rho) {
            return Err(domain("CorrelationMatrix2", format!("rho must lie in [-1, 1], got {rho}")));
        }
        Ok(Self { rho })
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn as_array(&self) -> [[f64; 2]; 2] {
        [[1.0, self.rho], [self.rho, 1.0]]
    }
}

/// Lower-triangular Cholesky factor L with L·Lᵀ = [[1, rho], [rho, 1]].
///
/// At |rho| = 1 the factor is singular, [[1, 0], [rho, 0]].
pub fn cholesky2(corr: CorrelationMatrix2) -> [[f64; 2]; 2] {
    let rho = corr.rho;
    [[1.0, 0.0], [rho, (1.0 - rho * rho).max(0.0).sqrt()]]
}
