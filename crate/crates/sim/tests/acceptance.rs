//! Acceptance suite. Runs every criterion at its stated tolerance and prints
//! one PASS/FAIL line each; exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use cetest::*;
use cetest_sim::*;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn seeds() -> Vec<u64> {
    DEFAULT_SEEDS.to_vec()
}

fn bvn(seed: u64, n: usize, rho: f64) -> Sample {
    sample_bivariate_normal(&SeedStream::new(seed), n, [0.0, 0.0], rho).unwrap()
}

fn within_time(elapsed: Duration, limit_s: u64) -> bool {
    elapsed <= Duration::from_secs(limit_s)
}

fn c1_gaussian_ce() -> Outcome {
    let start = Instant::now();
    let cfg = EstimatorConfig::default();
    let truth = 0.5 * (1.0f64 - 0.25).ln();
    let vals: Vec<f64> = seeds()
        .iter()
        .map(|&s| copula_entropy(&bvn(s, 500, 0.5), &cfg).unwrap())
        .collect();
    let m = median(&vals);
    let t = start.elapsed();
    outcome(
        (m - truth).abs() <= 0.06 && within_time(t, 5),
        format!("median CE = {m:.4}, target {truth:.4} ± 0.06, {t:.2?} (limit 5 s)"),
    )
}

fn c2_uniform_entropy() -> Outcome {
    let vals: Vec<f64> = seeds()
        .iter()
        .map(|&s| {
            let u: Vec<f64> = sample_std_normal(&SeedStream::new(s), 1000)
                .into_iter()
                .map(|z| cetest::math::std_normal_cdf(z).unwrap())
                .collect();
            kl_entropy(&Sample::from_column(&u).unwrap(), 3).unwrap()
        })
        .collect();
    let m = median(&vals);
    outcome(m.abs() <= 0.05, format!("median H = {m:.4}, target 0 ± 0.05"))
}

fn c3_hand_entropy() -> Outcome {
    let h = kl_entropy(&Sample::from_column(&[0.0, 0.5, 1.0]).unwrap(), 1).unwrap();
    outcome((h - 1.5).abs() <= 1e-9, format!("H = {h:.15}, target 1.5 ± 1e-9"))
}

fn c4_sim1() -> Outcome {
    let start = Instant::now();
    let t = run_simulation(Simulation::MeanShift, &seeds(), &EstimatorConfig::default(), &KernelConfig::default()).unwrap();
    let elapsed = start.elapsed();
    let c = median_curves(&t, 1).unwrap();
    let tce = &c.t_ce;
    let near_zero = tce[0].abs() <= 0.1;
    let larger = tce[2..].iter().all(|&v| v > tce[0]);
    let plateau = tce[5..].iter().all(|&v| (v - tce[9]).abs() <= 0.15 * tce[9].abs());
    outcome(
        near_zero && larger && plateau && within_time(elapsed, 120),
        format!(
            "T_ce(0) = {:.4} (|.| ≤ 0.1: {near_zero}), T_ce(≥2) > T_ce(0): {larger}, plateau 5..9 within 15% of {:.4}: {plateau}, {elapsed:.2?} (limit 120 s)",
            tce[0], tce[9]
        ),
    )
}

fn c5_sim2() -> Outcome {
    let start = Instant::now();
    let t = run_simulation(Simulation::RhoSweep, &seeds(), &EstimatorConfig::default(), &KernelConfig::default()).unwrap();
    let elapsed = start.elapsed();
    let c = median_curves(&t, 2).unwrap();
    let rho: Vec<String> = c
        .series()
        .iter()
        .map(|(name, ys)| format!("{name} {:.3}", spearman(&c.params, ys)))
        .collect();
    let ok = c.series().iter().all(|(_, ys)| spearman(&c.params, ys) >= 0.9);
    outcome(
        ok && within_time(elapsed, 180),
        format!("Spearman ≥ 0.9: [{}], {elapsed:.2?} (limit 180 s)", rho.join(", ")),
    )
}

fn c6_sim3() -> Outcome {
    let t = run_simulation(Simulation::CopulaSweep, &seeds(), &EstimatorConfig::default(), &KernelConfig::default()).unwrap();
    let c = median_curves(&t, 3).unwrap();
    let (s_ce, s_mmd) = (spearman(&c.params, &c.t_ce), spearman(&c.params, &c.mmd2));
    outcome(
        s_ce >= 0.9 && s_mmd >= 0.9,
        format!("Spearman T_ce {s_ce:.3}, MMD {s_mmd:.3} (each ≥ 0.9)"),
    )
}

fn random_sample(stream: &SeedStream, n: usize, d: usize) -> Sample {
    Sample::new(sample_std_normal(stream, n * d), n, d).unwrap()
}

fn c7_identities() -> Outcome {
    let kc = KernelConfig::default();
    let mut zero_ok = true;
    let mut nonneg_ok = true;
    let mut worst = f64::INFINITY;
    for i in 0..1000u64 {
        let root = SeedStream::new(10_000 + i);
        let d = 1 + (i % 3) as usize;
        let (m, n) = (1 + (i % 17) as usize, 1 + ((i / 3) % 13) as usize);
        let a = random_sample(&root.substream(0), m, d);
        let b = random_sample(&root.substream(1), n, d);
        let mmd = mmd2_statistic(&a, &b, &kc).unwrap();
        let e = energy_distance(&a, &b).unwrap();
        nonneg_ok &= mmd >= 0.0 && e >= 0.0;
        worst = worst.min(mmd.min(e));
        let rev: Vec<usize> = (0..m).rev().collect();
        let a_perm = a.select_rows(&rev).unwrap();
        zero_ok &= energy_statistic(&a, &a_perm).unwrap() == 0.0 && mmd2_statistic(&a, &a_perm, &kc).unwrap() == 0.0;
    }
    outcome(
        zero_ok && nonneg_ok,
        format!("exact zero on identical multisets: {zero_ok}; MMD² ≥ 0 and E ≥ 0 on 1000 pairs: {nonneg_ok} (min {worst:.3e})"),
    )
}

fn c8_hand_statistics() -> Outcome {
    let (a, b) = (Sample::from_column(&[0.0]).unwrap(), Sample::from_column(&[1.0]).unwrap());
    let e = energy_statistic(&a, &b).unwrap();
    let m = mmd2_statistic(&a, &b, &KernelConfig::default()).unwrap();
    outcome(
        (e - 1.0).abs() <= 1e-12 && (m - 0.786_938_680_6).abs() <= 1e-10 && (m - (2.0 - 2.0 * (-0.5f64).exp())).abs() <= 1e-12,
        format!("energy T = {e}, MMD² = {m:.12} (targets 1.0, 0.7869386806)"),
    )
}

fn c9_permutation_calibration() -> Outcome {
    let start = Instant::now();
    let stat = Statistic::CopulaEntropy(EstimatorConfig::default());
    let reps = 200u64;
    let mut rejections = 0;
    for r in 0..reps {
        let root = SeedStream::new(50_000 + r);
        let x1 = sample_bivariate_normal(&root.substream(0), 100, [0.0, 0.0], 0.0).unwrap();
        let x2 = sample_bivariate_normal(&root.substream(1), 100, [0.0, 0.0], 0.0).unwrap();
        let res = permutation_pvalue(&stat, &x1, &x2, 99, r).unwrap();
        if res.p_value.unwrap() <= 0.05 {
            rejections += 1;
        }
    }
    let rate = rejections as f64 / reps as f64;
    let elapsed = start.elapsed();
    outcome(
        (0.01..=0.12).contains(&rate) && within_time(elapsed, 600),
        format!("rejection rate {rate:.3} in [0.01, 0.12], {elapsed:.2?} (limit 600 s)"),
    )
}

fn c10_monotone_invariance() -> Outcome {
    let cfg = EstimatorConfig::default();
    let cube = |s: &Sample| s.map(|_, v| v * v * v).unwrap();
    let x1 = bvn(101, 500, 0.5);
    let x2 = sample_bivariate_normal(&SeedStream::new(102), 500, [1.0, 1.0], 0.5).unwrap();
    let t = tce_statistic(&x1, &x2, &cfg).unwrap();
    let t3 = tce_statistic(&cube(&x1), &cube(&x2), &cfg).unwrap();
    let ce = copula_entropy(&x1, &cfg).unwrap();
    let ce3 = copula_entropy(&cube(&x1), &cfg).unwrap();
    outcome(
        t.to_bits() == t3.to_bits() && ce.to_bits() == ce3.to_bits(),
        format!("T_ce {t} vs {t3}; CE {ce} vs {ce3}"),
    )
}

fn c11_knn_equivalence() -> Outcome {
    let mut mismatches = 0;
    for i in 0..100u64 {
        let stream = SeedStream::new(70_000 + i);
        let n = 2 + (mix_small(i) % 199) as usize;
        let d = 1 + (i % 4) as usize;
        let ps = random_sample(&stream, n, d);
        let k = 1 + (i as usize % 5).min(n - 2);
        if kth_neighbor_distances(&ps, k).unwrap() != KdTree::build(&ps).kth_neighbor_distances(k).unwrap() {
            mismatches += 1;
        }
    }
    outcome(mismatches == 0, format!("{mismatches} mismatches over 100 point sets (n ≤ 200)"))
}

fn mix_small(i: u64) -> u64 {
    i.wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 40
}

fn c12_end_to_end_determinism() -> Outcome {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    for dir in &dirs {
        let out = dir.path().to_str().unwrap().to_string();
        let code = cli_main(
            ["cetest", "simulate", "--sim", "all", "--out", &out],
            &mut std::io::sink(),
            &mut std::io::stderr(),
        );
        if code != 0 {
            return outcome(false, format!("simulate exited with {code}"));
        }
    }
    let mut identical = true;
    for id in 1..=3 {
        for ext in ["csv", "svg"] {
            let name = format!("sim{id}.{ext}");
            let a = std::fs::read(dirs[0].path().join(&name)).unwrap();
            let b = std::fs::read(dirs[1].path().join(&name)).unwrap();
            identical &= a == b && !a.is_empty();
        }
    }
    outcome(identical, format!("sim1..3 CSV and SVG byte-identical across two runs: {identical}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("C1 Gaussian CE oracle", c1_gaussian_ce),
        ("C2 Uniform entropy oracle", c2_uniform_entropy),
        ("C3 Hand-computed kl_entropy", c3_hand_entropy),
        ("C4 Sim-1 reproduction", c4_sim1),
        ("C5 Sim-2 reproduction", c5_sim2),
        ("C6 Sim-3 reproduction", c6_sim3),
        ("C7 Exact identities", c7_identities),
        ("C8 Hand-computed statistics", c8_hand_statistics),
        ("C9 Permutation calibration", c9_permutation_calibration),
        ("C10 Monotone-transform invariance", c10_monotone_invariance),
        ("C11 Brute-force kNN equivalence", c11_knn_equivalence),
        ("C12 End-to-end determinism", c12_end_to_end_determinism),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, run) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let o = run();
        println!("[{}] {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criterion/criteria failed");
        std::process::exit(1);
    }
}
