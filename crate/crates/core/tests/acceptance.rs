//! Acceptance suite. Each test checks one numbered criterion at its pinned
//! tolerance and prints a single `[PASS]`/`[FAIL]` line before asserting.
//!
//! Run with `cargo test -p kldesign --test acceptance -- --nocapture`.

mod common;

use std::f64::consts::PI;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use common::{exhaustive_mst_weight, mc_centered_l2_sq, mc_l2_star_sq};
use kldesign::bench::{run_bench, BenchConfig, BenchReport};
use kldesign::criteria::{coverage, discrepancy_centered_l2, discrepancy_l2, minimum_spanning_tree, mst_stats};
use kldesign::entropy::{
    bandwidth, entropy_mc, entropy_nn, epanechnikov_alpha, kernel_support_probability, KdeState, KernelSpec,
    NnState,
};
use kldesign::generators::gen_random;
use kldesign::optimizer::{exchange_run, multi_start};
use kldesign::{uniform_point, Design64, Method, Objective, OptimizerConfig, SeededRng};

struct Check {
    lines: Vec<(bool, String)>,
}

impl Check {
    fn new() -> Self {
        Self { lines: Vec::new() }
    }

    fn expect(&mut self, ok: bool, detail: impl Into<String>) {
        self.lines.push((ok, detail.into()));
    }

    fn finish(self, id: &str, title: &str, elapsed: Duration, limit: Option<Duration>) {
        let mut ok = self.lines.iter().all(|l| l.0);
        let mut failures: Vec<&str> = self.lines.iter().filter(|l| !l.0).map(|l| l.1.as_str()).collect();
        let timing;
        if let Some(limit) = limit {
            if elapsed > limit {
                ok = false;
                timing = format!("runtime {elapsed:.2?} exceeds {limit:?}");
                failures.push(&timing);
            }
        }
        let status = if ok { "PASS" } else { "FAIL" };
        println!("[{status}] {id} {title} ({elapsed:.2?})");
        for f in &failures {
            println!("       - {f}");
        }
        assert!(ok, "{id} failed: {failures:?}");
    }
}

fn within(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol
}

#[test]
fn criterion_01_exact_constants() {
    let start = Instant::now();
    let mut c = Check::new();
    let h1: f64 = bandwidth(30, 3).unwrap();
    let h2: f64 = bandwidth(100, 10).unwrap();
    c.expect(within(h1, 0.177573, 1e-6), format!("bandwidth(30,3) = {h1:.9} vs 0.177573 ± 1e-6"));
    c.expect(within(h2, 0.207760, 1e-6), format!("bandwidth(100,10) = {h2:.9} vs 0.207760 ± 1e-6"));

    let mut rng = SeededRng::new(0, 0);
    let exact = [0.75, 2.0 / PI, 15.0 / (8.0 * PI)];
    for (d, want) in (1..=3).zip(exact) {
        let a: f64 = epanechnikov_alpha(d, &mut rng);
        c.expect(a == want, format!("alpha({d}) = {a} vs {want}"));
    }

    // Displayed precision: two significant digits.
    let table = [3.3e-2, 1.5e-2, 1.1e-2, 8.3e-3, 7.0e-3, 6.1e-3, 5.5e-3, 5.0e-3, 4.6e-3, 4.3e-3];
    for (d, want) in (1..=10).zip(table) {
        let p: f64 = kernel_support_probability(10 * d, d).unwrap();
        let shown: f64 = format!("{p:.1e}").parse().unwrap();
        c.expect(shown == want, format!("support probability d={d}: {p:.4e} displays as {shown:.1e}, table {want:.1e}"));
    }
    c.finish("C1", "exact constants", start.elapsed(), Some(Duration::from_secs(1)));
}

#[test]
fn criterion_02_monte_carlo_alpha() {
    let start = Instant::now();
    let mut c = Check::new();
    let mut rng = SeededRng::new(2006, 0);
    let a4: f64 = epanechnikov_alpha(4, &mut rng);
    let a10: f64 = epanechnikov_alpha(10, &mut rng);
    c.expect(within(a4, 0.61, 0.02), format!("alpha(4) = {a4:.4} vs 0.61 ± 0.02"));
    c.expect(within(a10, 2.38, 0.10), format!("alpha(10) = {a10:.4} vs 2.38 ± 0.10"));
    c.finish("C2", "Monte-Carlo Epanechnikov constants", start.elapsed(), Some(Duration::from_secs(30)));
}

#[test]
fn criterion_03_estimator_oracles() {
    let start = Instant::now();
    let mut c = Check::new();
    let (h2, _) = entropy_nn(&Design64::from_rows(&[[0.0], [1.0]]).unwrap()).unwrap();
    let (h3, _) = entropy_nn(&Design64::from_rows(&[[0.0], [0.25], [1.0]]).unwrap()).unwrap();
    c.expect(within(h2, 1.270363, 1e-6), format!("NN {{0,1}} = {h2:.7}"));
    c.expect(within(h3, 0.943420, 1e-6), format!("NN {{0,0.25,1}} = {h3:.7}"));

    let mut rng = SeededRng::new(33, 0);
    let mut design = Design64::random(30, 3, &mut rng);
    let kernel = KernelSpec::gaussian_for(30, 3).unwrap();
    let mut kde = KdeState::new(&design, kernel.clone()).unwrap();
    let mut nn = NnState::new(&design).unwrap();
    let (mut worst_kde, mut worst_nn) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let i = rng.index(30);
        let y: Vec<f64> = uniform_point(&mut rng, 3);
        let inc_kde = kde.update_after_exchange(&design, i, &y).unwrap();
        let inc_nn = nn.update_after_exchange(&design, i, &y).unwrap();
        design = design.with_point(i, &y).unwrap();
        worst_kde = worst_kde.max((inc_kde - entropy_mc(&design, &kernel).unwrap().0).abs());
        worst_nn = worst_nn.max((inc_nn - entropy_nn(&design).unwrap().0).abs());
    }
    c.expect(worst_kde <= 1e-9, format!("KDE incremental vs rebuilt: max |diff| = {worst_kde:e}"));
    c.expect(worst_nn <= 1e-9, format!("NN incremental vs rebuilt: max |diff| = {worst_nn:e}"));
    c.finish("C3", "estimator oracles", start.elapsed(), Some(Duration::from_secs(5)));
}

fn mean_nn_entropy(n: usize, reps: u64, seed: u64) -> f64 {
    (0..reps)
        .map(|r| {
            let design = Design64::random(n, 1, &mut SeededRng::new(seed, r));
            entropy_nn(&design).unwrap().0
        })
        .sum::<f64>()
        / reps as f64
}

#[test]
fn criterion_04_nn_unbiasedness() {
    let start = Instant::now();
    let mut c = Check::new();
    let m1000 = mean_nn_entropy(1000, 100, 4000);
    let m50 = mean_nn_entropy(50, 100, 4050);
    c.expect(within(m1000, 0.0, 0.05), format!("mean H (n=1000) = {m1000:.5} vs 0 ± 0.05"));
    c.expect(m1000.abs() < m50.abs(), format!("|mean H| n=1000: {:.5} < n=50: {:.5}", m1000.abs(), m50.abs()));
    c.finish("C4", "nearest-neighbor asymptotic unbiasedness", start.elapsed(), Some(Duration::from_secs(30)));
}

#[test]
fn criterion_05_kde_bias_trend() {
    let start = Instant::now();
    let mut c = Check::new();
    let mut means = Vec::new();
    for n in [30usize, 100, 300] {
        let kernel = KernelSpec::gaussian_for(n, 3).unwrap();
        let mean = (0..50)
            .map(|r| {
                let design = Design64::random(n, 3, &mut SeededRng::new(5000 + n as u64, r));
                entropy_mc(&design, &kernel).unwrap().0
            })
            .sum::<f64>()
            / 50.0;
        c.expect(mean < 0.0, format!("mean H (n={n}) = {mean:.4} < 0"));
        means.push(mean);
    }
    c.expect(
        means.windows(2).all(|w| w[0] <= w[1]),
        format!("nondecreasing in n: {means:.4?}"),
    );
    c.finish("C5", "kernel-density entropy bias trend", start.elapsed(), Some(Duration::from_secs(60)));
}

#[test]
fn criterion_06_discrepancy_oracles() {
    let start = Instant::now();
    let mut c = Check::new();
    let single = Design64::from_rows(&[[0.5]]).unwrap();
    let l2 = discrepancy_l2(&single).powi(2);
    let cl2 = discrepancy_centered_l2(&single).powi(2);
    c.expect(within(l2, 1.0 / 12.0, 1e-12), format!("dl2^2 of {{0.5}} = {l2}"));
    c.expect(within(cl2, 1.0 / 12.0, 1e-12), format!("dc2^2 of {{0.5}} = {cl2}"));

    let mut rng = SeededRng::new(6, 0);
    for k in 0..5 {
        let design: Design64 = gen_random(10, 2, &mut rng);
        let (m, se) = mc_l2_star_sq(&design, 1_000_000, &mut rng);
        let closed = discrepancy_l2(&design).powi(2);
        c.expect(
            (closed - m).abs() <= 3.0 * se,
            format!("design {k}: dl2^2 {closed:.6} vs MC {m:.6} ± {se:.1e}"),
        );
        let (m, se) = mc_centered_l2_sq(&design, 1_000_000, &mut rng);
        let closed = discrepancy_centered_l2(&design).powi(2);
        c.expect(
            (closed - m).abs() <= 3.0 * se,
            format!("design {k}: dc2^2 {closed:.6} vs MC {m:.6} ± {se:.1e}"),
        );
    }
    c.finish("C6", "discrepancy oracles", start.elapsed(), Some(Duration::from_secs(60)));
}

#[test]
fn criterion_07_grid_coverage() {
    let start = Instant::now();
    let mut c = Check::new();
    let rows: Vec<[f64; 2]> = (0..25).map(|k| [(k / 5) as f64 * 0.25, (k % 5) as f64 * 0.25]).collect();
    let cov = coverage(&Design64::from_rows(&rows).unwrap()).unwrap();
    c.expect(cov <= 1e-12, format!("cov(5x5 grid) = {cov:e}"));
    c.finish("C7", "regular grid has zero coverage", start.elapsed(), None);
}

#[test]
fn criterion_08_mst_oracle() {
    let start = Instant::now();
    let mut c = Check::new();
    let mut rng = SeededRng::new(8, 0);
    for k in 0..20 {
        let n = 2 + k % 5;
        let d = 1 + k % 3;
        let design: Design64 = gen_random(n, d, &mut rng);
        let prim: f64 = minimum_spanning_tree(&design).iter().map(|e| e.2).sum();
        let brute = exhaustive_mst_weight(&design);
        c.expect((prim - brute).abs() <= 1e-12, format!("design {k} (n={n}, d={d}): {prim} vs {brute}"));
    }
    let stats = mst_stats(&Design64::from_rows(&[[0.0], [0.5], [1.0]]).unwrap()).unwrap();
    c.expect(stats == (0.5, 0.0), format!("{{0,0.5,1}} -> {stats:?}"));
    c.finish("C8", "minimum spanning tree oracle", start.elapsed(), None);
}

#[test]
fn criterion_09_optimizer_contract() {
    let start = Instant::now();
    let mut c = Check::new();
    for d in 1..=3usize {
        let n = 10 * d;
        let objectives = [Objective::mc_gauss_for(n, d).unwrap(), Objective::EntropyNn, Objective::Mindist];
        for obj in &objectives {
            for seed in 0..3u64 {
                let config = OptimizerConfig::for_dim(d, seed);
                let a = multi_start(obj, n, d, &config).unwrap();
                let b = multi_start(obj, n, d, &config).unwrap();
                let tag = format!("{} d={d} seed={seed}", obj.name());
                c.expect(a.traces.iter().all(|t| t.is_monotone()), format!("{tag}: monotone traces"));
                c.expect(a.traces.iter().all(|t| t.proposals <= 1000 * d), format!("{tag}: within 1000 d proposals"));
                c.expect(a.best == b.best && a.traces == b.traces, format!("{tag}: bit-reproducible"));

                let initial = Design64::random(n, d, &mut SeededRng::new(seed, 77));
                let (x, tx) = exchange_run(&initial, obj, &config).unwrap();
                let (y, ty) = exchange_run(&initial, obj, &config).unwrap();
                c.expect(x == y && tx == ty, format!("{tag}: single run reproducible"));
            }
        }
    }
    c.finish("C9", "optimizer contract", start.elapsed(), None);
}

const BENCH_METHODS: [Method; 5] = [Method::Random, Method::Lhs, Method::McGauss, Method::Ppv, Method::Maximin];

fn d3_bench() -> &'static (BenchReport, Duration) {
    static REPORT: OnceLock<(BenchReport, Duration)> = OnceLock::new();
    REPORT.get_or_init(|| {
        let start = Instant::now();
        let config = BenchConfig::new(BENCH_METHODS.to_vec(), 30, 3, 20, 2024);
        let report = run_bench(&config).unwrap();
        (report, start.elapsed())
    })
}

#[test]
fn criterion_10_headline_comparison() {
    let start = Instant::now();
    let (report, bench_time) = d3_bench();
    let mut c = Check::new();
    c.expect(report.rows.len() == 100, format!("{} rows", report.rows.len()));
    c.expect(report.summaries.len() == 5, format!("{} summaries", report.summaries.len()));
    let s = |m| report.summary(m).unwrap();
    for kl in [Method::McGauss, Method::Ppv] {
        for base in [Method::Random, Method::Lhs] {
            c.expect(
                s(kl).mean.cov < s(base).mean.cov,
                format!("cov {kl} {:.4} < {base} {:.4}", s(kl).mean.cov, s(base).mean.cov),
            );
            c.expect(
                s(kl).mean.mindist > s(base).mean.mindist,
                format!("mindist {kl} {:.4} > {base} {:.4}", s(kl).mean.mindist, s(base).mean.mindist),
            );
        }
    }
    println!("       bench (n=30, d=3, 20 reps) ran in {bench_time:.2?}");
    c.finish("C10", "headline comparison n=30 d=3", start.elapsed(), Some(Duration::from_secs(600)));
}

#[test]
fn criterion_11_mst_cartography() {
    let start = Instant::now();
    let (report, _) = d3_bench();
    let mut c = Check::new();
    let mc = report.summary(Method::McGauss).unwrap();
    let rnd = report.summary(Method::Random).unwrap();
    c.expect(
        mc.mean.mst_mean > rnd.mean.mst_mean,
        format!("mst_mean mcgauss {:.4} > random {:.4}", mc.mean.mst_mean, rnd.mean.mst_mean),
    );
    c.expect(
        mc.mean.mst_std < rnd.mean.mst_std,
        format!("mst_std mcgauss {:.4} < random {:.4}", mc.mean.mst_std, rnd.mean.mst_std),
    );
    c.finish("C11", "minimum spanning tree statistics direction", start.elapsed(), Some(Duration::from_secs(600)));
}

#[test]
fn criterion_12_dimension_ten() {
    let start = Instant::now();
    let mut c = Check::new();
    let config = BenchConfig::new(vec![Method::McGauss, Method::Ppv, Method::Maximin], 100, 10, 5, 1010);
    let report = run_bench(&config).unwrap();
    let m = |k| report.summary(k).unwrap().mean.mindist;
    let (mc, ppv, mm) = (m(Method::McGauss), m(Method::Ppv), m(Method::Maximin));
    let best_kl = mc.max(ppv);
    c.expect(
        best_kl >= 0.9 * mm,
        format!("max(mcgauss {mc:.4}, ppv {ppv:.4}) >= 0.9 x maximin {mm:.4}"),
    );
    c.finish("C12", "dimension-10 mindist vs maximin", start.elapsed(), Some(Duration::from_secs(1800)));
}
