//! Replicated comparison of generators on the criteria battery.
//!
//! Every `(method, replicate)` row is generated from its own seed
//! (`seed + replicate`) inside the method's rng stream block, so any single
//! row can be regenerated with `generate` using the recorded seed.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

use crate::criteria::{evaluate_all, CriteriaReport};
use crate::error::{Error, Result};
use crate::generators::{generate, GeneratorSpec, Method};
use crate::optimizer::OptimizerConfig;

pub const ROWS_HEADER: &str = "method,rep,seed,cov,mindist,dl2,dc2,mst_mean,mst_std,objective,wall_s";
pub const SUMMARY_HEADER: &str = "method,reps_ok,cov_mean,cov_std,mindist_mean,mindist_std,dl2_mean,dl2_std,\
dc2_mean,dc2_std,mst_mean_mean,mst_mean_std,mst_std_mean,mst_std_std,objective_mean,wall_s_mean";

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub methods: Vec<Method>,
    pub n: usize,
    pub d: usize,
    pub reps: usize,
    pub seed: u64,
    /// Optimizer settings for the optimized methods; seeds are per row.
    pub optimizer: OptimizerConfig,
}

impl BenchConfig {
    pub fn new(methods: Vec<Method>, n: usize, d: usize, reps: usize, seed: u64) -> Self {
        Self {
            methods,
            n,
            d,
            reps,
            seed,
            optimizer: OptimizerConfig::for_dim(d, seed),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub method: Method,
    pub rep: usize,
    pub seed: u64,
    /// Criteria, or the error message of a failed row.
    pub outcome: std::result::Result<CriteriaReport<f64>, String>,
    pub objective: Option<f64>,
    pub wall_s: f64,
}

#[derive(Clone, Debug)]
pub struct MethodSummary {
    pub method: Method,
    pub reps_ok: usize,
    pub mean: CriteriaReport<f64>,
    pub std: CriteriaReport<f64>,
    pub objective_mean: Option<f64>,
    pub wall_s_mean: f64,
}

#[derive(Clone, Debug)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub summaries: Vec<MethodSummary>,
}

impl BenchReport {
    pub fn summary(&self, method: Method) -> Option<&MethodSummary> {
        self.summaries.iter().find(|s| s.method == method)
    }

    pub fn rows_csv(&self) -> String {
        let mut out = String::from(ROWS_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = write!(out, "{},{},{},", r.method, r.rep, r.seed);
            match &r.outcome {
                Ok(c) => {
                    out.push_str(&c.to_csv_row());
                    out.push(',');
                    if let Some(o) = r.objective {
                        let _ = write!(out, "{o}");
                    }
                }
                // Failed rows keep the column count; the objective column
                // carries the error marker.
                Err(msg) => {
                    let _ = write!(out, ",,,,,,error: {}", msg.replace([',', '\n'], ";"));
                }
            }
            let _ = writeln!(out, ",{:.6}", r.wall_s);
        }
        out
    }

    pub fn summary_csv(&self) -> String {
        let mut out = String::from(SUMMARY_HEADER);
        out.push('\n');
        for s in &self.summaries {
            let _ = write!(out, "{},{}", s.method, s.reps_ok);
            for (m, sd) in s.mean.values().iter().zip(s.std.values()) {
                let _ = write!(out, ",{m},{sd}");
            }
            out.push(',');
            if let Some(o) = s.objective_mean {
                let _ = write!(out, "{o}");
            }
            let _ = writeln!(out, ",{:.6}", s.wall_s_mean);
        }
        out
    }

    /// Writes `rows.csv` and `summary.csv` into `dir`, creating it if needed.
    pub fn write(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        let io = |source| Error::Io {
            path: dir.display().to_string(),
            source,
        };
        fs::create_dir_all(dir).map_err(io)?;
        fs::write(dir.join("rows.csv"), self.rows_csv()).map_err(io)?;
        fs::write(dir.join("summary.csv"), self.summary_csv()).map_err(io)?;
        Ok(())
    }
}

fn run_row(config: &BenchConfig, method: Method, rep: usize) -> BenchRow {
    let seed = config.seed.wrapping_add(rep as u64);
    let spec = GeneratorSpec {
        method,
        n: config.n,
        d: config.d,
        seed,
        optimizer: config.optimizer.clone(),
    };
    let start = Instant::now();
    let result = generate::<f64>(&spec).and_then(|g| Ok((evaluate_all(&g.design)?, g.objective())));
    let wall_s = start.elapsed().as_secs_f64();
    let (outcome, objective) = match result {
        Ok((c, o)) => (Ok(c), o),
        Err(e) => (Err(e.to_string()), None),
    };
    BenchRow {
        method,
        rep,
        seed,
        outcome,
        objective,
        wall_s,
    }
}

fn summarize(method: Method, rows: &[BenchRow]) -> MethodSummary {
    let ok: Vec<(&CriteriaReport<f64>, Option<f64>)> = rows
        .iter()
        .filter(|r| r.method == method)
        .filter_map(|r| r.outcome.as_ref().ok().map(|c| (c, r.objective)))
        .collect();
    let k = ok.len().max(1) as f64;
    let mut mean = [0.0; 6];
    for (c, _) in &ok {
        for (m, v) in mean.iter_mut().zip(c.values()) {
            *m += v / k;
        }
    }
    let mut var = [0.0; 6];
    for (c, _) in &ok {
        for ((s, v), m) in var.iter_mut().zip(c.values()).zip(mean) {
            *s += (v - m) * (v - m) / k;
        }
    }
    let objectives: Vec<f64> = ok.iter().filter_map(|(_, o)| *o).collect();
    let objective_mean =
        (!objectives.is_empty()).then(|| objectives.iter().sum::<f64>() / objectives.len() as f64);
    let times: Vec<f64> = rows.iter().filter(|r| r.method == method).map(|r| r.wall_s).collect();
    let wall_s_mean = times.iter().sum::<f64>() / times.len().max(1) as f64;
    let to_report = |a: [f64; 6]| CriteriaReport {
        cov: a[0],
        mindist: a[1],
        dl2: a[2],
        dc2: a[3],
        mst_mean: a[4],
        mst_std: a[5].max(0.0),
    };
    MethodSummary {
        method,
        reps_ok: ok.len(),
        mean: to_report(mean),
        std: to_report(var.map(f64::sqrt)),
        objective_mean,
        wall_s_mean,
    }
}

/// Runs every `(method, replicate)` row and summarizes per method. Rows run
/// in parallel; output order is methods as given, then replicate index.
pub fn run_bench(config: &BenchConfig) -> Result<BenchReport> {
    if config.methods.is_empty() {
        return Err(Error::InvalidArgument("no methods selected".into()));
    }
    if config.reps == 0 {
        return Err(Error::InvalidArgument("reps must be at least 1".into()));
    }
    config.optimizer.check()?;
    let jobs: Vec<(Method, usize)> = config
        .methods
        .iter()
        .flat_map(|&m| (0..config.reps).map(move |r| (m, r)))
        .collect();
    let rows: Vec<BenchRow> = jobs.par_iter().map(|&(m, r)| run_row(config, m, r)).collect();
    let summaries = config.methods.iter().map(|&m| summarize(m, &rows)).collect();
    Ok(BenchReport { rows, summaries })
}
