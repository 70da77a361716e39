use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use simplex_proj::{reference_project, verify_kkt, Algorithm};

use crate::dist::{generate_instance, DistSpec};
use crate::error::{BenchError, Result};

/// Tolerance of the checks every timed solve must pass.
pub const CHECK_TOL: f64 = 1e-9;

/// A benchmark run, usually read from TOML:
///
/// ```toml
/// algorithms = ["condat", "pcondat"]
/// n = 1000000
/// dist = "uniform(0,1)"
/// b = 1.0
/// workers = [1, 2, 4]
/// trials = 5
/// seed = 42
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    pub algorithms: Vec<String>,
    pub n: usize,
    pub dist: String,
    #[serde(default = "default_b")]
    pub b: f64,
    #[serde(default = "default_workers")]
    pub workers: Vec<usize>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

fn default_b() -> f64 {
    1.0
}

fn default_workers() -> Vec<usize> {
    vec![1]
}

fn default_trials() -> usize {
    1
}

impl BenchConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(BenchError::Config(m));
        if self.algorithms.is_empty() {
            return bad("no algorithms listed".into());
        }
        for a in &self.algorithms {
            Algorithm::from_id(a)?;
        }
        if self.n == 0 || self.trials == 0 {
            return bad("n and trials must be at least 1".into());
        }
        if self.workers.is_empty() || self.workers.contains(&0) {
            return bad("worker counts must be at least 1".into());
        }
        if !(self.b > 0.0 && self.b.is_finite()) {
            return bad(format!("b must be positive, got {}", self.b));
        }
        self.dist.parse::<DistSpec>()?;
        Ok(())
    }
}

/// One timed solve. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub algorithm: String,
    pub n: usize,
    pub dist: String,
    pub b: f64,
    pub k: usize,
    pub trial: usize,
    pub time_ns: u64,
    pub reduced_size: usize,
    pub tau: f64,
}

/// Time every (algorithm, k, trial) of `cfg`. Trial `t` uses the instance
/// generated from `seed + t`, so every algorithm sees the same inputs.
/// Serial algorithms run once per trial with `k = 1`. Each solve is checked
/// against the optimality conditions and the reference pivot before it is
/// recorded; timing covers the solve alone.
pub fn run_benchmark(cfg: &BenchConfig) -> Result<Vec<BenchRecord>> {
    cfg.validate()?;
    let spec: DistSpec = cfg.dist.parse()?;
    let mut records = Vec::new();
    for trial in 0..cfg.trials {
        let seed = cfg.seed.wrapping_add(trial as u64);
        let inst = generate_instance(spec, cfg.n, cfg.b, seed)?;
        let want = reference_project(&inst)?.tau;
        for id in &cfg.algorithms {
            let alg = Algorithm::from_id(id)?;
            let ks: Vec<usize> = if alg.is_parallel() { cfg.workers.clone() } else { vec![1] };
            for k in ks {
                let fail = |reason: String| BenchError::Solve { algorithm: id.clone(), seed, k, reason };
                let start = Instant::now();
                let result = alg.project(&inst, k);
                let elapsed = start.elapsed();
                let (proj, stats) = result.map_err(|e| fail(e.to_string()))?;
                if !verify_kkt(&inst, &proj, CHECK_TOL) {
                    return Err(fail("optimality check failed".into()));
                }
                if (proj.tau - want).abs() > CHECK_TOL * want.abs().max(1.0) {
                    return Err(fail(format!("pivot {} differs from reference {want}", proj.tau)));
                }
                records.push(BenchRecord {
                    algorithm: id.clone(),
                    n: cfg.n,
                    dist: spec.to_string(),
                    b: cfg.b,
                    k,
                    trial,
                    time_ns: (elapsed.as_nanos() as u64).max(1),
                    reduced_size: stats.reduced_size,
                    tau: proj.tau,
                });
            }
        }
    }
    records.sort_by(|x, y| (&x.algorithm, x.k, x.trial).cmp(&(&y.algorithm, y.k, y.trial)));
    Ok(records)
}

pub fn write_csv(records: &[BenchRecord], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv(input: impl Read) -> Result<Vec<BenchRecord>> {
    let mut r = csv::Reader::from_reader(input);
    let records = r.deserialize().collect::<std::result::Result<Vec<BenchRecord>, _>>()?;
    Ok(records)
}
