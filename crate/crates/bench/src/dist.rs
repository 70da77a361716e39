use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, Uniform};
use simplex_proj::ProjectionInstance;

use crate::error::{BenchError, Result};

/// Distribution of the i.i.d. entries of a generated instance.
///
/// Text forms: `uniform(l,u)`, `normal(mu,var)` (variance, not standard
/// deviation), `sparse-uniform(rate)` (fraction of exact zeros, the rest
/// `U[0,1]`), `constant(c)`, `duplicates(levels)` (uniform over
/// `{0, 1/levels, ..., 1}`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistSpec {
    Uniform { lo: f64, hi: f64 },
    Normal { mean: f64, var: f64 },
    SparseUniform { rate: f64 },
    Constant(f64),
    Duplicates { levels: u32 },
}

impl FromStr for DistSpec {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || BenchError::Spec(s.to_string());
        let s = s.trim();
        let (name, rest) = s.split_once('(').ok_or_else(bad)?;
        let args = rest.strip_suffix(')').ok_or_else(bad)?;
        let nums: Vec<f64> = if args.trim().is_empty() {
            Vec::new()
        } else {
            args.split(',').map(|a| a.trim().parse::<f64>()).collect::<std::result::Result<_, _>>().map_err(|_| bad())?
        };
        if nums.iter().any(|x| !x.is_finite()) {
            return Err(bad());
        }
        let spec = match (name.trim(), nums.as_slice()) {
            ("uniform", [lo, hi]) if lo < hi => DistSpec::Uniform { lo: *lo, hi: *hi },
            ("normal", [mean, var]) if *var > 0.0 => DistSpec::Normal { mean: *mean, var: *var },
            ("sparse-uniform", [rate]) if (0.0..=1.0).contains(rate) => DistSpec::SparseUniform { rate: *rate },
            ("constant", [c]) => DistSpec::Constant(*c),
            ("duplicates", [l]) if *l >= 1.0 && l.fract() == 0.0 && *l <= u32::MAX as f64 => {
                DistSpec::Duplicates { levels: *l as u32 }
            }
            _ => return Err(bad()),
        };
        Ok(spec)
    }
}

impl fmt::Display for DistSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistSpec::Uniform { lo, hi } => write!(f, "uniform({lo},{hi})"),
            DistSpec::Normal { mean, var } => write!(f, "normal({mean},{var})"),
            DistSpec::SparseUniform { rate } => write!(f, "sparse-uniform({rate})"),
            DistSpec::Constant(c) => write!(f, "constant({c})"),
            DistSpec::Duplicates { levels } => write!(f, "duplicates({levels})"),
        }
    }
}

/// `n` draws from `spec`, fully determined by `seed`.
pub fn generate_vector(spec: DistSpec, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match spec {
        DistSpec::Uniform { lo, hi } => {
            let u = Uniform::new(lo, hi).expect("checked when parsed");
            (0..n).map(|_| u.sample(&mut rng)).collect()
        }
        DistSpec::Normal { mean, var } => {
            let g = Normal::new(mean, var.sqrt()).expect("checked when parsed");
            (0..n).map(|_| g.sample(&mut rng)).collect()
        }
        DistSpec::SparseUniform { rate } => {
            (0..n).map(|_| if rng.random::<f64>() < rate { 0.0 } else { rng.random::<f64>() }).collect()
        }
        DistSpec::Constant(c) => vec![c; n],
        DistSpec::Duplicates { levels } => {
            (0..n).map(|_| f64::from(rng.random_range(0..=levels)) / f64::from(levels)).collect()
        }
    }
}

pub fn generate_instance(spec: DistSpec, n: usize, b: f64, seed: u64) -> Result<ProjectionInstance> {
    Ok(ProjectionInstance::new(generate_vector(spec, n, seed), b)?)
}
