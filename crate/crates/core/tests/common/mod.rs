#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use simplex_proj::serial::{BucketParams, PivotRule};
use simplex_proj::{Algorithm, ProjectionInstance};

#[derive(Debug, Clone, Copy)]
pub enum Dist {
    Uniform,
    Normal,
    Constant,
    Sorted,
    ReverseSorted,
    Duplicates,
}

pub const DISTS: [Dist; 6] =
    [Dist::Uniform, Dist::Normal, Dist::Constant, Dist::Sorted, Dist::ReverseSorted, Dist::Duplicates];

pub fn vector(dist: Dist, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match dist {
        Dist::Uniform => (0..n).map(|_| rng.random::<f64>()).collect(),
        Dist::Normal => {
            let g = Normal::new(0.0, 1.0).unwrap();
            (0..n).map(|_| g.sample(&mut rng)).collect()
        }
        Dist::Constant => vec![rng.random_range(-2.0..2.0); n],
        Dist::Sorted | Dist::ReverseSorted => {
            let mut v: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
            v.sort_by(f64::total_cmp);
            if matches!(dist, Dist::ReverseSorted) {
                v.reverse();
            }
            v
        }
        Dist::Duplicates => (0..n).map(|_| f64::from(rng.random_range(0..5u8)) / 4.0).collect(),
    }
}

pub fn instance(dist: Dist, n: usize, seed: u64) -> ProjectionInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xb5);
    let b = [1.0, 0.5, 3.0, 100.0][rng.random_range(0..4)];
    ProjectionInstance::new(vector(dist, n, seed), b).unwrap()
}

pub fn serial_algorithms() -> Vec<Algorithm> {
    vec![
        Algorithm::SortScan,
        Algorithm::PivotPartition(PivotRule::Median),
        Algorithm::PivotPartition(PivotRule::Random { seed: 7 }),
        Algorithm::PivotPartition(PivotRule::MichelotStart),
        Algorithm::Michelot,
        Algorithm::Condat,
    ]
}

pub fn parallel_algorithms() -> Vec<Algorithm> {
    vec![
        Algorithm::ParallelSortScan,
        Algorithm::ParallelPivot(PivotRule::Median),
        Algorithm::ParallelPivot(PivotRule::Random { seed: 3 }),
        Algorithm::ParallelCondat,
    ]
}

pub fn bucket(tolerance: f64) -> Algorithm {
    Algorithm::Bucket(Some(BucketParams::new(BucketParams::DEFAULT_BRANCHING, tolerance).unwrap()))
}

pub fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * b.abs().max(1.0)
}

/// Pivot from the bracketing condition `d_(k+1) <= tau_k < d_(k)` on the
/// sorted vector, with Kahan-summed prefixes.
pub fn oracle_tau(d: &[f64], b: f64) -> f64 {
    let mut s = d.to_vec();
    s.sort_by(|x, y| y.total_cmp(x));
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    let mut last = f64::NAN;
    for k in 0..s.len() {
        let y = s[k] - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        let tau = (sum - b) / (k + 1) as f64;
        let next = s.get(k + 1).copied().unwrap_or(f64::NEG_INFINITY);
        last = tau;
        if tau < s[k] && tau >= next {
            return tau;
        }
    }
    last
}
