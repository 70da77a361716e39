use crate::error::{ProjectionError, Result};
use crate::problem::{finish_dense, validate, ProjectionInstance, SolverStats, SparseProjection};
use crate::sum::Neumaier;

/// Branching factor `c` and absolute pivot tolerance `D` of the bucket
/// method. At most `ceil(log_c(R/D))` rounds run, with `R` the range of `d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BucketParams {
    pub branching: usize,
    pub tolerance: f64,
}

impl BucketParams {
    pub const DEFAULT_BRANCHING: usize = 64;

    pub fn new(branching: usize, tolerance: f64) -> Result<Self> {
        if branching < 2 {
            return Err(ProjectionError::InvalidArgument(format!("branching factor must be >= 2, got {branching}")));
        }
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(ProjectionError::InvalidArgument(format!("tolerance must be positive, got {tolerance}")));
        }
        Ok(Self { branching, tolerance })
    }

    /// `c = 64`, `D = 1e-9 * max(1, R)`.
    pub fn default_for_range(range: f64) -> Self {
        Self { branching: Self::DEFAULT_BRANCHING, tolerance: 1e-9 * range.max(1.0) }
    }

    /// Round cap `T = ceil(log_c(R/D))`, at least one.
    pub fn max_rounds(&self, range: f64) -> usize {
        if range <= self.tolerance {
            return 1;
        }
        let t = ((range / self.tolerance).ln() / (self.branching as f64).ln()).ceil();
        (t as usize).max(1)
    }
}

/// Bucket method: each round splits the candidates into `c` equal-width
/// buckets and locates the bucket holding the pivot; buckets above it are
/// active. Once the round cap is reached, the few remaining candidates (all
/// within `D` of each other) are resolved exactly by a sorted scan, and the
/// pivot is recomputed from the identified active set.
pub fn bucket(instance: &ProjectionInstance, params: BucketParams) -> Result<(SparseProjection, SolverStats)> {
    validate(instance.d(), instance.b())?;
    bucket_slice(instance.d(), instance.b(), Some(params))
}

pub(crate) fn bucket_slice(d: &[f64], b: f64, params: Option<BucketParams>) -> Result<(SparseProjection, SolverStats)> {
    let n = d.len();
    let (lo, hi) = min_max(d);
    let range = hi - lo;
    let mut stats = SolverStats { reduced_size: n, ..Default::default() };
    if range == 0.0 {
        stats.elements_scanned = n;
        stats.outer_iterations = 1;
        let tau = d[0] - b / n as f64;
        let values = vec![b / n as f64; n];
        return Ok((SparseProjection { tau, indices: (0..n).collect(), values }, stats));
    }
    let params = params.unwrap_or_else(|| BucketParams::default_for_range(range));
    let c = params.branching;
    let rounds = params.max_rounds(range);

    let mut cand = d.to_vec();
    let mut active_sum = Neumaier::new();
    let mut active_count = 0usize;
    let mut scratch = vec![0.0; n];
    let mut bucket_of: Vec<usize> = Vec::with_capacity(n);
    let mut resolved = false;

    'rounds: for _ in 0..rounds {
        if cand.is_empty() {
            resolved = true;
            break;
        }
        stats.outer_iterations += 1;
        stats.elements_scanned += cand.len();
        let (lo, hi) = min_max(&cand);
        let width = hi - lo;
        if width == 0.0 {
            // a block of ties is all active or all inactive
            let g = cand.len();
            let mut trial = active_sum;
            trial.merge(&cand.iter().copied().collect());
            if (trial.value() - b) / ((active_count + g) as f64) < lo {
                active_sum = trial;
                active_count += g;
            }
            cand.clear();
            resolved = true;
            break;
        }
        // thresholds[j] = width * (c - 1 - j)/c + lo for 0-based bucket j; the last is lo
        let thresholds: Vec<f64> = (0..c).map(|j| width * (c - 1 - j) as f64 / c as f64 + lo).collect();

        let mut counts = vec![0usize; c];
        let mut sums = vec![Neumaier::new(); c];
        let mut maxima = vec![f64::NEG_INFINITY; c];
        bucket_of.clear();
        for &x in &cand {
            let j = bucket_index(x, hi, width, &thresholds);
            bucket_of.push(j);
            counts[j] += 1;
            sums[j].add(x);
            if x > maxima[j] {
                maxima[j] = x;
            }
        }

        // suffix maxima: largest entry strictly below bucket j
        let mut below = vec![f64::NEG_INFINITY; c + 1];
        for j in (0..c).rev() {
            below[j] = below[j + 1].max(maxima[j]);
        }

        let mut next: Option<usize> = None;
        for j in 0..c {
            let mut trial = active_sum;
            trial.merge(&sums[j]);
            let total = active_count + counts[j];
            if total == 0 {
                continue;
            }
            let p = (trial.value() - b) / total as f64;
            if p >= thresholds[j] {
                next = Some(j);
                break;
            }
            active_sum = trial;
            active_count = total;
            if p > below[j + 1] {
                cand.clear();
                resolved = true;
                break 'rounds;
            }
        }

        match next {
            Some(j) => {
                let mut len = 0;
                for (&x, &bj) in cand.iter().zip(&bucket_of) {
                    if bj == j {
                        scratch[len] = x;
                        len += 1;
                    }
                }
                cand.clear();
                cand.extend_from_slice(&scratch[..len]);
            }
            None => {
                cand.clear();
                resolved = true;
                break;
            }
        }
    }

    if !resolved && !cand.is_empty() {
        // leftover candidates span at most D; finish with an exact scan
        stats.elements_scanned += cand.len();
        cand.sort_unstable_by(|x, y| y.total_cmp(x));
        for &x in &cand {
            let mut trial = active_sum;
            trial.add(x);
            if (trial.value() - b) / ((active_count + 1) as f64) < x {
                active_sum = trial;
                active_count += 1;
            } else {
                break;
            }
        }
    }

    let tau = (active_sum.value() - b) / active_count as f64;
    Ok((finish_dense(d, b, tau)?, stats))
}

fn min_max(d: &[f64]) -> (f64, f64) {
    d.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)))
}

/// Bucket `j` holds entries with `thresholds[j] <= x < thresholds[j-1]`.
#[inline]
fn bucket_index(x: f64, hi: f64, width: f64, thresholds: &[f64]) -> usize {
    let c = thresholds.len();
    let guess = ((hi - x) / width * c as f64).floor();
    let mut j = if guess.is_finite() && guess > 0.0 { (guess as usize).min(c - 1) } else { 0 };
    while x < thresholds[j] {
        j += 1;
    }
    while j > 0 && x >= thresholds[j - 1] {
        j -= 1;
    }
    j
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::reference_project;

    fn run(d: &[f64], b: f64, params: Option<BucketParams>) -> (SparseProjection, SolverStats) {
        let inst = ProjectionInstance::new(d.to_vec(), b).unwrap();
        bucket_slice(inst.d(), inst.b(), params).unwrap()
    }

    #[test]
    fn examples() {
        let p = run(&[2.0, 1.0, 0.0], 1.0, Some(BucketParams::new(4, 1e-9).unwrap())).0;
        assert!((p.tau - 1.0).abs() <= 1e-9);

        let p = run(&[3.0, 3.0, 3.0], 1.0, None).0;
        assert!((p.tau - (3.0 - 1.0 / 3.0)).abs() < 1e-15);
        assert_eq!(p.values, vec![1.0 / 3.0; 3]);

        let p = run(&[2.0, 1.0, 0.0, 1.5], 1.0, Some(BucketParams::new(2, 1e-9).unwrap())).0;
        assert!((p.tau - 1.25).abs() <= 1e-9);
    }

    #[test]
    fn round_cap() {
        let p = BucketParams::new(64, 1e-9).unwrap();
        assert_eq!(p.max_rounds(1.0), 5);
        assert_eq!(BucketParams::new(2, 0.25).unwrap().max_rounds(1.0), 2);
        assert_eq!(BucketParams::new(10, 1.0).unwrap().max_rounds(0.5), 1);
    }

    #[test]
    fn params_validation() {
        assert!(BucketParams::new(1, 1e-9).is_err());
        assert!(BucketParams::new(4, 0.0).is_err());
        assert!(BucketParams::new(4, f64::NAN).is_err());
    }

    #[test]
    fn bucket_index_respects_thresholds() {
        let c = 8;
        let (lo, hi) = (-1.0, 3.0);
        let width = hi - lo;
        let th: Vec<f64> = (0..c).map(|j| width * (c - 1 - j) as f64 / c as f64 + lo).collect();
        for k in 0..=400 {
            let x = lo + width * k as f64 / 400.0;
            let j = bucket_index(x, hi, width, &th);
            assert!(x >= th[j]);
            if j > 0 {
                assert!(x < th[j - 1]);
            }
        }
    }

    #[test]
    fn many_ties_near_pivot() {
        let mut d = vec![0.5; 1000];
        d.extend([0.9, 0.8, 0.7]);
        let inst = ProjectionInstance::new(d.clone(), 1.0).unwrap();
        let want = reference_project(&inst).unwrap();
        for c in [2, 3, 64] {
            let got = run(&d, 1.0, Some(BucketParams::new(c, 1e-12).unwrap())).0;
            assert!((got.tau - want.tau).abs() < 1e-12);
            assert_eq!(got.indices, want.indices);
        }
    }
}
