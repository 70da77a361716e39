use crate::error::Result;
use crate::order::sort_desc_unstable;
use crate::problem::{finish_dense, validate, ProjectionInstance, SolverStats, SparseProjection};
use crate::sum::Neumaier;

/// Which comparison sort orders the entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SortStrategy {
    /// Pattern-defeating quicksort.
    #[default]
    Unstable,
    /// Merge sort.
    Stable,
}

/// Sort and Scan: sort descending, then scan prefix sums until
/// `(s_j - b)/j < d_(j)` first fails.
pub fn sort_scan(instance: &ProjectionInstance) -> Result<(SparseProjection, SolverStats)> {
    sort_scan_with(instance, SortStrategy::default())
}

pub fn sort_scan_with(
    instance: &ProjectionInstance,
    strategy: SortStrategy,
) -> Result<(SparseProjection, SolverStats)> {
    validate(instance.d(), instance.b())?;
    sort_scan_slice(instance.d(), instance.b(), strategy)
}

pub(crate) fn sort_scan_slice(d: &[f64], b: f64, strategy: SortStrategy) -> Result<(SparseProjection, SolverStats)> {
    let sorted = match strategy {
        SortStrategy::Unstable => sort_desc_unstable(d),
        SortStrategy::Stable => {
            let mut v = d.to_vec();
            v.sort_by(|x, y| y.total_cmp(x));
            v
        }
    };
    let (tau, scanned) = scan_sorted(&sorted, b);
    let stats = SolverStats {
        elements_scanned: d.len() + scanned,
        outer_iterations: 1,
        reduced_size: d.len(),
        ..Default::default()
    };
    Ok((finish_dense(d, b, tau)?, stats))
}

/// Pivot of a descending-sorted vector. Returns the pivot and the number of
/// entries scanned.
pub(crate) fn scan_sorted(sorted: &[f64], b: f64) -> (f64, usize) {
    let mut acc = Neumaier::new();
    let mut kappa_sum = 0.0;
    let mut kappa = 0usize;
    for (j, &x) in sorted.iter().enumerate() {
        acc.add(x);
        let s = acc.value();
        if (s - b) / ((j + 1) as f64) < x {
            kappa = j + 1;
            kappa_sum = s;
        } else {
            break;
        }
    }
    let scanned = (kappa + 1).min(sorted.len());
    ((kappa_sum - b) / kappa as f64, scanned)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(d: &[f64], b: f64) -> SparseProjection {
        sort_scan(&ProjectionInstance::new(d.to_vec(), b).unwrap()).unwrap().0
    }

    #[test]
    fn examples() {
        assert_eq!(run(&[2.0, 1.0, 0.0], 1.0).tau, 1.0);
        let p = run(&[1.0, 1.0], 1.0);
        assert_eq!(p.tau, 0.5);
        assert_eq!(p.values, vec![0.5, 0.5]);
    }

    #[test]
    fn full_support_when_sum_below_scale() {
        let p = run(&[0.4, 0.3, 0.3], 1.1);
        assert!((p.tau + 1.0 / 30.0).abs() < 1e-15);
        assert_eq!(p.indices, vec![0, 1, 2]);
    }

    #[test]
    fn strategies_agree() {
        let d: Vec<f64> = (0..500).map(|i| ((i * 7919) % 101) as f64 / 13.0).collect();
        let inst = ProjectionInstance::new(d, 2.5).unwrap();
        let a = sort_scan_with(&inst, SortStrategy::Stable).unwrap().0;
        let b = sort_scan_with(&inst, SortStrategy::Unstable).unwrap().0;
        assert_eq!(a, b);
    }
}
