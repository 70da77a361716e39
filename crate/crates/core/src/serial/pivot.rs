use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::michelot::michelot_slice;
use super::select::{partition3_desc, select_desc};
use crate::error::Result;
use crate::problem::{finish_dense, validate, ProjectionInstance, SolverStats, SparseProjection};
use crate::sum::Neumaier;

/// Seed of the randomized quickselect behind the median rule.
const MEDIAN_SEED: u64 = 0x5eed_6d65_6469_616e;

/// How Pivot and Partition picks its next pivot among the current candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotRule {
    /// A uniformly random candidate value, reproducible from the seed.
    Random { seed: u64 },
    /// The exact median of the candidate values.
    Median,
    /// Michelot's pivot `(sum(d_I) - b)/|I|`; dispatches to [`super::michelot`].
    MichelotStart,
}

/// Pivot and Partition.
///
/// Keeps a candidate range known to contain the pivot plus a block of
/// entries known to be active. Each step picks a pivot value `p` from the
/// candidates and tests whether the active block together with every
/// candidate `>= p` is a feasible prefix of the sorted order:
/// `(S + sum(G) - b)/(m + |G|) < p`. If so that whole block is active and the
/// search continues below `p`; otherwise every candidate `<= p` is inactive and
/// the search continues among the entries above `p`. Both branches remove at
/// least the pivot, so the loop terminates even with heavy ties.
pub fn pivot_partition(instance: &ProjectionInstance, rule: PivotRule) -> Result<(SparseProjection, SolverStats)> {
    validate(instance.d(), instance.b())?;
    pivot_partition_slice(instance.d(), instance.b(), rule)
}

pub(crate) fn pivot_partition_slice(d: &[f64], b: f64, rule: PivotRule) -> Result<(SparseProjection, SolverStats)> {
    let mut rng = match rule {
        PivotRule::MichelotStart => return michelot_slice(d, b, None),
        PivotRule::Random { seed } => ChaCha8Rng::seed_from_u64(seed),
        PivotRule::Median => ChaCha8Rng::seed_from_u64(MEDIAN_SEED),
    };
    let mut buf = d.to_vec();
    let mut stats = SolverStats { reduced_size: d.len(), ..Default::default() };
    let mut active_sum = Neumaier::new();
    let mut active_count = 0usize;
    let (mut lo, mut hi) = (0usize, buf.len());

    while lo < hi {
        stats.outer_iterations += 1;
        let cand = &mut buf[lo..hi];
        stats.elements_scanned += cand.len();
        let pivot = match rule {
            PivotRule::Median => {
                stats.elements_scanned += cand.len();
                let mid = (cand.len() - 1) / 2;
                select_desc(cand, mid, &mut rng)
            }
            _ => cand[rng.random_range(0..cand.len())],
        };
        let (gt, eq) = partition3_desc(cand, pivot);
        let upper: Neumaier = cand[..eq].iter().copied().collect();
        let mut trial = active_sum;
        trial.merge(&upper);
        let trial_count = active_count + eq;
        if (trial.value() - b) / (trial_count as f64) < pivot {
            active_sum = trial;
            active_count = trial_count;
            lo += eq;
        } else {
            hi = lo + gt;
        }
    }

    let tau = (active_sum.value() - b) / active_count as f64;
    Ok((finish_dense(d, b, tau)?, stats))
}
