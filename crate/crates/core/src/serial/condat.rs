use super::filter::filter_slice;
use crate::error::Result;
use crate::problem::{finish, validate, ProjectionInstance, SolverStats, SparseProjection};
use crate::sum::Neumaier;

/// Condat's method: Filter, then Michelot-style passes in which the pivot is
/// updated on every removal, `p += (p - d_i)/|I|`.
pub fn condat(instance: &ProjectionInstance) -> Result<(SparseProjection, SolverStats)> {
    validate(instance.d(), instance.b())?;
    condat_slice(instance.d(), instance.b())
}

pub(crate) fn condat_slice(d: &[f64], b: f64) -> Result<(SparseProjection, SolverStats)> {
    let filtered = filter_slice(d, b);
    let mut stats = filtered.stats;
    let mut active = filtered.indices;
    let p = condat_main_loop(d, b, &mut active, &mut stats);
    Ok((finish(d, b, &active, p)?, stats))
}

/// Main loop on a candidate list that contains the active set. Starts from
/// `p = (sum(d_I) - b)/|I|`, which counts as preprocessing, and returns the
/// final pivot with `candidates` reduced to the active set.
pub(crate) fn condat_main_loop(d: &[f64], b: f64, candidates: &mut Vec<usize>, stats: &mut SolverStats) -> f64 {
    let start = candidates.len();
    let mut p = (candidates.iter().map(|&i| d[i]).collect::<Neumaier>().value() - b) / start as f64;
    stats.elements_scanned += start;
    stats.preprocess_scanned += start;
    stats.reduced_size = start;

    loop {
        let before = candidates.len();
        let mut len = before;
        candidates.retain(|&i| {
            let x = d[i];
            if x > p || len == 1 {
                true
            } else {
                len -= 1;
                p += (p - x) / len as f64;
                false
            }
        });
        stats.elements_scanned += before;
        stats.outer_iterations += 1;
        if candidates.len() == before {
            break;
        }
    }
    p
}
