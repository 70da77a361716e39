use crate::error::Result;
use crate::problem::{validate, SolverStats};

/// Result of Condat's Filter: a superset of the active set and a pivot
/// lying between `mean(d) - b/n` and the true pivot.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterOutput {
    /// Ascending indices.
    pub indices: Vec<usize>,
    pub pivot: f64,
    pub stats: SolverStats,
}

/// Single forward pass that keeps a running pivot over a candidate list,
/// parking discarded candidates in a waiting list that is re-checked once at
/// the end.
pub fn filter(d: &[f64], b: f64) -> Result<FilterOutput> {
    validate(d, b)?;
    Ok(filter_slice(d, b))
}

pub(crate) fn filter_slice(d: &[f64], b: f64) -> FilterOutput {
    let mut kept = vec![0usize];
    let mut waiting: Vec<usize> = Vec::new();
    let mut p = d[0] - b;
    for (i, &x) in d.iter().enumerate().skip(1) {
        if x > p {
            p += (x - p) / (kept.len() + 1) as f64;
            if p > x - b {
                kept.push(i);
            } else {
                waiting.append(&mut kept);
                kept.push(i);
                p = x - b;
            }
        }
    }
    let second_pass = waiting.len();
    for &i in &waiting {
        let x = d[i];
        if x > p {
            kept.push(i);
            p += (x - p) / kept.len() as f64;
        }
    }
    kept.sort_unstable();
    let stats = SolverStats {
        elements_scanned: d.len() + second_pass,
        outer_iterations: 1,
        reduced_size: kept.len(),
        preprocess_scanned: d.len() + second_pass,
        dense_fallback: false,
    };
    FilterOutput { indices: kept, pivot: p, stats }
}
