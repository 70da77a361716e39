use crate::error::Result;
use crate::problem::{finish, validate, ProjectionInstance, SolverStats, SparseProjection};
use crate::sum::Neumaier;

/// Pivot sequence and candidate sizes recorded by [`michelot_traced`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MichelotTrace {
    /// Pivot computed in each pass.
    pub pivots: Vec<f64>,
    /// Candidate count at the start of each pass, followed by the final
    /// count.
    pub pass_sizes: Vec<usize>,
}

impl MichelotTrace {
    /// Fraction of candidates surviving each pass.
    pub fn survivor_ratios(&self) -> Vec<f64> {
        self.pass_sizes.windows(2).map(|w| w[1] as f64 / w[0] as f64).collect()
    }
}

/// Michelot's method: repeat `p = (sum(d_I) - b)/|I|`, `I = {i in I : d_i > p}`
/// until `I` stops shrinking.
pub fn michelot(instance: &ProjectionInstance) -> Result<(SparseProjection, SolverStats)> {
    validate(instance.d(), instance.b())?;
    michelot_slice(instance.d(), instance.b(), None)
}

/// [`michelot`] that also returns the pivot sequence.
pub fn michelot_traced(instance: &ProjectionInstance) -> Result<(SparseProjection, SolverStats, MichelotTrace)> {
    validate(instance.d(), instance.b())?;
    let mut trace = MichelotTrace::default();
    let (proj, stats) = michelot_slice(instance.d(), instance.b(), Some(&mut trace))?;
    Ok((proj, stats, trace))
}

pub(crate) fn michelot_slice(
    d: &[f64],
    b: f64,
    mut trace: Option<&mut MichelotTrace>,
) -> Result<(SparseProjection, SolverStats)> {
    let n = d.len();
    let mut stats = SolverStats { reduced_size: n, ..Default::default() };

    // first pass runs over the whole vector without an index list
    let p = (d.iter().copied().collect::<Neumaier>().value() - b) / n as f64;
    let mut active: Vec<usize> = (0..n).filter(|&i| d[i] > p).collect();
    stats.elements_scanned += n;
    stats.outer_iterations += 1;
    if let Some(t) = trace.as_deref_mut() {
        t.pivots.push(p);
        t.pass_sizes.push(n);
        t.pass_sizes.push(active.len());
    }
    let mut prev = n;
    let mut p = p;

    while active.len() < prev {
        prev = active.len();
        p = (active.iter().map(|&i| d[i]).collect::<Neumaier>().value() - b) / prev as f64;
        active.retain(|&i| d[i] > p);
        stats.elements_scanned += prev;
        stats.outer_iterations += 1;
        if let Some(t) = trace.as_deref_mut() {
            t.pivots.push(p);
            t.pass_sizes.push(active.len());
        }
    }

    Ok((finish(d, b, &active, p)?, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(d: &[f64], b: f64) -> (SparseProjection, SolverStats, MichelotTrace) {
        michelot_traced(&ProjectionInstance::new(d.to_vec(), b).unwrap()).unwrap()
    }

    #[test]
    fn hand_trace() {
        let (p, stats, trace) = run(&[2.0, 1.0, 0.0], 1.0);
        assert_eq!(p.tau, 1.0);
        assert_eq!(trace.pivots.len(), 3);
        assert!((trace.pivots[0] - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(&trace.pivots[1..], &[1.0, 1.0]);
        assert_eq!(trace.pass_sizes, vec![3, 2, 1, 1]);
        assert_eq!(stats.outer_iterations, 3);
        assert_eq!(stats.elements_scanned, 3 + 2 + 1);
    }

    #[test]
    fn already_on_simplex() {
        let (p, stats, trace) = run(&[0.4, 0.3, 0.3], 1.0);
        assert!(p.tau.abs() < 1e-15);
        assert_eq!(p.support_size(), 3);
        assert_eq!(stats.outer_iterations, 1);
        assert_eq!(trace.pass_sizes, vec![3, 3]);
    }

    #[test]
    fn symmetric_pair() {
        let (p, _, trace) = run(&[1.0, 1.0], 1.0);
        assert_eq!(p.tau, 0.5);
        assert_eq!(trace.pivots, vec![0.5]);
    }

    #[test]
    fn pivots_increase() {
        let d: Vec<f64> = (0..5000).map(|i| ((i as f64) * 0.618_033_988_7).fract()).collect();
        let (p, _, trace) = run(&d, 1.0);
        assert!(trace.pivots.windows(2).all(|w| w[0] <= w[1]));
        assert!((trace.pivots.last().unwrap() - p.tau).abs() < 1e-12);
    }
}
