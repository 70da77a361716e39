use std::ops::Range;

/// Contiguous, disjoint index ranges covering `0..n`, one per worker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkerPlan {
    pub n: usize,
    pub partitions: Vec<Range<usize>>,
}

impl WorkerPlan {
    pub fn workers(&self) -> usize {
        self.partitions.len()
    }
}

/// Split `0..n` into `min(k, n)` ranges whose sizes differ by at most one,
/// larger ranges first. `k = 0` is treated as one worker.
pub fn make_plan(n: usize, k: usize) -> WorkerPlan {
    let k = k.max(1).min(n.max(1));
    let base = n / k;
    let extra = n % k;
    let mut partitions = Vec::with_capacity(k);
    let mut start = 0;
    for w in 0..k {
        let len = base + usize::from(w < extra);
        partitions.push(start..start + len);
        start += len;
    }
    WorkerPlan { n, partitions }
}
