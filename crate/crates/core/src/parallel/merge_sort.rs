use rayon::prelude::*;

use crate::order::{desc_key, from_desc_key};

/// Merges below this output length run sequentially.
const SEQ_MERGE: usize = 1 << 13;

fn seq_merge(a: &[u64], b: &[u64], dst: &mut [u64]) {
    let (mut i, mut j, mut o) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        let (x, y) = (a[i], b[j]);
        let take_a = x <= y;
        dst[o] = if take_a { x } else { y };
        i += usize::from(take_a);
        j += usize::from(!take_a);
        o += 1;
    }
    dst[o..o + a.len() - i].copy_from_slice(&a[i..]);
    let o = o + a.len() - i;
    dst[o..].copy_from_slice(&b[j..]);
}

/// Splits at the median of the longer run and the matching rank in the
/// shorter one, then merges both halves concurrently.
fn par_merge(a: &[u64], b: &[u64], dst: &mut [u64]) {
    if a.len() < b.len() {
        return par_merge(b, a, dst);
    }
    if dst.len() <= SEQ_MERGE {
        seq_merge(a, b, dst);
        return;
    }
    let m = a.len() / 2;
    let j = b.partition_point(|&x| x < a[m]);
    let (lo, hi) = dst.split_at_mut(m + j);
    rayon::join(|| par_merge(&a[..m], &b[..j], lo), || par_merge(&a[m..], &b[j..], hi));
}

/// Descending copy of `d` by merge sort on the current pool: one sorted run
/// per thread, then rounds of pairwise parallel merges.
pub(crate) fn merge_sort_desc(d: &[f64]) -> Vec<f64> {
    let n = d.len();
    let runs = rayon::current_num_threads().clamp(1, n.max(1));
    let mut width = n.div_ceil(runs).max(1);
    let mut keys = vec![0u64; n];
    keys.par_chunks_mut(width).zip(d.par_chunks(width)).for_each(|(run, src)| {
        for (k, &x) in run.iter_mut().zip(src) {
            *k = desc_key(x);
        }
        run.sort_unstable();
    });
    let mut buf = vec![0u64; n];
    while width < n {
        keys.par_chunks(2 * width).zip(buf.par_chunks_mut(2 * width)).for_each(|(src, dst)| {
            let (a, b) = src.split_at(width.min(src.len()));
            par_merge(a, b, dst);
        });
        std::mem::swap(&mut keys, &mut buf);
        width *= 2;
    }
    let piece = n.div_ceil(runs).max(1);
    let mut out = vec![0.0; n];
    out.par_chunks_mut(piece).zip(keys.par_chunks(piece)).for_each(|(dst, src)| {
        for (x, &k) in dst.iter_mut().zip(src) {
            *x = from_desc_key(k);
        }
    });
    out
}
