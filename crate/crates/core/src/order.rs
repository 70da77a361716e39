//! Descending sorts on integer keys.

/// Order-preserving map from finite `f64` to `u64`, reversed so that
/// ascending keys are descending values.
pub(crate) fn desc_key(x: f64) -> u64 {
    let bits = x.to_bits();
    let asc = if bits >> 63 == 1 { !bits } else { bits | 1 << 63 };
    !asc
}

pub(crate) fn from_desc_key(key: u64) -> f64 {
    let asc = !key;
    f64::from_bits(if asc >> 63 == 1 { asc & !(1 << 63) } else { !asc })
}

/// Descending copy of `d` by pattern-defeating quicksort.
pub(crate) fn sort_desc_unstable(d: &[f64]) -> Vec<f64> {
    let mut keys: Vec<u64> = d.iter().map(|&x| desc_key(x)).collect();
    keys.sort_unstable();
    keys.into_iter().map(from_desc_key).collect()
}
