//! Expected-linear selection by randomized quickselect.

use rand::Rng;

/// Three-way partition of `buf` around `pivot` into `[> pivot | == pivot | < pivot]`.
/// Returns the end of the `>` block and the end of the `==` block.
pub(crate) fn partition3_desc(buf: &mut [f64], pivot: f64) -> (usize, usize) {
    let gt = lomuto(buf, |x| x > pivot);
    let eq = gt + lomuto(&mut buf[gt..], |x| x == pivot);
    (gt, eq)
}

/// Branch-free Lomuto pass: moves the entries satisfying `keep` to the front
/// and returns their count.
fn lomuto(buf: &mut [f64], keep: impl Fn(f64) -> bool) -> usize {
    let mut front = 0;
    for i in 0..buf.len() {
        let x = buf[i];
        buf[i] = buf[front];
        buf[front] = x;
        front += usize::from(keep(x));
    }
    front
}

pub fn select_desc<R: Rng + ?Sized>(buf: &mut [f64], k: usize, rng: &mut R) -> f64 {
    assert!(k < buf.len(), "select_desc: k = {k} out of range for length {}", buf.len());
    let mut lo = 0;
    let mut hi = buf.len();
    loop {
        let pivot = buf[rng.random_range(lo..hi)];
        let (gt, eq) = partition3_desc(&mut buf[lo..hi], pivot);
        let (gt, eq) = (lo + gt, lo + eq);
        if k < gt {
            hi = gt;
        } else if k < eq {
            return pivot;
        } else {
            lo = eq;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn partition_layout() {
        let mut v = vec![3.0, 1.0, 2.0, 2.0, 5.0, 0.0, 2.0];
        let (gt, eq) = partition3_desc(&mut v, 2.0);
        assert_eq!((gt, eq), (2, 5));
        assert!(v[..gt].iter().all(|&x| x > 2.0));
        assert!(v[gt..eq].iter().all(|&x| x == 2.0));
        assert!(v[eq..].iter().all(|&x| x < 2.0));
    }

    proptest! {
        #[test]
        fn matches_sorting(mut v in proptest::collection::vec(-50i32..50, 1..200), seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
            let mut vals: Vec<f64> = v.drain(..).map(f64::from).collect();
            let k = pick.index(vals.len());
            let mut sorted = vals.clone();
            sorted.sort_by(|a, b| b.total_cmp(a));
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            prop_assert_eq!(select_desc(&mut vals, k, &mut rng), sorted[k]);
        }
    }
}
