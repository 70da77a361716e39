use crate::algorithm::Backend;
use crate::error::{ProjectionError, Result};
use crate::problem::ProjectionInstance;

/// Sign pattern `f_i = [d_i >= 0]`, with the entry of smallest `|d_i|`
/// flipped when the count is even, so that `sum(f)` is odd. Ties on `|d_i|`
/// go to the lowest index.
pub fn parity_sign_pattern(d: &[f64]) -> Vec<bool> {
    let mut f: Vec<bool> = d.iter().map(|&x| x >= 0.0).collect();
    if f.iter().filter(|&&x| x).count() % 2 == 0 {
        let mut best = 0;
        for (i, x) in d.iter().enumerate().skip(1) {
            if x.abs() < d[best].abs() {
                best = i;
            }
        }
        f[best] = !f[best];
    }
    f
}

/// Projection onto the centered parity polytope `conv{x in {0,1}^n : sum(x)
/// even} - 1/2`.
///
/// The entries flagged by [`parity_sign_pattern`] are negated to give `v`.
/// When the box clip of `v` satisfies `sum >= 1 - n/2` the clip of `d` is the
/// answer. Otherwise `v` is projected onto the shifted simplex
/// `{u >= -1/2 : sum(u + 1/2) = 1}` with `backend` and the signs are undone.
pub fn project_parity_polytope(d: &[f64], backend: &Backend) -> Result<Vec<f64>> {
    let n = d.len();
    if n < 2 {
        return Err(ProjectionError::InvalidArgument(format!("parity polytope needs n >= 2, got {n}")));
    }
    if let Some((index, &value)) = d.iter().enumerate().find(|(_, x)| !x.is_finite()) {
        return Err(ProjectionError::NonFinite { index, value });
    }
    let f = parity_sign_pattern(d);
    let v: Vec<f64> = d.iter().zip(&f).map(|(&x, &flip)| if flip { -x } else { x }).collect();
    let clipped_sum: f64 = v.iter().map(|x| x.clamp(-0.5, 0.5)).sum();
    if clipped_sum >= 1.0 - n as f64 / 2.0 {
        return Ok(d.iter().map(|x| x.clamp(-0.5, 0.5)).collect());
    }
    let shifted = ProjectionInstance::new(v.iter().map(|x| x + 0.5).collect(), 1.0)?;
    let (proj, _) = backend.project(&shifted)?;
    let mut out = vec![-0.5; n];
    for (&i, &val) in proj.indices.iter().zip(&proj.values) {
        out[i] = val - 0.5;
    }
    for (x, &flip) in out.iter_mut().zip(&f) {
        if flip {
            *x = -*x;
        }
    }
    Ok(out)
}
