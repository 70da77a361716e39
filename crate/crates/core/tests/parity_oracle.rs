use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use simplex_proj::extensions::{parity_sign_pattern, project_parity_polytope};
use simplex_proj::{Algorithm, Backend};

/// Even-parity vertices of the unit cube, shifted by -1/2.
fn vertices(n: usize) -> Vec<DVector<f64>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() % 2 == 0)
        .map(|m| DVector::from_fn(n, |i, _| if m >> i & 1 == 1 { 0.5 } else { -0.5 }))
        .collect()
}

/// Nearest point of the convex hull: for every affinely independent subset
/// of vertices, project onto its affine hull and keep the closest projection
/// with nonnegative barycentric weights.
fn hull_projection(d: &DVector<f64>) -> DVector<f64> {
    let v = vertices(d.len());
    let mut best: Option<(f64, DVector<f64>)> = None;
    for mask in 1u32..1 << v.len() {
        let pts: Vec<&DVector<f64>> = (0..v.len()).filter(|i| mask >> i & 1 == 1).map(|i| &v[i]).collect();
        if pts.len() > d.len() + 1 {
            continue;
        }
        let base = pts[0];
        let m = pts.len() - 1;
        let (x, weights) = if m == 0 {
            (base.clone(), vec![1.0])
        } else {
            let a = DMatrix::from_fn(d.len(), m, |r, c| pts[c + 1][r] - base[r]);
            let gram = a.transpose() * &a;
            if gram.determinant().abs() < 1e-9 {
                continue;
            }
            let Some(lambda) = gram.lu().solve(&(a.transpose() * (d - base))) else { continue };
            let mut w = vec![1.0 - lambda.sum()];
            w.extend(lambda.iter());
            (base + a * lambda, w)
        };
        if weights.iter().any(|&w| w < -1e-12) {
            continue;
        }
        let dist = (&x - d).norm();
        if best.as_ref().is_none_or(|(b, _)| dist < *b) {
            best = Some((dist, x));
        }
    }
    best.unwrap().1
}

#[test]
fn oracle_reproduces_known_points() {
    let d = DVector::from_vec(vec![-0.7, -0.6, -0.8]);
    assert!((hull_projection(&d) - DVector::from_element(3, -0.5)).norm() < 1e-12);
    let d = DVector::from_vec(vec![0.3, 0.2, -0.1]);
    assert!((hull_projection(&d) - &d).norm() < 1e-12);
}

#[test]
fn matches_hull_oracle() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let backends = [Backend::default(), Backend::serial(Algorithm::SortScan), Backend::parallel(Algorithm::ParallelCondat, 2)];
    for n in 2..=4 {
        for t in 0..200 {
            let d: Vec<f64> = (0..n).map(|_| rng.random_range(-1.5..1.5)).collect();
            let want = hull_projection(&DVector::from_vec(d.clone()));
            let got = project_parity_polytope(&d, &backends[t % backends.len()]).unwrap();
            let err = (DVector::from_vec(got.clone()) - &want).norm();
            assert!(err <= 1e-6, "n={n} d={d:?} got={got:?} want={want:?}");
            assert!(got.iter().all(|x| (-0.5..=0.5).contains(x)));
        }
    }
}

#[test]
fn flipped_pattern_is_always_odd() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
    for _ in 0..1000 {
        let n = rng.random_range(1..12);
        let d: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        assert_eq!(parity_sign_pattern(&d).iter().filter(|&&f| f).count() % 2, 1);
    }
}
