use proptest::prelude::*;
use simplex_proj::extensions::{
    distributed_weighted_project, project_l1_ball, project_weighted_l1_ball, verify_weighted_kkt, weighted_condat,
    weighted_filter, weighted_michelot, weighted_sort_scan_parallel, BallInstance, WeightedInstance, WeightedVariant,
};
use simplex_proj::parallel::parallel_pivot_partition;
use simplex_proj::serial::{condat, filter, michelot, PivotRule};
use simplex_proj::{Backend, ProjectionInstance};

/// Bisection on the decreasing map `t -> sum(w max(d - w t, 0)) - b`.
fn bisect_tau(d: &[f64], w: &[f64], b: f64) -> f64 {
    let g = |t: f64| d.iter().zip(w).map(|(x, y)| y * (x - y * t).max(0.0)).sum::<f64>() - b;
    let mut hi = d.iter().zip(w).map(|(x, y)| x / y).fold(f64::NEG_INFINITY, f64::max);
    let mut lo = hi - 1.0;
    while g(lo) < 0.0 {
        lo -= 2.0 * (hi - lo);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn weighted() -> impl Strategy<Value = (Vec<f64>, Vec<f64>, f64)> {
    (1usize..50).prop_flat_map(|n| {
        (
            proptest::collection::vec(-10.0f64..10.0, n),
            proptest::collection::vec(0.1f64..5.0, n),
            0.05f64..20.0,
        )
    })
}

proptest! {
    #[test]
    fn every_weighted_solver_matches_bisection((d, w, b) in weighted()) {
        let inst = WeightedInstance::new(d.clone(), w.clone(), b).unwrap();
        let want = bisect_tau(&d, &w, b);
        let mut results = vec![weighted_michelot(&inst).unwrap().0, weighted_condat(&inst).unwrap().0];
        for k in [1, 2, 4, 7] {
            results.push(weighted_sort_scan_parallel(&inst, k).unwrap().0);
            results.push(distributed_weighted_project(&inst, k, WeightedVariant::Pivot).unwrap().0);
            results.push(distributed_weighted_project(&inst, k, WeightedVariant::Condat).unwrap().0);
        }
        for p in &results {
            prop_assert!((p.tau - want).abs() <= 1e-9 * want.abs().max(1.0), "{} vs {want}", p.tau);
            prop_assert!(verify_weighted_kkt(&inst, p, 1e-9));
            prop_assert_eq!(&p.indices, &results[0].indices);
        }
        let f = weighted_filter(&inst);
        for i in &results[0].indices {
            prop_assert!(f.indices.binary_search(i).is_ok());
        }
    }

    #[test]
    fn unit_weights_reduce_to_unweighted(d in proptest::collection::vec(-10.0f64..10.0, 1..60), b in 0.05f64..20.0) {
        let n = d.len();
        let wi = WeightedInstance::new(d.clone(), vec![1.0; n], b).unwrap();
        let ui = ProjectionInstance::new(d.clone(), b).unwrap();
        let m = michelot(&ui).unwrap().0;
        let c = condat(&ui).unwrap().0;
        let wm = weighted_michelot(&wi).unwrap().0;
        let wc = weighted_condat(&wi).unwrap().0;
        prop_assert_eq!(&wm.indices, &m.indices);
        prop_assert!((wm.tau - m.tau).abs() <= 1e-12);
        prop_assert_eq!(&wc.indices, &c.indices);
        prop_assert!((wc.tau - c.tau).abs() <= 1e-12);
        prop_assert_eq!(weighted_filter(&wi).indices, filter(&d, b).unwrap().indices);
        let ws = weighted_sort_scan_parallel(&wi, 3).unwrap().0;
        prop_assert_eq!(&ws.indices, &c.indices);
        prop_assert!((ws.tau - c.tau).abs() <= 1e-12);
        for k in [1, 2, 4] {
            let pp = parallel_pivot_partition(&ui, k, PivotRule::MichelotStart).unwrap().0;
            let dw = distributed_weighted_project(&wi, k, WeightedVariant::Pivot).unwrap().0;
            prop_assert_eq!(&dw.indices, &pp.indices);
            prop_assert!((dw.tau - pp.tau).abs() <= 1e-12);
        }
    }

    #[test]
    fn weighted_ball_is_feasible_and_sign_safe((d, w, b) in weighted()) {
        let inst = WeightedInstance::new(d.clone(), w.clone(), b).unwrap();
        let p = project_weighted_l1_ball(&inst, WeightedVariant::Condat, 2).unwrap();
        let v = p.to_dense(d.len());
        let norm: f64 = v.iter().zip(&w).map(|(x, y)| y * x.abs()).sum();
        prop_assert!(norm <= b * (1.0 + 1e-9));
        for (x, y) in d.iter().zip(&v) {
            prop_assert!(x * y >= 0.0);
        }
        if p.interior {
            prop_assert_eq!(v, d);
        }
    }

    #[test]
    fn unit_weight_ball_matches_l1(d in proptest::collection::vec(-3.0f64..3.0, 1..40), b in 0.05f64..5.0) {
        let n = d.len();
        let w = project_weighted_l1_ball(&WeightedInstance::new(d.clone(), vec![1.0; n], b).unwrap(), WeightedVariant::Condat, 1).unwrap();
        let u = project_l1_ball(&BallInstance::new(d, b).unwrap(), &Backend::default()).unwrap();
        prop_assert_eq!(w.interior, u.interior);
        prop_assert_eq!(&w.proj.indices, &u.proj.indices);
        for (x, y) in w.proj.values.iter().zip(&u.proj.values) {
            prop_assert!((x - y).abs() <= 1e-12);
        }
    }
}

#[test]
fn l1_ball_properties() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
    for _ in 0..300 {
        let n = rng.random_range(1..40);
        let d: Vec<f64> = (0..n).map(|_| if rng.random_bool(0.3) { 0.0 } else { rng.random_range(-3.0..3.0) }).collect();
        let b = rng.random_range(0.1..4.0);
        let p = project_l1_ball(&BallInstance::new(d.clone(), b).unwrap(), &Backend::default()).unwrap();
        let v = p.to_dense(n);
        let norm: f64 = v.iter().map(|x| x.abs()).sum();
        assert!(norm <= b * (1.0 + 1e-12));
        for (x, y) in d.iter().zip(&v) {
            assert!(x * y >= 0.0);
            if *x == 0.0 {
                assert_eq!(*y, 0.0);
            }
        }
        if p.interior {
            assert_eq!(v, d);
        } else {
            assert!((norm - b).abs() <= 1e-9 * b.max(1.0));
        }
    }
}
