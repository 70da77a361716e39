mod common;

use common::{vector, Dist};
use simplex_proj::bounds::expected_support_bound;
use simplex_proj::serial::{condat, filter, michelot_traced};
use simplex_proj::ProjectionInstance;

fn uniform(n: usize, seed: u64) -> ProjectionInstance {
    ProjectionInstance::new(vector(Dist::Uniform, n, seed), 1.0).unwrap()
}

#[test]
fn expected_support_below_the_bound() {
    // the bound sits about 0.18 above the true mean at this size, so the
    // sample mean needs many trials to resolve it
    let n = 1000;
    let trials = 20_000;
    let total: usize = (0..trials).map(|s| condat(&uniform(n, s)).unwrap().0.support_size()).sum();
    let mean = total as f64 / trials as f64;
    let bound = expected_support_bound(n, 1.0, 0.0, 1.0).unwrap();
    assert!(mean <= bound, "{mean} > {bound}");
}

#[test]
fn mean_support_near_sqrt_2n() {
    for n in [10_000, 100_000] {
        let trials = 10;
        let mean: f64 = (0..trials).map(|s| condat(&uniform(n, s)).unwrap().0.support_size() as f64).sum::<f64>()
            / trials as f64;
        assert!((mean / (2.0 * n as f64).sqrt() - 1.0).abs() <= 0.15, "n={n}: {mean}");
    }
}

#[test]
fn filter_output_tracks_two_thirds_power() {
    for n in [10_000, 100_000] {
        let trials = 10;
        let mean: f64 =
            (0..trials).map(|s| filter(uniform(n, s).d(), 1.0).unwrap().indices.len() as f64).sum::<f64>() / trials as f64;
        let reference = (2.2 * n as f64).powf(2.0 / 3.0);
        assert!(mean <= 2.0 * reference && mean >= reference / 2.0, "n={n}: {mean} vs {reference}");
    }
}

#[test]
fn michelot_roughly_halves() {
    let (_, _, trace) = michelot_traced(&uniform(200_000, 1)).unwrap();
    let ratios = trace.survivor_ratios();
    let first: Vec<f64> = ratios.iter().take(6).copied().collect();
    let mean = first.iter().sum::<f64>() / first.len() as f64;
    assert!((0.4..=0.6).contains(&mean), "{ratios:?}");
}
