use proptest::prelude::*;
use schottky::parallel;
use schottky_core::config::{CirclePair, CircleSystem};
use schottky_core::moebius::OrientedCircle;
use schottky_core::orbit::{self, Budget};
use schottky_core::Complex64;

fn ring(k: usize, radius: f64) -> CircleSystem {
    let circle = |j: usize| {
        let a = std::f64::consts::TAU * j as f64 / (2 * k) as f64;
        OrientedCircle::new(Complex64::from_polar(1.0, a), radius).unwrap()
    };
    CircleSystem::new(
        (0..k)
            .map(|i| CirclePair::canonical(i, circle(2 * i), circle(2 * i + 1), 0.1 * i as f64).unwrap())
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn parallel_matches_sequential(k in 1usize..4, depth in 0usize..5, shrink in 0.3f64..0.9) {
        let radius = shrink * (std::f64::consts::PI / (2 * k) as f64).sin();
        let sys = ring(k, radius);
        let b = Budget::default();
        prop_assert_eq!(
            parallel::translated_circles(&sys, depth, b).unwrap(),
            orbit::translated_circles(&sys, depth, b).unwrap()
        );
        prop_assert_eq!(
            parallel::maximal_chains(&sys, depth, b).unwrap(),
            orbit::maximal_chains(&sys, depth, b).unwrap()
        );
        let (p, s) = (
            parallel::limit_set_sample(&sys, depth, b).unwrap(),
            orbit::limit_set_sample(&sys, depth, b).unwrap(),
        );
        prop_assert_eq!(format!("{p:?}"), format!("{s:?}"));
        // Empty profiles carry a NaN final maximum, so compare renderings.
        prop_assert_eq!(
            format!("{:?}", parallel::diameter_profile(&sys, depth, 1e-2, b).unwrap()),
            format!("{:?}", orbit::diameter_profile(&sys, depth, 1e-2, b).unwrap())
        );
        prop_assert_eq!(
            parallel::census_large(&sys, depth, 1e-2, b).unwrap(),
            orbit::census_large(&sys, depth, 1e-2, b).unwrap()
        );
    }
}

#[test]
fn thread_count_does_not_change_results() {
    let sys = ring(3, 0.3);
    let run = |n| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .unwrap()
            .install(|| parallel::translated_circles(&sys, 5, Budget::default()).unwrap())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn budgets_are_enforced() {
    let sys = ring(2, 0.3);
    let err = parallel::translated_circles(&sys, 6, Budget::new(100)).unwrap_err();
    assert_eq!(err, schottky_core::Error::BudgetExceeded { needed: 1456, cap: 100 });
    assert!(parallel::translated_circles(&CircleSystem::new(vec![]), 2, Budget::default()).is_err());
}
