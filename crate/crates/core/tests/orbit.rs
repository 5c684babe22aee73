mod common;

use common::{c, ring, ring_system};
use proptest::prelude::*;
use schottky_core::config::validate;
use schottky_core::moebius::{chordal_distance, Moebius, SpherePoint};
use schottky_core::orbit::{
    ball_size, enumerate_words, limit_set_sample, maximal_chains, sphere_size, translated_circles, Budget,
};

fn sphere_oracle(k: u64, m: u32) -> u64 {
    if m == 0 {
        1
    } else {
        2 * k * (2 * k - 1).pow(m - 1)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn counts_match_the_tree(k in 1usize..4, n in 0usize..6) {
        let words = enumerate_words(k, n, Budget::default()).unwrap();
        prop_assert_eq!(words.len() as u64, (0..=n as u32).map(|m| sphere_oracle(k as u64, m)).sum::<u64>());
        prop_assert_eq!(ball_size(k, n), words.len() as u64);
        prop_assert_eq!(sphere_size(k, n), sphere_oracle(k as u64, n as u32));
        let sys = ring(k, 0.5, 0.0, 0.0);
        prop_assert_eq!(translated_circles(&sys, n, Budget::default()).unwrap().len() as u64, ball_size(k, n) - 1);
    }

    #[test]
    fn translated_circles_verify_and_nest(sys in ring_system(), depth in 1usize..4) {
        for t in translated_circles(&sys, depth, Budget::default()).unwrap() {
            prop_assert!(t.verify(&sys));
        }
        for chain in maximal_chains(&sys, depth, Budget::default()).unwrap() {
            prop_assert!(chain.is_nested());
            let d = chain.diameters();
            prop_assert!(d.windows(2).all(|w| w[1] < w[0]));
        }
    }

    #[test]
    fn limit_points_are_covariant(sys in ring_system(), depth in 1usize..5, shift in -3.0f64..3.0, scale in 0.3f64..3.0, eps in -0.05f64..0.05) {
        // z ↦ scale·z/(1 + eps·z) + shift keeps its pole far outside the unit disc.
        let m = Moebius::new(c(scale, 0.0), c(0.0, 0.0), c(eps, 0.0), c(1.0, 0.0))
            .unwrap()
            .compose(&Moebius::IDENTITY);
        let m = Moebius::translation(c(shift, 0.0)).compose(&m);
        let moved = sys.transformed(&m).unwrap();
        let a = limit_set_sample(&sys, depth, Budget::default()).unwrap();
        let b = limit_set_sample(&moved, depth, Budget::default()).unwrap();
        prop_assert_eq!(a.len(), b.len());
        for (p, q) in a.iter().zip(&b) {
            prop_assert!(chordal_distance(m.apply(*p), *q) <= 1e-8);
        }
        let (va, vb) = (validate(&sys), validate(&moved));
        prop_assert_eq!(va.admissible, vb.admissible);
        prop_assert!((va.min_plane_distance - vb.min_plane_distance).abs() < 1e-8);
    }

    #[test]
    fn limit_points_lie_in_their_subtree_disc(sys in ring_system(), depth in 1usize..5) {
        let pts = limit_set_sample(&sys, depth, Budget::default()).unwrap();
        let per = pts.len() / (2 * sys.rank());
        for (i, p) in pts.iter().enumerate() {
            let first = schottky_core::orbit::subtree_roots(&sys)[i / per];
            let disc = schottky_core::orbit::subtree_circle(&sys, first);
            let SpherePoint::Finite(z) = p else { panic!("limit point at infinity") };
            prop_assert!(disc.signed_distance(*z) < 1e-9);
        }
    }
}

#[test]
fn budget_guards_every_enumeration() {
    let sys = ring(3, 0.5, 0.0, 0.0);
    let tiny = Budget::new(10);
    assert!(translated_circles(&sys, 3, tiny).is_err());
    assert!(maximal_chains(&sys, 3, tiny).is_err());
    assert!(limit_set_sample(&sys, 3, tiny).is_err());
    assert!(enumerate_words(3, 3, tiny).is_err());
}
