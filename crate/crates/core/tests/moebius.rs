mod common;

use common::{c, circle, complex, disjoint_pair, moebius};
use proptest::prelude::*;
use schottky_core::moebius::{chordal_distance, pair_circles, Classification, FixedPoints, Moebius, SpherePoint};
use schottky_core::Complex64;

fn close(a: SpherePoint, b: SpherePoint, tol: f64) -> bool {
    chordal_distance(a, b) <= tol
}

#[test]
fn documented_examples() {
    let double = Moebius::scaling(c(2.0, 0.0)).unwrap();
    let shift = Moebius::translation(c(1.0, 0.0));
    assert!(close(double.compose(&shift).apply(1.0.into()), 4.0.into(), 1e-15));
    let inv = Moebius::inversion();
    assert!(close(inv.apply(2.0.into()), 0.5.into(), 1e-15));
    assert_eq!(inv.apply(0.0.into()), SpherePoint::Infinity);
    let img = inv
        .apply_circle(&schottky_core::moebius::OrientedCircle::new(c(3.0, 0.0), 1.0).unwrap())
        .unwrap();
    assert!((img.center() - c(0.375, 0.0)).norm() < 1e-15);
    assert!((img.radius() - 0.125).abs() < 1e-15);
}

proptest! {
    #[test]
    fn normalized_with_unit_determinant(m in moebius()) {
        prop_assert!((m.det() - 1.0).norm() <= 1e-12);
    }

    #[test]
    fn group_laws(a in moebius(), b in moebius(), g in moebius(), z in complex(4.0)) {
        let z = SpherePoint::finite(z);
        let left = a.compose(&b).compose(&g).apply(z);
        let right = a.compose(&b.compose(&g)).apply(z);
        prop_assert!(close(left, right, 1e-8));
        prop_assert!(close(a.compose(&b).apply(z), a.apply(b.apply(z)), 1e-8));
        prop_assert!(close(g.compose(&g.inverse()).apply(z), z, 1e-10));
        prop_assert!(Moebius::IDENTITY.compose(&g).approx_eq(&g, 1e-12));
    }

    #[test]
    fn circle_images_are_coherent(m in moebius(), k in circle()) {
        // Three sample points on the circle must land on the image circle.
        if let Ok(img) = m.apply_circle(&k) {
            for t in [0.3, 2.1, 4.4] {
                if let SpherePoint::Finite(w) = m.apply(k.point_at(t).into()) {
                    prop_assert!(img.signed_distance(w).abs() <= 1e-7 * (1.0 + img.radius() + w.norm()));
                }
            }
            prop_assert!(img.spherical_diameter() > 0.0 && img.spherical_diameter() <= 2.0);
        }
    }

    #[test]
    fn chordal_metric(z in complex(10.0), w in complex(10.0), v in complex(10.0)) {
        let (z, w, v) = (SpherePoint::finite(z), SpherePoint::finite(w), SpherePoint::finite(v));
        let d = chordal_distance(z, w);
        prop_assert!((0.0..=2.0).contains(&d));
        prop_assert_eq!(d, chordal_distance(w, z));
        prop_assert!(d <= chordal_distance(z, v) + chordal_distance(v, w) + 1e-12);
        prop_assert!(chordal_distance(z, SpherePoint::Infinity) <= 2.0);
    }

    #[test]
    fn sphere_rotations_preserve_chordal_distance(z in complex(10.0), w in complex(10.0), a in complex(1.0), b in complex(1.0)) {
        // [[a, b], [-b̄, ā]] is a rotation of the sphere.
        prop_assume!(a.norm_sqr() + b.norm_sqr() > 0.1);
        let r = Moebius::new(a, b, -b.conj(), a.conj()).unwrap();
        let (z, w) = (SpherePoint::finite(z), SpherePoint::finite(w));
        let before = chordal_distance(z, w);
        let after = chordal_distance(r.apply(z), r.apply(w));
        prop_assert!((before - after).abs() < 1e-9);
    }

    #[test]
    fn pairing_contract((k, kp) in disjoint_pair(), twist in -3.0f64..3.0, t in 0.0f64..6.3, s in 0.0f64..0.99) {
        let g = pair_circles(&k, &kp, twist).unwrap();
        let outside = k.center() + Complex64::from_polar(k.radius() * (1.01 + 30.0 * s), t);
        let inside = k.center() + Complex64::from_polar(k.radius() * s, t);
        match g.apply(outside.into()) {
            SpherePoint::Finite(w) => prop_assert!(kp.signed_distance(w) < 1e-9 * kp.radius()),
            SpherePoint::Infinity => prop_assert!(false, "exterior point sent to infinity"),
        }
        if let SpherePoint::Finite(w) = g.apply(inside.into()) {
            prop_assert!(kp.signed_distance(w) > -1e-9 * kp.radius());
        }
        prop_assert!(g.classify().is_loxodromic());
    }

    #[test]
    fn fixed_points_are_fixed(g in moebius()) {
        if let Classification::Loxodromic { multiplier } = g.classify() {
            prop_assert!(multiplier.norm() > 1.0);
            if let Ok(FixedPoints::Pair(a, r)) = g.fixed_points() {
                prop_assert!(close(g.apply(a), a, 1e-7));
                prop_assert!(close(g.apply(r), r, 1e-7));
            }
        }
    }

    #[test]
    fn inversive_distance_is_invariant((a, b) in disjoint_pair(), m in moebius()) {
        let pole = m.pole();
        let safe = |k: &schottky_core::moebius::OrientedCircle| match pole {
            SpherePoint::Finite(p) => k.signed_distance(p).abs() > 0.1 * k.radius(),
            SpherePoint::Infinity => true,
        };
        prop_assume!(safe(&a) && safe(&b));
        let (ia, ib) = (m.apply_circle(&a).unwrap(), m.apply_circle(&b).unwrap());
        let before = a.plane_distance(&b).unwrap().hyperbolic;
        let after = ia.plane_distance(&ib).unwrap().hyperbolic;
        prop_assert!((before - after).abs() < 1e-6 * (1.0 + before), "{} vs {}", before, after);
    }
}
