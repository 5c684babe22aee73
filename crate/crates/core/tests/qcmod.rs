mod common;

use common::{c, complex};
use proptest::prelude::*;
use schottky_core::qcmod::{
    check_derivative_bound, collar_interpolation, core_preserving_map, fitted_target, inner_annulus, mu, mu_inv,
    Annulus, BoundaryProfile,
};
use std::f64::consts::PI;

#[test]
fn complementary_identity_on_a_grid() {
    let mut prev = f64::INFINITY;
    for i in 0..50 {
        let r = 0.01 + 0.98 * i as f64 / 49.0;
        let m = mu(r).unwrap();
        let m2 = mu((1.0 - r * r).sqrt()).unwrap();
        assert!((m * m2 - PI * PI / 4.0).abs() <= 1e-8);
        assert!(m < prev);
        prev = m;
    }
}

#[test]
fn inner_annulus_fits_round_rings() {
    for i in 1..36 {
        let rho = i as f64 / 40.0;
        let r = inner_annulus(-rho.ln()).unwrap();
        assert!(-r.ln() >= 0.0);
        assert!(r >= rho, "{rho}: {r}");
    }
    let mut prev = 1.0;
    for m in [1.0, 2.0, 4.0, 8.0, 16.0] {
        let r = mu_inv(m).unwrap();
        assert!(r < prev);
        prev = r;
    }
}

#[test]
fn collar_jacobian_positive_on_a_fine_grid() {
    let p = BoundaryProfile::new(vec![(0.3, 0.1), (-0.1, 0.2)]).unwrap();
    let (_, rep) = collar_interpolation(&p, 1.5, 100, 100).unwrap();
    assert!(rep.min_jacobian > 0.0);
    assert!(rep.max_beltrami < 1.0);
    assert_eq!(rep.samples.len(), 10_000);
}

proptest! {
    #[test]
    fn mu_round_trips(r in 0.001f64..0.999) {
        prop_assert!((mu_inv(mu(r).unwrap()).unwrap() - r).abs() < 1e-10);
    }

    #[test]
    fn derivative_bound_holds(
        center in complex(5.0),
        core in 0.1f64..5.0,
        modulus in 0.2f64..4.0,
        frac in 0.0f64..0.95,
        angle in 0.0f64..6.3,
        rotation in 0.0f64..6.3,
        invert in any::<bool>(),
        target in complex(5.0),
        target_core in 0.1f64..5.0,
    ) {
        let a1 = Annulus::around(center, core, modulus).unwrap();
        let alpha = schottky_core::Complex64::from_polar(frac * (-0.5 * modulus).exp(), angle);
        let f = core_preserving_map(&a1, target, target_core, alpha, rotation, invert).unwrap();
        let fit = fitted_target(&f, &a1, target, target_core).unwrap();
        let a2 = Annulus::around(target, target_core, fit.modulus() * 1.001).unwrap();
        let rep = check_derivative_bound(&f, &a1, &a2, 48).unwrap();
        prop_assert!(rep.passed, "{:?}", rep);
        prop_assert!(rep.target_modulus >= rep.source_modulus);
    }

    #[test]
    fn collar_boundary_values(a1 in -0.3f64..0.3, b1 in -0.3f64..0.3, a2 in -0.2f64..0.2, r in 1.1f64..4.0) {
        let p = BoundaryProfile::new(vec![(a1, b1), (a2, 0.0)]).unwrap();
        let (map, rep) = collar_interpolation(&p, r, 6, 12).unwrap();
        prop_assert!(rep.inner_boundary_error < 1e-8);
        prop_assert!(rep.outer_boundary_error < 1e-8);
        prop_assert!(rep.min_jacobian > 0.0);
        prop_assert!(rep.beltrami_discrepancy < 1e-5);
        let z = map.eval(1.0, 0.0);
        prop_assert!((z - c(1.0, 0.0)).norm() < 1e-12);
    }
}
