use alloc::vec::Vec;

use crate::config::{CirclePair, CircleSystem};
use crate::math::{cos, cosh_minus_one, sin, sqrt, PI};
use crate::moebius::OrientedCircle;
use crate::{Complex64, Error, Result};

/// `2n` circles orthogonal to the unit circle, centred at angles `πm/n`, with
/// neighbouring spanning planes exactly `delta` apart.
///
/// For radius `R` the centres lie at distance `√(1 + R²)` and neighbours are
/// `2√(1 + R²)·sin(π/2n)` apart, which gives
/// `R² = 4s² / (4 + 2(cosh δ − 1) − 4s²)` with `s = sin(π/2n)`. Circles
/// `2j` and `2j + 1` are paired canonically.
pub fn build_fat_limit_set(n: usize, delta: f64) -> Result<CircleSystem> {
    if n == 0 {
        return Err(Error::BadParameter("need at least one pair"));
    }
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::InfeasibleMargin("separation must be positive and finite"));
    }
    let s = sin(PI / (2 * n) as f64);
    let s2 = 4.0 * s * s;
    let den = 4.0 + 2.0 * cosh_minus_one(delta) - s2;
    if !(den > 0.0) {
        return Err(Error::InfeasibleMargin("separation too small for this many circles"));
    }
    let r2 = s2 / den;
    let r = sqrt(r2);
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InfeasibleMargin("separation too large to represent"));
    }
    let dist = sqrt(1.0 + r2);
    let circles: Vec<OrientedCircle> = (0..2 * n)
        .map(|m| {
            let theta = PI * m as f64 / n as f64;
            OrientedCircle::new(Complex64::new(dist * cos(theta), dist * sin(theta)), r)
        })
        .collect::<Result<_>>()?;
    let pairs = (0..n)
        .map(|j| CirclePair::canonical(j, circles[2 * j], circles[2 * j + 1], 0.0))
        .collect::<Result<_>>()?;
    Ok(CircleSystem::new(pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::validate;
    use crate::orbit::{diameter_profile, min_plane_distance, Budget, DEFAULT_PLAUSIBILITY_THRESHOLD};

    fn orthogonal_to_unit_circle(c: &OrientedCircle) -> bool {
        (c.center().norm_sqr() - c.radius() * c.radius() - 1.0).abs() < 1e-12
    }

    #[test]
    fn separation_is_met() {
        for &(n, delta) in &[(4, 0.5), (8, 1.0), (3, 2.0), (16, 0.1)] {
            let sys = build_fat_limit_set(n, delta).unwrap();
            assert_eq!(sys.rank(), n);
            assert!(validate(&sys).admissible);
            let d = min_plane_distance(&sys).unwrap();
            assert!((d - delta).abs() < 1e-9, "{n} {delta}: {d}");
            assert!(sys.circles().all(|(_, c)| orthogonal_to_unit_circle(c)));
        }
    }

    #[test]
    fn single_pair() {
        let sys = build_fat_limit_set(1, 1.0).unwrap();
        let p = &sys.pairs()[0];
        assert!((p.c.center().re + p.c_prime.center().re).abs() < 1e-15);
        assert!(orthogonal_to_unit_circle(&p.c));
    }

    #[test]
    fn profile_is_plausible() {
        let sys = build_fat_limit_set(4, 1.0).unwrap();
        let p = diameter_profile(&sys, 6, DEFAULT_PLAUSIBILITY_THRESHOLD, Budget::default())
            .unwrap();
        assert!(p.rows.windows(2).all(|w| w[1].max_diam < w[0].max_diam));
        assert!(p.decay_rate().unwrap() <= -0.9);
    }

    #[test]
    fn bad_parameters() {
        assert!(matches!(build_fat_limit_set(3, 0.0), Err(Error::InfeasibleMargin(_))));
        assert!(matches!(build_fat_limit_set(0, 1.0), Err(Error::BadParameter(_))));
        assert!(matches!(build_fat_limit_set(3, 1e6), Err(Error::InfeasibleMargin(_))));
    }
}
