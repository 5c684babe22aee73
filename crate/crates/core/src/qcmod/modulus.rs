use crate::math::{log, sqrt, PI};
use crate::{Error, Result};

fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        let next = 0.5 * (a + b);
        b = sqrt(a * b);
        a = next;
        if (a - b).abs() <= 4.0 * f64::EPSILON * a {
            break;
        }
    }
    0.5 * (a + b)
}

/// Modulus of the Grötzsch ring, the unit disc slit along `[0, r]`:
/// `μ(r) = (π/2)·K(√(1 − r²))/K(r)`, evaluated with the arithmetic-geometric
/// mean as `(π/2)·agm(1, √(1 − r²))/agm(1, r)`.
pub fn mu(r: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::OutOfDomain {
            value: r,
            domain: "(0, 1)",
        });
    }
    let complement = sqrt((1.0 - r) * (1.0 + r));
    Ok(0.5 * PI * agm(1.0, complement) / agm(1.0, r))
}

/// Inverse of [`mu`], by bisection in `s = −log r`.
///
/// For `m ≥ π/2` the root lies in `log(1/r) < μ(r) < log(4/r)`. Smaller `m`
/// go through the complementary modulus `μ(r)·μ(√(1 − r²)) = π²/4`.
pub fn mu_inv(m: f64) -> Result<f64> {
    if !(m > 0.0) || !m.is_finite() {
        return Err(Error::OutOfDomain {
            value: m,
            domain: "(0, ∞)",
        });
    }
    if m < 0.5 * PI {
        let c = solve_large(0.25 * PI * PI / m)?;
        let r = sqrt((1.0 - c) * (1.0 + c));
        if r >= 1.0 {
            return Err(Error::OutOfDomain {
                value: m,
                domain: "moduli whose inverse is representable below 1",
            });
        }
        return Ok(r);
    }
    solve_large(m)
}

fn solve_large(m: f64) -> Result<f64> {
    let mut lo = (m - log(4.0)).max(0.0);
    let mut hi = m;
    let r_of = |s: f64| crate::math::exp(-s);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        // μ(e^{−s}) increases with s.
        if mu(r_of(mid))? < m {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let r = r_of(0.5 * (lo + hi));
    if r <= 0.0 {
        return Err(Error::OutOfDomain {
            value: m,
            domain: "moduli whose inverse is representable above 0",
        });
    }
    Ok(r)
}

/// Inner radius `r` of the largest annulus `{r < |z| < 1}` guaranteed inside
/// any ring domain of modulus `mod_w` bounded by the unit circle.
pub fn inner_annulus(mod_w: f64) -> Result<f64> {
    mu_inv(mod_w)
}
