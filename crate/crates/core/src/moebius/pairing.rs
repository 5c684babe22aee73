use num_complex::Complex64;

use super::{Moebius, OrientedCircle, SpherePoint};
use crate::math::sqrt;
use crate::{Error, Result};

/// The canonical loxodromic map sending `c` onto `c_prime` with
/// `g(Ext c) = Int c_prime`.
///
/// The axis is the common perpendicular of the two spanning planes and the
/// translation length equals their hyperbolic distance; `twist` adds a
/// rotation by that angle about the axis. Fails with
/// [`Error::DiscsOverlapOrNested`] unless the closed discs are disjoint.
pub fn pair_circles(c: &OrientedCircle, c_prime: &OrientedCircle, twist: f64) -> Result<Moebius> {
    let distance = c.plane_distance(c_prime)?;
    if distance.inversive < 0.0 {
        return Err(Error::DiscsOverlapOrNested {
            inversive: distance.inversive,
        });
    }
    let (z1, r1) = (c.center(), c.radius());
    let (r2, delta) = (c_prime.radius(), c_prime.center() - z1);
    let d = delta.norm();
    let u = delta / d;

    // Along the line of centers, with z1 at 0 and c_prime's center at d, the
    // common perpendicular ends at the two points symmetric in both circles:
    // roots of d t² - (d² + r1² - r2²) t + d r1² = 0. The factored
    // discriminant stays accurate for nearly tangent circles.
    let gap = d - r1 - r2;
    let b = d * d + r1 * r1 - r2 * r2;
    let disc = sqrt(gap * (d - r1 + r2) * (d + r1 - r2) * (d + r1 + r2));
    let t_far = (b + disc) / (2.0 * d);
    let t_near = r1 * r1 / t_far;

    // In the frame w = (z - near) / (z - far) both circles are centered at 0.
    let rho = ((r1 - t_near) / (r1 - t_far)).abs();
    let rho_prime = ((d + r2 - t_near) / (d + r2 - t_far)).abs();
    let multiplier = Complex64::from_polar(rho_prime / rho, twist);

    let repelling = SpherePoint::finite(z1 + u * t_near);
    let attracting = SpherePoint::finite(z1 + u * t_far);
    Moebius::with_fixed_points(attracting, repelling, multiplier)
}
