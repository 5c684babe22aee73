/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance
/// `tol`, with Richardson correction on accepted panels.
pub(crate) fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    refine(f, a, b, fa, fm, fb, whole, tol, 48)
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{exp, sin, PI};

    #[test]
    fn known_integrals() {
        assert!((adaptive_simpson(&sin, 0.0, PI, 1e-13) - 2.0).abs() < 1e-12);
        let e = adaptive_simpson(&exp, 0.0, 1.0, 1e-13);
        assert!((e - (exp(1.0) - 1.0)).abs() < 1e-12);
        assert_eq!(adaptive_simpson(&exp, 2.0, 2.0, 1e-13), 0.0);
        assert!((adaptive_simpson(&sin, PI, 0.0, 1e-13) + 2.0).abs() < 1e-12);
    }
}
