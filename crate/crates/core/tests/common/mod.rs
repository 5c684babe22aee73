#![allow(dead_code)]

use proptest::prelude::*;
use schottky_core::config::{CirclePair, CircleSystem};
use schottky_core::moebius::{Moebius, OrientedCircle};
use schottky_core::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn complex(range: f64) -> impl Strategy<Value = Complex64> {
    (-range..range, -range..range).prop_map(|(x, y)| c(x, y))
}

/// Möbius maps with entries of moderate size and determinant bounded away
/// from zero.
pub fn moebius() -> impl Strategy<Value = Moebius> {
    (complex(3.0), complex(3.0), complex(3.0), complex(3.0))
        .prop_filter("near-singular", |(a, b, cc, d)| (a * d - b * cc).norm() > 0.1)
        .prop_map(|(a, b, cc, d)| Moebius::new(a, b, cc, d).unwrap())
}

pub fn circle() -> impl Strategy<Value = OrientedCircle> {
    (complex(5.0), 0.05f64..3.0).prop_map(|(z, r)| OrientedCircle::new(z, r).unwrap())
}

/// Two circles whose closed discs are disjoint.
pub fn disjoint_pair() -> impl Strategy<Value = (OrientedCircle, OrientedCircle)> {
    (circle(), circle()).prop_filter("discs meet", |(a, b)| {
        (a.center() - b.center()).norm() > 1.02 * (a.radius() + b.radius())
    })
}

/// `k` canonically paired circles of radius `shrink·sin(π/2k)` centred on
/// the unit circle, rotated by `phase`.
pub fn ring(k: usize, shrink: f64, phase: f64, twist: f64) -> CircleSystem {
    let r = shrink * (std::f64::consts::PI / (2 * k) as f64).sin();
    let circle = |j: usize| {
        let a = phase + std::f64::consts::PI * j as f64 / k as f64;
        OrientedCircle::new(Complex64::from_polar(1.0, a), r).unwrap()
    };
    CircleSystem::new(
        (0..k)
            .map(|i| CirclePair::canonical(i, circle(2 * i), circle(2 * i + 1), twist * i as f64).unwrap())
            .collect(),
    )
}

pub fn ring_system() -> impl Strategy<Value = CircleSystem> {
    (1usize..4, 0.2f64..0.8, 0.0f64..6.3, -1.0f64..1.0).prop_map(|(k, s, p, t)| ring(k, s, p, t))
}
