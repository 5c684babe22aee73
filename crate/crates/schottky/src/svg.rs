//! Deterministic SVG figures of circle systems.

use std::fmt::Write;
use std::path::Path;

use schottky_core::config::{CircleSystem, Side};
use schottky_core::moebius::SpherePoint;
use schottky_core::orbit::TranslatedCircle;
use schottky_core::Complex64;

use crate::error::Result;

pub const CANVAS: f64 = 800.0;
const PADDING: f64 = 0.08;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

/// Overlays drawn on top of the base circles.
#[derive(Debug, Clone, Default)]
pub struct Extras {
    pub translated: Vec<TranslatedCircle>,
    pub limit: Vec<SpherePoint>,
    pub accumulation: Vec<SpherePoint>,
}

/// Affine map from the plane to the canvas, fixed by the base circles.
#[derive(Debug, Clone, Copy)]
struct Viewport {
    center: Complex64,
    scale: f64,
}

impl Viewport {
    fn fit(sys: &CircleSystem) -> Self {
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for (_, c) in sys.circles() {
            let (z, r) = (c.center(), c.radius());
            x0 = x0.min(z.re - r);
            x1 = x1.max(z.re + r);
            y0 = y0.min(z.im - r);
            y1 = y1.max(z.im + r);
        }
        if !x0.is_finite() {
            return Viewport {
                center: Complex64::new(0.0, 0.0),
                scale: CANVAS / 2.0,
            };
        }
        let span = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
        Viewport {
            center: Complex64::new(0.5 * (x0 + x1), 0.5 * (y0 + y1)),
            scale: CANVAS * (1.0 - 2.0 * PADDING) / span,
        }
    }

    fn x(&self, z: Complex64) -> f64 {
        CANVAS / 2.0 + self.scale * (z.re - self.center.re)
    }

    fn y(&self, z: Complex64) -> f64 {
        CANVAS / 2.0 - self.scale * (z.im - self.center.im)
    }
}

fn n(x: f64) -> String {
    format!("{x:.6}")
}

/// Renders `sys` with `extras`. Base circles are labelled `C_i` and `C_i′`,
/// translated circles are coloured by depth, limit samples are square dots
/// and accumulation points are crosses. Points at infinity are omitted.
pub fn render_svg(sys: &CircleSystem, extras: &Extras) -> String {
    let vp = Viewport::fit(sys);
    let mut s = String::new();
    let size = n(CANVAS);
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        "<!-- viewport: x_svg = {} + {} * (x - {}), y_svg = {} - {} * (y - {}) -->",
        n(CANVAS / 2.0),
        n(vp.scale),
        n(vp.center.re),
        n(CANVAS / 2.0),
        n(vp.scale),
        n(vp.center.im)
    );
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>"#);

    let _ = writeln!(s, r#"<g id="base" fill="none" stroke="black" stroke-width="1.5">"#);
    for (_, c) in sys.circles() {
        let _ = writeln!(
            s,
            r#"<circle cx="{}" cy="{}" r="{}"/>"#,
            n(vp.x(c.center())),
            n(vp.y(c.center())),
            n(vp.scale * c.radius())
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<g id="labels" font-family="serif" font-size="12" text-anchor="middle">"#);
    for (id, c) in sys.circles() {
        let prime = if id.side == Side::CPrime { "′" } else { "" };
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}">C_{}{}</text>"#,
            n(vp.x(c.center())),
            n(vp.y(c.center()) + 4.0),
            id.pair + 1,
            prime
        );
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g id="translated" fill="none" stroke-width="0.6">"#);
    for t in &extras.translated {
        let _ = writeln!(
            s,
            r#"<circle class="depth-{}" cx="{}" cy="{}" r="{}" stroke="{}"/>"#,
            t.depth,
            n(vp.x(t.circle.center())),
            n(vp.y(t.circle.center())),
            n(vp.scale * t.circle.radius()),
            PALETTE[(t.depth - 1) % PALETTE.len()]
        );
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g id="limit" fill="black">"#);
    for z in extras.limit.iter().filter_map(SpherePoint::as_finite) {
        let _ = writeln!(s, r#"<rect x="{}" y="{}" width="2" height="2"/>"#, n(vp.x(z) - 1.0), n(vp.y(z) - 1.0));
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g id="accumulation" stroke="red" stroke-width="1.5">"#);
    for z in extras.accumulation.iter().filter_map(SpherePoint::as_finite) {
        let (x, y) = (vp.x(z), vp.y(z));
        let _ = writeln!(
            s,
            r#"<path d="M {} {} L {} {} M {} {} L {} {}"/>"#,
            n(x - 5.0),
            n(y - 5.0),
            n(x + 5.0),
            n(y + 5.0),
            n(x - 5.0),
            n(y + 5.0),
            n(x + 5.0),
            n(y - 5.0)
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    s
}

pub fn write_svg(sys: &CircleSystem, extras: &Extras, path: &Path) -> Result<()> {
    crate::io::write_atomic(path, render_svg(sys, extras).as_bytes())
}
