use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::geometry::RightTriangle;
use crate::quadrature::{integrate, QuadConfig};

/// Breadths of the bands of lines at direction `φ` whose chords are no
/// longer than `s`, the triangle widths, and the critical directions where
/// the band structure changes.
#[derive(Debug, Clone, Copy)]
pub struct StripBreadths {
    pub s: f64,
    pub a: f64,
    pub alpha: f64,
}

impl StripBreadths {
    pub fn new(tri: &RightTriangle, s: f64) -> Self {
        Self {
            s,
            a: tri.a(),
            alpha: tri.alpha(),
        }
    }

    /// Band at the vertex `B`.
    pub fn b1(&self, phi: f64) -> f64 {
        0.5 * self.s * ((2.0 * phi - self.alpha).sin() + self.alpha.sin()) / self.alpha.cos()
    }

    /// Band at the vertex `A`.
    pub fn b2(&self, phi: f64) -> f64 {
        0.5 * self.s * ((2.0 * phi - self.alpha).cos() + self.alpha.cos()) / self.alpha.sin()
    }

    /// Band at the right-angle vertex `C`.
    pub fn b3(&self, phi: f64) -> f64 {
        -0.5 * self.s * (2.0 * phi).sin()
    }

    pub fn w1(&self, phi: f64) -> f64 {
        self.a * (phi - self.alpha).cos() / self.alpha.sin()
    }

    pub fn w2(&self, phi: f64) -> f64 {
        self.a * phi.sin()
    }

    pub fn w3(&self, phi: f64) -> f64 {
        -self.a * phi.cos() / self.alpha.tan()
    }

    fn acos_h(&self) -> f64 {
        (self.a / self.s * self.alpha.cos()).clamp(-1.0, 1.0).acos()
    }

    pub fn phi1(&self) -> f64 {
        self.alpha - self.acos_h()
    }

    pub fn phi2(&self) -> f64 {
        self.alpha + self.acos_h()
    }

    pub fn phi3(&self) -> f64 {
        PI - (self.a / self.s).clamp(-1.0, 1.0).acos()
    }

    pub fn phi4(&self) -> f64 {
        PI - (self.a / self.s / self.alpha.tan()).clamp(-1.0, 1.0).asin()
    }
}

/// Measure of the lines that hit the triangle with a chord no longer than
/// `s`, obtained by integrating band breadths and widths over `φ ∈ [0, π]`
/// with the decomposition valid on segment `segment` (`1..=4`).
pub fn measure_by_proof_integration(tri: &RightTriangle, segment: usize, s: f64) -> Result<f64> {
    let edges = [0.0, tri.h(), tri.a(), tri.b(), tri.c()];
    if !(1..=4).contains(&segment) {
        return Err(Error::SegmentMismatch {
            segment,
            s,
            lo: f64::NAN,
            hi: f64::NAN,
        });
    }
    let (lo, hi) = (edges[segment - 1], edges[segment]);
    if !(s >= lo && s <= hi) || s <= 0.0 {
        return Err(Error::SegmentMismatch { segment, s, lo, hi });
    }

    let sb = StripBreadths::new(tri, s);
    let alpha = tri.alpha();
    let right = FRAC_PI_2 + alpha;
    let cfg = QuadConfig::new(1e-12 * tri.u(), 1e-13);
    let piece = |f: &dyn Fn(f64) -> f64, from: f64, to: f64| integrate(f, from, to, cfg).ok();

    let b12 = |p: f64| sb.b1(p) + sb.b2(p);
    let b13 = |p: f64| sb.b1(p) + sb.b3(p);
    let b23 = |p: f64| sb.b2(p) + sb.b3(p);
    let w1 = |p: f64| sb.w1(p);
    let w2 = |p: f64| sb.w2(p);
    let w3 = |p: f64| sb.w3(p);

    let parts = match segment {
        1 => vec![
            piece(&b12, 0.0, FRAC_PI_2)?,
            piece(&b13, FRAC_PI_2, right)?,
            piece(&b23, right, PI)?,
        ],
        2 => {
            let (p1, p2) = (sb.phi1(), sb.phi2());
            vec![
                piece(&b12, 0.0, p1)?,
                piece(&w1, p1, p2)?,
                piece(&b12, p2, FRAC_PI_2)?,
                piece(&b13, FRAC_PI_2, right)?,
                piece(&b23, right, PI)?,
            ]
        }
        3 => {
            let (p2, p3) = (sb.phi2(), sb.phi3());
            vec![
                piece(&w1, 0.0, p2)?,
                piece(&b12, p2, FRAC_PI_2)?,
                piece(&b13, FRAC_PI_2, right)?,
                piece(&b23, right, p3)?,
                piece(&w3, p3, PI)?,
            ]
        }
        _ => {
            let (p3, p4) = (sb.phi3(), sb.phi4());
            vec![
                piece(&w1, 0.0, FRAC_PI_2)?,
                piece(&w2, FRAC_PI_2, p4)?,
                piece(&b13, p4, right)?,
                piece(&b23, right, p3)?,
                piece(&w3, p3, PI)?,
            ]
        }
    };
    Ok(parts.iter().sum())
}
