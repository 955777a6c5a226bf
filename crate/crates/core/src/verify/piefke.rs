use std::cell::RefCell;
use std::f64::consts::PI;

use crate::error::Result;
use crate::geometry::RightTriangle;
use crate::quadrature::{integrate_with_breaks, QuadConfig};

/// Perimeter, area and diameter of the convex body whose chord-length
/// distribution is fed to [`piefke_pdf`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PiefkeConstants {
    pub u: f64,
    pub area: f64,
    pub c: f64,
}

impl From<&RightTriangle> for PiefkeConstants {
    fn from(tri: &RightTriangle) -> Self {
        Self {
            u: tri.u(),
            area: tri.area(),
            c: tri.c(),
        }
    }
}

fn config(consts: &PiefkeConstants) -> QuadConfig {
    QuadConfig::new(1e-12 * consts.c, 1e-13)
}

/// Point-distance density rebuilt from a chord-length distribution
/// function: `g(t) = (2t/𝒜)[π − (u/𝒜)(t − ∫₀ᵗ F)]` on `[0, c]`.
///
/// `breaks` are the kinks of `chord_cdf`; quadrature panels never straddle
/// them.
pub fn piefke_pdf<F>(chord_cdf: F, consts: PiefkeConstants, breaks: &[f64], t: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(0.0..=consts.c).contains(&t) {
        return Ok(0.0);
    }
    let cumulative = integrate_with_breaks(&chord_cdf, 0.0, t, breaks, config(&consts)).ok()?;
    let PiefkeConstants { u, area, .. } = consts;
    Ok(2.0 * t / area * (PI - u / area * (t - cumulative)))
}

/// The same density from the chord-length density:
/// `g(t) = (2ut/𝒜²)∫ₜᶜ (s − t) f(s) ds`.
pub fn piefke_pdf_density_form<F>(
    chord_pdf: F,
    consts: PiefkeConstants,
    breaks: &[f64],
    t: f64,
) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(0.0..=consts.c).contains(&t) {
        return Ok(0.0);
    }
    let tail = integrate_with_breaks(|s| (s - t) * chord_pdf(s), t, consts.c, breaks, config(&consts))
        .ok()?;
    let PiefkeConstants { u, area, .. } = consts;
    Ok(2.0 * u * t / (area * area) * tail)
}

/// Mean point distance `∫ t·g(t) dt` with `g` from [`piefke_pdf`].
pub fn piefke_mean<F>(chord_cdf: F, consts: PiefkeConstants, breaks: &[f64]) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let failure = RefCell::new(None);
    let mean = integrate_with_breaks(
        |t| match piefke_pdf(&chord_cdf, consts, breaks, t) {
            Ok(g) => t * g,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        },
        0.0,
        consts.c,
        breaks,
        QuadConfig::new(1e-11 * consts.c, 1e-12),
    );
    match failure.into_inner() {
        Some(e) => Err(e),
        None => mean.ok(),
    }
}
