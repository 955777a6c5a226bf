//! Distance between two independent uniform points in a right triangle:
//! density `g` and distribution `G`.
//!
//! `g` follows from the chord-length distribution through the identity
//! `g(t) = (2t/𝒜)[π + (J*(t) − ut)/𝒜]` with `J*(t) = u∫₀ᵗF`, and `G` from
//! integrating once more, `Jⁿ(t) = ∫₀ᵗ s·J*(s) ds`. Both cumulative
//! integrals are evaluated in closed form through per-segment primitives
//! `H*_k`, `Hⁿ_k` chained at the breakpoints `h, a, b`.

use std::f64::consts::PI;

use crate::chord::{l1, ratio, root, triangle_branch, Branch, PiecewiseEval};
use crate::error::{Error, Result};
use crate::geometry::RightTriangle;
use crate::quadrature::{integrate_with_breaks, QuadConfig};

/// A negative density smaller in size than `NEGATIVE_TOL` times the largest
/// term of its formula is rounding and clamped to zero; anything more
/// negative is a formula error.
pub const NEGATIVE_TOL: f64 = 1e-12;

fn check_args(t: f64, m: f64) -> Result<()> {
    if !(m > 0.0 && t.is_finite()) || t < m * (1.0 - 1e-9) {
        return Err(Error::Domain {
            value: t,
            domain: "t ≥ m > 0",
        });
    }
    Ok(())
}

#[inline]
pub(crate) fn star_l1(t: f64, m: f64) -> f64 {
    0.5 * (m * root(t, m) + t * l1(t, m))
}

#[inline]
pub(crate) fn star_l2(t: f64, m: f64) -> f64 {
    root(t, m) + m * ratio(m, t).asin()
}

#[inline]
pub(crate) fn n_l1(t: f64, m: f64) -> f64 {
    let r = root(t, m);
    let t2 = t * t;
    (5.0 * m / 3.0 * r * r * r + m * m * m * r + t2 * t2 * ratio(m, t).asin()) / 8.0
}

#[inline]
pub(crate) fn n_l2(t: f64, m: f64) -> f64 {
    let r = root(t, m);
    r * r * r / 3.0 + 0.5 * m * (m * r + t * t * ratio(m, t).asin())
}

/// `L₁*(t,m) = ∫ L₁ dt = ½(m√(t²−m²) + t² arcsin(m/t))`.
pub fn star_kernel_l1(t: f64, m: f64) -> Result<f64> {
    check_args(t, m)?;
    Ok(star_l1(t, m))
}

/// `L₂*(t,m) = ∫ L₂ dt = √(t²−m²) + m arcsin(m/t)`.
pub fn star_kernel_l2(t: f64, m: f64) -> Result<f64> {
    check_args(t, m)?;
    Ok(star_l2(t, m))
}

/// `L₁ⁿ(t,m) = ∫ t·L₁* dt`.
pub fn n_kernel_l1(t: f64, m: f64) -> Result<f64> {
    check_args(t, m)?;
    Ok(n_l1(t, m))
}

/// `L₂ⁿ(t,m) = ∫ t·L₂* dt`.
pub fn n_kernel_l2(t: f64, m: f64) -> Result<f64> {
    check_args(t, m)?;
    Ok(n_l2(t, m))
}

/// `H*_k(t)`, a primitive of the chord measure `H_k`.
pub fn star_primitive(tri: &RightTriangle, k: usize, t: f64) -> f64 {
    let RightTriangle {
        a, b, c, h, theta, ..
    } = *tri;
    let t2 = t * t;
    match k {
        1 => theta[0] * t2 / 8.0,
        2 => theta[1] * t2 / 8.0 + theta[2] * star_l1(t, h) + c * star_l2(t, h),
        3 => {
            a * t
                + theta[3] * t2 / 2.0
                + theta[2] / 2.0 * star_l1(t, h)
                + c / 2.0 * star_l2(t, h)
                + b / (2.0 * a) * star_l1(t, a)
                + b / 2.0 * star_l2(t, a)
        }
        4 => {
            theta[4] * t
                + theta[5] * t2 / 8.0
                + b / (2.0 * a) * star_l1(t, a)
                + b / 2.0 * star_l2(t, a)
                + a / (2.0 * b) * star_l1(t, b)
                + a / 2.0 * star_l2(t, b)
        }
        _ => panic!("segment index {k} out of range"),
    }
}

/// `Hⁿ_k(t)`, a primitive of `t·H*_k(t)`.
pub fn n_primitive(tri: &RightTriangle, k: usize, t: f64) -> f64 {
    let RightTriangle {
        a, b, c, h, theta, ..
    } = *tri;
    let t3 = t * t * t;
    let t4 = t3 * t;
    match k {
        1 => theta[0] * t4 / 32.0,
        2 => theta[1] * t4 / 32.0 + theta[2] * n_l1(t, h) + c * n_l2(t, h),
        3 => {
            a * t3 / 3.0
                + theta[3] * t4 / 8.0
                + theta[2] / 2.0 * n_l1(t, h)
                + c / 2.0 * n_l2(t, h)
                + b / (2.0 * a) * n_l1(t, a)
                + b / 2.0 * n_l2(t, a)
        }
        4 => {
            theta[4] * t3 / 3.0
                + theta[5] * t4 / 32.0
                + b / (2.0 * a) * n_l1(t, a)
                + b / 2.0 * n_l2(t, a)
                + a / (2.0 * b) * n_l1(t, b)
                + a / 2.0 * n_l2(t, b)
        }
        _ => panic!("segment index {k} out of range"),
    }
}

/// Constants chaining the per-segment primitives across `h, a, b`.
/// Computed once when the triangle is built.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CumulantTables {
    /// `J₁*(0,h)`
    pub j1_star_0h: f64,
    /// `J₂*(h,a)`
    pub j2_star_ha: f64,
    /// `J₃*(a,b)`
    pub j3_star_ab: f64,
    /// `H₂*(h)`
    pub h2_star_h: f64,
    /// `H₃*(a)`
    pub h3_star_a: f64,
    /// `H₄*(b)`
    pub h4_star_b: f64,
    /// `K₁(h)`
    pub k1_h: f64,
    /// `K₂(a)`
    pub k2_a: f64,
    /// `K₃(b)`
    pub k3_b: f64,
}

impl CumulantTables {
    pub fn new(tri: &RightTriangle) -> Self {
        let (h, a, b) = (tri.h, tri.a, tri.b);
        let j = |k: usize, s: f64, t: f64| star_primitive(tri, k, t) - star_primitive(tri, k, s);
        let jn = |k: usize, s: f64, t: f64| n_primitive(tri, k, t) - n_primitive(tri, k, s);

        let j1_star_0h = j(1, 0.0, h);
        let j2_star_ha = j(2, h, a);
        // The third segment is empty when a = b.
        let j3_star_ab = if a < b { j(3, a, b) } else { 0.0 };
        let h2_star_h = star_primitive(tri, 2, h);
        let h3_star_a = star_primitive(tri, 3, a);
        let h4_star_b = star_primitive(tri, 4, b);

        let k1_h = jn(1, 0.0, h);
        let k2_a = 0.5 * (a * a - h * h) * (j1_star_0h - h2_star_h) + jn(2, h, a);
        let k3_b = if a < b {
            0.5 * (b * b - a * a) * (j1_star_0h + j2_star_ha - h3_star_a) + jn(3, a, b)
        } else {
            0.0
        };

        Self {
            j1_star_0h,
            j2_star_ha,
            j3_star_ab,
            h2_star_h,
            h3_star_a,
            h4_star_b,
            k1_h,
            k2_a,
            k3_b,
        }
    }

    /// `J*` accumulated over the segments before segment `k`.
    fn star_prefix(&self, k: usize) -> f64 {
        match k {
            1 => 0.0,
            2 => self.j1_star_0h,
            3 => self.j1_star_0h + self.j2_star_ha,
            4 => self.j1_star_0h + self.j2_star_ha + self.j3_star_ab,
            _ => panic!("segment index {k} out of range"),
        }
    }

    /// `Jⁿ` accumulated over the segments before segment `k`.
    fn n_prefix(&self, k: usize) -> f64 {
        match k {
            1 => 0.0,
            2 => self.k1_h,
            3 => self.k1_h + self.k2_a,
            4 => self.k1_h + self.k2_a + self.k3_b,
            _ => panic!("segment index {k} out of range"),
        }
    }

    /// `H*_k` at the left end of segment `k` (zero for the first segment).
    fn star_at_start(&self, k: usize) -> f64 {
        match k {
            1 => 0.0,
            2 => self.h2_star_h,
            3 => self.h3_star_a,
            4 => self.h4_star_b,
            _ => panic!("segment index {k} out of range"),
        }
    }
}

fn segment_start(tri: &RightTriangle, k: usize) -> f64 {
    [0.0, tri.h, tri.a, tri.b][k - 1]
}

/// `J*(t) = u∫₀ᵗ F(s) ds` using the formula of segment `k`.
pub fn cumulative_star_segment(tri: &RightTriangle, k: usize, t: f64) -> f64 {
    let tab = &tri.cumulants;
    tab.star_prefix(k) + star_primitive(tri, k, t) - tab.star_at_start(k)
}

/// `Jⁿ(t) = ∫₀ᵗ s·J*(s) ds` using the formula of segment `k`
/// (`Jⁿ = K₁(h) + … + K_k(t)`).
pub fn cumulative_n_segment(tri: &RightTriangle, k: usize, t: f64) -> f64 {
    let tab = &tri.cumulants;
    let s = segment_start(tri, k);
    let k_of_t = 0.5 * (t * t - s * s) * (tab.star_prefix(k) - tab.star_at_start(k))
        + n_primitive(tri, k, t)
        - n_primitive(tri, k, s);
    tab.n_prefix(k) + k_of_t
}

/// `g(t)` using the formula of segment `k`, without clamping.
pub fn distance_pdf_segment(tri: &RightTriangle, k: usize, t: f64) -> f64 {
    let area = tri.area;
    let j = cumulative_star_segment(tri, k, t);
    2.0 * t / area * (PI + (j - tri.u * t) / area)
}

/// `G(t)` using the formula of segment `k`.
pub fn distance_cdf_segment(tri: &RightTriangle, k: usize, t: f64) -> f64 {
    let area = tri.area;
    let jn = cumulative_n_segment(tri, k, t);
    (t * t * (PI - 2.0 * tri.u * t / (3.0 * area)) + 2.0 * jn / area) / area
}

/// Branch of `t` for the density, whose support is the closed `[0, c]`.
fn pdf_branch(tri: &RightTriangle, t: f64) -> Branch {
    if t == tri.c {
        Branch::Seg4
    } else {
        triangle_branch(tri, t)
    }
}

/// Clamps a density that is negative by less than `allowance`. Panics on
/// anything more negative, which can only come from a wrong formula.
pub(crate) fn clamp_density(value: f64, allowance: f64, what: &str) -> (f64, bool) {
    if value >= 0.0 {
        (value, false)
    } else if value > -allowance {
        (0.0, true)
    } else {
        panic!("{what} is negative beyond rounding: {value}");
    }
}

/// Density `g(t)` of the distance between two uniform random points.
pub fn distance_pdf(tri: &RightTriangle, t: f64) -> PiecewiseEval {
    let branch = pdf_branch(tri, t);
    match branch.segment() {
        None => PiecewiseEval::new(0.0, branch),
        Some(k) => {
            let area = tri.area;
            let j = cumulative_star_segment(tri, k, t);
            let raw = 2.0 * t / area * (PI + (j - tri.u * t) / area);
            let magnitude = 2.0 * t / area * (PI + (j.abs() + tri.u * t) / area);
            let (value, clamped) = clamp_density(raw, NEGATIVE_TOL * magnitude, "distance density");
            PiecewiseEval {
                value,
                branch,
                clamped,
            }
        }
    }
}

/// Distribution function `G(t)` of the distance between two uniform random
/// points.
pub fn distance_cdf(tri: &RightTriangle, t: f64) -> PiecewiseEval {
    let branch = triangle_branch(tri, t);
    let value = match branch {
        Branch::Below => 0.0,
        Branch::Above => 1.0,
        _ => distance_cdf_segment(tri, branch.segment().unwrap(), t).clamp(0.0, 1.0),
    };
    PiecewiseEval::new(value, branch)
}

/// Mean distance `∫₀ᶜ t·g(t) dt`, by adaptive quadrature split at the
/// breakpoints.
pub fn mean_distance(tri: &RightTriangle) -> f64 {
    integrate_with_breaks(
        |t| t * distance_pdf(tri, t).value,
        0.0,
        tri.c,
        &tri.breakpoints(),
        QuadConfig::new(1e-9 * tri.c, 1e-12),
    )
    .value
}
