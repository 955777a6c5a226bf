//! Point distances in an `a × b` rectangle, and between the two congruent
//! right triangles that make it up.
//!
//! A pair of uniform points in the rectangle lands in the same half with
//! probability ½, so `g_R = (g + g₂)/2`, giving `g₂ = 2g_R − g` and
//! `G₂ = 2G_R − G` for the cross-triangle distance.

use std::f64::consts::PI;

use crate::chord::{Branch, PiecewiseEval};
use crate::distance::{clamp_density, distance_cdf, distance_pdf, n_l2, star_l2};
use crate::geometry::{RectangleBox, RightTriangle};

/// Cross-triangle densities below `-CROSS_NEGATIVE_TOL / c` are errors;
/// `c·g_R` is of order one for every aspect ratio, so this tracks
/// `1e-9·max g_R`.
pub const CROSS_NEGATIVE_TOL: f64 = 1e-9;

/// Constants for the three-piece rectangle formulas.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RectKernelTables {
    /// `π·𝒜_R`
    pub pi_area: f64,
    /// `u_R`
    pub perimeter: f64,
    /// `c² = a² + b²`
    pub c2: f64,
    /// `Jⁿ_{R,1}(0, a)`
    pub jn1_0a: f64,
    /// `Jⁿ_{R,2}(a, b)`
    pub jn2_ab: f64,
}

impl RectKernelTables {
    pub fn new(rect: &RectangleBox) -> Self {
        let mut tab = Self {
            pi_area: PI * rect.area,
            perimeter: rect.perimeter,
            c2: rect.a * rect.a + rect.b * rect.b,
            jn1_0a: 0.0,
            jn2_ab: 0.0,
        };
        let (a, b) = (rect.a, rect.b);
        tab.jn1_0a = rect_n_primitive_with(&tab, a, b, 1, a) - rect_n_primitive_with(&tab, a, b, 1, 0.0);
        if a < b {
            tab.jn2_ab = rect_n_primitive_with(&tab, a, b, 2, b) - rect_n_primitive_with(&tab, a, b, 2, a);
        }
        tab
    }

    fn prefix(&self, k: usize) -> f64 {
        match k {
            1 => 0.0,
            2 => self.jn1_0a,
            3 => self.jn1_0a + self.jn2_ab,
            _ => panic!("segment index {k} out of range"),
        }
    }
}

fn rect_star_with(tab: &RectKernelTables, a: f64, b: f64, k: usize, t: f64) -> f64 {
    match k {
        1 => tab.pi_area - tab.perimeter * t + t * t,
        2 => -a * a - 2.0 * b * t + 2.0 * b * star_l2(t, a),
        3 => -(tab.pi_area + tab.c2) - t * t + 2.0 * b * star_l2(t, a) + 2.0 * a * star_l2(t, b),
        _ => panic!("segment index {k} out of range"),
    }
}

fn rect_n_primitive_with(tab: &RectKernelTables, a: f64, b: f64, k: usize, t: f64) -> f64 {
    let t2 = t * t;
    match k {
        1 => tab.pi_area * t2 / 2.0 - tab.perimeter * t2 * t / 3.0 + t2 * t2 / 4.0,
        2 => -a * a * t2 / 2.0 - 2.0 * b * t2 * t / 3.0 + 2.0 * b * n_l2(t, a),
        3 => {
            -(tab.pi_area + tab.c2) * t2 / 2.0 - t2 * t2 / 4.0
                + 2.0 * b * n_l2(t, a)
                + 2.0 * a * n_l2(t, b)
        }
        _ => panic!("segment index {k} out of range"),
    }
}

/// `H*_{R,k}(t)`.
pub fn rect_star(rect: &RectangleBox, k: usize, t: f64) -> f64 {
    rect_star_with(&rect.tables, rect.a, rect.b, k, t)
}

/// `Hⁿ_{R,k}(t)`, a primitive of `t·H*_{R,k}(t)`.
pub fn rect_n_primitive(rect: &RectangleBox, k: usize, t: f64) -> f64 {
    rect_n_primitive_with(&rect.tables, rect.a, rect.b, k, t)
}

/// Segment of `t` among `[0,a)`, `[a,b)`, `[b,c)`; `[a,b)` is skipped for a
/// square.
pub fn rect_branch(rect: &RectangleBox, t: f64) -> Branch {
    if t < 0.0 || t.is_nan() {
        Branch::Below
    } else if t < rect.a {
        Branch::Seg1
    } else if t < rect.b {
        Branch::Seg2
    } else if t < rect.c {
        Branch::Seg3
    } else {
        Branch::Above
    }
}

/// `g_R(t)` with the formula of segment `k`.
pub fn rect_distance_pdf_segment(rect: &RectangleBox, k: usize, t: f64) -> f64 {
    2.0 * t / (rect.area * rect.area) * rect_star(rect, k, t)
}

/// `G_R(t)` with the formula of segment `k`.
pub fn rect_distance_cdf_segment(rect: &RectangleBox, k: usize, t: f64) -> f64 {
    let start = [0.0, rect.a, rect.b][k - 1];
    let jn = rect.tables.prefix(k) + rect_n_primitive(rect, k, t) - rect_n_primitive(rect, k, start);
    2.0 * jn / (rect.area * rect.area)
}

/// Density of the distance between two uniform points in the rectangle.
pub fn rect_distance_pdf(rect: &RectangleBox, t: f64) -> PiecewiseEval {
    let branch = if t == rect.c {
        Branch::Seg3
    } else {
        rect_branch(rect, t)
    };
    let value = match branch.segment() {
        None => 0.0,
        Some(k) => rect_distance_pdf_segment(rect, k, t).max(0.0),
    };
    PiecewiseEval::new(value, branch)
}

/// Distribution function of the distance between two uniform points in the
/// rectangle.
pub fn rect_distance_cdf(rect: &RectangleBox, t: f64) -> PiecewiseEval {
    let branch = rect_branch(rect, t);
    let value = match branch {
        Branch::Below => 0.0,
        Branch::Above => 1.0,
        _ => rect_distance_cdf_segment(rect, branch.segment().unwrap(), t).clamp(0.0, 1.0),
    };
    PiecewiseEval::new(value, branch)
}

/// Both triangle halves of the rectangle, prepared once for repeated
/// cross-distance evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoTriangles {
    pub tri: RightTriangle,
    pub rect: RectangleBox,
}

impl TwoTriangles {
    pub fn new(tri: &RightTriangle) -> Self {
        Self {
            tri: *tri,
            rect: RectangleBox::from_triangle(tri),
        }
    }

    /// `g₂(t) = 2g_R(t) − g(t)`, reported with the triangle's branch.
    pub fn pdf(&self, t: f64) -> PiecewiseEval {
        let g = distance_pdf(&self.tri, t);
        let raw = 2.0 * rect_distance_pdf(&self.rect, t).value - g.value;
        let (value, clamped) = clamp_density(raw, CROSS_NEGATIVE_TOL / self.rect.c, "cross density");
        PiecewiseEval {
            value,
            branch: g.branch,
            clamped,
        }
    }

    /// `G₂(t) = 2G_R(t) − G(t)`.
    pub fn cdf(&self, t: f64) -> PiecewiseEval {
        let big_g = distance_cdf(&self.tri, t);
        let value = 2.0 * rect_distance_cdf(&self.rect, t).value - big_g.value;
        PiecewiseEval::new(value.clamp(0.0, 1.0), big_g.branch)
    }
}

/// Density of the distance between a uniform point in the triangle and one
/// in its mirror image across the hypotenuse.
pub fn cross_pdf(tri: &RightTriangle, t: f64) -> PiecewiseEval {
    TwoTriangles::new(tri).pdf(t)
}

/// Distribution function matching [`cross_pdf`].
pub fn cross_cdf(tri: &RightTriangle, t: f64) -> PiecewiseEval {
    TwoTriangles::new(tri).cdf(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate_with_breaks, QuadConfig};
    use approx::assert_abs_diff_eq;

    const SHAPES: [(f64, f64); 5] = [(1.0, 1.0), (3.0, 4.0), (1.0, 5.0), (1.0, 20.0), (2.0, 3.0)];

    fn rect(a: f64, b: f64) -> RectangleBox {
        RectangleBox::new(a, b).unwrap()
    }

    #[test]
    fn unit_square_density_example() {
        let r = rect(1.0, 1.0);
        let e = rect_distance_pdf(&r, 0.5);
        assert_eq!(e.branch, Branch::Seg1);
        assert_abs_diff_eq!(e.value, PI - 1.75, epsilon = 1e-14);
        assert_eq!(rect_distance_pdf(&r, 0.0).value, 0.0);
    }

    #[test]
    fn normalization_and_mean() {
        for (a, b) in SHAPES {
            let r = rect(a, b);
            let cfg = QuadConfig::new(1e-12, 1e-12);
            let q = integrate_with_breaks(|t| rect_distance_pdf(&r, t).value, 0.0, r.c, &r.breakpoints(), cfg);
            assert!((q.value - 1.0).abs() < 1e-8, "({a},{b}): {}", q.value);
        }
        // Unit-square mean distance (2 + √2 + 5·asinh 1)/15.
        let r = rect(1.0, 1.0);
        let expected = (2.0 + 2f64.sqrt() + 5.0 * 1f64.asinh()) / 15.0;
        let mean = integrate_with_breaks(
            |t| 1.0 - rect_distance_cdf(&r, t).value,
            0.0,
            r.c,
            &r.breakpoints(),
            QuadConfig::new(1e-13, 1e-13),
        )
        .value;
        assert_abs_diff_eq!(mean, expected, epsilon = 1e-10);
        assert_abs_diff_eq!(expected, 0.521_405_433_1, epsilon = 1e-10);
    }

    #[test]
    fn cdf_matches_density_integral() {
        for (a, b) in SHAPES {
            let r = rect(a, b);
            for frac in [0.1, 0.37, 0.5, 0.81, 0.99] {
                let t = frac * r.c;
                let q = integrate_with_breaks(
                    |s| rect_distance_pdf(&r, s).value,
                    0.0,
                    t,
                    &r.breakpoints(),
                    QuadConfig::new(1e-13, 1e-13),
                )
                .value;
                assert!((q - rect_distance_cdf(&r, t).value).abs() < 1e-10, "({a},{b}) at {t}");
            }
        }
    }

    #[test]
    fn continuity() {
        for (a, b) in SHAPES {
            let r = rect(a, b);
            for (k, x) in [(1, r.a), (2, r.b)] {
                let dg = rect_distance_cdf_segment(&r, k, x) - rect_distance_cdf_segment(&r, k + 1, x);
                assert!(dg.abs() < 1e-10, "({a},{b}) G_R at {x}");
                let dp = rect_distance_pdf_segment(&r, k, x) - rect_distance_pdf_segment(&r, k + 1, x);
                assert!(dp.abs() * r.c < 1e-10, "({a},{b}) g_R at {x}");
            }
            assert!((rect_distance_cdf_segment(&r, 3, r.c) - 1.0).abs() < 1e-10);
            assert!(rect_distance_pdf_segment(&r, 3, r.c).abs() < 1e-10);
            assert_eq!(rect_distance_cdf(&r, r.c).value, 1.0);
        }
    }

    #[test]
    fn square_skips_middle_segment() {
        let r = rect(2.0, 2.0);
        assert_eq!(rect_branch(&r, 2.0), Branch::Seg3);
        assert_eq!(r.tables().jn2_ab, 0.0);
    }

    #[test]
    fn prefix_sums_are_coherent() {
        for (a, b) in SHAPES {
            let r = rect(a, b);
            assert_eq!(RectKernelTables::new(&r), *r.tables());
            assert_eq!(
                r.tables().jn1_0a,
                rect_n_primitive(&r, 1, r.a) - rect_n_primitive(&r, 1, 0.0)
            );
        }
    }

    #[test]
    fn cross_mixture_identity() {
        for (a, b) in SHAPES {
            let tri = RightTriangle::new(a, b).unwrap();
            let two = TwoTriangles::new(&tri);
            for i in 0..1000 {
                let t = tri.c() * (i as f64 + 0.5) / 1000.0;
                let g = distance_pdf(&tri, t).value;
                let g2 = two.pdf(t).value;
                let gr = rect_distance_pdf(&two.rect, t).value;
                assert!((0.5 * (g + g2) - gr).abs() < 1e-12, "({a},{b}) t={t}");
            }
            assert_eq!(two.cdf(tri.c()).value, 1.0);
            assert_eq!(two.cdf(0.0).value, 0.0);
            assert!(two.cdf(1e-3 * tri.c()).value > 0.0);
        }
    }

    #[test]
    fn cross_cdf_monotone() {
        let tri = RightTriangle::new(1.0, 5.0).unwrap();
        let mut prev = 0.0;
        for i in 0..=2000 {
            let v = cross_cdf(&tri, tri.c() * i as f64 / 2000.0).value;
            assert!(v >= prev && v <= 1.0);
            assert!(cross_pdf(&tri, tri.c() * i as f64 / 2000.0).value >= 0.0);
            prev = v;
        }
    }

    #[test]
    fn leg_order_is_irrelevant() {
        let r1 = rect(1.0, 5.0);
        let r2 = rect(5.0, 1.0);
        assert_eq!(r1, r2);
        let t1 = RightTriangle::new(5.0, 1.0).unwrap();
        let t2 = RightTriangle::new(1.0, 5.0).unwrap();
        assert_eq!(cross_cdf(&t1, 2.0), cross_cdf(&t2, 2.0));
    }
}
