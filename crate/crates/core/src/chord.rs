//! Closed-form chord-length distribution `F` of a right triangle and its
//! density `f = F'`.
//!
//! On `[0, c)` the distribution is `F(s) = H_k(s)/u` where `H_k` is the
//! measure of lines producing chords no longer than `s`, and `k` is fixed by
//! the half-open segments `[0,h)`, `[h,a)`, `[a,b)`, `[b,c)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::RightTriangle;

/// Which piece of a piecewise formula produced a value.
///
/// For a triangle the segments are `[0,h)`, `[h,a)`, `[a,b)`, `[b,c)`; for a
/// rectangle `Seg1..Seg3` cover `[0,a)`, `[a,b)`, `[b,c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    Below,
    Seg1,
    Seg2,
    Seg3,
    Seg4,
    Above,
}

impl Branch {
    pub fn from_segment(k: usize) -> Self {
        match k {
            1 => Branch::Seg1,
            2 => Branch::Seg2,
            3 => Branch::Seg3,
            4 => Branch::Seg4,
            _ => panic!("segment index {k} out of range"),
        }
    }

    /// `1..=4` for the segments, `None` outside the support.
    pub fn segment(self) -> Option<usize> {
        match self {
            Branch::Seg1 => Some(1),
            Branch::Seg2 => Some(2),
            Branch::Seg3 => Some(3),
            Branch::Seg4 => Some(4),
            Branch::Below | Branch::Above => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Branch::Below => "Below",
            Branch::Seg1 => "Seg1",
            Branch::Seg2 => "Seg2",
            Branch::Seg3 => "Seg3",
            Branch::Seg4 => "Seg4",
            Branch::Above => "Above",
        }
    }
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PiecewiseEval {
    pub value: f64,
    pub branch: Branch,
    /// Set when a slightly negative density from cancellation was clamped
    /// to zero.
    pub clamped: bool,
}

impl PiecewiseEval {
    pub(crate) fn new(value: f64, branch: Branch) -> Self {
        Self {
            value,
            branch,
            clamped: false,
        }
    }
}

/// Segment of `x` among the triangle breakpoints, using half-open
/// intervals. When `a = b` the interval `[a, b)` is empty and `Seg3` is
/// never returned.
pub fn triangle_branch(tri: &RightTriangle, x: f64) -> Branch {
    if x < 0.0 || x.is_nan() {
        Branch::Below
    } else if x < tri.h {
        Branch::Seg1
    } else if x < tri.a {
        Branch::Seg2
    } else if x < tri.b {
        Branch::Seg3
    } else if x < tri.c {
        Branch::Seg4
    } else {
        Branch::Above
    }
}

const KERNEL_TOL: f64 = 1e-9;

fn check_kernel_args(s: f64, m: f64) -> Result<()> {
    if !(m > 0.0 && s.is_finite()) || s < m * (1.0 - KERNEL_TOL) {
        return Err(Error::Domain {
            value: s,
            domain: "s ≥ m > 0",
        });
    }
    Ok(())
}

/// `m/s` clamped to `[-1, 1]`.
#[inline]
pub(crate) fn ratio(m: f64, s: f64) -> f64 {
    (m / s).clamp(-1.0, 1.0)
}

/// `√(s² − m²)` with the radicand clamped at zero.
#[inline]
pub(crate) fn root(s: f64, m: f64) -> f64 {
    ((s - m) * (s + m)).max(0.0).sqrt()
}

#[inline]
pub(crate) fn l1(s: f64, m: f64) -> f64 {
    s * ratio(m, s).asin()
}

#[inline]
pub(crate) fn l2(s: f64, m: f64) -> f64 {
    let r = ratio(m, s);
    (1.0 - r * r).max(0.0).sqrt()
}

/// `s · arcsin(m/s)`.
pub fn kernel_l1(s: f64, m: f64) -> Result<f64> {
    check_kernel_args(s, m)?;
    Ok(l1(s, m))
}

/// `√(1 − (m/s)²)`.
pub fn kernel_l2(s: f64, m: f64) -> Result<f64> {
    check_kernel_args(s, m)?;
    Ok(l2(s, m))
}

/// Derivative of `κ·(L₁(s,m)/m + L₂(s,m))`, the only combination in which
/// the kernels appear. The `1/√(s² − m²)` terms of the two kernel
/// derivatives cancel, leaving a function that is finite at `s = m`.
#[inline]
fn pair_derivative(s: f64, m: f64, kappa: f64) -> f64 {
    kappa * (ratio(m, s).asin() / m - root(s, m) / (s * s))
}

/// `H_k(s)`: the measure of lines hitting the triangle with chord at most
/// `s`, evaluated with the formula of segment `k` regardless of where `s`
/// lies. Needs `s ≥ h` for `k ≥ 2`, `s ≥ a` for `k ≥ 3`, `s ≥ b` for `k = 4`.
pub fn chord_measure_segment(tri: &RightTriangle, k: usize, s: f64) -> f64 {
    let RightTriangle {
        a, b, c, h, theta, ..
    } = *tri;
    match k {
        1 => theta[0] * s / 4.0,
        2 => theta[1] * s / 4.0 + theta[2] * l1(s, h) + c * l2(s, h),
        3 => {
            a + theta[3] * s
                + theta[2] / 2.0 * l1(s, h)
                + c / 2.0 * l2(s, h)
                + b / (2.0 * a) * l1(s, a)
                + b / 2.0 * l2(s, a)
        }
        4 => {
            theta[4]
                + theta[5] * s / 4.0
                + b / (2.0 * a) * l1(s, a)
                + b / 2.0 * l2(s, a)
                + a / (2.0 * b) * l1(s, b)
                + a / 2.0 * l2(s, b)
        }
        _ => panic!("segment index {k} out of range"),
    }
}

/// `H_k'(s)`, the derivative of [`chord_measure_segment`].
pub fn chord_measure_derivative_segment(tri: &RightTriangle, k: usize, s: f64) -> f64 {
    let RightTriangle {
        a, b, c, h, theta, ..
    } = *tri;
    match k {
        1 => theta[0] / 4.0,
        2 => theta[1] / 4.0 + pair_derivative(s, h, c),
        3 => theta[3] + pair_derivative(s, h, c / 2.0) + pair_derivative(s, a, b / 2.0),
        4 => theta[5] / 4.0 + pair_derivative(s, a, b / 2.0) + pair_derivative(s, b, a / 2.0),
        _ => panic!("segment index {k} out of range"),
    }
}

/// Chord-length distribution function `F(s)`.
pub fn chord_cdf(tri: &RightTriangle, s: f64) -> PiecewiseEval {
    let branch = triangle_branch(tri, s);
    let value = match branch.segment() {
        None if branch == Branch::Below => 0.0,
        None => 1.0,
        Some(k) => (chord_measure_segment(tri, k, s) / tri.u).clamp(0.0, 1.0),
    };
    PiecewiseEval::new(value, branch)
}

/// Chord-length density `f(s) = F'(s)`. At a breakpoint the right-hand
/// derivative is returned, so `f(0) = Θ₁/(4u)` and `f(c) = 0`.
pub fn chord_pdf(tri: &RightTriangle, s: f64) -> PiecewiseEval {
    let branch = triangle_branch(tri, s);
    let value = match branch.segment() {
        None => 0.0,
        Some(k) => chord_measure_derivative_segment(tri, k, s) / tri.u,
    };
    PiecewiseEval::new(value, branch)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate_with_breaks, QuadConfig};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{PI, SQRT_2};

    fn tri(a: f64, b: f64) -> RightTriangle {
        RightTriangle::new(a, b).unwrap()
    }

    const SHAPES: [(f64, f64); 6] = [
        (1.0, 1.0),
        (3.0, 4.0),
        (1.0, 5.0),
        (1.0, 20.0),
        (1.0, 1.0001),
        (2.0, 3.0),
    ];

    #[test]
    fn kernel_examples() {
        let m = 1.7;
        assert_abs_diff_eq!(kernel_l1(m, m).unwrap(), m * PI / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(kernel_l1(2.0 * m, m).unwrap(), m * PI / 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(kernel_l1(2.4, 2.4).unwrap(), 3.769_911_184_307_752, epsilon = 1e-14);
        assert_eq!(kernel_l2(m, m).unwrap(), 0.0);
        assert_abs_diff_eq!(kernel_l2(2.0 * m, m).unwrap(), 3f64.sqrt() / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(kernel_l2(5.0, 3.0).unwrap(), 0.8, epsilon = 1e-15);
    }

    #[test]
    fn kernel_domain() {
        // Rounding below m is tolerated and clamped.
        assert_abs_diff_eq!(kernel_l1(1.0 - 1e-12, 1.0).unwrap(), PI / 2.0, epsilon = 1e-11);
        assert_eq!(kernel_l2(1.0 - 1e-12, 1.0).unwrap(), 0.0);
        assert!(kernel_l1(0.9, 1.0).is_err());
        assert!(kernel_l2(0.9, 1.0).is_err());
        assert!(kernel_l1(1.0, 0.0).is_err());
    }

    #[test]
    fn isosceles_first_segment() {
        let t = tri(1.0, 1.0);
        let e = chord_cdf(&t, 0.1);
        let expected = (3.0 * PI + 6.0) * 0.1 / (4.0 * (2.0 + SQRT_2));
        assert_eq!(e.branch, Branch::Seg1);
        assert_abs_diff_eq!(e.value, expected, epsilon = 1e-14);
        assert_abs_diff_eq!(e.value, 0.112_945_5, epsilon = 1e-6);
        let d = chord_pdf(&t, 0.05);
        assert_abs_diff_eq!(d.value, expected / 0.1, epsilon = 1e-14);
        assert_abs_diff_eq!(d.value, 1.129_453_2, epsilon = 1e-7);
        assert_abs_diff_eq!(chord_pdf(&t, 0.0).value, d.value, epsilon = 1e-15);
    }

    #[test]
    fn three_four_five_at_height() {
        let t = tri(3.0, 4.0);
        let left = chord_measure_segment(&t, 1, 2.4);
        let right = chord_measure_segment(&t, 2, 2.4);
        assert_abs_diff_eq!(left, 9.589_814_2, epsilon = 1e-6);
        assert_abs_diff_eq!(left, right, epsilon = 1e-12);
        let e = chord_cdf(&t, 2.4);
        assert_eq!(e.branch, Branch::Seg2);
        assert_abs_diff_eq!(e.value, 0.799_151_2, epsilon = 1e-6);
    }

    #[test]
    fn outside_support() {
        for (a, b) in SHAPES {
            let t = tri(a, b);
            let top = chord_cdf(&t, t.c);
            assert_eq!((top.value, top.branch), (1.0, Branch::Above));
            let low = chord_cdf(&t, -1.0);
            assert_eq!((low.value, low.branch), (0.0, Branch::Below));
            assert_eq!(chord_pdf(&t, t.c).value, 0.0);
            assert_eq!(chord_pdf(&t, -1.0).value, 0.0);
        }
    }

    #[test]
    fn isosceles_skips_third_segment() {
        let t = tri(1.0, 1.0);
        assert_eq!(triangle_branch(&t, 1.0), Branch::Seg4);
        assert_eq!(triangle_branch(&t, 1.0 - 1e-12), Branch::Seg2);
        let n = 10_000;
        assert!((0..=n)
            .map(|i| chord_cdf(&t, t.c * i as f64 / n as f64).branch)
            .all(|b| b != Branch::Seg3));
    }

    #[test]
    fn continuity_at_breakpoints() {
        for (a, b) in SHAPES {
            let t = tri(a, b);
            let pairs = [(1, 2, t.h), (2, 3, t.a), (3, 4, t.b)];
            for (k, k1, x) in pairs {
                let l = chord_measure_segment(&t, k, x) / t.u;
                let r = chord_measure_segment(&t, k1, x) / t.u;
                assert!((l - r).abs() < 1e-10, "({a},{b}) F at {x}: {l} vs {r}");
                let dl = chord_measure_derivative_segment(&t, k, x);
                let dr = chord_measure_derivative_segment(&t, k1, x);
                assert!((dl - dr).abs() < 1e-9 * t.u, "({a},{b}) f at {x}: {dl} vs {dr}");
            }
            let top = chord_measure_segment(&t, 4, t.c) / t.u;
            assert!((top - 1.0).abs() < 1e-10, "({a},{b}) F(c⁻) = {top}");
        }
    }

    fn pair(s: f64, m: f64, kappa: f64) -> f64 {
        kappa * (l1(s, m) / m + l2(s, m))
    }

    fn chord_measure_paired(t: &RightTriangle, k: usize, s: f64) -> f64 {
        let RightTriangle {
            a, b, c, h, theta, ..
        } = *t;
        match k {
            2 => theta[1] * s / 4.0 + pair(s, h, c),
            3 => a + theta[3] * s + pair(s, h, c / 2.0) + pair(s, a, b / 2.0),
            4 => theta[4] + theta[5] * s / 4.0 + pair(s, a, b / 2.0) + pair(s, b, a / 2.0),
            _ => unreachable!(),
        }
    }

    #[test]
    fn grouped_kernels_agree() {
        for (a, b) in SHAPES {
            let t = tri(a, b);
            for k in 2..=4 {
                let lo = [0.0, t.h, t.a, t.b][k - 1];
                for i in 0..=20 {
                    let s = lo + (t.c - lo) * i as f64 / 20.0;
                    let x = chord_measure_segment(&t, k, s);
                    let y = chord_measure_paired(&t, k, s);
                    assert!((x - y).abs() < 1e-12 * t.u);
                }
            }
        }
    }

    #[test]
    fn monotone_on_fine_grid() {
        for (a, b) in SHAPES {
            let t = tri(a, b);
            let mut prev = 0.0;
            for i in 0..=10_000 {
                let v = chord_cdf(&t, t.c * i as f64 / 10_000.0).value;
                assert!(v >= prev, "({a},{b}) step {i}");
                assert!((0.0..=1.0).contains(&v));
                prev = v;
            }
        }
    }

    #[test]
    fn density_matches_finite_differences() {
        for (a, b) in SHAPES {
            let t = tri(a, b);
            let step = 1e-6 * t.c;
            let margin = 1e-2 * t.c;
            let edges = [0.0, t.h, t.a, t.b, t.c];
            for k in 0..4 {
                let (lo, hi) = (edges[k] + margin, edges[k + 1] - margin);
                if hi <= lo {
                    continue;
                }
                for i in 0..1000 {
                    let s = lo + (hi - lo) * (i as f64 + 0.5) / 1000.0;
                    let fd = (chord_cdf(&t, s + step).value - chord_cdf(&t, s - step).value)
                        / (2.0 * step);
                    let f = chord_pdf(&t, s).value;
                    assert!(f >= 0.0);
                    assert!((fd - f).abs() * t.c < 1e-5, "({a},{b}) s={s}: fd {fd} vs f {f}");
                }
            }
        }
    }

    #[test]
    fn density_integrates_to_one() {
        for (a, b) in SHAPES {
            let t = tri(a, b);
            let r = integrate_with_breaks(
                |s| chord_pdf(&t, s).value,
                0.0,
                t.c,
                &t.breakpoints(),
                QuadConfig::new(1e-12, 1e-12),
            );
            assert!((r.value - 1.0).abs() < 1e-8, "({a},{b}): {}", r.value);
        }
    }

    #[test]
    fn mean_chord_is_cauchy_constant() {
        // E|χ| = ∫(1 − F) = π·area/u.
        for (a, b) in SHAPES {
            let t = tri(a, b);
            let r = integrate_with_breaks(
                |s| 1.0 - chord_cdf(&t, s).value,
                0.0,
                t.c,
                &t.breakpoints(),
                QuadConfig::new(1e-13, 1e-13),
            );
            assert_abs_diff_eq!(r.value, PI * t.area / t.u, epsilon = 1e-10 * t.c);
        }
    }
}
