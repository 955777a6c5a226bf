//! Globally adaptive Gauss–Kronrod (G7/K15) quadrature.
//!
//! Every distribution in this crate is piecewise smooth with kinks at the
//! breakpoints `h, a, b, c`, so callers hand the breakpoints to
//! [`integrate_with_breaks`] and no panel ever straddles one.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd Kronrod nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Tolerances and limits for an adaptive run.
#[derive(Debug, Clone, Copy)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_panels: usize,
}

impl QuadConfig {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Self {
        Self {
            abs_tol,
            rel_tol,
            max_panels: 4000,
        }
    }
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self::new(1e-12, 1e-12)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl Integral {
    /// The estimate, or an error when the tolerance was not met.
    pub fn ok(self) -> Result<f64> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(Error::Quadrature {
                value: self.value,
                abs_error: self.abs_error,
                evaluations: self.evaluations,
            })
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

fn gk15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Panel {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs();
    Panel {
        lo,
        hi,
        value,
        error,
    }
}

/// Integrates `f` over `[lo, hi]`; a reversed interval flips the sign.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, cfg: QuadConfig) -> Integral {
    integrate_with_breaks(f, lo, hi, &[], cfg)
}

/// Integrates `f` over `[lo, hi]` with initial panels split at every
/// break point strictly inside the interval.
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    breaks: &[f64],
    cfg: QuadConfig,
) -> Integral {
    if lo == hi {
        return Integral {
            value: 0.0,
            abs_error: 0.0,
            evaluations: 0,
            converged: true,
        };
    }
    if lo > hi {
        let mut r = integrate_with_breaks(f, hi, lo, breaks, cfg);
        r.value = -r.value;
        return r;
    }

    let mut edges = vec![lo];
    let mut inner: Vec<f64> = breaks
        .iter()
        .copied()
        .filter(|&x| x > lo && x < hi)
        .collect();
    inner.sort_by(f64::total_cmp);
    inner.dedup();
    edges.extend(inner);
    edges.push(hi);

    let mut panels: Vec<Panel> = edges.windows(2).map(|w| gk15(&f, w[0], w[1])).collect();
    let mut evaluations = 15 * panels.len();

    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        let target = cfg.abs_tol.max(cfg.rel_tol * value.abs());
        if error <= target {
            return Integral {
                value,
                abs_error: error,
                evaluations,
                converged: true,
            };
        }

        let (worst, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("at least one panel");
        let p = panels[worst];
        let mid = 0.5 * (p.lo + p.hi);
        // Panels this narrow carry only rounding noise.
        if panels.len() >= cfg.max_panels || mid <= p.lo || mid >= p.hi {
            return Integral {
                value,
                abs_error: error,
                evaluations,
                converged: false,
            };
        }
        panels[worst] = gk15(&f, p.lo, mid);
        panels.push(gk15(&f, mid, p.hi));
        evaluations += 30;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn polynomials_are_exact() {
        let r = integrate(|x| x.powi(5) - 3.0 * x * x + 1.0, -1.0, 2.0, QuadConfig::default());
        assert!(r.converged);
        assert_abs_diff_eq!(r.value, 64.0 / 6.0 - 1.0 / 6.0 - 9.0 + 3.0, epsilon = 1e-13);
        assert_eq!(r.evaluations, 15);
    }

    #[test]
    fn square_root_endpoint_singularity() {
        let r = integrate(f64::sqrt, 0.0, 1.0, QuadConfig::new(1e-12, 1e-12));
        assert!(r.converged);
        assert_abs_diff_eq!(r.value, 2.0 / 3.0, epsilon = 1e-11);
    }

    #[test]
    fn kink_at_break_point() {
        let f = |x: f64| (x - 0.3).abs();
        let r = integrate_with_breaks(f, 0.0, 1.0, &[0.3, 5.0, -1.0], QuadConfig::default());
        assert_eq!(r.evaluations, 30);
        assert_abs_diff_eq!(r.value, 0.045 + 0.245, epsilon = 1e-14);
    }

    #[test]
    fn reversed_and_empty_intervals() {
        let cfg = QuadConfig::default();
        assert_abs_diff_eq!(integrate(f64::cos, 1.0, 0.0, cfg).value, -1f64.sin(), epsilon = 1e-14);
        assert_eq!(integrate(f64::cos, 2.0, 2.0, cfg).value, 0.0);
    }

    #[test]
    fn non_convergence_is_reported() {
        let cfg = QuadConfig {
            abs_tol: 0.0,
            rel_tol: 0.0,
            max_panels: 8,
        };
        let r = integrate(|x: f64| (1.0 / x).sin(), 1e-3, 1.0, cfg);
        assert!(!r.converged);
        assert!(matches!(r.ok(), Err(Error::Quadrature { .. })));
    }
}
