//! Right triangle and rectangle domains, lines under the motion-invariant
//! measure `dp dψ`, chords, and the uniform samplers used by the oracles.
//!
//! The triangle is always held in the normal position
//! `A = (0, b)`, `B = (a, 0)`, `C = (0, 0)` with `a ≤ b`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::Rng;

use crate::distance::CumulantTables;
use crate::error::{Error, Result};
use crate::rectangle::RectKernelTables;

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn distance(self, other: Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

fn check_legs(a: f64, b: f64) -> Result<(f64, f64)> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidGeometry(format!(
            "side lengths must be finite, got a={a}, b={b}"
        )));
    }
    if a <= 0.0 || b <= 0.0 {
        return Err(Error::InvalidGeometry(format!(
            "side lengths must be positive, got a={a}, b={b}"
        )));
    }
    Ok(if a <= b { (a, b) } else { (b, a) })
}

/// A right triangle with legs `a ≤ b` and all constants the closed forms
/// need. Immutable after construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RightTriangle {
    pub(crate) a: f64,
    pub(crate) b: f64,
    pub(crate) c: f64,
    pub(crate) alpha: f64,
    pub(crate) h: f64,
    pub(crate) u: f64,
    pub(crate) area: f64,
    pub(crate) theta: [f64; 6],
    pub(crate) cumulants: CumulantTables,
}

impl RightTriangle {
    /// Builds the triangle with legs `a` and `b`, swapping them if needed so
    /// that `a ≤ b`.
    pub fn new(a: f64, b: f64) -> Result<Self> {
        let (a, b) = check_legs(a, b)?;
        let c = a.hypot(b);
        let alpha = (a / b).atan();
        let h = a * b / c;
        let r = a / b;
        let q = b / a;
        let theta = [
            r * (2.0 * alpha + PI) + 2.0 * q * (PI - alpha) + 6.0,
            r * (2.0 * alpha - PI) - 2.0 * q * alpha + 6.0,
            r + q,
            1.0 - q * alpha,
            a + b,
            r * (2.0 * alpha - PI) - 2.0 * q * alpha + 2.0,
        ];
        let mut tri = Self {
            a,
            b,
            c,
            alpha,
            h,
            u: a + b + c,
            area: 0.5 * a * b,
            theta,
            cumulants: CumulantTables::default(),
        };
        tri.cumulants = CumulantTables::new(&tri);
        Ok(tri)
    }

    /// Shorter leg, along the x-axis.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Longer leg, along the y-axis.
    pub fn b(&self) -> f64 {
        self.b
    }

    /// Hypotenuse.
    pub fn c(&self) -> f64 {
        self.c
    }

    /// Angle at `A` between the hypotenuse and leg `b`, `arctan(a/b)`.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Height over the hypotenuse, `ab/c`.
    pub fn h(&self) -> f64 {
        self.h
    }

    /// Perimeter.
    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    /// `Θ₁ … Θ₆` at indices `0 … 5`.
    pub fn theta(&self) -> [f64; 6] {
        self.theta
    }

    pub fn cumulants(&self) -> &CumulantTables {
        &self.cumulants
    }

    /// The similar triangle with every length multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.a * factor, self.b * factor)
    }

    /// The similar triangle with hypotenuse 1.
    pub fn with_unit_hypotenuse(&self) -> Self {
        self.scaled(1.0 / self.c).expect("scaling a valid triangle")
    }

    pub fn vertex_a(&self) -> Point2 {
        Point2::new(0.0, self.b)
    }

    pub fn vertex_b(&self) -> Point2 {
        Point2::new(self.a, 0.0)
    }

    pub fn vertex_c(&self) -> Point2 {
        Point2::new(0.0, 0.0)
    }

    pub fn vertices(&self) -> [Point2; 3] {
        [self.vertex_a(), self.vertex_b(), self.vertex_c()]
    }

    /// `[h, a, b, c]`.
    pub fn breakpoints(&self) -> [f64; 4] {
        [self.h, self.a, self.b, self.c]
    }

    pub fn inradius(&self) -> f64 {
        0.5 * (self.a + self.b - self.c)
    }

    pub fn incenter(&self) -> Point2 {
        let r = self.inradius();
        Point2::new(r, r)
    }

    pub fn centroid(&self) -> Point2 {
        Point2::new(self.a / 3.0, self.b / 3.0)
    }

    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        p.x >= -tol && p.y >= -tol && p.x / self.a + p.y / self.b <= 1.0 + tol
    }

    /// Support function `max_v v·n` of the vertex set, measured from `origin`,
    /// for the unit normal at angle `psi`.
    pub fn support(&self, origin: Point2, psi: f64) -> f64 {
        let n = Point2::new(psi.cos(), psi.sin());
        self.vertices()
            .iter()
            .map(|v| Point2::new(v.x - origin.x, v.y - origin.y).dot(n))
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// The `a × b` box made of two copies of the triangle sharing the
/// hypotenuse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectangleBox {
    pub(crate) a: f64,
    pub(crate) b: f64,
    pub(crate) c: f64,
    pub(crate) area: f64,
    pub(crate) perimeter: f64,
    pub(crate) tables: RectKernelTables,
}

impl RectangleBox {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        let (a, b) = check_legs(a, b)?;
        let mut rect = Self {
            a,
            b,
            c: a.hypot(b),
            area: a * b,
            perimeter: 2.0 * (a + b),
            tables: RectKernelTables::default(),
        };
        rect.tables = RectKernelTables::new(&rect);
        Ok(rect)
    }

    pub fn from_triangle(tri: &RightTriangle) -> Self {
        Self::new(tri.a, tri.b).expect("triangle legs are valid")
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Diagonal.
    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn perimeter(&self) -> f64 {
        self.perimeter
    }

    pub fn tables(&self) -> &RectKernelTables {
        &self.tables
    }

    /// `[a, b, c]`.
    pub fn breakpoints(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        p.x >= -tol && p.y >= -tol && p.x <= self.a + tol && p.y <= self.b + tol
    }
}

/// Which angle the caller used to construct a [`Line`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngleConvention {
    /// `ψ ∈ [0, 2π)`: direction of the normal.
    Normal,
    /// `φ ∈ [0, π)`: direction of the line itself.
    Direction,
}

/// The line `{x cos ψ + y sin ψ = p}` with `p ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    p: f64,
    psi: f64,
    convention: AngleConvention,
}

impl Line {
    /// Any real `p` and `psi` are accepted and brought to `p ≥ 0`,
    /// `ψ ∈ [0, 2π)`.
    pub fn from_normal(p: f64, psi: f64) -> Self {
        let (p, psi) = if p < 0.0 { (-p, psi + PI) } else { (p, psi) };
        Self {
            p,
            psi: psi.rem_euclid(TAU),
            convention: AngleConvention::Normal,
        }
    }

    /// Line with direction `phi` whose signed distance from the origin,
    /// measured along the normal at `phi + π/2`, is `offset`.
    pub fn from_direction(phi: f64, offset: f64) -> Self {
        let mut line = Self::from_normal(offset, phi + FRAC_PI_2);
        line.convention = AngleConvention::Direction;
        line
    }

    /// Line through two distinct points.
    pub fn through(p: Point2, q: Point2) -> Self {
        let phi = (q.y - p.y).atan2(q.x - p.x);
        let normal = Point2::new(-phi.sin(), phi.cos());
        Self::from_direction(phi, p.dot(normal))
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn psi(&self) -> f64 {
        self.psi
    }

    /// Direction of the line in `[0, π)`.
    pub fn phi(&self) -> f64 {
        (self.psi - FRAC_PI_2).rem_euclid(PI)
    }

    pub fn convention(&self) -> AngleConvention {
        self.convention
    }

    pub fn normal(&self) -> Point2 {
        Point2::new(self.psi.cos(), self.psi.sin())
    }

    pub fn direction(&self) -> Point2 {
        Point2::new(-self.psi.sin(), self.psi.cos())
    }
}

/// Width of the triangle perpendicular to the direction `phi ∈ [0, π]`.
pub fn width(tri: &RightTriangle, phi: f64) -> Result<f64> {
    if !(0.0..=PI).contains(&phi) {
        return Err(Error::Domain {
            value: phi,
            domain: "[0, π]",
        });
    }
    let case = if phi < FRAC_PI_2 {
        1
    } else if phi < FRAC_PI_2 + tri.alpha {
        2
    } else {
        3
    };
    Ok(width_case(tri, case, phi))
}

/// The width formula of case `k` (`1..=3`), valid on `[0, π/2)`,
/// `[π/2, π/2 + α)` and `[π/2 + α, π]` respectively.
pub fn width_case(tri: &RightTriangle, k: usize, phi: f64) -> f64 {
    let RightTriangle { a, alpha, .. } = *tri;
    match k {
        1 => a * (phi - alpha).cos() / alpha.sin(),
        2 => a * phi.sin(),
        3 => -a * phi.cos() / alpha.tan(),
        _ => panic!("width case {k} out of range"),
    }
}

/// Length of `line ∩ tri`; zero when the line misses the triangle or only
/// touches it.
pub fn chord_length(tri: &RightTriangle, line: &Line) -> f64 {
    let tol = 1e-12 * tri.c;
    let n = line.normal();
    let d = line.direction();
    let origin = Point2::new(line.p * n.x, line.p * n.y);

    // Unit outward normals g and offsets k of the half-planes g·x ≤ k.
    let edges = [
        (Point2::new(-1.0, 0.0), 0.0),
        (Point2::new(0.0, -1.0), 0.0),
        (Point2::new(tri.b / tri.c, tri.a / tri.c), tri.h),
    ];

    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for (g, k) in edges {
        let slack = k - g.dot(origin);
        let rate = g.dot(d);
        if rate.abs() < 1e-12 {
            if slack < -tol {
                return 0.0;
            }
            continue;
        }
        let tau = slack / rate;
        if rate > 0.0 {
            hi = hi.min(tau);
        } else {
            lo = lo.max(tau);
        }
    }
    let len = hi - lo;
    if len > tol {
        len
    } else {
        0.0
    }
}

/// Maps `(u₁, u₂) ∈ [0,1]²` to the triangle by the square-root barycentric
/// map; uniform inputs give a uniform point.
pub fn barycentric_map(tri: &RightTriangle, u1: f64, u2: f64) -> Point2 {
    let r = u1.sqrt();
    let wa = 1.0 - r;
    let wb = r * (1.0 - u2);
    // C is the origin, so its weight drops out.
    Point2::new(wb * tri.a, wa * tri.b)
}

pub fn sample_uniform_point<R: Rng + ?Sized>(tri: &RightTriangle, rng: &mut R) -> Point2 {
    let u1: f64 = rng.random();
    let u2: f64 = rng.random();
    barycentric_map(tri, u1, u2)
}

/// Draws lines hitting the triangle from the motion-invariant measure.
///
/// `ψ` is uniform on `[0, 2π)` and the distance `p` from the incenter is
/// uniform on `[0, p_max]`, where `p_max` is the largest vertex distance.
/// Draws with `p` beyond the support function at `ψ` are rejected, so the
/// accepted set has measure `u` out of `2π·p_max`.
#[derive(Debug, Clone, Copy)]
pub struct LineSampler {
    tri: RightTriangle,
    origin: Point2,
    p_max: f64,
}

impl LineSampler {
    pub const MAX_ATTEMPTS: usize = 1_000_000;

    pub fn new(tri: &RightTriangle) -> Self {
        let origin = tri.incenter();
        let p_max = tri
            .vertices()
            .iter()
            .map(|v| v.distance(origin))
            .fold(0.0, f64::max);
        Self {
            tri: *tri,
            origin,
            p_max,
        }
    }

    pub fn acceptance_ratio(&self) -> f64 {
        self.tri.u / (TAU * self.p_max)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Line {
        for _ in 0..Self::MAX_ATTEMPTS {
            let psi = TAU * rng.random::<f64>();
            let p = self.p_max * rng.random::<f64>();
            if p >= self.tri.support(self.origin, psi) {
                continue;
            }
            let n = Point2::new(psi.cos(), psi.sin());
            let line = Line::from_normal(p + self.origin.dot(n), psi);
            if chord_length(&self.tri, &line) > 0.0 {
                return line;
            }
        }
        panic!(
            "line sampler exceeded {} attempts (acceptance ratio {})",
            Self::MAX_ATTEMPTS,
            self.acceptance_ratio()
        );
    }
}

pub fn sample_uniform_line_hitting<R: Rng + ?Sized>(tri: &RightTriangle, rng: &mut R) -> Line {
    LineSampler::new(tri).sample(rng)
}
