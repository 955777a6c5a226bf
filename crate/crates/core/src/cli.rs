//! Command-line front end: function tables on a grid and verification runs.
//!
//! `trichord table` prints one of the closed forms on a grid as CSV or JSON;
//! `trichord verify` runs the invariant suites and prints one JSON
//! [`RunReport`] per check. Exit codes: 0 ok, 1 a check failed, 2 usage.

use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::chord::{chord_cdf, chord_measure_segment, chord_pdf, PiecewiseEval};
use crate::distance::{distance_cdf, distance_cdf_segment, distance_pdf};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::geometry::{RectangleBox, RightTriangle};
use crate::quadrature::{integrate_with_breaks, QuadConfig};
use crate::rectangle::{rect_distance_cdf, rect_distance_pdf, TwoTriangles};
use crate::verify::{
    ks_threshold, measure_by_proof_integration, mc_chord_length, mc_point_distance, piefke_pdf,
    Domain, PiefkeConstants,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const DEFAULT_SEED: u64 = 20_231_117;
pub const DEFAULT_N: usize = 1_000_000;
pub const DEFAULT_POINTS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Function {
    ChordCdf,
    ChordPdf,
    DistancePdf,
    DistanceCdf,
    RectPdf,
    RectCdf,
    CrossPdf,
    CrossCdf,
}

impl Function {
    pub fn name(self) -> &'static str {
        match self {
            Function::ChordCdf => "chord_cdf",
            Function::ChordPdf => "chord_pdf",
            Function::DistancePdf => "distance_pdf",
            Function::DistanceCdf => "distance_cdf",
            Function::RectPdf => "rect_pdf",
            Function::RectCdf => "rect_cdf",
            Function::CrossPdf => "cross_pdf",
            Function::CrossCdf => "cross_cdf",
        }
    }

    pub fn is_density(self) -> bool {
        matches!(
            self,
            Function::ChordPdf | Function::DistancePdf | Function::RectPdf | Function::CrossPdf
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Evaluation points, in the units of the triangle.
#[derive(Debug, Clone, PartialEq)]
pub enum Grid {
    Range { t_min: f64, t_max: f64, n_points: usize },
    List(Vec<f64>),
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        match *self {
            Grid::Range {
                t_min,
                t_max,
                n_points,
            } => (0..n_points)
                .map(|i| {
                    if i + 1 == n_points {
                        t_max
                    } else {
                        t_min + (t_max - t_min) * i as f64 / (n_points - 1) as f64
                    }
                })
                .collect(),
            Grid::List(ref ts) => ts.clone(),
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Grid::Range {
                t_min,
                t_max,
                n_points,
            } => {
                if !(t_min.is_finite() && t_max.is_finite()) {
                    return Err(Error::InvalidSpec("grid bounds must be finite".into()));
                }
                if t_min >= t_max {
                    return Err(Error::InvalidSpec(format!(
                        "grid needs t_min < t_max, got {t_min} and {t_max}"
                    )));
                }
                if n_points < 2 {
                    return Err(Error::InvalidSpec("grid needs at least 2 points".into()));
                }
            }
            Grid::List(ref ts) => {
                if ts.is_empty() {
                    return Err(Error::InvalidSpec("grid list is empty".into()));
                }
                if ts.iter().any(|t| !t.is_finite()) {
                    return Err(Error::InvalidSpec("grid values must be finite".into()));
                }
            }
        }
        Ok(())
    }
}

/// `"t_min:t_max:n"` or a comma-separated list of points.
impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let num = |x: &str| {
            x.trim()
                .parse::<f64>()
                .map_err(|e| format!("bad grid value {x:?}: {e}"))
        };
        if s.contains(':') {
            let parts: Vec<&str> = s.split(':').collect();
            if parts.len() != 3 {
                return Err(format!("grid range must be t_min:t_max:n, got {s:?}"));
            }
            let n_points = parts[2]
                .trim()
                .parse::<usize>()
                .map_err(|e| format!("bad point count {:?}: {e}", parts[2]))?;
            Ok(Grid::Range {
                t_min: num(parts[0])?,
                t_max: num(parts[1])?,
                n_points,
            })
        } else {
            s.split(',').map(num).collect::<std::result::Result<_, _>>().map(Grid::List)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableSpec {
    pub function: Function,
    pub a: f64,
    pub b: f64,
    /// `None` means [`DEFAULT_POINTS`] points spanning `[0, c]`.
    pub grid: Option<Grid>,
    pub normalize_c: bool,
    pub format: Format,
}

impl TableSpec {
    pub fn validate(&self) -> Result<RightTriangle> {
        let tri = RightTriangle::new(self.a, self.b)?;
        if let Some(g) = &self.grid {
            g.validate()?;
        }
        Ok(tri)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableMeta {
    pub function: Function,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub h: f64,
    pub alpha: f64,
    pub normalize_c: bool,
}

/// A table as emitted in JSON: metadata plus parallel columns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub meta: TableMeta,
    pub t: Vec<f64>,
    pub value: Vec<f64>,
    pub branch: Vec<String>,
}

fn evaluate(function: Function, tri: &RightTriangle, two: &TwoTriangles, t: f64) -> PiecewiseEval {
    match function {
        Function::ChordCdf => chord_cdf(tri, t),
        Function::ChordPdf => chord_pdf(tri, t),
        Function::DistancePdf => distance_pdf(tri, t),
        Function::DistanceCdf => distance_cdf(tri, t),
        Function::RectPdf => rect_distance_pdf(&two.rect, t),
        Function::RectCdf => rect_distance_cdf(&two.rect, t),
        Function::CrossPdf => two.pdf(t),
        Function::CrossCdf => two.cdf(t),
    }
}

/// Evaluates the table described by a validated spec.
pub fn build_table(spec: &TableSpec, exec: Execution) -> Result<Table> {
    let tri = spec.validate()?;
    let two = TwoTriangles::new(&tri);
    let c = tri.c();
    let ts = match &spec.grid {
        Some(g) => g.points(),
        None => Grid::Range {
            t_min: 0.0,
            t_max: c,
            n_points: DEFAULT_POINTS,
        }
        .points(),
    };
    let evals = exec::map(&ts, exec, |&t| evaluate(spec.function, &tri, &two, t));
    let scale = if spec.normalize_c && spec.function.is_density() {
        c
    } else {
        1.0
    };
    let t = if spec.normalize_c {
        ts.iter().map(|t| t / c).collect()
    } else {
        ts
    };
    Ok(Table {
        meta: TableMeta {
            function: spec.function,
            a: tri.a(),
            b: tri.b(),
            c,
            h: tri.h(),
            alpha: tri.alpha(),
            normalize_c: spec.normalize_c,
        },
        t,
        value: evals.iter().map(|e| scale * e.value).collect(),
        branch: evals.iter().map(|e| e.branch.name().to_string()).collect(),
    })
}

pub fn write_csv<W: Write>(table: &Table, out: &mut W) -> std::io::Result<()> {
    let m = &table.meta;
    writeln!(out, "# function={}", m.function.name())?;
    writeln!(out, "# a={:?}", m.a)?;
    writeln!(out, "# b={:?}", m.b)?;
    writeln!(out, "# c={:?}", m.c)?;
    writeln!(out, "# h={:?}", m.h)?;
    writeln!(out, "# alpha={:?}", m.alpha)?;
    writeln!(out, "# normalize_c={}", m.normalize_c)?;
    let (tcol, vcol) = match (m.normalize_c, m.function.is_density()) {
        (true, true) => ("t/c", "c*value"),
        (true, false) => ("t/c", "value"),
        _ => ("t", "value"),
    };
    writeln!(out, "# {tcol},{vcol},branch")?;
    for ((t, v), br) in table.t.iter().zip(&table.value).zip(&table.branch) {
        writeln!(out, "{t:?},{v:?},{br}")?;
    }
    Ok(())
}

pub fn write_json<W: Write>(table: &Table, out: &mut W) -> std::io::Result<()> {
    serde_json::to_writer(&mut *out, table)?;
    writeln!(out)
}

/// Writes the table and returns the process exit code.
pub fn cmd_table<W: Write, E: Write>(spec: &TableSpec, out: &mut W, err: &mut E) -> i32 {
    let table = match build_table(spec, Execution::default()) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let written = match spec.format {
        Format::Csv => write_csv(&table, out),
        Format::Json => write_json(&table, out),
    };
    match written {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAIL
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    All,
    Chord,
    Distance,
    Rectangle,
    Proof,
    Piefke,
    Mc,
}

/// Outcome of one check. `statistic` is a KS distance for simulation
/// checks and a maximal absolute discrepancy otherwise; `pass` is
/// `statistic < threshold`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub check: String,
    pub a: f64,
    pub b: f64,
    pub seed: Option<u64>,
    pub n: usize,
    pub statistic: f64,
    pub threshold: f64,
    pub pass: bool,
    pub wall_time: f64,
}

fn timed<F>(check: &str, tri: &RightTriangle, threshold: f64, f: F) -> RunReport
where
    F: FnOnce() -> Result<(f64, usize, Option<u64>)>,
{
    let start = Instant::now();
    let (statistic, n, seed) = f().unwrap_or((f64::INFINITY, 0, None));
    RunReport {
        check: check.to_string(),
        a: tri.a(),
        b: tri.b(),
        seed,
        n,
        statistic,
        threshold,
        // NaN fails.
        pass: statistic < threshold,
        wall_time: start.elapsed().as_secs_f64(),
    }
}

/// Non-empty segments `(k, lo, hi)` of the triangle's piecewise formulas.
pub fn segments(tri: &RightTriangle) -> Vec<(usize, f64, f64)> {
    let e = [0.0, tri.h(), tri.a(), tri.b(), tri.c()];
    (1..=4)
        .filter(|&k| e[k] > e[k - 1])
        .map(|k| (k, e[k - 1], e[k]))
        .collect()
}

/// `per` interior points of each segment.
pub fn segment_points(tri: &RightTriangle, per: usize) -> Vec<(usize, f64)> {
    segments(tri)
        .into_iter()
        .flat_map(|(k, lo, hi)| {
            (0..per).map(move |i| (k, lo + (hi - lo) * (i as f64 + 0.5) / per as f64))
        })
        .collect()
}

/// Largest jump between adjacent piecewise formulas of `seg_fn`, including
/// the values `0` at the origin and `1` at the diameter.
pub fn max_jump<F: Fn(usize, f64) -> f64>(tri: &RightTriangle, seg_fn: F) -> f64 {
    let segs = segments(tri);
    let mut worst = seg_fn(segs[0].0, 0.0).abs();
    for w in segs.windows(2) {
        let (k1, _, x) = w[0];
        let k2 = w[1].0;
        worst = worst.max((seg_fn(k1, x) - seg_fn(k2, x)).abs());
    }
    let (last, _, c) = *segs.last().unwrap();
    worst.max((seg_fn(last, c) - 1.0).abs())
}

fn quad_total<F: Fn(f64) -> f64>(f: F, hi: f64, breaks: &[f64]) -> Result<f64> {
    integrate_with_breaks(f, 0.0, hi, breaks, QuadConfig::new(1e-13, 1e-13)).ok()
}

/// Mean distance between two uniform points in an `a × b` rectangle,
/// from the classical closed form.
pub fn rectangle_mean_closed_form(a: f64, b: f64) -> f64 {
    let d = a.hypot(b);
    (a.powi(3) / (b * b) + b.powi(3) / (a * a) + d * (3.0 - a * a / (b * b) - b * b / (a * a)))
        / 15.0
        + (b * b / a * (a / b).asinh() + a * a / b * (b / a).asinh()) / 6.0
}

fn chord_checks(tri: &RightTriangle) -> Vec<RunReport> {
    let u = tri.u();
    vec![
        timed("chord_continuity", tri, 1e-10, || {
            Ok((max_jump(tri, |k, s| chord_measure_segment(tri, k, s) / u), 0, None))
        }),
        timed("chord_normalization", tri, 1e-8, || {
            let total = quad_total(|s| chord_pdf(tri, s).value, tri.c(), &tri.breakpoints())?;
            Ok(((total - 1.0).abs(), 0, None))
        }),
    ]
}

fn distance_checks(tri: &RightTriangle) -> Vec<RunReport> {
    let c = tri.c();
    vec![
        timed("distance_continuity", tri, 1e-10, || {
            Ok((max_jump(tri, |k, t| distance_cdf_segment(tri, k, t)), 0, None))
        }),
        timed("distance_normalization", tri, 1e-8, || {
            let total = quad_total(|t| distance_pdf(tri, t).value, c, &tri.breakpoints())?;
            Ok(((total - 1.0).abs(), 0, None))
        }),
        timed("distance_cdf_at_diameter", tri, 1e-10, || {
            let k = segments(tri).last().unwrap().0;
            Ok(((distance_cdf_segment(tri, k, c) - 1.0).abs(), 0, None))
        }),
        timed("distance_cdf_derivative", tri, 1e-6, || {
            let pts = segment_points(tri, 50);
            let worst = pts
                .iter()
                .map(|&(k, t)| {
                    let d = 1e-6 * c;
                    let fd = (distance_cdf_segment(tri, k, t + d) - distance_cdf_segment(tri, k, t - d))
                        / (2.0 * d);
                    // Density is O(1/c); compare on the c = 1 scale.
                    c * (fd - distance_pdf(tri, t).value).abs()
                })
                .fold(0.0, f64::max);
            Ok((worst, pts.len(), None))
        }),
    ]
}

fn rectangle_checks(tri: &RightTriangle) -> Vec<RunReport> {
    let rect = RectangleBox::from_triangle(tri);
    let two = TwoTriangles::new(tri);
    let c = tri.c();
    vec![
        timed("rectangle_normalization", tri, 1e-8, || {
            let total = quad_total(|t| rect_distance_pdf(&rect, t).value, c, &rect.breakpoints())?;
            Ok(((total - 1.0).abs(), 0, None))
        }),
        timed("rectangle_mean", tri, 1e-6, || {
            let mean = quad_total(|t| 1.0 - rect_distance_cdf(&rect, t).value, c, &rect.breakpoints())?;
            Ok(((mean - rectangle_mean_closed_form(rect.a(), rect.b())).abs() / c, 0, None))
        }),
        timed("two_triangle_identity", tri, 1e-12, || {
            let n = 1000;
            let worst = (0..n)
                .map(|i| {
                    let t = c * i as f64 / (n - 1) as f64;
                    let lhs = 2.0 * rect_distance_pdf(&rect, t).value;
                    let rhs = distance_pdf(tri, t).value + two.pdf(t).value;
                    c * (lhs - rhs).abs()
                })
                .fold(0.0, f64::max);
            Ok((worst, n, None))
        }),
    ]
}

fn proof_checks(tri: &RightTriangle) -> Vec<RunReport> {
    vec![timed("proof_integral_agreement", tri, 1e-7, || {
        let pts = segment_points(tri, 50);
        let mut worst = 0.0_f64;
        for &(k, s) in &pts {
            let oracle = measure_by_proof_integration(tri, k, s)?;
            worst = worst.max((oracle - tri.u() * chord_cdf(tri, s).value).abs());
        }
        Ok((worst, pts.len(), None))
    })]
}

fn piefke_checks(tri: &RightTriangle) -> Vec<RunReport> {
    vec![timed("piefke_agreement", tri, 1e-6, || {
        let pts = segment_points(tri, 50);
        let consts = PiefkeConstants::from(tri);
        let breaks = tri.breakpoints();
        let mut worst = 0.0_f64;
        for &(_, t) in &pts {
            let g = piefke_pdf(|s| chord_cdf(tri, s).value, consts, &breaks, t)?;
            worst = worst.max((g - distance_pdf(tri, t).value).abs());
        }
        Ok((worst, pts.len(), None))
    })]
}

fn mc_checks(tri: &RightTriangle, seed: u64, n: usize) -> Vec<RunReport> {
    let unit = tri.with_unit_hypotenuse();
    let thr = ks_threshold(n);
    vec![
        timed("mc_chord_length", tri, thr, || {
            Ok((mc_chord_length(tri, n, seed).ks_distance, n, Some(seed)))
        }),
        timed("mc_point_distance", &unit, thr, || {
            let s = mc_point_distance(&Domain::Triangle(unit), n, seed);
            Ok((s.ks_distance, n, Some(seed)))
        }),
        timed("mc_cross_distance", &unit, thr, || {
            let s = mc_point_distance(&Domain::Cross(unit), n, seed);
            Ok((s.ks_distance, n, Some(seed)))
        }),
    ]
}

/// Runs `suite` on the triangle with legs `a`, `b`.
pub fn run_suite(suite: Suite, tri: &RightTriangle, seed: u64, n: usize) -> Vec<RunReport> {
    match suite {
        Suite::Chord => chord_checks(tri),
        Suite::Distance => distance_checks(tri),
        Suite::Rectangle => rectangle_checks(tri),
        Suite::Proof => proof_checks(tri),
        Suite::Piefke => piefke_checks(tri),
        Suite::Mc => mc_checks(tri, seed, n),
        Suite::All => [
            Suite::Chord,
            Suite::Distance,
            Suite::Rectangle,
            Suite::Proof,
            Suite::Piefke,
            Suite::Mc,
        ]
        .into_iter()
        .flat_map(|s| run_suite(s, tri, seed, n))
        .collect(),
    }
}

/// Runs the suite, writing one JSON line per check. Exit 0 iff every check
/// passes.
pub fn cmd_verify<W: Write, E: Write>(
    suite: Suite,
    a: f64,
    b: f64,
    seed: u64,
    n: usize,
    out: &mut W,
    err: &mut E,
) -> i32 {
    let tri = match RightTriangle::new(a, b) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    if n == 0 {
        let _ = writeln!(err, "error: --n must be positive");
        return EXIT_USAGE;
    }
    let mut all_pass = true;
    for report in run_suite(suite, &tri, seed, n) {
        all_pass &= report.pass;
        let line = serde_json::to_string(&report).expect("reports serialize");
        if writeln!(out, "{line}").is_err() {
            return EXIT_FAIL;
        }
    }
    if all_pass {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

#[derive(Debug, Parser)]
#[command(name = "trichord", version, about = "Chord-length and point-distance distributions of right triangles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a distribution on a grid.
    Table(TableArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long = "fn", value_enum)]
    pub function: Function,
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub b: f64,
    /// `t_min:t_max:n` or `t1,t2,...`; defaults to 20 points on [0, c].
    #[arg(long)]
    pub grid: Option<Grid>,
    /// Report t/c and, for densities, c times the value.
    #[arg(long)]
    pub normalize_c: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum, default_value_t = Suite::All)]
    pub suite_pos: Suite,
    #[arg(long, value_enum)]
    pub suite: Option<Suite>,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub b: f64,
    #[arg(long, env = "TRICHORD_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_N)]
    pub n: usize,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T, W, E>(args: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match cli.command {
        Command::Table(t) => {
            let spec = TableSpec {
                function: t.function,
                a: t.a,
                b: t.b,
                grid: t.grid,
                normalize_c: t.normalize_c,
                format: t.format,
            };
            cmd_table(&spec, out, err)
        }
        Command::Verify(v) => {
            let suite = v.suite.unwrap_or(v.suite_pos);
            cmd_verify(suite, v.a, v.b, v.seed, v.n, out, err)
        }
    }
}
