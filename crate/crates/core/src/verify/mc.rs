use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ecdf::EcdfSummary;
use crate::chord::chord_cdf;
use crate::distance::distance_cdf;
use crate::exec::{self, Execution};
use crate::geometry::{chord_length, sample_uniform_point, LineSampler, Point2, RectangleBox, RightTriangle};
use crate::rectangle::{rect_distance_cdf, TwoTriangles};

use rand::Rng;

/// Samples per random stream. Chunk `i` of a run with seed `s` always draws
/// from ChaCha8 stream `i` keyed by `s`, whatever the thread count.
pub const CHUNK: usize = 1 << 16;

fn chunk_rng(seed: u64, chunk: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk as u64);
    rng
}

/// Where the two random points live.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    /// Both points in the triangle.
    Triangle(RightTriangle),
    /// Both points in the rectangle.
    Rectangle(RectangleBox),
    /// One point in the triangle, the other in its mirror image across the
    /// hypotenuse.
    Cross(RightTriangle),
}

impl Domain {
    pub fn diameter(&self) -> f64 {
        match self {
            Domain::Triangle(t) | Domain::Cross(t) => t.c(),
            Domain::Rectangle(r) => r.c(),
        }
    }

    fn sample_distance<R: Rng>(&self, rng: &mut R) -> f64 {
        match self {
            Domain::Triangle(t) => sample_uniform_point(t, rng).distance(sample_uniform_point(t, rng)),
            Domain::Rectangle(r) => {
                let p = Point2::new(r.a() * rng.random::<f64>(), r.b() * rng.random::<f64>());
                let q = Point2::new(r.a() * rng.random::<f64>(), r.b() * rng.random::<f64>());
                p.distance(q)
            }
            Domain::Cross(t) => {
                let p = sample_uniform_point(t, rng);
                let q = sample_uniform_point(t, rng);
                p.distance(Point2::new(t.a() - q.x, t.b() - q.y))
            }
        }
    }

    /// Closed-form distribution function of the pair distance.
    pub fn reference_cdf(&self) -> Box<dyn Fn(f64) -> f64 + Send + Sync> {
        match *self {
            Domain::Triangle(t) => Box::new(move |x| distance_cdf(&t, x).value),
            Domain::Rectangle(r) => Box::new(move |x| rect_distance_cdf(&r, x).value),
            Domain::Cross(t) => {
                let two = TwoTriangles::new(&t);
                Box::new(move |x| two.cdf(x).value)
            }
        }
    }
}

/// `n` pair distances, in generation order.
pub fn sample_point_distances(domain: &Domain, n: usize, seed: u64, exec: Execution) -> Vec<f64> {
    let mut out = vec![0.0; n];
    exec::for_each_chunk(&mut out, CHUNK, exec, |i, chunk| {
        let mut rng = chunk_rng(seed, i);
        for d in chunk.iter_mut() {
            *d = domain.sample_distance(&mut rng);
        }
    });
    out
}

/// `n` chord lengths of lines drawn from the invariant measure.
pub fn sample_chord_lengths(tri: &RightTriangle, n: usize, seed: u64, exec: Execution) -> Vec<f64> {
    let sampler = LineSampler::new(tri);
    let mut out = vec![0.0; n];
    exec::for_each_chunk(&mut out, CHUNK, exec, |i, chunk| {
        let mut rng = chunk_rng(seed, i);
        for s in chunk.iter_mut() {
            *s = chord_length(tri, &sampler.sample(&mut rng));
        }
    });
    out
}

pub fn mc_point_distance_with(domain: &Domain, n: usize, seed: u64, exec: Execution) -> EcdfSummary {
    assert!(n >= 1, "need at least one pair");
    let samples = sample_point_distances(domain, n, seed, exec);
    EcdfSummary::new(samples, seed, domain.reference_cdf(), exec)
}

/// Simulates `n` point pairs and compares their ECDF with the closed form.
pub fn mc_point_distance(domain: &Domain, n: usize, seed: u64) -> EcdfSummary {
    mc_point_distance_with(domain, n, seed, Execution::default())
}

pub fn mc_chord_length_with(tri: &RightTriangle, n: usize, seed: u64, exec: Execution) -> EcdfSummary {
    assert!(n >= 1, "need at least one line");
    let samples = sample_chord_lengths(tri, n, seed, exec);
    let t = *tri;
    EcdfSummary::new(samples, seed, move |s| chord_cdf(&t, s).value, exec)
}

/// Simulates `n` random lines and compares their chord-length ECDF with the
/// closed form.
pub fn mc_chord_length(tri: &RightTriangle, n: usize, seed: u64) -> EcdfSummary {
    mc_chord_length_with(tri, n, seed, Execution::default())
}

/// Pass threshold for a KS distance from `n` samples: `2/√n`, floored at
/// `1e-3`. This is `2e-3` at `10⁶` and `1e-3` at `10⁷`.
pub fn ks_threshold(n: usize) -> f64 {
    (2.0 / (n as f64).sqrt()).max(1e-3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn reproducible_and_execution_independent() {
        let d = Domain::Triangle(RightTriangle::new(1.0, 2.0).unwrap());
        let n = 3 * CHUNK + 17;
        let a = sample_point_distances(&d, n, 9, Execution::Sequential);
        let b = sample_point_distances(&d, n, 9, Execution::Parallel);
        assert_eq!(a, b);
        let c = sample_point_distances(&d, n, 10, Execution::Parallel);
        assert_ne!(a, c);
    }

    #[test]
    fn single_pair_ks() {
        let tri = RightTriangle::new(1.0, 1.0).unwrap();
        let d = Domain::Triangle(tri);
        let e = mc_point_distance(&d, 1, 4);
        let x = e.sorted_samples[0];
        let g = distance_cdf(&tri, x).value;
        assert_abs_diff_eq!(e.ks_distance, g.max(1.0 - g), epsilon = 1e-15);
        assert_eq!(e.seed, 4);
    }

    #[test]
    fn cross_samples_stay_in_box() {
        let tri = RightTriangle::new(1.0, 5.0).unwrap();
        let xs = sample_point_distances(&Domain::Cross(tri), 10_000, 1, Execution::Sequential);
        assert!(xs.iter().all(|&x| (0.0..=tri.c()).contains(&x)));
    }

    #[test]
    fn moderate_runs_agree_with_closed_forms() {
        let tri = RightTriangle::new(3.0, 4.0).unwrap();
        for d in [
            Domain::Triangle(tri),
            Domain::Rectangle(RectangleBox::from_triangle(&tri)),
            Domain::Cross(tri),
        ] {
            let e = mc_point_distance(&d, 200_000, 77);
            assert!(e.ks_distance < ks_threshold(200_000), "{d:?}: {}", e.ks_distance);
        }
        let e = mc_chord_length(&tri, 200_000, 78);
        assert!(e.ks_distance < ks_threshold(200_000), "chords: {}", e.ks_distance);
    }

    #[test]
    fn thresholds() {
        assert_abs_diff_eq!(ks_threshold(1_000_000), 2e-3, epsilon = 1e-15);
        assert_eq!(ks_threshold(10_000_000), 1e-3);
        assert!(ks_threshold(100) > 0.1);
    }
}
