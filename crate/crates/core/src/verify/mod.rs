//! Independent oracles for the closed forms: numerical integration of the
//! strip decomposition of the line measure, the integrated Piefke identity,
//! and seeded Monte Carlo with Kolmogorov–Smirnov comparison.

mod ecdf;
mod mc;
mod piefke;
mod proof;

pub use ecdf::{ks_statistic, EcdfSummary};
pub use mc::{
    ks_threshold, mc_chord_length, mc_chord_length_with, mc_point_distance,
    mc_point_distance_with, sample_chord_lengths, sample_point_distances, Domain, CHUNK,
};
pub use piefke::{piefke_mean, piefke_pdf, piefke_pdf_density_form, PiefkeConstants};
pub use proof::{measure_by_proof_integration, StripBreadths};
