//! Exact chord-length and point-distance distributions for right triangles,
//! the rectangle they tile, and the cross distance between the two halves,
//! together with the numerical and Monte Carlo oracles that check them.
//!
//! ```
//! use trichord::{distance_cdf, RightTriangle};
//!
//! let tri = RightTriangle::new(3.0, 4.0).unwrap();
//! assert_eq!(distance_cdf(&tri, 5.0).value, 1.0);
//! ```

pub mod chord;
pub mod cli;
pub mod distance;
pub mod error;
pub mod exec;
pub mod geometry;
pub mod quadrature;
pub mod rectangle;
pub mod verify;

pub use chord::{chord_cdf, chord_pdf, kernel_l1, kernel_l2, Branch, PiecewiseEval};
pub use distance::{
    distance_cdf, distance_pdf, mean_distance, n_kernel_l1, n_kernel_l2, star_kernel_l1,
    star_kernel_l2, CumulantTables,
};
pub use error::{Error, Result};
pub use exec::Execution;
pub use geometry::{
    chord_length, sample_uniform_line_hitting, sample_uniform_point, width, Line, Point2,
    RectangleBox, RightTriangle,
};
pub use rectangle::{cross_cdf, cross_pdf, rect_distance_cdf, rect_distance_pdf, TwoTriangles};
