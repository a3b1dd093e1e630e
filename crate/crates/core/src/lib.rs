//! Reciprocal eigensets of generalized Lucas companion matrices and the
//! deformations that carry them toward the Mandelbrot set.
//!
//! The crate is organised by pipeline stage:
//!
//! * [`spectra`] builds companion matrices, exact characteristic polynomials
//!   and the reciprocal eigenset.
//! * [`stats`] tabulates the set against the unit circle, bins it by modulus
//!   and fits the growth curves.
//! * [`dynamics`] classifies points and answers Mandelbrot membership.
//! * [`jungreis`] holds the exact Laurent coefficients of the uniformizing map.
//! * [`homotopy`] implements every deformation toward the cardioid and bulbs.
//! * [`render`] draws escape-time rasters and SVG overlays.

// `!(x > 0.0)` style checks reject NaN on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dynamics;
pub mod error;
pub mod format;
pub mod homotopy;
pub mod jungreis;
pub mod render;
pub mod spectra;
pub mod stats;

pub use dynamics::{
    classification_table, classify_point, in_main_cardioid, in_period2_bulb, mandelbrot_escape,
    ClassThresholds, DynClass, EscapeResult,
};
pub use error::{Error, Result};
pub use homotopy::{
    boundary_collisions, boundary_map, cardioid_homotopy, linear_homotopy, piecewise_scale,
    radial_bulb_homotopy, scale_homotopy, tuned_cardioid_homotopy, tuning_map, HomotopySpec,
    RadialBulbParams, RotatedCardioidParams, TuningParams,
};
pub use jungreis::{jungreis_homotopy, psi_truncated, JungreisSeries};
pub use num_complex::Complex64;
pub use render::{
    overlay_points, render_mandelbrot, snapshot_series, Figure, MarkerStyle, Raster, Snapshot,
    Window,
};
pub use spectra::{
    build_char_poly, build_eigenset, build_matrix, dominant_root, find_roots, CharPoly,
    EigenRecord, EigenSet, MatrixSpec, SequenceFamily,
};
pub use stats::{
    bin_histogram, density_probe, fit_exp_decay_constrained, fit_logistic, unit_circle_table,
    BinHistogram, ExpDecayFit, LogisticFit, UnitCircleRow,
};
