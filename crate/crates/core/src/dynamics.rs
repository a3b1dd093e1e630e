//! Modulus/argument classification of eigenset points and Mandelbrot
//! membership tests.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectra::EigenSet;
use crate::stats::in_unit_ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DynClass {
    Hyperbolic,
    MisiurewiczProxy,
    Parabolic,
    Siegel,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ClassThresholds {
    pub eps_ring: f64,
    /// Tolerance on the normalized angle `atan2(im, re) / pi`.
    pub arg_tol: f64,
    pub denominator_cap: u32,
}

impl Default for ClassThresholds {
    fn default() -> Self {
        ClassThresholds {
            eps_ring: 0.01,
            arg_tol: 0.01,
            denominator_cap: 64,
        }
    }
}

impl ClassThresholds {
    pub fn validate(&self) -> Result<()> {
        if !(self.eps_ring > 0.0) || !(self.arg_tol > 0.0) || self.denominator_cap < 2 {
            return Err(Error::InvalidInput(format!(
                "thresholds need eps_ring > 0, arg_tol > 0, denominator_cap >= 2: {self:?}"
            )));
        }
        Ok(())
    }
}

/// True when `x` lies within `arg_tol / q^2` of some `p/q` with `q <= cap`.
///
/// The window shrinks with the denominator; a flat window of width `arg_tol`
/// would swallow the whole line once `cap` exceeds `1/arg_tol`.
pub fn near_rational(x: f64, arg_tol: f64, cap: u32) -> bool {
    (1..=cap).any(|q| {
        let qf = q as f64;
        let p = (x * qf).round();
        (x - p / qf).abs() <= arg_tol / (qf * qf)
    })
}

pub fn classify_point(z: Complex64, th: &ClassThresholds) -> Result<DynClass> {
    if z.norm_sqr() == 0.0 || !z.is_finite() {
        return Err(Error::InvalidInput(format!("cannot classify z = {z}")));
    }
    let m = z.norm();
    if m < 1.0 - th.eps_ring {
        return Ok(DynClass::Hyperbolic);
    }
    if !in_unit_ring(m, th.eps_ring) {
        return Ok(DynClass::MisiurewiczProxy);
    }
    let angle = (z.im.atan2(z.re) / PI).abs();
    if angle <= th.arg_tol {
        Ok(DynClass::Parabolic)
    } else if !near_rational(angle, th.arg_tol, th.denominator_cap) {
        Ok(DynClass::Siegel)
    } else {
        Ok(DynClass::Other)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassTableRow {
    pub n: usize,
    pub hyperbolic: usize,
    pub misiurewicz: usize,
    pub parabolic: usize,
    pub siegel: usize,
    pub classified_total: usize,
    pub grand_total: usize,
    pub others: usize,
}

pub const CLASSIFY_CSV_HEADER: &str =
    "n,hyperbolic,misiurewicz,parabolic,siegel,classified_total,grand_total,others";

pub fn classification_table(
    es: &EigenSet,
    sizes: &[usize],
    th: &ClassThresholds,
) -> Result<Vec<ClassTableRow>> {
    th.validate()?;
    sizes
        .iter()
        .map(|&n| {
            es.check_size(n)?;
            let records = es.up_to(n);
            let mut row = ClassTableRow {
                n,
                hyperbolic: 0,
                misiurewicz: 0,
                parabolic: 0,
                siegel: 0,
                classified_total: 0,
                grand_total: records.len(),
                others: 0,
            };
            for r in records {
                match classify_point(r.reciprocal, th)? {
                    DynClass::Hyperbolic => row.hyperbolic += 1,
                    DynClass::MisiurewiczProxy => row.misiurewicz += 1,
                    DynClass::Parabolic => row.parabolic += 1,
                    DynClass::Siegel => row.siegel += 1,
                    DynClass::Other => row.others += 1,
                }
            }
            row.classified_total = row.hyperbolic + row.misiurewicz + row.parabolic + row.siegel;
            Ok(row)
        })
        .collect()
}

pub fn write_classify_csv<W: Write>(rows: &[ClassTableRow], mut w: W) -> Result<()> {
    writeln!(w, "{CLASSIFY_CSV_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            r.n,
            r.hyperbolic,
            r.misiurewicz,
            r.parabolic,
            r.siegel,
            r.classified_total,
            r.grand_total,
            r.others
        )?;
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EscapeResult {
    pub escaped: bool,
    pub iterations: u32,
    pub final_modulus: f64,
}

pub const DEFAULT_MAX_ITER: u32 = 1000;
pub const DEFAULT_RADIUS: f64 = 2.0;

/// Iterates `z <- z^2 + c` from `z = 0` until `|z| > radius` or `max_iter`
/// steps have been taken.
pub fn mandelbrot_escape(c: Complex64, max_iter: u32, radius: f64) -> EscapeResult {
    let r2 = radius * radius;
    let mut z = Complex64::new(0.0, 0.0);
    for i in 1..=max_iter {
        z = z * z + c;
        if z.norm_sqr() > r2 {
            return EscapeResult {
                escaped: true,
                iterations: i,
                final_modulus: z.norm(),
            };
        }
    }
    EscapeResult {
        escaped: false,
        iterations: max_iter,
        final_modulus: z.norm(),
    }
}

/// Multiplier `mu = 1 - sqrt(1 - 4c)` of the fixed point, principal branch.
/// `c` lies in the closed main cardioid exactly when `|mu| <= 1`.
pub fn cardioid_multiplier(c: Complex64) -> Complex64 {
    Complex64::new(1.0, 0.0) - (Complex64::new(1.0, 0.0) - c * 4.0).sqrt()
}

/// Slack on `|mu| <= 1` so boundary points built from the cardioid
/// parameterization are not rejected by rounding.
const CARDIOID_BOUNDARY_SLACK: f64 = 1e-12;

pub fn in_main_cardioid(c: Complex64) -> bool {
    cardioid_multiplier(c).norm() <= 1.0 + CARDIOID_BOUNDARY_SLACK
}

pub fn in_period2_bulb(c: Complex64) -> bool {
    (c + 1.0).norm() < 0.25
}
