//! Escape-time rasters and SVG overlays of point sets.

mod svg;

use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::mandelbrot_escape;
use crate::error::{Error, Result};
use crate::format::sig15;
use crate::homotopy::HomotopySpec;
use crate::jungreis::is_extrapolated;
use crate::spectra::{EigenRecord, EIGENSET_CSV_HEADER};

pub use svg::MarkerStyle;

/// A rectangle of the complex plane sampled on a pixel grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub width_px: u32,
    pub height_px: u32,
}

impl Window {
    /// Extent of the global figures: the whole set plus the eigenset around it.
    pub fn global(width_px: u32, height_px: u32) -> Self {
        Window {
            re_min: -2.1,
            re_max: 0.9,
            im_min: -1.25,
            im_max: 1.25,
            width_px,
            height_px,
        }
    }

    /// Zoom on the period-3 bulb at the top of the main cardioid.
    pub fn period3(width_px: u32, height_px: u32) -> Self {
        Window {
            re_min: -0.25,
            re_max: 0.05,
            im_min: 0.6,
            im_max: 0.9,
            width_px,
            height_px,
        }
    }

    pub fn centered(center: Complex64, half_width: f64, width_px: u32, height_px: u32) -> Self {
        let half_height = half_width * height_px as f64 / width_px as f64;
        Window {
            re_min: center.re - half_width,
            re_max: center.re + half_width,
            im_min: center.im - half_height,
            im_max: center.im + half_height,
            width_px,
            height_px,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.re_min, self.re_max, self.im_min, self.im_max]
            .iter()
            .all(|v| v.is_finite());
        if !finite
            || !(self.re_min < self.re_max)
            || !(self.im_min < self.im_max)
            || self.width_px == 0
            || self.height_px == 0
        {
            return Err(Error::InvalidInput(format!("degenerate window {self:?}")));
        }
        Ok(())
    }

    /// Complex coordinate of a pixel centre; row 0 is the top edge.
    pub fn pixel_center(&self, col: u32, row: u32) -> Complex64 {
        let dx = (self.re_max - self.re_min) / self.width_px as f64;
        let dy = (self.im_max - self.im_min) / self.height_px as f64;
        Complex64::new(
            self.re_min + (col as f64 + 0.5) * dx,
            self.im_max - (row as f64 + 0.5) * dy,
        )
    }

    /// Point to pixel-space coordinates (not rounded).
    pub fn to_pixel(&self, z: Complex64) -> (f64, f64) {
        let x = (z.re - self.re_min) / (self.re_max - self.re_min) * self.width_px as f64;
        let y = (self.im_max - z.im) / (self.im_max - self.im_min) * self.height_px as f64;
        (x, y)
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.re >= self.re_min && z.re <= self.re_max && z.im >= self.im_min && z.im <= self.im_max
    }
}

/// Iteration counts per pixel, row-major from the top-left corner.
#[derive(Clone, Debug, PartialEq)]
pub struct Raster {
    pub window: Window,
    pub max_iter: u32,
    pub counts: Vec<u32>,
}

impl Raster {
    pub fn count(&self, col: u32, row: u32) -> u32 {
        self.counts[(row * self.window.width_px + col) as usize]
    }

    /// Linear grayscale: white for immediate escape, black for the interior.
    pub fn gray(&self, count: u32) -> u8 {
        if count >= self.max_iter {
            0
        } else {
            255 - ((255 * count as u64) / self.max_iter as u64) as u8
        }
    }

    /// Binary PGM (P5).
    pub fn write_pgm<W: Write>(&self, mut w: W) -> Result<()> {
        write!(
            w,
            "P5\n{} {}\n255\n",
            self.window.width_px, self.window.height_px
        )?;
        let bytes: Vec<u8> = self.counts.iter().map(|&c| self.gray(c)).collect();
        w.write_all(&bytes)?;
        Ok(())
    }
}

pub fn render_mandelbrot(w: &Window, max_iter: u32, radius: f64) -> Result<Raster> {
    w.validate()?;
    if max_iter == 0 {
        return Err(Error::InvalidInput("max_iter must be at least 1".into()));
    }
    let counts: Vec<u32> = (0..w.height_px)
        .into_par_iter()
        .flat_map_iter(|row| {
            (0..w.width_px).map(move |col| {
                let res = mandelbrot_escape(w.pixel_center(col, row), max_iter, radius);
                if res.escaped {
                    res.iterations
                } else {
                    max_iter
                }
            })
        })
        .collect();
    Ok(Raster {
        window: *w,
        max_iter,
        counts,
    })
}

/// A vector figure: optional raster backdrop plus point markers.
#[derive(Clone, Debug, PartialEq)]
pub struct Figure {
    pub window: Window,
    pub background: Option<Raster>,
    pub markers: Vec<Complex64>,
    /// Points that fell outside the window.
    pub dropped: usize,
    pub style: MarkerStyle,
    pub title: Option<String>,
}

impl Figure {
    pub fn to_svg(&self) -> String {
        svg::render(self)
    }

    pub fn write_svg<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(self.to_svg().as_bytes())?;
        Ok(())
    }
}

/// Marks every point inside the raster's window; the rest are counted as dropped.
pub fn overlay_points(r: &Raster, points: &[Complex64], style: &MarkerStyle) -> Figure {
    overlay_on(&r.window, Some(r.clone()), points, style)
}

fn overlay_on(
    window: &Window,
    background: Option<Raster>,
    points: &[Complex64],
    style: &MarkerStyle,
) -> Figure {
    let markers: Vec<Complex64> = points
        .iter()
        .filter(|z| z.is_finite() && window.contains(**z))
        .cloned()
        .collect();
    Figure {
        window: *window,
        background,
        dropped: points.len() - markers.len(),
        markers,
        style: style.clone(),
        title: None,
    }
}

/// One frame of a homotopy snapshot series.
#[derive(Clone, Debug)]
pub struct Snapshot {
    pub kind: &'static str,
    pub t: f64,
    pub file_name: String,
    /// Image of every input point, in input order.
    pub images: Vec<Complex64>,
    pub figure: Figure,
}

/// `<kind>_t<percent>.svg`, percent zero-padded to three digits.
pub fn snapshot_file_name(kind: &str, t: f64) -> String {
    format!("{kind}_t{:03}.svg", (t * 100.0).round() as u32)
}

pub fn snapshot_series(
    spec: &HomotopySpec,
    points: &[Complex64],
    ts: &[f64],
    window: &Window,
    background: Option<&Raster>,
    style: &MarkerStyle,
) -> Result<Vec<Snapshot>> {
    window.validate()?;
    spec.validate()?;
    if let Some(t) = ts.iter().find(|t| !(0.0..=1.0).contains(*t)) {
        return Err(Error::TOutOfRange(*t));
    }
    ts.iter()
        .map(|&t| {
            let images: Vec<Complex64> = points
                .par_iter()
                .map(|&z| spec.eval(z, t))
                .collect::<Result<_>>()?;
            let mut figure = overlay_on(window, background.cloned(), &images, style);
            figure.title = Some(format!("{} t={:.2}", spec.name(), t));
            Ok(Snapshot {
                kind: spec.name(),
                t,
                file_name: snapshot_file_name(spec.name(), t),
                images,
                figure,
            })
        })
        .collect()
}

pub const SNAPSHOT_CSV_EXTRA: &str = "t,kind,re_image,im_image,extrapolated";

/// One row per (frame, record): the record's eigenset columns followed by the
/// frame parameter and the image. `extrapolated` flags jungreis inputs inside
/// the closed unit disk.
pub fn write_snapshot_csv<W: Write>(
    records: &[EigenRecord],
    frames: &[Snapshot],
    mut w: W,
) -> Result<()> {
    writeln!(w, "{EIGENSET_CSV_HEADER},{SNAPSHOT_CSV_EXTRA}")?;
    for f in frames {
        if f.images.len() != records.len() {
            return Err(Error::InvalidInput(format!(
                "frame {} has {} images for {} records",
                f.file_name,
                f.images.len(),
                records.len()
            )));
        }
        let t = sig15(f.t);
        for (r, z) in records.iter().zip(&f.images) {
            let extrapolated = f.kind == "jungreis" && is_extrapolated(r.reciprocal);
            writeln!(
                w,
                "{},{t},{},{},{},{extrapolated}",
                r.csv_fields().join(","),
                f.kind,
                sig15(z.re),
                sig15(z.im)
            )?;
        }
    }
    Ok(())
}
