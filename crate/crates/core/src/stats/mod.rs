//! Unit-circle tables, modulus histograms, growth-curve fits and the
//! unit-circle density probe.

mod fit;

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::sig15;
use crate::spectra::EigenSet;

pub use fit::{
    exp_decay_sse, fit_exp_decay_constrained, fit_logistic, logistic_sse, ExpDecayFit, LogisticFit,
    REFERENCE_LOGISTIC,
};

/// Half-width of the annulus around the unit circle.
pub const DEFAULT_EPS: f64 = 0.01;
pub const DEFAULT_BIN_START: f64 = 0.49;
pub const DEFAULT_BIN_WIDTH: f64 = 0.02;
/// Covers `[0.49, 1.65)`, which holds every reciprocal modulus of the
/// fibonacci family (the largest is the golden ratio).
pub const DEFAULT_BIN_COUNT: usize = 58;

/// The sizes tabulated for the unit-circle table.
pub const TABLE_SIZES: [usize; 12] = [10, 20, 50, 100, 150, 200, 250, 300, 350, 400, 450, 500];

/// Membership in the half-open annulus `[1 - eps, 1 + eps)`.
pub fn in_unit_ring(modulus: f64, eps: f64) -> bool {
    modulus >= 1.0 - eps && modulus < 1.0 + eps
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UnitCircleRow {
    pub n: usize,
    pub pct_within: f64,
    pub total: usize,
    pub within: usize,
    pub left_out: usize,
}

pub const TABLE1_CSV_HEADER: &str = "n,pct_within,total,within,left_out";

pub fn unit_circle_table(es: &EigenSet, eps: f64, sizes: &[usize]) -> Result<Vec<UnitCircleRow>> {
    if !(eps > 0.0) {
        return Err(Error::InvalidInput(format!(
            "eps must be positive, got {eps}"
        )));
    }
    sizes
        .iter()
        .map(|&n| {
            es.check_size(n)?;
            let records = es.up_to(n);
            let total = records.len();
            let within = records
                .iter()
                .filter(|r| in_unit_ring(r.modulus_recip, eps))
                .count();
            let pct_within = if total == 0 {
                0.0
            } else {
                100.0 * within as f64 / total as f64
            };
            Ok(UnitCircleRow {
                n,
                pct_within,
                total,
                within,
                left_out: total - within,
            })
        })
        .collect()
}

pub fn write_table1_csv<W: Write>(rows: &[UnitCircleRow], mut w: W) -> Result<()> {
    writeln!(w, "{TABLE1_CSV_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{}",
            r.n,
            sig15(r.pct_within),
            r.total,
            r.within,
            r.left_out
        )?;
    }
    Ok(())
}

/// Counts of reciprocal moduli over a uniform grid of half-open bins.
#[derive(Clone, Debug, PartialEq)]
pub struct BinHistogram {
    pub n: usize,
    pub bin_start: f64,
    pub bin_width: f64,
    /// One entry per bin, zero counts included.
    pub counts: Vec<usize>,
    pub below: usize,
    pub above: usize,
}

impl BinHistogram {
    pub fn edge(&self, i: usize) -> f64 {
        self.bin_start + i as f64 * self.bin_width
    }

    /// Index of the bin whose lower edge is `lo` (to within a tenth of a bin).
    pub fn bin_index(&self, lo: f64) -> Option<usize> {
        let i = ((lo - self.bin_start) / self.bin_width).round();
        if i < 0.0 || i as usize >= self.counts.len() {
            return None;
        }
        let i = i as usize;
        ((self.edge(i) - lo).abs() < 0.1 * self.bin_width).then_some(i)
    }

    pub fn count_at(&self, lo: f64) -> Option<usize> {
        self.bin_index(lo).map(|i| self.counts[i])
    }

    pub fn out_of_range(&self) -> usize {
        self.below + self.above
    }

    /// Non-empty bins as `(start, end, count)`.
    pub fn nonempty(&self) -> impl Iterator<Item = (f64, f64, usize)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (self.edge(i), self.edge(i + 1), c))
    }
}

pub fn bin_histogram(
    es: &EigenSet,
    n: usize,
    bin_start: f64,
    bin_width: f64,
    bin_count: usize,
) -> Result<BinHistogram> {
    if !(bin_width > 0.0) || !bin_start.is_finite() || bin_count == 0 {
        return Err(Error::InvalidInput(format!(
            "bad bin grid: start {bin_start}, width {bin_width}, count {bin_count}"
        )));
    }
    es.check_size(n)?;
    let mut hist = BinHistogram {
        n,
        bin_start,
        bin_width,
        counts: vec![0; bin_count],
        below: 0,
        above: 0,
    };
    let end = hist.edge(bin_count);
    for r in es.up_to(n) {
        let m = r.modulus_recip;
        if m < bin_start {
            hist.below += 1;
            continue;
        }
        if m >= end {
            hist.above += 1;
            continue;
        }
        // The quotient can land one bin off near an edge; the edges decide.
        let mut i = (((m - bin_start) / bin_width).floor() as usize).min(bin_count - 1);
        if m < hist.edge(i) {
            i -= 1;
        } else if i + 1 < bin_count && m >= hist.edge(i + 1) {
            i += 1;
        }
        hist.counts[i] += 1;
    }
    Ok(hist)
}

pub const BINS_CSV_HEADER: &str = "n,bin_start,bin_end,count";

/// Long-format bin table; empty bins are omitted.
pub fn write_bins_csv<W: Write>(hists: &[BinHistogram], mut w: W) -> Result<()> {
    writeln!(w, "{BINS_CSV_HEADER}")?;
    for h in hists {
        for (a, b, c) in h.nonempty() {
            // edges are a running sum of the width; print them at grid precision
            writeln!(
                w,
                "{},{},{},{}",
                h.n,
                sig15(round12(a)),
                sig15(round12(b)),
                c
            )?;
        }
    }
    Ok(())
}

fn round12(v: f64) -> f64 {
    (v * 1e12).round() / 1e12
}

/// For each angle, the distance from `e^{i theta}` to the nearest reciprocal.
///
/// With `ring = Some(eps)` only reciprocals in the annulus `[1-eps, 1+eps)`
/// are candidates.
///
/// Candidates are scanned outward in argument from the target angle. A point
/// whose argument differs by `d` lies at distance at least `sin d` from
/// `e^{i theta}` (at least 1 once `d >= pi/2`), so the scan stops as soon as
/// that bound exceeds the best distance found.
pub fn density_probe(es: &EigenSet, angles: &[f64], ring: Option<f64>) -> Result<Vec<f64>> {
    let mut pts: Vec<(f64, Complex64)> = es
        .records
        .iter()
        .filter(|r| ring.is_none_or(|eps| in_unit_ring(r.modulus_recip, eps)))
        .map(|r| (r.reciprocal.arg(), r.reciprocal))
        .collect();
    if pts.is_empty() {
        return Err(Error::EmptyEigenSet);
    }
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let len = pts.len();

    let angle_gap = |a: f64, b: f64| {
        let d = (a - b).rem_euclid(TAU);
        d.min(TAU - d)
    };
    let bound = |gap: f64| if gap >= FRAC_PI_2 { 1.0 } else { gap.sin() };

    angles
        .iter()
        .map(|&theta| {
            if !theta.is_finite() {
                return Err(Error::InvalidInput(format!("angle {theta} is not finite")));
            }
            let target = Complex64::from_polar(1.0, theta);
            let wrapped = (theta + PI).rem_euclid(TAU) - PI;
            let start = pts.partition_point(|p| p.0 < wrapped);
            let mut best = f64::INFINITY;
            // walk upward
            for step in 0..len {
                let (phi, z) = pts[(start + step) % len];
                if bound(angle_gap(phi, theta)) > best {
                    break;
                }
                best = best.min((z - target).norm());
            }
            // walk downward
            for step in 1..=len {
                let (phi, z) = pts[(start + len - step) % len];
                if bound(angle_gap(phi, theta)) > best {
                    break;
                }
                best = best.min((z - target).norm());
            }
            Ok(best)
        })
        .collect()
}

/// `count` equally spaced angles in `[0, 2 pi)`, starting at 0.
pub fn angle_grid(count: usize) -> Vec<f64> {
    (0..count).map(|i| TAU * i as f64 / count as f64).collect()
}
