use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;

use super::roots::solve;
use super::{build_char_poly, SequenceFamily};
use crate::error::{Error, Result};
use crate::format::sig15;

pub const EIGENSET_CSV_HEADER: &str =
    "family,k,index,re_lambda,im_lambda,re_recip,im_recip,modulus_recip,residual";

/// One eigenvalue of the size-`k` matrix together with its reciprocal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenRecord {
    pub family: SequenceFamily,
    pub k: usize,
    pub index: usize,
    pub lambda: Complex64,
    pub reciprocal: Complex64,
    pub modulus_recip: f64,
    pub residual: f64,
}

impl EigenRecord {
    pub fn csv_fields(&self) -> [String; 9] {
        [
            self.family.as_str().to_string(),
            self.k.to_string(),
            self.index.to_string(),
            sig15(self.lambda.re),
            sig15(self.lambda.im),
            sig15(self.reciprocal.re),
            sig15(self.reciprocal.im),
            sig15(self.modulus_recip),
            sig15(self.residual),
        ]
    }
}

/// Reciprocal spectra of every matrix size from the family's minimum up to
/// `n_max`, ordered by `(k, index)`.
#[derive(Clone, Debug)]
pub struct EigenSet {
    pub family: SequenceFamily,
    pub n_max: usize,
    pub tolerance: f64,
    pub records: Vec<EigenRecord>,
}

impl EigenSet {
    /// Expected record count: the sum of all matrix sizes. For families that
    /// start at size 2 this is `n(n+1)/2 - 1`.
    pub fn expected_len(family: SequenceFamily, n_max: usize) -> usize {
        let lo = family.min_degree();
        if n_max < lo {
            0
        } else {
            n_max * (n_max + 1) / 2 - lo * (lo - 1) / 2
        }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Records belonging to matrices of size at most `n`.
    pub fn up_to(&self, n: usize) -> &[EigenRecord] {
        let end = self.records.partition_point(|r| r.k <= n);
        &self.records[..end]
    }

    pub fn check_size(&self, n: usize) -> Result<()> {
        if n > self.n_max {
            Err(Error::SizeOutOfRange {
                size: n,
                n_max: self.n_max,
            })
        } else {
            Ok(())
        }
    }

    /// The same set restricted to sizes `<= n`.
    pub fn truncated(&self, n: usize) -> Result<EigenSet> {
        self.check_size(n)?;
        Ok(EigenSet {
            family: self.family,
            n_max: n,
            tolerance: self.tolerance,
            records: self.up_to(n).to_vec(),
        })
    }

    pub fn reciprocals(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.records.iter().map(|r| r.reciprocal)
    }

    /// Largest `|Im lambda|` per matrix size.
    pub fn max_imag_by_size(&self) -> Vec<(usize, f64)> {
        let mut out: Vec<(usize, f64)> = Vec::new();
        for r in &self.records {
            match out.last_mut() {
                Some((k, m)) if *k == r.k => *m = m.max(r.lambda.im.abs()),
                _ => out.push((r.k, r.lambda.im.abs())),
            }
        }
        out
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{EIGENSET_CSV_HEADER}")?;
        for r in &self.records {
            writeln!(w, "{}", r.csv_fields().join(","))?;
        }
        Ok(())
    }
}

fn records_for_size(family: SequenceFamily, k: usize, tol: f64) -> Result<Vec<EigenRecord>> {
    let wrap = |e: Error| Error::AtSize {
        k,
        source: Box::new(e),
    };
    let coeffs = build_char_poly(family, k)
        .and_then(|p| p.to_f64())
        .map_err(wrap)?;
    let sol = solve(&coeffs, tol).map_err(wrap)?;
    sol.roots
        .iter()
        .zip(&sol.residuals)
        .enumerate()
        .map(|(index, (&lambda, &residual))| {
            if lambda.norm_sqr() == 0.0 {
                return Err(Error::ZeroEigenvalue { k });
            }
            let reciprocal = lambda.inv();
            Ok(EigenRecord {
                family,
                k,
                index,
                lambda,
                reciprocal,
                modulus_recip: reciprocal.norm(),
                residual,
            })
        })
        .collect()
}

pub fn build_eigenset(family: SequenceFamily, n_max: usize, tol: f64) -> Result<EigenSet> {
    let lo = family.min_degree();
    if n_max < lo {
        return Err(Error::InvalidDegree {
            family,
            degree: n_max,
            min: lo,
        });
    }
    // collect() keeps size order regardless of scheduling.
    let per_size: Vec<Vec<EigenRecord>> = (lo..=n_max)
        .into_par_iter()
        .map(|k| records_for_size(family, k, tol))
        .collect::<Result<_>>()?;
    Ok(EigenSet {
        family,
        n_max,
        tolerance: tol,
        records: per_size.into_iter().flatten().collect(),
    })
}
