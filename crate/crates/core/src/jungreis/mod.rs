//! Truncated Laurent expansion of the uniformizing map
//! `Psi(w) = w + sum_k a_k w^{-(k-1)}` and the homotopy it drives.

mod table;

use std::io::Write;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectra::{EigenRecord, EigenSet};
use crate::stats::in_unit_ring;

pub const TERMS: usize = 65;
pub const DEFAULT_TRUNCATION: usize = TERMS;

#[derive(Clone, Debug, PartialEq)]
pub struct JungreisSeries {
    coefficients: Vec<BigRational>,
    values: Vec<f64>,
}

impl JungreisSeries {
    fn load() -> Self {
        let coefficients: Vec<BigRational> = table::COEFFICIENTS
            .iter()
            .map(|(n, d)| {
                let n: BigInt = n.parse().expect("coefficient table numerator");
                let d: BigInt = d.parse().expect("coefficient table denominator");
                BigRational::new(n, d)
            })
            .collect();
        let values = coefficients
            .iter()
            .map(|c| c.to_f64().expect("coefficient within f64 range"))
            .collect();
        JungreisSeries {
            coefficients,
            values,
        }
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Exact `a_k`, 1-based.
    pub fn exact(&self, k: usize) -> &BigRational {
        &self.coefficients[k - 1]
    }

    /// `a_k` rounded to the nearest double, 1-based.
    pub fn value(&self, k: usize) -> f64 {
        self.values[k - 1]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn exact_all(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn write_json<W: Write>(&self, w: W) -> Result<()> {
        #[derive(Serialize)]
        struct Entry {
            k: usize,
            numerator: String,
            denominator: String,
        }
        let entries: Vec<Entry> = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| Entry {
                k: i + 1,
                numerator: c.numer().to_string(),
                denominator: c.denom().to_string(),
            })
            .collect();
        serde_json::to_writer_pretty(w, &entries)?;
        Ok(())
    }
}

pub fn coefficients() -> &'static JungreisSeries {
    static SERIES: OnceLock<JungreisSeries> = OnceLock::new();
    SERIES.get_or_init(JungreisSeries::load)
}

/// `w + sum_{k=1}^{m} a_k w^{-(k-1)}`.
///
/// Defined for every `w != 0`; the map itself only converges outside the
/// closed unit disk, so values for `|w| <= 1` are extrapolations.
pub fn psi_truncated(w: Complex64, m: usize) -> Result<Complex64> {
    if w.norm_sqr() == 0.0 {
        return Err(Error::Singularity);
    }
    if !(1..=TERMS).contains(&m) {
        return Err(Error::InvalidInput(format!(
            "truncation must lie in 1..={TERMS}, got {m}"
        )));
    }
    let u = w.inv();
    let a = coefficients().values();
    // Horner in u = 1/w over a_m, ..., a_1
    let tail = a[..m]
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * u + c);
    Ok(w + tail)
}

/// `(1 - t) z + t Psi_m(z)`, written as `z + t (Psi_m(z) - z)`.
pub fn jungreis_homotopy(z: Complex64, t: f64, m: usize) -> Result<Complex64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::TOutOfRange(t));
    }
    let psi = psi_truncated(z, m)?;
    Ok(z + (psi - z) * t)
}

/// Whether a point is outside the domain where the series represents the map.
pub fn is_extrapolated(z: Complex64) -> bool {
    z.norm() <= 1.0
}

#[derive(Clone, Debug, Default)]
pub struct ModulusPartition {
    pub unit_ring: Vec<EigenRecord>,
    pub inside: Vec<EigenRecord>,
    pub outside: Vec<EigenRecord>,
}

impl ModulusPartition {
    pub fn len(&self) -> usize {
        self.unit_ring.len() + self.inside.len() + self.outside.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Splits records by reciprocal modulus into `[1-eps, 1+eps)`, below and above.
pub fn partition_by_modulus(es: &EigenSet, eps: f64) -> Result<ModulusPartition> {
    if !(eps > 0.0) {
        return Err(Error::InvalidInput(format!(
            "eps must be positive, got {eps}"
        )));
    }
    let mut part = ModulusPartition::default();
    for r in &es.records {
        let m = r.modulus_recip;
        if in_unit_ring(m, eps) {
            part.unit_ring.push(*r);
        } else if m < 1.0 - eps {
            part.inside.push(*r);
        } else {
            part.outside.push(*r);
        }
    }
    Ok(part)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn leading_coefficients() {
        let s = coefficients();
        assert_eq!(s.len(), 65);
        assert_eq!(s.exact(1), &rat(-1, 2));
        assert_eq!(s.exact(2), &rat(1, 8));
        assert_eq!(s.exact(3), &rat(-1, 4));
        assert_eq!(s.exact(4), &rat(15, 128));
        assert_eq!(s.exact(15), &rat(-21, 512));
        assert!(s.exact(65).is_zero());
    }

    #[test]
    fn wide_coefficient_converts_exactly_enough() {
        let s = coefficients();
        let a64 = s.exact(64);
        assert_eq!(a64.numer().to_string().len(), 37);
        // denominator is 2^127, so the double is numerator * 2^-127 rounded once
        let num = a64.numer().to_f64().unwrap();
        assert_eq!(s.value(64), num * 2f64.powi(-127));
        assert!(s.value(64) > 0.0063 && s.value(64) < 0.0064);
    }

    #[test]
    fn partial_sum_at_ten() {
        // oracle: direct power sum in the original orientation
        let w = Complex64::new(10.0, 0.0);
        let s = coefficients();
        let direct: f64 = 10.0
            + (1..=65)
                .map(|k| s.value(k) * 10f64.powi(-(k as i32 - 1)))
                .sum::<f64>();
        let got = psi_truncated(w, 65).unwrap();
        assert!((got.re - direct).abs() < 1e-13);
        assert!((got.re - 9.5101).abs() < 1e-4);
        assert_eq!(got.im, 0.0);
    }

    #[test]
    fn first_term_only() {
        for w in [
            Complex64::new(2.0, 1.0),
            Complex64::new(-0.3, 0.7),
            Complex64::new(5.0, 0.0),
        ] {
            assert_eq!(psi_truncated(w, 1).unwrap(), w - 0.5);
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(
            psi_truncated(Complex64::new(0.0, 0.0), 65),
            Err(Error::Singularity)
        ));
        assert!(psi_truncated(Complex64::new(1.0, 0.0), 0).is_err());
        assert!(psi_truncated(Complex64::new(1.0, 0.0), 66).is_err());
        assert!(matches!(
            jungreis_homotopy(Complex64::new(1.0, 1.0), 1.5, 65),
            Err(Error::TOutOfRange(_))
        ));
    }

    #[test]
    fn homotopy_endpoints() {
        let z = Complex64::new(1.3, -0.4);
        assert_eq!(jungreis_homotopy(z, 0.0, 65).unwrap(), z);
        assert_eq!(
            jungreis_homotopy(z, 1.0, 65).unwrap(),
            psi_truncated(z, 65).unwrap()
        );
        let mid = jungreis_homotopy(z, 0.5, 65).unwrap();
        assert!((mid - (z + psi_truncated(z, 65).unwrap()) / 2.0).norm() < 1e-15);
    }

    #[test]
    fn json_export_uses_decimal_strings() {
        let mut buf = Vec::new();
        coefficients().write_json(&mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        let arr = v.as_array().unwrap();
        assert_eq!(arr.len(), 65);
        assert_eq!(arr[3]["k"], 4);
        assert_eq!(arr[3]["numerator"], "15");
        assert_eq!(arr[3]["denominator"], "128");
        assert_eq!(
            arr[63]["denominator"],
            "170141183460469231731687303715884105728"
        );
    }

    proptest! {
        #[test]
        fn conjugation_commutes(re in -3.0f64..3.0, im in -3.0f64..3.0, m in 1usize..=65) {
            let w = Complex64::new(re, im);
            prop_assume!(w.norm() > 1e-3);
            prop_assert_eq!(psi_truncated(w.conj(), m).unwrap(), psi_truncated(w, m).unwrap().conj());
        }

        #[test]
        fn homotopy_is_linear_in_t(re in -3.0f64..3.0, im in -3.0f64..3.0, t in 0.0f64..=1.0) {
            let z = Complex64::new(re, im);
            prop_assume!(z.norm() > 1e-3);
            let h = jungreis_homotopy(z, t, 65).unwrap();
            let psi = psi_truncated(z, 65).unwrap();
            prop_assert!((h - (z + (psi - z) * t)).norm() <= 1e-12 * (1.0 + psi.norm()));
            prop_assert_eq!(jungreis_homotopy(z.conj(), t, 65).unwrap(), h.conj());
        }
    }
}
