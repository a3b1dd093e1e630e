//! Companion matrices of the four recurrence families, their exact
//! characteristic polynomials, and the reciprocal eigenset built from them.

mod eigenset;
mod roots;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use eigenset::{build_eigenset, EigenRecord, EigenSet, EIGENSET_CSV_HEADER};
pub use roots::{
    dominant_root, find_roots, scaled_residual, solve, RootSolution, DEFAULT_TOLERANCE,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceFamily {
    /// Generalized Lucas (n-bonacci) family; its reciprocal spectra form the main eigenset.
    Fibonacci,
    PellLucas,
    Narayana,
    Padovan,
}

impl SequenceFamily {
    pub const ALL: [SequenceFamily; 4] = [
        SequenceFamily::Fibonacci,
        SequenceFamily::PellLucas,
        SequenceFamily::Narayana,
        SequenceFamily::Padovan,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SequenceFamily::Fibonacci => "fibonacci",
            SequenceFamily::PellLucas => "pell_lucas",
            SequenceFamily::Narayana => "narayana",
            SequenceFamily::Padovan => "padovan",
        }
    }

    /// Smallest matrix size the family admits.
    ///
    /// The Narayana first row `(1, 0, 1, ...)` at size 2 is `(1, 0)`, whose
    /// characteristic polynomial `x^2 - x` has a zero eigenvalue with no
    /// reciprocal, so that family starts at 3.
    pub fn min_degree(self) -> usize {
        match self {
            SequenceFamily::Narayana => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for SequenceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SequenceFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fibonacci" => Ok(SequenceFamily::Fibonacci),
            "pell_lucas" | "pell-lucas" => Ok(SequenceFamily::PellLucas),
            "narayana" => Ok(SequenceFamily::Narayana),
            "padovan" => Ok(SequenceFamily::Padovan),
            other => Err(Error::InvalidInput(format!("unknown family `{other}`"))),
        }
    }
}

/// Sparse companion-type matrix: everything outside the first row and the
/// subdiagonal is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixSpec {
    pub family: SequenceFamily,
    pub degree: usize,
    pub first_row: Vec<i64>,
    pub subdiagonal: Vec<i64>,
}

impl MatrixSpec {
    /// Dense row-major copy, mostly useful for tests and small printouts.
    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let n = self.degree;
        let mut m = vec![vec![0; n]; n];
        m[0].copy_from_slice(&self.first_row);
        for (j, &s) in self.subdiagonal.iter().enumerate() {
            m[j + 1][j] = s;
        }
        m
    }
}

pub fn build_matrix(family: SequenceFamily, degree: usize) -> Result<MatrixSpec> {
    let min = family.min_degree();
    if degree < min {
        return Err(Error::InvalidDegree {
            family,
            degree,
            min,
        });
    }
    let (first_row, subdiagonal) = match family {
        SequenceFamily::Fibonacci => (vec![1; degree], vec![1; degree - 1]),
        SequenceFamily::PellLucas => {
            let mut sub = vec![2; degree - 1];
            sub[0] = 4;
            (vec![4; degree], sub)
        }
        SequenceFamily::Narayana => {
            let mut row = vec![1; degree];
            row[1] = 0;
            (row, vec![1; degree - 1])
        }
        SequenceFamily::Padovan => {
            let mut row = vec![1; degree];
            row[0] = 0;
            (row, vec![1; degree - 1])
        }
    };
    Ok(MatrixSpec {
        family,
        degree,
        first_row,
        subdiagonal,
    })
}

/// Monic integer polynomial. `coefficients[i]` multiplies `x^i`, so the
/// vector has `degree + 1` entries and ends with `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    pub degree: usize,
    pub coefficients: Vec<BigInt>,
}

impl CharPoly {
    pub fn from_coefficients(coefficients: Vec<BigInt>) -> Result<Self> {
        match coefficients.last() {
            Some(lead) if coefficients.len() >= 2 && lead.is_one() => Ok(CharPoly {
                degree: coefficients.len() - 1,
                coefficients,
            }),
            _ => Err(Error::InvalidPolynomial),
        }
    }

    pub fn from_i64(coefficients: &[i64]) -> Result<Self> {
        Self::from_coefficients(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coefficient(&self, power: usize) -> &BigInt {
        &self.coefficients[power]
    }

    /// Exact evaluation at an integer point.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coefficients
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Coefficients as doubles, ascending powers. Fails when any magnitude
    /// leaves the finite `f64` range.
    pub fn to_f64(&self) -> Result<Vec<f64>> {
        self.coefficients
            .iter()
            .map(|c| {
                c.to_f64()
                    .filter(|v| v.is_finite())
                    .ok_or(Error::CoefficientOverflow {
                        degree: self.degree,
                    })
            })
            .collect()
    }

    pub fn max_abs_coefficient(&self) -> BigInt {
        self.coefficients
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (power, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_mag = !mag.is_one() || power == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match power {
                0 => {}
                1 => f.write_str("x")?,
                p => write!(f, "x^{p}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Characteristic polynomial `det(xI - A)` of a first-row/subdiagonal matrix.
///
/// Expanding along the first row gives the coefficient of `x^(N-1-k)` as
/// `-(first_row[k] * subdiagonal[0] * ... * subdiagonal[k-1])`.
pub fn char_poly_of(matrix: &MatrixSpec) -> CharPoly {
    let n = matrix.degree;
    let mut coefficients = vec![BigInt::zero(); n + 1];
    coefficients[n] = BigInt::one();
    let mut prefix = BigInt::one();
    for k in 0..n {
        coefficients[n - 1 - k] = -(BigInt::from(matrix.first_row[k]) * &prefix);
        if k < n - 1 {
            prefix *= matrix.subdiagonal[k];
        }
    }
    CharPoly {
        degree: n,
        coefficients,
    }
}

pub fn build_char_poly(family: SequenceFamily, degree: usize) -> Result<CharPoly> {
    build_matrix(family, degree).map(|m| char_poly_of(&m))
}
