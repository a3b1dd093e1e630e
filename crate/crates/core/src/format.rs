//! Text formatting rules shared by the CSV and SVG writers.

/// Fixed-point decimal carrying 15 significant digits, never exponent notation.
///
/// `0.0` prints as `0`; non-finite values print as `nan`, `inf` or `-inf`.
pub fn sig15(v: f64) -> String {
    if !v.is_finite() {
        return if v.is_nan() {
            "nan".into()
        } else if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if v == 0.0 {
        return "0".into();
    }
    // Round to 15 significant digits first so the decimal exponent is exact.
    let sci = format!("{:.14e}", v);
    let exp: i32 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .unwrap_or(0);
    let decimals = (14 - exp).max(0) as usize;
    format!("{:.*}", decimals, v)
}

/// Six-decimal fixed formatting used for every coordinate in SVG output.
pub fn fix6(v: f64) -> String {
    let s = format!("{:.6}", v);
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig15_fixed_digits() {
        assert_eq!(sig15(1.0), "1.00000000000000");
        assert_eq!(sig15(1.618033988749895), "1.61803398874989");
        assert_eq!(sig15(-0.5), "-0.500000000000000");
        assert_eq!(sig15(123456.0), "123456.000000000");
        assert_eq!(sig15(0.0), "0");
        assert_eq!(sig15(2.5e-17), "0.0000000000000000250000000000000");
    }

    #[test]
    fn sig15_parses_back_close() {
        for &v in &[1.23456789012345, -2.718281828e-5, 9.99999999999999e10] {
            let back: f64 = sig15(v).parse().unwrap();
            assert!(((back - v) / v).abs() < 1e-14);
        }
    }

    #[test]
    fn fix6_has_no_negative_zero() {
        assert_eq!(fix6(-1e-9), "0.000000");
        assert_eq!(fix6(2.5), "2.500000");
    }
}
