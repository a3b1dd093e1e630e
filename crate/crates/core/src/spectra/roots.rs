//! Simultaneous polynomial root iteration (Aberth–Ehrlich) with conjugate
//! mirroring and Newton polishing.

use std::cmp::Ordering;

use num_complex::Complex64;

use super::{CharPoly, SequenceFamily};
use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-12;

const MAX_SWEEPS: usize = 600;
const ANGLE_OFFSET: f64 = 0.4;
/// Relative step below which a root stops moving.
const FREEZE_STEP: f64 = 4.0 * f64::EPSILON;

/// Roots plus the backward-error residual of each, in the same order.
#[derive(Clone, Debug)]
pub struct RootSolution {
    pub roots: Vec<Complex64>,
    pub residuals: Vec<f64>,
    pub sweeps: usize,
}

/// Newton correction `p(z)/p'(z)` and scaled residual `|p(z)| / sum |a_i||z|^i`.
///
/// Outside the unit disk the reversed polynomial is used so that high
/// powers of `z` never overflow.
fn newton_step(coeffs: &[f64], z: Complex64) -> (Complex64, f64) {
    let n = coeffs.len() - 1;
    if z.norm_sqr() <= 1.0 {
        let mut p = Complex64::new(coeffs[n], 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        let r = z.norm();
        let mut scale = coeffs[n].abs();
        for &a in coeffs[..n].iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
            scale = scale * r + a.abs();
        }
        let residual = if scale > 0.0 { p.norm() / scale } else { 0.0 };
        (p / dp, residual)
    } else {
        // p(z) = z^n q(y), y = 1/z, q(y) = sum a_i y^(n-i)
        let y = z.inv();
        let ry = y.norm();
        let mut q = Complex64::new(coeffs[0], 0.0);
        let mut dq = Complex64::new(0.0, 0.0);
        let mut scale = coeffs[0].abs();
        for &a in &coeffs[1..] {
            dq = dq * y + q;
            q = q * y + a;
            scale = scale * ry + a.abs();
        }
        let residual = if scale > 0.0 { q.norm() / scale } else { 0.0 };
        // p'/p = y (n - y q'/q)
        let ratio = y * (Complex64::new(n as f64, 0.0) - y * dq / q);
        (ratio.inv(), residual)
    }
}

/// Scaled residual `|p(z)| / sum |a_i| |z|^i` of a polynomial with ascending
/// double coefficients.
pub fn scaled_residual(coeffs: &[f64], z: Complex64) -> f64 {
    newton_step(coeffs, z).1
}

fn initial_guesses(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let radius = (1.0 + coeffs[0].abs()).powf(1.0 / n as f64);
    (0..n)
        .map(|j| {
            let angle = std::f64::consts::TAU * j as f64 / n as f64 + ANGLE_OFFSET;
            Complex64::from_polar(radius, angle)
        })
        .collect()
}

fn aberth(coeffs: &[f64], tol: f64) -> Result<(Vec<Complex64>, usize)> {
    let n = coeffs.len() - 1;
    let mut z = initial_guesses(coeffs);
    let mut frozen = vec![false; n];
    let mut residuals = vec![f64::INFINITY; n];

    for sweep in 1..=MAX_SWEEPS {
        let mut moving = 0usize;
        for i in 0..n {
            if frozen[i] {
                continue;
            }
            let zi = z[i];
            let (ratio, residual) = newton_step(coeffs, zi);
            residuals[i] = residual;
            if residual == 0.0 || !ratio.is_finite() {
                frozen[i] = true;
                continue;
            }
            let mut repulsion = Complex64::new(0.0, 0.0);
            for (j, &zj) in z.iter().enumerate() {
                if j != i {
                    repulsion += (zi - zj).inv();
                }
            }
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.is_finite() {
                continue;
            }
            z[i] = zi - step;
            if step.norm() <= FREEZE_STEP * z[i].norm().max(f64::MIN_POSITIVE) {
                frozen[i] = true;
            } else {
                moving += 1;
            }
        }
        if moving == 0 {
            for (i, &zi) in z.iter().enumerate() {
                residuals[i] = newton_step(coeffs, zi).1;
            }
            let worst = residuals.iter().cloned().fold(0.0, f64::max);
            if worst <= tol {
                return Ok((z, sweep));
            }
            // Roots that froze early may have settled before their
            // neighbours did; let the stragglers move again.
            for (f, &r) in frozen.iter_mut().zip(&residuals) {
                *f = r <= tol;
            }
            if frozen.iter().all(|&f| f) {
                return Ok((z, sweep));
            }
        }
    }
    let worst = z
        .iter()
        .map(|&zi| newton_step(coeffs, zi).1)
        .fold(0.0, f64::max);
    Err(Error::NoConvergence {
        iterations: MAX_SWEEPS,
        worst_residual: worst,
    })
}

/// One Newton step, kept only if it lowers the residual.
fn polish(coeffs: &[f64], z: Complex64) -> (Complex64, f64) {
    let (ratio, r0) = newton_step(coeffs, z);
    if r0 == 0.0 || !ratio.is_finite() {
        return (z, r0);
    }
    let cand = z - ratio;
    let r1 = newton_step(coeffs, cand).1;
    if r1 < r0 {
        (cand, r1)
    } else {
        (z, r0)
    }
}

fn polish_real(coeffs: &[f64], x: f64) -> (f64, f64) {
    let (ratio, r0) = newton_step(coeffs, Complex64::new(x, 0.0));
    if r0 == 0.0 || !ratio.re.is_finite() {
        return (x, r0);
    }
    let cand = x - ratio.re;
    let r1 = newton_step(coeffs, Complex64::new(cand, 0.0)).1;
    if r1 < r0 {
        (cand, r1)
    } else {
        (x, r0)
    }
}

fn root_order(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Roots of a real monic polynomial given by ascending double coefficients.
///
/// Roots in the upper half plane are kept and mirrored; near-real roots are
/// snapped to the real axis and polished in real arithmetic, so conjugate
/// pairs are bit-identical. Output is sorted by real then imaginary part.
pub fn solve(coeffs: &[f64], tol: f64) -> Result<RootSolution> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 || coeffs[n] != 1.0 || coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidPolynomial);
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if n == 1 {
        let root = -coeffs[0];
        return Ok(RootSolution {
            roots: vec![Complex64::new(root, 0.0)],
            residuals: vec![0.0],
            sweeps: 0,
        });
    }

    let (raw, sweeps) = aberth(coeffs, tol)?;

    // Separation of the real and paired roots: a real root computed in
    // complex arithmetic carries an imaginary part at rounding level.
    let is_real = |z: &Complex64| z.im.abs() <= 1e-9 * z.norm().max(1.0);
    let mut upper: Vec<Complex64> = raw
        .iter()
        .filter(|z| !is_real(z) && z.im > 0.0)
        .cloned()
        .collect();
    let lower = raw.iter().filter(|z| !is_real(z) && z.im < 0.0).count();
    let mut real: Vec<f64> = raw.iter().filter(|z| is_real(z)).map(|z| z.re).collect();
    if upper.len() != lower {
        // Unbalanced split: fall back to pairing by the larger half and
        // re-deriving the real count from the degree.
        let pairs = upper.len().min(lower);
        upper.sort_by(|a, b| b.im.total_cmp(&a.im));
        upper.truncate(pairs);
        if 2 * pairs + real.len() != n {
            let worst = raw
                .iter()
                .map(|&z| scaled_residual(coeffs, z))
                .fold(0.0, f64::max);
            return Err(Error::NoConvergence {
                iterations: sweeps,
                worst_residual: worst,
            });
        }
    }
    real.sort_by(|a, b| a.total_cmp(b));

    let mut roots = Vec::with_capacity(n);
    let mut residuals = Vec::with_capacity(n);
    for x in real {
        let (x, r) = polish_real(coeffs, x);
        roots.push(Complex64::new(x, 0.0));
        residuals.push(r);
    }
    for z in upper {
        let (z, r) = polish(coeffs, z);
        // polishing must not push a pair onto the axis
        let z = if z.im > 0.0 {
            z
        } else {
            Complex64::new(z.re, z.im.abs())
        };
        roots.push(z);
        residuals.push(r);
        roots.push(z.conj());
        residuals.push(r);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| root_order(&roots[a], &roots[b]));
    let roots: Vec<Complex64> = order.iter().map(|&i| roots[i]).collect();
    let residuals: Vec<f64> = order.iter().map(|&i| residuals[i]).collect();

    let worst = residuals.iter().cloned().fold(0.0, f64::max);
    if worst > tol {
        return Err(Error::NoConvergence {
            iterations: sweeps,
            worst_residual: worst,
        });
    }
    Ok(RootSolution {
        roots,
        residuals,
        sweeps,
    })
}

/// All complex roots of `poly` with scaled residual at most `tol`, sorted by
/// (real part, imaginary part).
pub fn find_roots(poly: &CharPoly, tol: f64) -> Result<Vec<Complex64>> {
    let coeffs = poly.to_f64()?;
    solve(&coeffs, tol).map(|s| s.roots)
}

/// The real root of modulus greater than one of the n-bonacci polynomial.
///
/// Safeguarded Newton on `g(x) = 1 - sum_{j=1}^{N} x^-j`, which has the same
/// root in `(1, 2)` as `p_N` but stays bounded for any degree.
pub fn dominant_root(family: SequenceFamily, degree: usize) -> Result<f64> {
    if family != SequenceFamily::Fibonacci {
        return Err(Error::UnsupportedFamily {
            family,
            reason: "a real dominant root is only established for the fibonacci family",
        });
    }
    if degree < 2 {
        return Err(Error::InvalidDegree {
            family,
            degree,
            min: 2,
        });
    }
    let eval = |x: f64| {
        let y = 1.0 / x;
        // sum_{j=1}^{N} y^j and its derivative in x
        let mut s = 0.0;
        let mut ds = 0.0;
        let mut pw = 1.0;
        for j in 1..=degree {
            pw *= y;
            s += pw;
            ds += j as f64 * pw;
        }
        (1.0 - s, ds / x)
    };
    let (mut lo, mut hi) = (1.0_f64, 2.0_f64);
    let mut x = 2.0 - 1.0 / degree as f64;
    for _ in 0..200 {
        let (g, dg) = eval(x);
        if g == 0.0 {
            return Ok(x);
        }
        if g < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let mut next = x - g / dg;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 2.0 * f64::EPSILON * x {
            return Ok(next);
        }
        x = next;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::build_char_poly;

    fn fib(n: usize) -> CharPoly {
        build_char_poly(SequenceFamily::Fibonacci, n).unwrap()
    }

    /// Plain bisection on p_N over (1, 2), evaluated directly.
    fn bisect_fib(n: i32) -> f64 {
        let p = |x: f64| x.powi(n) - (0..n).map(|k| x.powi(k)).sum::<f64>();
        let (mut a, mut b) = (1.0_f64, 2.0_f64);
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if p(m) < 0.0 {
                a = m;
            } else {
                b = m;
            }
        }
        0.5 * (a + b)
    }

    #[test]
    fn quadratic_matches_formula() {
        let roots = find_roots(&fib(2), DEFAULT_TOLERANCE).unwrap();
        let s5 = 5f64.sqrt();
        assert_eq!(roots.len(), 2);
        assert!((roots[0].re - (1.0 - s5) / 2.0).abs() < 1e-12);
        assert!((roots[1].re - (1.0 + s5) / 2.0).abs() < 1e-12);
        assert!(roots.iter().all(|z| z.im == 0.0));
    }

    #[test]
    fn dominant_roots_match_bisection() {
        for n in [3, 5, 8, 13] {
            let roots = find_roots(&fib(n as usize), DEFAULT_TOLERANCE).unwrap();
            let big = roots
                .iter()
                .max_by(|a, b| a.norm().total_cmp(&b.norm()))
                .unwrap();
            let oracle = bisect_fib(n);
            assert!((big.re - oracle).abs() < 1e-10, "n={n}");
            assert!(
                (dominant_root(SequenceFamily::Fibonacci, n as usize).unwrap() - oracle).abs()
                    < 1e-12
            );
        }
        assert!((bisect_fib(5) - 1.965948).abs() < 1e-6);
        assert!((bisect_fib(3) - 1.8392867552).abs() < 1e-10);
    }

    #[test]
    fn dominant_root_rejects_other_families() {
        assert!(matches!(
            dominant_root(SequenceFamily::Padovan, 5),
            Err(Error::UnsupportedFamily { .. })
        ));
        assert!(dominant_root(SequenceFamily::Fibonacci, 1).is_err());
    }

    #[test]
    fn dominant_root_reciprocal_bin() {
        for k in 5..=1000 {
            let r = 1.0 / dominant_root(SequenceFamily::Fibonacci, k).unwrap();
            assert!((0.49..0.51).contains(&r), "k={k} r={r}");
        }
    }

    #[test]
    fn conjugate_pairs_are_exact() {
        for fam in SequenceFamily::ALL {
            for n in fam.min_degree()..=40 {
                let poly = build_char_poly(fam, n).unwrap();
                let roots = find_roots(&poly, DEFAULT_TOLERANCE).unwrap();
                assert_eq!(roots.len(), n);
                for z in &roots {
                    assert!(roots.contains(&z.conj()), "{fam} n={n} {z}");
                }
            }
        }
    }

    #[test]
    fn vieta_sum_and_product() {
        for fam in SequenceFamily::ALL {
            for n in fam.min_degree()..=30 {
                let poly = build_char_poly(fam, n).unwrap();
                let c = poly.to_f64().unwrap();
                let roots = find_roots(&poly, DEFAULT_TOLERANCE).unwrap();
                let sum: Complex64 = roots.iter().sum();
                let prod: Complex64 = roots.iter().product();
                let scale = poly_scale(&c);
                assert!(
                    (sum.re + c[n - 1]).abs() <= 1e-8 * n as f64 * scale,
                    "{fam} n={n}"
                );
                assert!(
                    (prod.norm() - c[0].abs()).abs() <= 1e-8 * n as f64 * c[0].abs().max(1.0),
                    "{fam} n={n}"
                );
            }
        }
    }

    fn poly_scale(c: &[f64]) -> f64 {
        c[c.len() - 2].abs().max(1.0)
    }

    #[test]
    fn single_root_outside_unit_circle() {
        for n in (2..=500).step_by(7).chain([499, 500]) {
            let roots = find_roots(&fib(n), DEFAULT_TOLERANCE).unwrap();
            let outside = roots.iter().filter(|z| z.norm() > 1.0).count();
            assert_eq!(outside, 1, "n={n}");
        }
    }

    #[test]
    fn telescoped_residual_is_small() {
        let tol = DEFAULT_TOLERANCE;
        for n in [10usize, 37, 64] {
            for r in find_roots(&fib(n), tol).unwrap() {
                let v = r.powu(n as u32 + 1) - r.powu(n as u32) * 2.0 + 1.0;
                assert!(v.norm() <= 100.0 * tol * 2f64.powi(n as i32 + 1), "n={n}");
            }
        }
    }

    #[test]
    fn linear_and_invalid_inputs() {
        let s = solve(&[-3.0, 1.0], 1e-12).unwrap();
        assert_eq!(s.roots, vec![Complex64::new(3.0, 0.0)]);
        assert!(matches!(
            solve(&[1.0, 2.0], 1e-12),
            Err(Error::InvalidPolynomial)
        ));
        assert!(solve(&[1.0], 1e-12).is_err());
        assert!(solve(&[-1.0, 0.0, 1.0], 0.0).is_err());
    }

    #[test]
    fn output_sorted() {
        let roots = find_roots(&fib(25), DEFAULT_TOLERANCE).unwrap();
        for w in roots.windows(2) {
            assert_ne!(root_order(&w[0], &w[1]), Ordering::Greater);
        }
    }
}
