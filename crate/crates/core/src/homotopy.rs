//! Pointwise deformations of the eigenset toward the main cardioid, a
//! tuned baby cardioid and the period-3 bulb.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jungreis;

fn check_t(t: f64) -> Result<()> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(Error::TOutOfRange(t))
    }
}

/// Argument of `z - center`, or an error when the two coincide.
fn arg_about(z: Complex64, center: Complex64) -> Result<f64> {
    let d = z - center;
    if d.norm_sqr() == 0.0 {
        Err(Error::UndefinedAngle)
    } else {
        Ok(d.arg())
    }
}

pub fn linear_homotopy(p: Complex64, q: Complex64, t: f64) -> Result<Complex64> {
    check_t(t)?;
    Ok(p * (1.0 - t) + q * t)
}

/// Main-cardioid boundary `C(theta) = mu/2 - mu^2/4` with `mu = e^{i theta}`.
pub fn cardioid_param(theta: f64) -> Complex64 {
    let (s1, c1) = theta.sin_cos();
    let (s2, c2) = (2.0 * theta).sin_cos();
    Complex64::new(0.25 * (2.0 * c1 - c2), 0.25 * (2.0 * s1 - s2))
}

/// Points outside radius 0.5 slide toward `C(arg z)`; the rest shrink and
/// shift left. The branch is chosen from `z`, never from the moving image.
pub fn cardioid_homotopy(z: Complex64, t: f64) -> Result<Complex64> {
    check_t(t)?;
    if z.norm() > 0.5 {
        Ok(z * (1.0 - t) + cardioid_param(z.arg()) * t)
    } else {
        Ok(z * (1.0 - 0.5 * t) - t)
    }
}

/// Affine tuning `c -> c' + scale (c - c0)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TuningParams {
    pub c0: Complex64,
    pub c_prime: Complex64,
    pub scale: f64,
}

impl Default for TuningParams {
    fn default() -> Self {
        TuningParams {
            c0: Complex64::new(-0.75, 0.0),
            c_prime: Complex64::new(-0.1575, 1.0325),
            scale: 0.01,
        }
    }
}

impl TuningParams {
    pub fn validate(&self) -> Result<()> {
        if self.scale == 0.0 || !self.scale.is_finite() {
            return Err(Error::InvalidInput(
                "tuning scale must be finite and non-zero".into(),
            ));
        }
        Ok(())
    }
}

pub fn tuning_map(c: Complex64, tp: &TuningParams) -> Complex64 {
    tp.c_prime + (c - tp.c0) * tp.scale
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RotatedCardioidParams {
    pub center: Complex64,
    /// Radians; negative is clockwise.
    pub rotation: f64,
    pub s_start: f64,
    pub s_end: f64,
    /// Place the rotated cardioid at `center`. Off reproduces the bare
    /// formula, whose target sits at the origin.
    pub translate: bool,
}

impl Default for RotatedCardioidParams {
    fn default() -> Self {
        RotatedCardioidParams {
            center: TuningParams::default().c_prime,
            rotation: -PI / 6.0,
            s_start: 0.01,
            s_end: 0.0055,
            translate: true,
        }
    }
}

impl RotatedCardioidParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.s_start > 0.0 && self.s_end > 0.0) {
            return Err(Error::InvalidInput(
                "cardioid scales must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Scale interpolated linearly from `s_start` to `s_end`.
    pub fn scale_at(&self, t: f64) -> f64 {
        (1.0 - t) * self.s_start + t * self.s_end
    }

    /// The rotated, scaled cardioid point the homotopy heads for at time `t`.
    pub fn target(&self, theta: f64, t: f64) -> Complex64 {
        let shape = Complex64::from_polar(self.scale_at(t), self.rotation) * cardioid_param(theta);
        if self.translate {
            self.center + shape
        } else {
            shape
        }
    }
}

pub fn tuned_cardioid_homotopy(
    z: Complex64,
    t: f64,
    rp: &RotatedCardioidParams,
) -> Result<Complex64> {
    check_t(t)?;
    let theta = arg_about(z, rp.center)?;
    Ok(z * (1.0 - t) + rp.target(theta, t) * t)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RadialBulbParams {
    pub center: Complex64,
    pub r0: f64,
    pub r1: f64,
}

impl Default for RadialBulbParams {
    fn default() -> Self {
        RadialBulbParams {
            center: Complex64::new(-0.122, 0.744),
            r0: 0.050,
            r1: 0.093,
        }
    }
}

impl RadialBulbParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.r0 > 0.0 && self.r1 > 0.0) {
            return Err(Error::InvalidInput("bulb radii must be positive".into()));
        }
        Ok(())
    }
}

/// Places `z` on the circle about `center` whose radius runs from `r0` to
/// `r1`, keeping its direction from the centre.
pub fn radial_bulb_homotopy(z: Complex64, t: f64, bp: &RadialBulbParams) -> Result<Complex64> {
    check_t(t)?;
    let theta = arg_about(z, bp.center)?;
    let radius = (1.0 - t) * bp.r0 + t * bp.r1;
    Ok(bp.center + Complex64::from_polar(radius, theta))
}

/// Tolerance for the `y = 0` branches of [`piecewise_scale`].
pub const REAL_AXIS_TOL: f64 = 1e-12;

pub fn piecewise_scale(x: f64, y: f64) -> (f64, f64) {
    let on_axis = y.abs() <= REAL_AXIS_TOL;
    if on_axis && x >= 0.5 {
        ((0.25 / 0.618) * x, y)
    } else if on_axis && x <= -1.0 {
        ((-1.95 / -1.6) * x, y)
    } else {
        (0.7 * x, (0.25 / 0.4) * y)
    }
}

pub fn scale_homotopy(x: f64, y: f64, t: f64) -> Result<(f64, f64)> {
    check_t(t)?;
    let (sx, sy) = piecewise_scale(x, y);
    Ok(((1.0 - t) * x + t * sx, (1.0 - t) * y + t * sy))
}

/// `C(arg z)`: sends a point to the cardioid boundary along its argument.
pub fn boundary_map(z: Complex64) -> Result<Complex64> {
    let theta = arg_about(z, Complex64::new(0.0, 0.0))?;
    Ok(cardioid_param(theta))
}

/// Number of points that share their argument with an earlier, distinct point.
/// Such points land on the same boundary image.
pub fn boundary_collisions(points: &[Complex64]) -> usize {
    let mut keyed: Vec<(u64, Complex64)> = points
        .iter()
        .filter(|z| z.norm_sqr() > 0.0)
        .map(|z| (z.arg().to_bits(), *z))
        .collect();
    keyed.sort_by(|a, b| {
        a.0.cmp(&b.0)
            .then(a.1.re.total_cmp(&b.1.re))
            .then(a.1.im.total_cmp(&b.1.im))
    });
    keyed.dedup_by(|a, b| a.1 == b.1);
    keyed.windows(2).filter(|w| w[0].0 == w[1].0).count()
}

/// Every deformation kind with its parameters, evaluable at any `(z, t)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HomotopySpec {
    /// Straight line from each point to a fixed target.
    Linear {
        target: Complex64,
    },
    Cardioid,
    TunedCardioid(RotatedCardioidParams),
    RadialBulb(RadialBulbParams),
    Scale,
    Jungreis {
        m: usize,
    },
    /// `(1 - t) z + t C(arg z)` for every point.
    Boundary,
}

impl HomotopySpec {
    pub fn name(&self) -> &'static str {
        match self {
            HomotopySpec::Linear { .. } => "linear",
            HomotopySpec::Cardioid => "cardioid",
            HomotopySpec::TunedCardioid(_) => "tuned_cardioid",
            HomotopySpec::RadialBulb(_) => "radial_bulb",
            HomotopySpec::Scale => "scale",
            HomotopySpec::Jungreis { .. } => "jungreis",
            HomotopySpec::Boundary => "boundary",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            HomotopySpec::TunedCardioid(p) => p.validate(),
            HomotopySpec::RadialBulb(p) => p.validate(),
            HomotopySpec::Jungreis { m } if !(1..=jungreis::TERMS).contains(m) => Err(
                Error::InvalidInput(format!("truncation must lie in 1..={}", jungreis::TERMS)),
            ),
            _ => Ok(()),
        }
    }

    pub fn eval(&self, z: Complex64, t: f64) -> Result<Complex64> {
        match self {
            HomotopySpec::Linear { target } => linear_homotopy(z, *target, t),
            HomotopySpec::Cardioid => cardioid_homotopy(z, t),
            HomotopySpec::TunedCardioid(p) => tuned_cardioid_homotopy(z, t, p),
            HomotopySpec::RadialBulb(p) => radial_bulb_homotopy(z, t, p),
            HomotopySpec::Scale => {
                let (x, y) = scale_homotopy(z.re, z.im, t)?;
                Ok(Complex64::new(x, y))
            }
            HomotopySpec::Jungreis { m } => jungreis::jungreis_homotopy(z, t, *m),
            HomotopySpec::Boundary => {
                check_t(t)?;
                Ok(z * (1.0 - t) + boundary_map(z)? * t)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn linear_examples() {
        let (p, q) = (c(1.0, 2.0), c(-3.0, 0.5));
        assert_eq!(linear_homotopy(p, q, 0.0).unwrap(), p);
        assert_eq!(linear_homotopy(p, q, 1.0).unwrap(), q);
        assert_eq!(
            linear_homotopy(c(0.0, 0.0), c(2.0, 0.0), 0.5).unwrap(),
            c(1.0, 0.0)
        );
        assert!(linear_homotopy(p, q, -0.1).is_err());
    }

    #[test]
    fn cardioid_param_examples() {
        assert!(close(cardioid_param(0.0), c(0.25, 0.0), 1e-15));
        assert!(close(cardioid_param(PI), c(-0.75, 0.0), 1e-15));
        assert!(close(cardioid_param(PI / 2.0), c(0.25, 0.5), 1e-15));
        // mu/2 - mu^2/4
        for th in [0.3, 1.7, -2.2] {
            let mu = Complex64::from_polar(1.0, th);
            assert!(close(cardioid_param(th), mu / 2.0 - mu * mu / 4.0, 1e-15));
        }
    }

    #[test]
    fn cardioid_homotopy_examples() {
        for z in [c(0.4, 0.0), c(0.9, -0.3)] {
            assert_eq!(cardioid_homotopy(z, 0.0).unwrap(), z);
        }
        assert!(close(
            cardioid_homotopy(c(0.4, 0.0), 1.0).unwrap(),
            c(-0.8, 0.0),
            1e-15
        ));
        assert!(close(
            cardioid_homotopy(c(0.0, 1.0), 1.0).unwrap(),
            c(0.25, 0.5),
            1e-15
        ));
        assert!(cardioid_homotopy(c(1.0, 0.0), 2.0).is_err());
    }

    #[test]
    fn tuning_examples() {
        let tp = TuningParams::default();
        assert!(close(
            tuning_map(c(-0.75, 0.0), &tp),
            c(-0.1575, 1.0325),
            1e-15
        ));
        assert!(close(
            tuning_map(c(0.25, 0.0), &tp),
            c(-0.1475, 1.0325),
            1e-15
        ));
        let d = tuning_map(tp.c0 + 1.0, &tp) - tuning_map(tp.c0, &tp);
        assert!(close(d, c(0.01, 0.0), 1e-15));
        assert!(TuningParams { scale: 0.0, ..tp }.validate().is_err());
    }

    #[test]
    fn tuned_cardioid_examples() {
        let rp = RotatedCardioidParams::default();
        assert_eq!(rp.scale_at(0.0), 0.01);
        assert_eq!(rp.scale_at(1.0), 0.0055);
        let z = c(0.3, 1.2);
        assert_eq!(tuned_cardioid_homotopy(z, 0.0, &rp).unwrap(), z);
        // theta = 0: z directly to the right of the centre
        let z = rp.center + 0.02;
        let want = rp.center + Complex64::from_polar(0.0055, -PI / 6.0) * 0.25;
        assert!(close(
            tuned_cardioid_homotopy(z, 1.0, &rp).unwrap(),
            want,
            1e-15
        ));
        assert!(matches!(
            tuned_cardioid_homotopy(rp.center, 0.5, &rp),
            Err(Error::UndefinedAngle)
        ));
        let literal = RotatedCardioidParams {
            translate: false,
            ..rp
        };
        let got = tuned_cardioid_homotopy(z, 1.0, &literal).unwrap();
        assert!(close(
            got,
            Complex64::from_polar(0.0055, -PI / 6.0) * 0.25,
            1e-15
        ));
    }

    #[test]
    fn radial_examples() {
        let bp = RadialBulbParams::default();
        let z = bp.center + 0.3;
        assert!(close(
            radial_bulb_homotopy(z, 0.0, &bp).unwrap(),
            bp.center + 0.05,
            1e-15
        ));
        let h = radial_bulb_homotopy(c(2.0, -1.0), 1.0, &bp).unwrap();
        assert!(((h - bp.center).norm() - 0.093).abs() < 1e-15);
        let h = radial_bulb_homotopy(c(2.0, -1.0), 0.5, &bp).unwrap();
        assert!(((h - bp.center).norm() - 0.0715).abs() < 1e-15);
        assert!(radial_bulb_homotopy(bp.center, 0.5, &bp).is_err());
    }

    #[test]
    fn scale_examples() {
        let (x, y) = piecewise_scale(0.618, 0.0);
        assert!((x - 0.25).abs() < 1e-15 && y == 0.0);
        let (x, y) = piecewise_scale(-1.6, 0.0);
        assert!((x + 1.95).abs() < 1e-15 && y == 0.0);
        let (x, y) = piecewise_scale(0.1, 0.4);
        assert!((x - 0.07).abs() < 1e-15 && (y - 0.25).abs() < 1e-15);
        // tiny imaginary parts count as the real axis
        assert!((piecewise_scale(0.618, 1e-13).0 - 0.25).abs() < 1e-15);
        let (x, y) = scale_homotopy(0.618, 0.0, 0.5).unwrap();
        assert!((x - 0.434).abs() < 1e-15 && y == 0.0);
        assert_eq!(scale_homotopy(0.3, 0.2, 0.0).unwrap(), (0.3, 0.2));
        assert!(scale_homotopy(0.3, 0.2, 1.01).is_err());
    }

    #[test]
    fn boundary_examples() {
        assert!(close(
            boundary_map(c(2.0, 0.0)).unwrap(),
            c(0.25, 0.0),
            1e-15
        ));
        assert!(close(
            boundary_map(c(-1.0, 0.0)).unwrap(),
            c(-0.75, 0.0),
            1e-15
        ));
        assert!(close(
            boundary_map(c(0.0, 1.0)).unwrap(),
            c(0.25, 0.5),
            1e-15
        ));
        assert!(matches!(
            boundary_map(c(0.0, 0.0)),
            Err(Error::UndefinedAngle)
        ));
    }

    #[test]
    fn collisions_counted() {
        let pts = [
            c(1.0, 0.0),
            c(2.0, 0.0),
            c(2.0, 0.0),
            c(0.0, 1.0),
            c(-1.0, 0.0),
        ];
        assert_eq!(boundary_collisions(&pts), 1);
        assert_eq!(
            boundary_collisions(&[c(1.0, 1.0), c(3.0, 3.0), c(0.5, 0.5)]),
            2
        );
        assert_eq!(boundary_collisions(&[]), 0);
    }

    #[test]
    fn spec_serializes_with_kind_tag() {
        let spec = HomotopySpec::RadialBulb(RadialBulbParams::default());
        let v = serde_json::to_value(&spec).unwrap();
        assert_eq!(v["kind"], "radial_bulb");
        assert_eq!(v["r1"], 0.093);
        let back: HomotopySpec = serde_json::from_value(v).unwrap();
        assert_eq!(back, spec);
        let tp: TuningParams = serde_json::from_str("{}").unwrap();
        assert_eq!(tp, TuningParams::default());
    }

    proptest! {
        #[test]
        fn conjugation_equivariance(re in -2.0f64..2.0, im in -2.0f64..2.0, t in 0.0f64..=1.0) {
            let z = c(re, im);
            prop_assume!(z.norm() > 1e-9 && im != 0.0);
            prop_assert!(close(cardioid_homotopy(z.conj(), t).unwrap(), cardioid_homotopy(z, t).unwrap().conj(), 1e-15));
            prop_assert!(close(boundary_map(z.conj()).unwrap(), boundary_map(z).unwrap().conj(), 1e-15));
        }

        #[test]
        fn tuning_is_affine(a in 0.0f64..=1.0, r1 in -2.0f64..2.0, i1 in -2.0f64..2.0, r2 in -2.0f64..2.0, i2 in -2.0f64..2.0) {
            let tp = TuningParams::default();
            let (c1, c2) = (c(r1, i1), c(r2, i2));
            let lhs = tuning_map(c1 * a + c2 * (1.0 - a), &tp);
            let rhs = tuning_map(c1, &tp) * a + tuning_map(c2, &tp) * (1.0 - a);
            prop_assert!(close(lhs, rhs, 1e-12));
        }
    }
}
