//! Constant-curvature geometry of the deformed plane.
//!
//! The deformation parameter `lambda` plays the role of minus the Gaussian
//! curvature: `lambda < 0` is the sphere, `lambda = 0` the Euclidean plane,
//! `lambda > 0` the hyperbolic plane. On the sphere everything lives inside
//! the disk `1 + lambda r^2 > 0`; points on or beyond its rim are rejected.

use std::f64::consts::PI;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{parse_decimal, shortest_decimal, Scalar};

/// Below this value of `|kappa| x^2` the kappa-trig functions switch to series.
const SERIES_THRESHOLD: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    Spherical,
    Euclidean,
    Hyperbolic,
}

/// Adimensional deformation parameter.
///
/// Carries both the double value and the exact rational read from its
/// shortest decimal form, so cutoff comparisons such as `m < 1/lambda` do
/// not depend on how `0.3` happens to round.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformParam {
    lambda: f64,
    exact: BigRational,
}

impl DeformParam {
    pub fn new(lambda: f64) -> Result<Self> {
        let exact = shortest_decimal(lambda)
            .ok_or_else(|| Error::InvalidArgument(format!("lambda must be finite, got {lambda}")))?;
        Ok(Self { lambda, exact })
    }

    /// Parse a decimal literal exactly ("0.30", "-1e-3").
    pub fn from_decimal(text: &str) -> Result<Self> {
        let exact = parse_decimal(text)
            .ok_or_else(|| Error::InvalidArgument(format!("not a decimal number: {text:?}")))?;
        Ok(Self::from_exact(exact))
    }

    pub fn from_exact(exact: BigRational) -> Self {
        Self {
            lambda: exact.to_f64(),
            exact,
        }
    }

    pub fn flat() -> Self {
        Self::from_exact(BigRational::zero())
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn exact(&self) -> &BigRational {
        &self.exact
    }

    /// The parameter in the requested coefficient field.
    pub fn value<T: Scalar>(&self) -> T {
        T::from_ratio(&self.exact)
    }

    pub fn regime(&self) -> Regime {
        if self.exact.is_negative() {
            Regime::Spherical
        } else if self.exact.is_zero() {
            Regime::Euclidean
        } else {
            Regime::Hyperbolic
        }
    }

    pub fn is_flat(&self) -> bool {
        self.exact.is_zero()
    }

    /// `a = 1/sqrt(|lambda|)`, present only on the sphere.
    pub fn half_width(&self) -> Option<f64> {
        match self.regime() {
            Regime::Spherical => Some(1.0 / (-self.lambda).sqrt()),
            _ => None,
        }
    }

    pub fn curvature(&self) -> Curvature {
        Curvature { kappa: -self.lambda }
    }

    /// `1 + lambda u^2`, the factor every weight in the library is built from.
    pub fn w(&self, u: f64) -> f64 {
        1.0 + self.lambda * u * u
    }
}

impl fmt::Display for DeformParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.lambda)
    }
}

/// Gaussian curvature, `kappa = -lambda`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Curvature {
    pub kappa: f64,
}

impl Curvature {
    pub fn deform_param(&self) -> Result<DeformParam> {
        DeformParam::new(-self.kappa)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricAtPoint {
    pub g_xx: f64,
    pub g_xy: f64,
    pub g_yy: f64,
}

impl MetricAtPoint {
    pub fn determinant(&self) -> f64 {
        self.g_xx * self.g_yy - self.g_xy * self.g_xy
    }

    /// Quadratic form `g(v, v)`.
    pub fn norm_squared(&self, vx: f64, vy: f64) -> f64 {
        self.g_xx * vx * vx + 2.0 * self.g_xy * vx * vy + self.g_yy * vy * vy
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrigKind {
    Cos,
    Sin,
    Tan,
}

/// Curvature-labelled trigonometric functions `Cos_k`, `Sin_k`, `Tan_k`.
pub fn ktrig(kind: TrigKind, kappa: f64, x: f64) -> Result<f64> {
    match kind {
        TrigKind::Cos => Ok(kcos(kappa, x)),
        TrigKind::Sin => Ok(ksin(kappa, x)),
        TrigKind::Tan => {
            let c = kcos(kappa, x);
            if c == 0.0 || (kappa > 0.0 && is_equator(kappa, x)) {
                return Err(Error::domain(format!(
                    "Tan_kappa undefined at x = {x} (kappa = {kappa}): Cos_kappa vanishes"
                )));
            }
            Ok(ksin(kappa, x) / c)
        }
    }
}

fn is_equator(kappa: f64, x: f64) -> bool {
    let phase = kappa.sqrt() * x - PI / 2.0;
    (phase / PI - (phase / PI).round()).abs() < 1e-15
}

fn kcos(kappa: f64, x: f64) -> f64 {
    let t = kappa * x * x;
    if t.abs() < SERIES_THRESHOLD {
        1.0 - t / 2.0 + t * t / 24.0
    } else if kappa > 0.0 {
        (kappa.sqrt() * x).cos()
    } else {
        ((-kappa).sqrt() * x).cosh()
    }
}

fn ksin(kappa: f64, x: f64) -> f64 {
    let t = kappa * x * x;
    if t.abs() < SERIES_THRESHOLD {
        x * (1.0 - t / 6.0 + t * t / 120.0)
    } else if kappa > 0.0 {
        let s = kappa.sqrt();
        (s * x).sin() / s
    } else {
        let s = (-kappa).sqrt();
        (s * x).sinh() / s
    }
}

fn check_chart(r_geo: f64, kappa: f64) -> Result<()> {
    if !(r_geo >= 0.0) {
        return Err(Error::domain(format!("geodesic radius must be >= 0, got {r_geo}")));
    }
    if kappa > 0.0 && kappa.sqrt() * r_geo >= PI {
        return Err(Error::domain(format!(
            "R = {r_geo} outside the geodesic polar chart (sqrt(kappa) R < pi)"
        )));
    }
    Ok(())
}

/// Geodesic polar `(R, Phi)` to the radial variable `r = Sin_k(R)` of the
/// deformed plane.
pub fn geodesic_polar_to_lambda(r_geo: f64, phi: f64, kappa: f64) -> Result<(f64, f64)> {
    check_chart(r_geo, kappa)?;
    Ok((ksin(kappa, r_geo), phi))
}

/// Gnomonic radial variable `r' = Tan_k(R)`.
pub fn gnomonic_to_lambda(r_geo: f64, kappa: f64) -> Result<f64> {
    check_chart(r_geo, kappa)?;
    ktrig(TrigKind::Tan, kappa, r_geo)
}

fn interior(x: f64, y: f64, lam: &DeformParam) -> Result<f64> {
    let w = lam.w((x * x + y * y).sqrt());
    if !(w > 0.0) {
        return Err(Error::domain(format!(
            "point ({x}, {y}) on or beyond the singular circle 1 + lambda r^2 = 0 (lambda = {lam})"
        )));
    }
    Ok(w)
}

pub fn metric_at(x: f64, y: f64, lam: &DeformParam) -> Result<MetricAtPoint> {
    let w = interior(x, y, lam)?;
    let l = lam.lambda();
    Ok(MetricAtPoint {
        g_xx: (1.0 + l * y * y) / w,
        g_xy: -l * x * y / w,
        g_yy: (1.0 + l * x * x) / w,
    })
}

/// Density of the invariant measure, `1/sqrt(1 + lambda r^2)`.
pub fn measure_density(x: f64, y: f64, lam: &DeformParam) -> Result<f64> {
    Ok(1.0 / interior(x, y, lam)?.sqrt())
}

/// The three Killing fields `X1`, `X2`, `XJ` in the `(x, y)` coordinate basis.
pub fn killing_fields(x: f64, y: f64, lam: &DeformParam) -> Result<[[f64; 2]; 3]> {
    let s = interior(x, y, lam)?.sqrt();
    Ok([[s, 0.0], [0.0, s], [-y, x]])
}

pub fn potential(x: f64, y: f64, lam: &DeformParam, alpha: f64) -> Result<f64> {
    let w = interior(x, y, lam)?;
    Ok(0.5 * alpha * alpha * (x * x + y * y) / w)
}

/// Oscillator Lagrangian on the constant-curvature surface in geodesic
/// polar coordinates.
pub fn lagrangian_geodesic(r_geo: f64, v_r: f64, v_phi: f64, kappa: f64, alpha: f64) -> Result<f64> {
    check_chart(r_geo, kappa)?;
    let s = ksin(kappa, r_geo);
    let t = ktrig(TrigKind::Tan, kappa, r_geo)?;
    Ok(0.5 * (v_r * v_r + s * s * v_phi * v_phi) - 0.5 * alpha * alpha * t * t)
}

/// Lagrangian of the deformed oscillator in Cartesian coordinates.
pub fn lagrangian_cartesian(x: f64, y: f64, vx: f64, vy: f64, lam: &DeformParam, alpha: f64) -> Result<f64> {
    let w = interior(x, y, lam)?;
    let j = x * vy - y * vx;
    let kinetic = 0.5 * (vx * vx + vy * vy + lam.lambda() * j * j) / w;
    Ok(kinetic - 0.5 * alpha * alpha * (x * x + y * y) / w)
}

/// Push a geodesic-polar phase point `(R, Phi, dR, dPhi)` to Cartesian
/// `(x, y, vx, vy)` through `r = Sin_k(R)`.
pub fn pushforward_polar(r_geo: f64, phi: f64, v_r: f64, v_phi: f64, kappa: f64) -> Result<[f64; 4]> {
    let (r, phi) = geodesic_polar_to_lambda(r_geo, phi, kappa)?;
    let dr = kcos(kappa, r_geo) * v_r;
    let (s, c) = phi.sin_cos();
    Ok([
        r * c,
        r * s,
        dr * c - r * s * v_phi,
        dr * s + r * c * v_phi,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(v: f64) -> DeformParam {
        DeformParam::new(v).unwrap()
    }

    #[test]
    fn regimes_and_half_width() {
        assert_eq!(lam(-0.25).regime(), Regime::Spherical);
        assert_eq!(lam(-0.25).half_width(), Some(2.0));
        assert_eq!(lam(0.0).regime(), Regime::Euclidean);
        assert_eq!(lam(0.0).half_width(), None);
        assert_eq!(lam(0.3).regime(), Regime::Hyperbolic);
        assert_eq!(lam(0.3).curvature().kappa, -0.3);
        assert!(DeformParam::new(f64::NAN).is_err());
        assert_eq!(DeformParam::from_decimal("-0.30").unwrap(), lam(-0.3));
    }

    #[test]
    fn ktrig_examples() {
        assert_eq!(ktrig(TrigKind::Sin, 0.0, 2.5).unwrap(), 2.5);
        assert_eq!(ktrig(TrigKind::Cos, 1.0, 0.0).unwrap(), 1.0);
        let s = ktrig(TrigKind::Sin, -1.0, 1.0).unwrap();
        assert!((s - 1.1752011936438014).abs() < 1e-15);
        assert!(ktrig(TrigKind::Tan, 1.0, PI / 2.0).is_err());
    }

    #[test]
    fn ktrig_is_continuous_at_flat_limit() {
        for &x in &[0.0, 0.3, 1.0, 2.5, 7.0] {
            for &k in &[1e-8, -1e-8] {
                let s = ktrig(TrigKind::Sin, k, x).unwrap();
                assert!((s - x).abs() <= 1e-8 * (1.0 + x * x * x), "k={k} x={x}");
            }
        }
        // Series and closed form agree on both sides of the switch.
        let x = 1.0;
        for k in [0.99e-6f64, 1.01e-6] {
            let closed = (k.sqrt() * x).sin() / k.sqrt();
            assert!((ksin(k, x) - closed).abs() < 1e-14);
            assert!((kcos(k, x) - (k.sqrt() * x).cos()).abs() < 1e-14);
        }
    }

    #[test]
    fn chart_maps() {
        assert_eq!(geodesic_polar_to_lambda(0.7, 1.0, 0.0).unwrap(), (0.7, 1.0));
        let (r, p) = geodesic_polar_to_lambda(PI / 2.0, 0.0, 1.0).unwrap();
        assert!((r - 1.0).abs() < 1e-15 && p == 0.0);
        let (r, p) = geodesic_polar_to_lambda(1.0, 2.0, -1.0).unwrap();
        assert!((r - 1f64.sinh()).abs() < 1e-15 && p == 2.0);
        assert!(geodesic_polar_to_lambda(3.2, 0.0, 1.0).is_err());
        assert!(geodesic_polar_to_lambda(-0.1, 0.0, 1.0).is_err());

        assert_eq!(gnomonic_to_lambda(0.4, 0.0).unwrap(), 0.4);
        assert!((gnomonic_to_lambda(PI / 4.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((gnomonic_to_lambda(1.0, -1.0).unwrap() - 0.7615941559557649).abs() < 1e-15);
        assert!(gnomonic_to_lambda(PI / 2.0, 1.0).is_err());
    }

    #[test]
    fn metric_examples() {
        let g = metric_at(0.0, 0.0, &lam(0.7)).unwrap();
        assert_eq!((g.g_xx, g.g_xy, g.g_yy), (1.0, 0.0, 1.0));
        let g = metric_at(1.3, -0.4, &lam(0.0)).unwrap();
        assert_eq!((g.g_xx, g.g_xy, g.g_yy), (1.0, 0.0, 1.0));
        let g = metric_at(1.0, 0.0, &lam(0.5)).unwrap();
        assert!((g.g_xx - 1.0 / 1.5).abs() < 1e-15);
        assert!((g.g_yy - 1.0).abs() < 1e-15);
        assert_eq!(g.g_xy, 0.0);
        assert!(metric_at(2.0, 0.0, &lam(-0.25)).is_err());
        assert!(metric_at(3.0, 0.0, &lam(-0.25)).is_err());
    }

    #[test]
    fn measure_and_killing_examples() {
        assert_eq!(measure_density(0.0, 0.0, &lam(-0.3)).unwrap(), 1.0);
        assert!((measure_density(1.0, 1.0, &lam(0.5)).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(measure_density(3.0, -2.0, &lam(0.0)).unwrap(), 1.0);

        let k = killing_fields(0.0, 0.0, &lam(0.4)).unwrap();
        assert_eq!(k, [[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]]);
        let k = killing_fields(1.0, 0.0, &lam(0.5)).unwrap();
        assert!((k[0][0] - 1.5f64.sqrt()).abs() < 1e-15);
        let k = killing_fields(0.3, -0.8, &lam(0.0)).unwrap();
        assert_eq!(k, [[1.0, 0.0], [0.0, 1.0], [0.8, 0.3]]);
    }

    #[test]
    fn potential_examples() {
        assert_eq!(potential(0.0, 0.0, &lam(0.2), 1.3).unwrap(), 0.0);
        assert!((potential(1.0, 0.0, &lam(1.0), 1.0).unwrap() - 0.25).abs() < 1e-15);
        let far = potential(1e8, 0.0, &lam(0.5), 2.0).unwrap();
        assert!((far - 4.0).abs() < 1e-6);
        assert!(potential(2.0, 0.0, &lam(-0.25), 1.0).is_err());
    }

    #[test]
    fn pushforward_preserves_lagrangian_sample() {
        let kappa = 0.6;
        let lam = lam(-0.6);
        let [x, y, vx, vy] = pushforward_polar(0.9, 0.4, 0.3, -1.1, kappa).unwrap();
        let a = lagrangian_geodesic(0.9, 0.3, -1.1, kappa, 1.2).unwrap();
        let b = lagrangian_cartesian(x, y, vx, vy, &lam, 1.2).unwrap();
        assert!((a - b).abs() < 1e-13 * a.abs().max(1.0));
    }
}
