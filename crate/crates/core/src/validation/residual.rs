use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::DeformParam;
use crate::polyengine::{g_m, recursion_y, recursion_z, Admissibility, Envelope, Poly, WeightedFunction};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum WorstPoint {
    Line(f64),
    Plane(f64, f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ResidualReport {
    /// Largest residual over the samples, relative to the largest value of
    /// the function the operator acts on (for the 2D checks, `max |psi|`).
    pub max_abs: f64,
    pub sample_points: usize,
    pub worst_point: WorstPoint,
}

/// `(1 + lam z^2) p'' + (lam - 2) z p' + eig p` as a polynomial.
pub fn ode_z_poly<T: Scalar>(p: &Poly<T>, lam: &T, eig: &T) -> Poly<T> {
    let w = Poly::weight_factor(lam);
    let d1 = p.derivative();
    let d2 = d1.derivative();
    let a = &w * &d2;
    let b = d1.shift().scale(&(lam.clone() - T::from_i64(2)));
    &(&a + &b) + &p.scale(eig)
}

/// `(1 + lam y^2) q'' + 2 (lam - G) y q' + eig q` as a polynomial.
pub fn ode_y_poly<T: Scalar>(p: &Poly<T>, lam: &T, g: &T, eig: &T) -> Poly<T> {
    let w = Poly::weight_factor(lam);
    let d1 = p.derivative();
    let d2 = d1.derivative();
    let a = &w * &d2;
    let b = d1.shift().scale(&(T::from_i64(2) * (lam.clone() - g.clone())));
    &(&a + &b) + &p.scale(eig)
}

fn check_samples(sample: &[f64], lam: &DeformParam) -> Result<()> {
    if sample.is_empty() {
        return Err(Error::InvalidArgument("empty sample".into()));
    }
    match sample.iter().find(|&&u| !(lam.w(u) > 0.0)) {
        Some(u) => Err(Error::domain(format!("sample point {u} outside the domain (lambda = {lam})"))),
        None => Ok(()),
    }
}

/// Pointwise evaluation of `sum_k c_k(u) D^k p(u)`, measured against
/// `max |p|` so that a shifted eigenvalue `e + d` shows up as `|d|`.
fn report(sample: &[f64], p: &Poly<f64>, terms: impl Fn(f64) -> [f64; 3]) -> ResidualReport {
    let mut max_res: f64 = 0.0;
    let mut max_p: f64 = 0.0;
    let mut worst = sample[0];
    for &u in sample {
        let t = terms(u);
        let r = (t[0] + t[1] + t[2]).abs();
        if r > max_res {
            max_res = r;
            worst = u;
        }
        max_p = max_p.max(p.evalf(u).abs());
    }
    ResidualReport {
        max_abs: if max_p > 0.0 { max_res / max_p } else { max_res },
        sample_points: sample.len(),
        worst_point: WorstPoint::Line(worst),
    }
}

/// Residual of the Z equation for an arbitrary polynomial and eigenvalue `mu`.
pub fn residual_z_with(p: &Poly<f64>, mu: f64, lam: &DeformParam, sample: &[f64]) -> Result<ResidualReport> {
    check_samples(sample, lam)?;
    let l = lam.lambda();
    let (d1, d2) = (p.derivative(), p.derivative().derivative());
    Ok(report(sample, p, |z| {
        [
            lam.w(z) * d2.evalf(z),
            (l - 2.0) * z * d1.evalf(z),
            (2.0 * mu - 1.0) * p.evalf(z),
        ]
    }))
}

/// Residual of the Y equation for an arbitrary polynomial, `G` and `nu`.
pub fn residual_y_with(
    p: &Poly<f64>,
    g: f64,
    nu: f64,
    lam: &DeformParam,
    sample: &[f64],
) -> Result<ResidualReport> {
    check_samples(sample, lam)?;
    let l = lam.lambda();
    let (d1, d2) = (p.derivative(), p.derivative().derivative());
    Ok(report(sample, p, |y| {
        [
            lam.w(y) * d2.evalf(y),
            2.0 * (l - g) * y * d1.evalf(y),
            (2.0 * nu - g) * p.evalf(y),
        ]
    }))
}

pub fn residual_z(m: usize, lam: &DeformParam, sample: &[f64]) -> Result<ResidualReport> {
    let p = recursion_z::<f64>(m, lam, Admissibility::Strict)?;
    residual_z_with(&p, crate::spectrum::mu(m, lam)?, lam, sample)
}

pub fn residual_y(n: usize, m: usize, lam: &DeformParam, sample: &[f64]) -> Result<ResidualReport> {
    let p = recursion_y::<f64>(n, m, lam, Admissibility::Strict)?;
    let g = crate::spectrum::g_factor(m, lam)?;
    residual_y_with(&p, g, crate::spectrum::nu(n, m, lam)?, lam, sample)
}

/// Express `f = p W^a` with the lower exponent `target` (`a - target` must be
/// a non-negative integer), returning the polynomial in front of `W^target`.
fn lift(f: &WeightedFunction<BigRational>, target: &BigRational) -> Result<Poly<BigRational>> {
    let (lam, a) = match &f.envelope {
        Envelope::Power { lam, a } => (lam, a),
        Envelope::Gaussian { .. } => return Err(Error::InvalidArgument("power envelope required".into())),
    };
    let gap = a - target;
    if !gap.is_integer() || gap < BigRational::from_i64(0) {
        return Err(Error::InvalidArgument(format!("cannot lift exponent {a} to {target}")));
    }
    let steps: usize = gap.to_integer().try_into().map_err(|_| Error::InvalidArgument("gap too large".into()))?;
    let w = Poly::weight_factor(lam);
    Ok((0..steps).fold(f.p.clone(), |acc, _| &acc * &w))
}

/// Exact check that `Psi_inf = (1 + lam y^2)^(-G/(2 lam))` satisfies
/// `[W d^2 + 2 lam y d - G^2 y^2 / W] Psi_inf = -G Psi_inf`.
///
/// Returns the residual polynomial in front of `W^(a - 1)`, which must
/// vanish identically.
pub fn psi_infinity_residual(m: usize, lam: &DeformParam) -> Result<Poly<BigRational>> {
    if lam.is_flat() {
        return Err(Error::domain("the asymptotic factor needs lambda != 0"));
    }
    let l = lam.exact().clone();
    let g: BigRational = g_m(m, lam);
    let a = -(g.clone() / (BigRational::from_i64(2) * l.clone()));
    let base = a.clone() - BigRational::from_i64(1);
    let psi = WeightedFunction::power(Poly::constant(BigRational::from_i64(1)), l.clone(), a);
    let d1 = psi.derivative_raw();
    let d2 = d1.derivative_raw();
    let w = Poly::weight_factor(&l);
    // W psi'' = p2 W^(a-2) W = p2 W^(a-1)
    let t1 = lift(&d2, &(base.clone() - BigRational::from_i64(1)))?;
    let t2 = lift(&d1, &base)?.shift().scale(&(BigRational::from_i64(2) * l.clone()));
    // G^2 y^2 / W psi = G^2 y^2 W^(a-1)
    let t3 = Poly::monomial(g.clone() * g.clone(), 2);
    // + G psi = G W W^(a-1)
    let t4 = w.scale(&g);
    Ok(&(&(&t1 + &t2) - &t3) + &t4)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(v: &str) -> DeformParam {
        DeformParam::from_decimal(v).unwrap()
    }

    fn grid(a: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| -a + 2.0 * a * (i as f64 + 0.5) / n as f64).collect()
    }

    #[test]
    fn z_certificates() {
        let l = lam("-0.3");
        let r = residual_z(2, &l, &grid(1.8, 100)).unwrap();
        assert!(r.max_abs <= 1e-12);
        assert_eq!(r.sample_points, 100);
        let r = residual_z(0, &l, &grid(1.0, 10)).unwrap();
        assert_eq!(r.max_abs, 0.0);
    }

    #[test]
    fn exact_ode_polynomial_vanishes() {
        for v in ["-0.5", "-0.15", "0.15", "0.3"] {
            let l = lam(v);
            let lv = l.exact().clone();
            for m in 0..=6 {
                let Ok(p) = recursion_z::<BigRational>(m, &l, Admissibility::Strict) else { continue };
                let mm = BigRational::from_usize(m);
                let eig = mm.clone() * (BigRational::from_i64(2) - lv.clone() * mm);
                assert!(ode_z_poly(&p, &lv, &eig).is_zero(), "Z m={m} lam={v}");
            }
        }
    }

    #[test]
    fn injected_eigenvalue_is_detected() {
        let l = lam("-0.3");
        let p = recursion_z::<f64>(2, &l, Admissibility::Strict).unwrap();
        let mu = crate::spectrum::mu(2, &l).unwrap() + 0.1;
        let r = residual_z_with(&p, mu, &l, &grid(1.8, 100)).unwrap();
        assert!((r.max_abs - 0.2).abs() < 1e-12);
    }

    #[test]
    fn y_certificates() {
        let l = lam("0.2");
        let r = residual_y(2, 1, &l, &grid(5.0, 100)).unwrap();
        assert!(r.max_abs <= 1e-12);
        let r = residual_y(0, 1, &l, &grid(5.0, 10)).unwrap();
        assert_eq!(r.max_abs, 0.0);
    }

    #[test]
    fn asymptotic_factor_identity() {
        for v in ["-0.3", "0.2", "0.45"] {
            for m in 0..2 {
                assert!(psi_infinity_residual(m, &lam(v)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn samples_outside_domain_are_rejected() {
        assert!(residual_z(1, &lam("-0.25"), &[0.0, 2.5]).is_err());
    }
}
