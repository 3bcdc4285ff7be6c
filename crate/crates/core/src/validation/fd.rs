//! Finite-difference application of the adimensional Hamiltonian and its
//! partial operators. Deliberately independent of the closed forms: only
//! point values of the wavefunction are used.

use serde::Serialize;

use super::residual::{ResidualReport, WorstPoint};
use crate::error::{Error, Result};
use crate::geometry::DeformParam;

/// A scalar field on the plane that may refuse points outside its domain.
pub type Field<'a> = dyn Fn(f64, f64) -> Result<f64> + 'a;

pub const DEFAULT_STEP: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PartialOp {
    H1,
    H2,
    J2,
}

/// Value and derivatives up to second order at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    pub f: f64,
    pub fx: f64,
    pub fy: f64,
    pub fxx: f64,
    pub fyy: f64,
    pub fxy: f64,
}

fn d1(fm2: f64, fm1: f64, fp1: f64, fp2: f64, h: f64) -> f64 {
    (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h)
}

fn d2(fm2: f64, fm1: f64, f0: f64, fp1: f64, fp2: f64, h: f64) -> f64 {
    (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h)
}

/// Five-point stencils per direction, and a Richardson-extrapolated
/// four-point cross stencil.
pub fn jet(psi: &Field<'_>, at: (f64, f64), h: f64) -> Result<Jet> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidArgument(format!("step must be positive, got {h}")));
    }
    let (x, y) = at;
    let f = |dx: f64, dy: f64| psi(x + dx, y + dy);
    let f0 = f(0.0, 0.0)?;
    let (xm2, xm1, xp1, xp2) = (f(-2.0 * h, 0.0)?, f(-h, 0.0)?, f(h, 0.0)?, f(2.0 * h, 0.0)?);
    let (ym2, ym1, yp1, yp2) = (f(0.0, -2.0 * h)?, f(0.0, -h)?, f(0.0, h)?, f(0.0, 2.0 * h)?);
    let cross = |k: f64| -> Result<f64> {
        Ok((f(k, k)? - f(k, -k)? - f(-k, k)? + f(-k, -k)?) / (4.0 * k * k))
    };
    let fxy = (4.0 * cross(h)? - cross(2.0 * h)?) / 3.0;
    Ok(Jet {
        f: f0,
        fx: d1(xm2, xm1, xp1, xp2, h),
        fy: d1(ym2, ym1, yp1, yp2, h),
        fxx: d2(xm2, xm1, f0, xp1, xp2, h),
        fyy: d2(ym2, ym1, f0, yp1, yp2, h),
        fxy,
    })
}

/// `[H1, H2, J2]` applied to the field whose jet is given.
pub fn partials_from_jet(j: &Jet, lam: &DeformParam, at: (f64, f64)) -> Result<[f64; 3]> {
    let (x, y) = at;
    let l = lam.lambda();
    let w = lam.w((x * x + y * y).sqrt());
    if !(w > 0.0) {
        return Err(Error::domain(format!("({x}, {y}) outside 1 + lambda r^2 > 0")));
    }
    let g = 1.0 + l;
    let h1 = -0.5 * (w * j.fxx + l * x * j.fx) + 0.5 * g * x * x / w * j.f;
    let h2 = -0.5 * (w * j.fyy + l * y * j.fy) + 0.5 * g * y * y / w * j.f;
    let j2 = -0.5 * (x * x * j.fyy + y * y * j.fxx - 2.0 * x * y * j.fxy - x * j.fx - y * j.fy);
    Ok([h1, h2, j2])
}

/// `c1 H1 + c2 H2 + c3 J2` applied at one point.
pub fn apply_combination(c: [f64; 3], psi: &Field<'_>, lam: &DeformParam, at: (f64, f64), h: f64) -> Result<f64> {
    let p = partials_from_jet(&jet(psi, at, h)?, lam, at)?;
    Ok(c[0] * p[0] + c[1] * p[1] + c[2] * p[2])
}

pub fn apply_partials_fd(which: PartialOp, psi: &Field<'_>, lam: &DeformParam, at: (f64, f64), h: f64) -> Result<f64> {
    let c = match which {
        PartialOp::H1 => [1.0, 0.0, 0.0],
        PartialOp::H2 => [0.0, 1.0, 0.0],
        PartialOp::J2 => [0.0, 0.0, 1.0],
    };
    apply_combination(c, psi, lam, at, h)
}

/// Full operator `H = H1 + H2 - lam J2`, assembled term by term from the
/// Schrodinger equation rather than from the partial operators.
pub fn apply_h_fd(psi: &Field<'_>, lam: &DeformParam, at: (f64, f64), h: f64) -> Result<f64> {
    let j = jet(psi, at, h)?;
    let (x, y) = at;
    let l = lam.lambda();
    let r2 = x * x + y * y;
    let w = 1.0 + l * r2;
    if !(w > 0.0) {
        return Err(Error::domain(format!("({x}, {y}) outside 1 + lambda r^2 > 0")));
    }
    let kinetic = -0.5 * (w * j.fxx + l * x * j.fx) - 0.5 * (w * j.fyy + l * y * j.fy)
        + 0.5 * l * (x * x * j.fyy + y * y * j.fxx - 2.0 * x * y * j.fxy - x * j.fx - y * j.fy);
    Ok(kinetic + 0.5 * (1.0 + l) * r2 / w * j.f)
}

/// The three pairs of compatible observables, as coefficient vectors over
/// `(H1, H2, J2)`.
pub fn commuting_pairs(lam: &DeformParam) -> [([f64; 3], [f64; 3]); 3] {
    let l = lam.lambda();
    [
        ([1.0, 0.0, 0.0], [0.0, 1.0, -l]),
        ([1.0, 0.0, -l], [0.0, 1.0, 0.0]),
        ([1.0, 1.0, 0.0], [0.0, 0.0, 1.0]),
    ]
}

/// `A(B psi) - B(A psi)` at one point by nested finite differences.
pub fn commutator_fd(
    a: [f64; 3],
    b: [f64; 3],
    psi: &Field<'_>,
    lam: &DeformParam,
    at: (f64, f64),
    h: f64,
) -> Result<f64> {
    let b_psi = |x: f64, y: f64| apply_combination(b, psi, lam, (x, y), h);
    let a_psi = |x: f64, y: f64| apply_combination(a, psi, lam, (x, y), h);
    Ok(apply_combination(a, &b_psi, lam, at, h)? - apply_combination(b, &a_psi, lam, at, h)?)
}

/// Which operator an eigen-consistency check applies.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Operator {
    Full,
    /// Coefficients over `(H1, H2, J2)`.
    Combination([f64; 3]),
}

/// `points x points` square grid on `[-L, L]^2`, `L = min(2, 0.65 a)` on the
/// sphere so the stencils stay well inside the disk.
pub fn interior_grid(lam: &DeformParam, points: usize) -> Vec<(f64, f64)> {
    let half = lam.half_width().map_or(2.0, |a| (0.65 * a).min(2.0));
    let axis: Vec<f64> = match points {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..points)
            .map(|i| -half + 2.0 * half * i as f64 / (points - 1) as f64)
            .collect(),
    };
    axis.iter().flat_map(|&x| axis.iter().map(move |&y| (x, y))).collect()
}

/// `max |A psi - value psi| / max |psi|` over the given points.
pub fn eigen_residual(
    op: Operator,
    psi: &Field<'_>,
    value: f64,
    lam: &DeformParam,
    points: &[(f64, f64)],
    h: f64,
) -> Result<ResidualReport> {
    if points.is_empty() {
        return Err(Error::InvalidArgument("empty sample".into()));
    }
    let mut max_res: f64 = 0.0;
    let mut max_psi: f64 = 0.0;
    let mut worst = points[0];
    for &at in points {
        let applied = match op {
            Operator::Full => apply_h_fd(psi, lam, at, h)?,
            Operator::Combination(c) => apply_combination(c, psi, lam, at, h)?,
        };
        let p = psi(at.0, at.1)?;
        let r = (applied - value * p).abs();
        if r > max_res {
            max_res = r;
            worst = at;
        }
        max_psi = max_psi.max(p.abs());
    }
    Ok(ResidualReport {
        max_abs: if max_psi > 0.0 { max_res / max_psi } else { max_res },
        sample_points: points.len(),
        worst_point: WorstPoint::Plane(worst.0, worst.1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{EigenState, QuantumNumbers};

    fn lam(v: f64) -> DeformParam {
        DeformParam::new(v).unwrap()
    }

    #[test]
    fn flat_ground_state() {
        let g = |x: f64, y: f64| Ok((-(x * x + y * y) / 2.0).exp());
        let at = (0.3, -0.2);
        let v = apply_h_fd(&g, &lam(0.0), at, 1e-3).unwrap();
        assert!((v - g(at.0, at.1).unwrap()).abs() < 1e-7);
    }

    #[test]
    fn excited_state_energy() {
        let l = lam(0.3);
        let s = EigenState::new(QuantumNumbers::new(1, 0), &l).unwrap();
        let psi = |x: f64, y: f64| s.psi(x, y);
        let at = (0.4, 0.7);
        let v = apply_h_fd(&psi, &l, at, 1e-3).unwrap();
        let p = psi(at.0, at.1).unwrap();
        assert!((v - 1.7 * p).abs() < 1e-5 * p.abs().max(1.0));
    }

    #[test]
    fn potential_only_at_origin() {
        let one = |_: f64, _: f64| Ok(1.0);
        for v in [-0.3, 0.0, 0.4] {
            assert!(apply_h_fd(&one, &lam(v), (0.0, 0.0), 1e-3).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn decomposition_is_identity() {
        let l = lam(-0.2);
        let f = |x: f64, y: f64| Ok((0.3 * x - 0.7 * y).sin() * (1.0 + x * y));
        for at in [(0.1, 0.2), (-0.5, 0.9), (1.1, -0.3)] {
            let full = apply_h_fd(&f, &l, at, 1e-3).unwrap();
            let parts = apply_combination([1.0, 1.0, 0.2], &f, &l, at, 1e-3).unwrap();
            assert!((full - parts).abs() < 1e-8);
        }
    }

    #[test]
    fn grid_residual_of_ground_state() {
        let l = lam(-0.3);
        let s = EigenState::new(QuantumNumbers::new(0, 0), &l).unwrap();
        let psi = |x: f64, y: f64| s.psi(x, y);
        let pts = interior_grid(&l, 21);
        assert_eq!(pts.len(), 441);
        let r = eigen_residual(Operator::Full, &psi, 1.0, &l, &pts, 1e-3).unwrap();
        assert!(r.max_abs < 1e-6);
        let off = eigen_residual(Operator::Full, &psi, 1.1, &l, &pts, 1e-3).unwrap();
        assert!(off.max_abs > 0.05);
    }

    #[test]
    fn stencil_outside_domain_fails() {
        let l = lam(-0.25);
        let s = EigenState::new(QuantumNumbers::new(0, 0), &l).unwrap();
        let psi = |x: f64, y: f64| s.psi(x, y);
        assert!(matches!(apply_h_fd(&psi, &l, (1.999, 0.0), 1e-3), Err(Error::Domain(_))));
    }
}
