//! Grid discretisation of the two self-adjoint problems
//! `(A p')' + (2 mu - 1) r p = 0` and `(B q')' + (2 nu - G) r q = 0`.
//!
//! Nodes sit at cell centres and fluxes at cell faces, with the face
//! coefficient taken as the mean of its two neighbours and zero flux through
//! the outer faces. Boundedness at the ends is then enforced by the
//! degenerate coefficient itself.

use serde::Serialize;

use super::tridiag::lowest_eigenvalues;
use crate::error::{Error, Result};
use crate::geometry::{DeformParam, Regime};
use crate::quadrature::{domain_for, Domain};
use crate::spectrum::{g_factor, n_count, z_admissible};

pub const MIN_POINTS: usize = 16;
/// Half-width of the truncated flat-space grid; `exp(-u^2)` is below 1e-27 there.
const FLAT_HALF_WIDTH: f64 = 8.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SlProblem {
    Z,
    Y { m: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Scheme {
    Uniform,
    /// Uniform in `theta` with `u = tan(theta) / sqrt(lam)`.
    Mapped,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GridSpec {
    pub points: usize,
    pub domain: Domain,
    pub scheme: Scheme,
}

impl GridSpec {
    /// Uniform on the chart for `lam <= 0`, mapped on the hyperbolic line.
    pub fn for_lambda(lam: &DeformParam, points: usize) -> Self {
        let scheme = match lam.regime() {
            Regime::Hyperbolic => Scheme::Mapped,
            _ => Scheme::Uniform,
        };
        GridSpec {
            points,
            domain: domain_for(lam),
            scheme,
        }
    }
}

struct Coefficients {
    /// Flux coefficient at the nodes.
    a: Vec<f64>,
    /// Weight at the nodes.
    r: Vec<f64>,
    h: f64,
}

fn exponents(problem: SlProblem, lam: &DeformParam) -> Result<(f64, f64, f64)> {
    let l = lam.lambda();
    match problem {
        SlProblem::Z => Ok((0.5 - 1.0 / l, -0.5 - 1.0 / l, 1.0)),
        SlProblem::Y { m } => {
            let g = g_factor(m, lam)?;
            Ok((1.0 - g / l, -g / l, g))
        }
    }
}

fn assemble(problem: SlProblem, lam: &DeformParam, grid: &GridSpec) -> Result<Coefficients> {
    let n = grid.points;
    let nodes = |lo: f64, hi: f64| -> (Vec<f64>, f64) {
        let h = (hi - lo) / n as f64;
        ((0..n).map(|i| lo + (i as f64 + 0.5) * h).collect(), h)
    };
    match (lam.regime(), grid.scheme, grid.domain) {
        (Regime::Euclidean, Scheme::Uniform, _) => {
            if let SlProblem::Y { m } = problem {
                g_factor(m, lam)?;
            }
            let (u, h) = nodes(-FLAT_HALF_WIDTH, FLAT_HALF_WIDTH);
            let a: Vec<f64> = u.iter().map(|u| (-u * u).exp()).collect();
            Ok(Coefficients { r: a.clone(), a, h })
        }
        (Regime::Spherical, Scheme::Uniform, Domain::FiniteSymmetric(half)) => {
            let (pa, pr, _) = exponents(problem, lam)?;
            let (u, h) = nodes(-half, half);
            let w: Vec<f64> = u.iter().map(|&u| lam.w(u)).collect();
            Ok(Coefficients {
                a: w.iter().map(|w| w.powf(pa)).collect(),
                r: w.iter().map(|w| w.powf(pr)).collect(),
                h,
            })
        }
        (Regime::Hyperbolic, Scheme::Mapped, Domain::RealLine { .. }) => {
            let (pa, pr, _) = exponents(problem, lam)?;
            let sl = lam.lambda().sqrt();
            let half = std::f64::consts::FRAC_PI_2;
            let (theta, h) = nodes(-half, half);
            // W = sec^2(theta) and du/dtheta = W / sqrt(lam).
            let w: Vec<f64> = theta.iter().map(|t| 1.0 / (t.cos() * t.cos())).collect();
            Ok(Coefficients {
                a: w.iter().map(|w| w.powf(pa - 1.0) * sl).collect(),
                r: w.iter().map(|w| w.powf(pr + 1.0) / sl).collect(),
                h,
            })
        }
        (regime, scheme, domain) => Err(Error::InvalidArgument(format!(
            "grid {scheme:?} on {domain:?} does not fit the {regime:?} regime"
        ))),
    }
}

fn admissible_count(problem: SlProblem, lam: &DeformParam) -> Option<usize> {
    match problem {
        SlProblem::Z => {
            if lam.regime() != Regime::Hyperbolic {
                return None;
            }
            Some((0..).take_while(|&m| z_admissible(m, lam)).count())
        }
        SlProblem::Y { m } => n_count(m, lam),
    }
}

/// Lowest `count` eigenvalues, returned as `mu_m` for the Z problem and as
/// `nu_n` for the Y problem.
pub fn sl_grid_eigen(problem: SlProblem, lam: &DeformParam, count: usize, grid: &GridSpec) -> Result<Vec<f64>> {
    if let Some(limit) = admissible_count(problem, lam) {
        if count > limit {
            return Err(Error::admissibility(format!(
                "{problem:?} has only {limit} bound eigenvalues at lambda = {lam}, asked for {count}"
            )));
        }
    }
    if grid.points < MIN_POINTS || grid.points < 8 * (count + 1) {
        return Err(Error::accuracy(format!(
            "{} grid points cannot resolve {count} eigenvalues (need at least {})",
            grid.points,
            MIN_POINTS.max(8 * (count + 1))
        )));
    }
    let c = assemble(problem, lam, grid)?;
    let n = grid.points;
    let h2 = c.h * c.h;
    let face: Vec<f64> = (0..n - 1).map(|i| 0.5 * (c.a[i] + c.a[i + 1])).collect();
    let d: Vec<f64> = (0..n)
        .map(|i| {
            let left = if i > 0 { face[i - 1] } else { 0.0 };
            let right = if i + 1 < n { face[i] } else { 0.0 };
            (left + right) / (h2 * c.r[i])
        })
        .collect();
    let e: Vec<f64> = (0..n - 1).map(|i| -face[i] / (h2 * (c.r[i] * c.r[i + 1]).sqrt())).collect();
    if d.iter().chain(&e).any(|v| !v.is_finite()) {
        return Err(Error::accuracy(format!("grid coefficients overflow at lambda = {lam}")));
    }
    let shift = match problem {
        SlProblem::Z => 1.0,
        SlProblem::Y { .. } => exponents(problem, lam).map(|t| t.2).unwrap_or(1.0),
    };
    Ok(lowest_eigenvalues(&d, &e, count)?
        .into_iter()
        .map(|v| 0.5 * (v + shift))
        .collect())
}
