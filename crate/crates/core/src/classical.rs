//! Classical motion of the deformed oscillator: Euler-Lagrange integration,
//! conserved quantities and the amplitude-frequency relation.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::DeformParam;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct ClassicalState {
    pub x: f64,
    pub y: f64,
    pub vx: f64,
    pub vy: f64,
}

impl ClassicalState {
    pub fn new(x: f64, y: f64, vx: f64, vy: f64) -> Self {
        Self { x, y, vx, vy }
    }

    pub fn r2(&self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    /// Angular momentum `x vy - y vx`.
    pub fn j(&self) -> f64 {
        self.x * self.vy - self.y * self.vx
    }

    fn axpy(&self, h: f64, d: &[f64; 4]) -> Self {
        Self::new(self.x + h * d[0], self.y + h * d[1], self.vx + h * d[2], self.vy + h * d[3])
    }

    fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.vx.is_finite() && self.vy.is_finite()
    }
}

/// Uniformly sampled solution together with the parameters that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<ClassicalState>,
    pub step: f64,
    pub lambda: f64,
    pub alpha: f64,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Largest `|H(t) - H(0)| / |H(0)|` along the run.
    pub fn energy_drift(&self) -> Result<f64> {
        let lam = DeformParam::new(self.lambda)?;
        let h0 = hamiltonian_energy(&self.states[0], &lam, self.alpha)?;
        let mut worst: f64 = 0.0;
        for s in &self.states {
            let h = hamiltonian_energy(s, &lam, self.alpha)?;
            worst = worst.max((h - h0).abs() / h0.abs());
        }
        Ok(worst)
    }

    /// Largest `|J(t) - J(0)|` along the run.
    pub fn angular_momentum_drift(&self) -> f64 {
        let j0 = self.states[0].j();
        self.states.iter().map(|s| (s.j() - j0).abs()).fold(0.0, f64::max)
    }

    /// CSV with columns `t,x,y,vx,vy,H,J`.
    pub fn to_csv(&self) -> Result<String> {
        let lam = DeformParam::new(self.lambda)?;
        let mut out = String::from("t,x,y,vx,vy,H,J\n");
        for (t, s) in self.times.iter().zip(&self.states) {
            let h = hamiltonian_energy(s, &lam, self.alpha)?;
            out.push_str(&format!(
                "{t},{},{},{},{},{h},{}\n",
                s.x,
                s.y,
                s.vx,
                s.vy,
                s.j()
            ));
        }
        Ok(out)
    }
}

fn w_at(s: &ClassicalState, lam: &DeformParam) -> Result<f64> {
    let w = 1.0 + lam.lambda() * s.r2();
    if w > 0.0 && s.is_finite() {
        Ok(w)
    } else {
        Err(Error::domain(format!(
            "state ({}, {}) outside 1 + lambda r^2 > 0 (lambda = {lam})",
            s.x, s.y
        )))
    }
}

/// Accelerations from the Euler-Lagrange equations,
/// `a = (lam [v^2 + lam J^2] - alpha^2) q / (1 + lam r^2)`.
pub fn el_acceleration(s: &ClassicalState, lam: &DeformParam, alpha: f64) -> Result<(f64, f64)> {
    let w = w_at(s, lam)?;
    let l = lam.lambda();
    let j = s.j();
    let v2 = s.vx * s.vx + s.vy * s.vy;
    let c = (l * (v2 + l * j * j) - alpha * alpha) / w;
    Ok((c * s.x, c * s.y))
}

fn rhs(s: &ClassicalState, lam: &DeformParam, alpha: f64) -> Result<[f64; 4]> {
    let (ax, ay) = el_acceleration(s, lam, alpha)?;
    Ok([s.vx, s.vy, ax, ay])
}

fn rk4_step(s: &ClassicalState, lam: &DeformParam, alpha: f64, dt: f64) -> Result<ClassicalState> {
    let k1 = rhs(s, lam, alpha)?;
    let k2 = rhs(&s.axpy(0.5 * dt, &k1), lam, alpha)?;
    let k3 = rhs(&s.axpy(0.5 * dt, &k2), lam, alpha)?;
    let k4 = rhs(&s.axpy(dt, &k3), lam, alpha)?;
    let mut d = [0.0; 4];
    for i in 0..4 {
        d[i] = (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) / 6.0;
    }
    let next = s.axpy(dt, &d);
    w_at(&next, lam)?;
    Ok(next)
}

/// Fixed-step classical Runge-Kutta integration for `steps` steps.
///
/// Leaving the region `1 + lam r^2 > 0` aborts with
/// [`Error::TrajectoryExit`], which carries everything computed so far.
pub fn integrate_trajectory(
    s0: ClassicalState,
    lam: &DeformParam,
    alpha: f64,
    dt: f64,
    steps: usize,
) -> Result<Trajectory> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidArgument(format!("dt must be positive, got {dt}")));
    }
    w_at(&s0, lam)?;
    let mut traj = Trajectory {
        times: Vec::with_capacity(steps + 1),
        states: Vec::with_capacity(steps + 1),
        step: dt,
        lambda: lam.lambda(),
        alpha,
    };
    traj.times.push(0.0);
    traj.states.push(s0);
    let mut s = s0;
    for i in 1..=steps {
        s = match rk4_step(&s, lam, alpha, dt) {
            Ok(next) => next,
            Err(_) => {
                return Err(Error::TrajectoryExit {
                    index: i,
                    partial: Box::new(traj),
                })
            }
        };
        traj.times.push(i as f64 * dt);
        traj.states.push(s);
    }
    Ok(traj)
}

/// Noether momenta `(P1, P2, J)` of the three Killing symmetries.
pub fn noether_momenta(s: &ClassicalState, lam: &DeformParam) -> Result<(f64, f64, f64)> {
    let root = w_at(s, lam)?.sqrt();
    let l = lam.lambda();
    let j = s.j();
    Ok(((s.vx - l * j * s.y) / root, (s.vy + l * j * s.x) / root, j))
}

/// Canonical momenta from the Legendre map.
pub fn canonical_momenta(s: &ClassicalState, lam: &DeformParam) -> Result<(f64, f64)> {
    let w = w_at(s, lam)?;
    let l = lam.lambda();
    let j = s.j();
    Ok(((s.vx - l * j * s.y) / w, (s.vy + l * j * s.x) / w))
}

/// `H = (1/2)[p^2 + lam (q.p)^2] + alpha^2 r^2 / (2 (1 + lam r^2))` on the Legendre image.
pub fn hamiltonian_energy(s: &ClassicalState, lam: &DeformParam, alpha: f64) -> Result<f64> {
    let w = w_at(s, lam)?;
    let (px, py) = canonical_momenta(s, lam)?;
    let qp = s.x * px + s.y * py;
    let kinetic = 0.5 * (px * px + py * py + lam.lambda() * qp * qp);
    Ok(kinetic + 0.5 * alpha * alpha * s.r2() / w)
}

/// `T + V` from the Lagrangian side.
pub fn lagrangian_energy(s: &ClassicalState, lam: &DeformParam, alpha: f64) -> Result<f64> {
    let w = w_at(s, lam)?;
    let j = s.j();
    let v2 = s.vx * s.vx + s.vy * s.vy;
    Ok(0.5 * (v2 + lam.lambda() * j * j) / w + 0.5 * alpha * alpha * s.r2() / w)
}

/// Value and slope of the cubic Hermite interpolant on `[0, h]` at `t`.
fn hermite(p0: f64, m0: f64, p1: f64, m1: f64, h: f64, t: f64) -> (f64, f64) {
    let s = t / h;
    let (s2, s3) = (s * s, s * s * s);
    let value = (2.0 * s3 - 3.0 * s2 + 1.0) * p0
        + (s3 - 2.0 * s2 + s) * h * m0
        + (-2.0 * s3 + 3.0 * s2) * p1
        + (s3 - s2) * h * m1;
    let slope = ((6.0 * s2 - 6.0 * s) * p0 + (3.0 * s2 - 4.0 * s + 1.0) * h * m0 + (-6.0 * s2 + 6.0 * s) * p1)
        / h
        + (3.0 * s2 - 2.0 * s) * m1;
    (value, slope)
}

/// Root of `g` on `[0, h]` given a sign change, by bisection.
fn bisect(g: impl Fn(f64) -> f64, h: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, h);
    let g_lo = g(lo);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (g(mid) > 0.0) == (g_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Upward zero crossings of a sampled signal with known derivative.
fn upward_crossings(t: &[f64], x: &[f64], v: &[f64]) -> Vec<f64> {
    let mut out = Vec::new();
    for i in 0..x.len().saturating_sub(1) {
        if x[i] < 0.0 && x[i + 1] >= 0.0 {
            let h = t[i + 1] - t[i];
            let tau = bisect(|s| hermite(x[i], v[i], x[i + 1], v[i + 1], h, s).0, h);
            out.push(t[i] + tau);
        }
    }
    out
}

/// Refined extrema of `|x|`, located where the interpolated velocity changes sign.
fn turning_values(t: &[f64], x: &[f64], v: &[f64], a: &[f64]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for i in 0..x.len().saturating_sub(1) {
        if (v[i] > 0.0) != (v[i + 1] > 0.0) {
            let h = t[i + 1] - t[i];
            let tau = bisect(|s| hermite(v[i], a[i], v[i + 1], a[i + 1], h, s).0, h);
            let xv = hermite(x[i], v[i], x[i + 1], v[i + 1], h, tau).0;
            out.push((t[i] + tau, xv.abs()));
        }
    }
    out
}

fn period_from(crossings: &[f64]) -> Result<f64> {
    if crossings.len() < 2 {
        return Err(Error::Fit(format!(
            "need at least two upward zero crossings, found {}",
            crossings.len()
        )));
    }
    Ok((crossings[crossings.len() - 1] - crossings[0]) / (crossings.len() - 1) as f64)
}

/// Amplitude and angular frequency of a bounded motion along the x-axis.
pub fn fit_oscillation_1d(traj: &Trajectory) -> Result<(f64, f64)> {
    if traj.states.iter().any(|s| s.y != 0.0 || s.vy != 0.0) {
        return Err(Error::Fit("trajectory is not confined to y = 0".into()));
    }
    let lam = DeformParam::new(traj.lambda)?;
    let x: Vec<f64> = traj.states.iter().map(|s| s.x).collect();
    let v: Vec<f64> = traj.states.iter().map(|s| s.vx).collect();
    let a = traj
        .states
        .iter()
        .map(|s| el_acceleration(s, &lam, traj.alpha).map(|(ax, _)| ax))
        .collect::<Result<Vec<_>>>()?;
    let crossings = upward_crossings(&traj.times, &x, &v);
    let period = period_from(&crossings)?;
    let (t0, t1) = (crossings[0], crossings[0] + period);
    let amplitude = turning_values(&traj.times, &x, &v, &a)
        .into_iter()
        .filter(|(t, _)| *t >= t0 && *t <= t1)
        .map(|(_, a)| a)
        .fold(f64::NAN, f64::max);
    if !amplitude.is_finite() {
        return Err(Error::Fit("no turning point inside the first period".into()));
    }
    Ok((amplitude, TAU / period))
}

/// Shared-frequency sinusoidal fit `x = A sin(w t + p1)`, `y = B sin(w t + p2)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuasiHarmonicFit {
    pub omega: f64,
    pub a: f64,
    pub phi1: f64,
    pub b: f64,
    pub phi2: f64,
    /// Largest pointwise deviation divided by `max(A, B)`.
    pub relative_residual: f64,
}

/// Least-squares amplitude and phase of `c sin(w t) + d cos(w t)`.
fn sinusoid(t: &[f64], u: &[f64], omega: f64) -> (f64, f64) {
    let (mut ss, mut sc, mut cc, mut us, mut uc) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (&ti, &ui) in t.iter().zip(u) {
        let (s, c) = (omega * ti).sin_cos();
        ss += s * s;
        sc += s * c;
        cc += c * c;
        us += ui * s;
        uc += ui * c;
    }
    let det = ss * cc - sc * sc;
    let c1 = (us * cc - uc * sc) / det;
    let c2 = (uc * ss - us * sc) / det;
    // c1 sin + c2 cos = A sin(w t + phi) with A cos(phi) = c1, A sin(phi) = c2
    (c1.hypot(c2), c2.atan2(c1))
}

pub fn fit_quasi_harmonic(traj: &Trajectory) -> Result<QuasiHarmonicFit> {
    let t = &traj.times;
    let x: Vec<f64> = traj.states.iter().map(|s| s.x).collect();
    let y: Vec<f64> = traj.states.iter().map(|s| s.y).collect();
    let vx: Vec<f64> = traj.states.iter().map(|s| s.vx).collect();
    let vy: Vec<f64> = traj.states.iter().map(|s| s.vy).collect();
    let (u, v) = if x.iter().map(|a| a.abs()).fold(0.0, f64::max) >= y.iter().map(|a| a.abs()).fold(0.0, f64::max) {
        (&x, &vx)
    } else {
        (&y, &vy)
    };
    let omega = TAU / period_from(&upward_crossings(t, u, v))?;
    let (a, phi1) = sinusoid(t, &x, omega);
    let (b, phi2) = sinusoid(t, &y, omega);
    let scale = a.max(b);
    let residual = t
        .iter()
        .zip(x.iter().zip(&y))
        .map(|(&ti, (&xi, &yi))| {
            let dx = xi - a * (omega * ti + phi1).sin();
            let dy = yi - b * (omega * ti + phi2).sin();
            dx.abs().max(dy.abs())
        })
        .fold(0.0, f64::max);
    Ok(QuasiHarmonicFit {
        omega,
        a,
        phi1,
        b,
        phi2,
        relative_residual: residual / scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(v: f64) -> DeformParam {
        DeformParam::new(v).unwrap()
    }

    #[test]
    fn acceleration_examples() {
        assert_eq!(el_acceleration(&ClassicalState::default(), &lam(0.4), 1.0).unwrap(), (0.0, 0.0));
        let s = ClassicalState::new(0.7, -0.2, 0.3, 1.1);
        let (ax, ay) = el_acceleration(&s, &lam(0.0), 1.5).unwrap();
        assert!((ax + 2.25 * 0.7).abs() < 1e-15 && (ay - 2.25 * 0.2).abs() < 1e-15);
        let (ax, _) = el_acceleration(&ClassicalState::new(1.0, 0.0, 0.0, 0.0), &lam(0.5), 1.0).unwrap();
        assert!((ax + 2.0 / 3.0).abs() < 1e-15);
        assert!(el_acceleration(&ClassicalState::new(2.0, 0.0, 0.0, 0.0), &lam(-0.25), 1.0).is_err());
    }

    #[test]
    fn noether_examples() {
        let s = ClassicalState::new(0.4, -1.0, 0.2, 0.9);
        assert_eq!(noether_momenta(&s, &lam(0.0)).unwrap(), (0.2, 0.9, s.j()));
        let r = ClassicalState::new(0.8, 0.0, 1.3, 0.0);
        let (p1, _, j) = noether_momenta(&r, &lam(0.5)).unwrap();
        assert_eq!(j, 0.0);
        assert!((p1 - 1.3 / (1.0 + 0.5 * 0.64f64).sqrt()).abs() < 1e-14);
        let c = ClassicalState::new(1.0, 0.0, 0.0, 1.0);
        let (p1, p2, j) = noether_momenta(&c, &lam(0.3)).unwrap();
        assert_eq!(j, 1.0);
        // y = 0 removes the J correction from P1; P2 = (1 + 0.3) / sqrt(1.3).
        assert_eq!(p1, 0.0);
        assert!((p2 - 1.3f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn energy_examples() {
        assert_eq!(hamiltonian_energy(&ClassicalState::default(), &lam(0.2), 1.0).unwrap(), 0.0);
        let s = ClassicalState::new(0.5, 1.0, -0.3, 0.8);
        let h = hamiltonian_energy(&s, &lam(0.0), 2.0).unwrap();
        assert!((h - 0.5 * (0.73 + 4.0 * 1.25)).abs() < 1e-14);
        let s = ClassicalState::new(1.0, 0.0, 0.0, 1.0);
        let a = hamiltonian_energy(&s, &lam(0.3), 1.0).unwrap();
        let b = lagrangian_energy(&s, &lam(0.3), 1.0).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn flat_motion_is_cosine() {
        let traj = integrate_trajectory(ClassicalState::new(1.0, 0.0, 0.0, 0.0), &lam(0.0), 1.0, 1e-3, 62_832)
            .unwrap();
        let worst = traj
            .times
            .iter()
            .zip(&traj.states)
            .map(|(t, s)| (s.x - t.cos()).abs())
            .fold(0.0, f64::max);
        assert!(worst < 1e-8, "{worst}");
        let (a, w) = fit_oscillation_1d(&traj).unwrap();
        assert!((a - 1.0).abs() < 1e-9 && (w - 1.0).abs() < 1e-9);
    }

    #[test]
    fn exit_carries_partial_trajectory() {
        // Radial fall toward the rim of the sphere cannot be integrated with a
        // huge step.
        let r = integrate_trajectory(ClassicalState::new(1.9, 0.0, 50.0, 0.0), &lam(-0.25), 1.0, 0.5, 10);
        match r {
            Err(Error::TrajectoryExit { index, partial }) => {
                assert_eq!(partial.len(), index);
            }
            other => panic!("expected exit, got {other:?}"),
        }
    }

    #[test]
    fn amplitude_frequency_law() {
        let l = lam(-0.2);
        let traj = integrate_trajectory(ClassicalState::new(1.0, 0.0, 0.0, 0.0), &l, 1.0, 2e-3, 10_000).unwrap();
        let (a, w) = fit_oscillation_1d(&traj).unwrap();
        assert!((1.0 - (1.0 - 0.2 * a * a) * w * w).abs() < 1e-6);
        let l = lam(0.3);
        let traj = integrate_trajectory(ClassicalState::new(0.5, 0.0, 0.0, 0.0), &l, 1.0, 2e-3, 10_000).unwrap();
        let (a, w) = fit_oscillation_1d(&traj).unwrap();
        assert!((1.0 - (1.0 + 0.3 * a * a) * w * w).abs() < 1e-6);
    }

    #[test]
    fn csv_header() {
        let traj = integrate_trajectory(ClassicalState::new(1.0, 0.0, 0.0, 0.5), &lam(-0.25), 1.0, 0.01, 3).unwrap();
        let csv = traj.to_csv().unwrap();
        assert!(csv.starts_with("t,x,y,vx,vy,H,J\n"));
        assert_eq!(csv.lines().count(), 5);
    }
}
