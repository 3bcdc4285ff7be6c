//! Adaptive Gauss-Kronrod quadrature on the finite and infinite domains of
//! the deformed oscillator, with the orthogonality integrals built on it.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{DeformParam, Regime};
use crate::polyengine::WeightedFunction;
use crate::spectrum::{y_admissible, z_admissible, y_function, z_function, EigenState, QuantumNumbers};

pub const DEFAULT_REL_TOL: f64 = 1e-10;
pub const DEFAULT_REL_TOL_2D: f64 = 1e-6;
const ABS_FLOOR: f64 = 1e-14;
const MAX_INTERVALS: usize = 4000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Domain {
    /// `(-a, a)`, the chart of the sphere.
    FiniteSymmetric(f64),
    /// The whole line. `scale` sets the compactification `u = scale * cot(phi)`.
    RealLine { scale: f64 },
}

/// Natural integration domain for a deformation parameter.
pub fn domain_for(lam: &DeformParam) -> Domain {
    match lam.regime() {
        Regime::Spherical => Domain::FiniteSymmetric(lam.half_width().unwrap_or(f64::NAN)),
        Regime::Euclidean => Domain::RealLine { scale: 1.0 },
        Regime::Hyperbolic => Domain::RealLine {
            scale: 1.0 / lam.lambda().sqrt(),
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

/// Stopping rule: the error estimate must fall below the largest of `abs`,
/// `rel * |I|` and `rel_l1 * int |f|`.
///
/// The last term is what makes integrals with heavy cancellation (e.g.
/// off-diagonal Gram entries) converge to an error judged against the size of
/// the integrand rather than against a result that is nearly zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
    pub rel_l1: f64,
}

impl Tolerance {
    pub fn relative(rel: f64) -> Self {
        Self {
            rel,
            abs: ABS_FLOOR,
            rel_l1: 0.0,
        }
    }

    /// Tolerance relative to `int |f|`, for integrands expected to cancel.
    pub fn cancelling(rel: f64) -> Self {
        Self {
            rel,
            abs: ABS_FLOOR,
            rel_l1: rel,
        }
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for XGK[1], XGK[3], XGK[5] and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy, Debug)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    l1: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn kronrod15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> Result<Segment> {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |x: f64| {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::accuracy(format!("integrand is not finite at {x}")))
        }
    };
    let fc = eval(centre)?;
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    let mut resabs = resk.abs();
    let mut pairs = [(0.0, 0.0); 7];
    for (j, pair) in pairs.iter_mut().enumerate() {
        let dx = half * XGK[j];
        let (f1, f2) = (eval(centre - dx)?, eval(centre + dx)?);
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
        *pair = (f1, f2);
    }
    let mean = 0.5 * resk;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for (j, (f1, f2)) in pairs.iter().enumerate() {
        resasc += WGK[j] * ((f1 - mean).abs() + (f2 - mean).abs());
    }
    let h = half.abs();
    let (resk, resabs, resasc) = (resk * half, resabs * h, resasc * h);
    let mut err = (resk - resg * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    Ok(Segment {
        a,
        b,
        value: resk,
        error: err,
        l1: resabs,
    })
}

/// Compensated (Neumaier) sum.
fn neumaier(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Globally adaptive G7K15 on `[a, b]`.
///
/// The result is a deterministic function of the integrand: intervals are
/// refined in a fixed order and the final sum runs over intervals sorted by
/// position with compensated addition.
fn adapt(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: Tolerance) -> Result<QuadResult> {
    let first = kronrod15(f, a, b)?;
    let (mut value, mut error, mut l1) = (first.value, first.error, first.l1);
    let mut heap = BinaryHeap::from([first]);
    let mut stuck: Vec<Segment> = Vec::new();
    let mut evaluations = 15;
    let target = |value: f64, l1: f64| {
        tol.abs
            .max(tol.rel * value.abs())
            .max(tol.rel_l1 * l1)
            .max(100.0 * f64::EPSILON * l1)
    };
    loop {
        let mut done = error <= target(value, l1);
        let exhausted = heap.is_empty() || heap.len() + stuck.len() >= MAX_INTERVALS;
        if done || exhausted {
            // Running totals drift; settle on exact sums before deciding.
            let mut all: Vec<Segment> = heap.iter().chain(stuck.iter()).copied().collect();
            all.sort_by(|x, y| x.a.total_cmp(&y.a));
            value = neumaier(all.iter().map(|s| s.value));
            error = all.iter().map(|s| s.error).sum();
            l1 = all.iter().map(|s| s.l1).sum();
            done = error <= target(value, l1);
            let result = QuadResult {
                value,
                abs_error_estimate: error,
                evaluations,
            };
            if done {
                return Ok(result);
            }
            if exhausted {
                return Err(Error::Accuracy {
                    message: format!(
                        "estimated error {error:.3e} above target {:.3e} after {} intervals",
                        target(value, l1),
                        all.len()
                    ),
                    best: Some(result),
                });
            }
        }
        let worst = heap.pop().expect("heap is non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            stuck.push(worst);
            continue;
        }
        let left = kronrod15(f, worst.a, mid)?;
        let right = kronrod15(f, mid, worst.b)?;
        evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        l1 += left.l1 + right.l1 - worst.l1;
        heap.push(left);
        heap.push(right);
    }
}

pub fn integrate_with(f: impl Fn(f64) -> f64, dom: Domain, tol: Tolerance) -> Result<QuadResult> {
    if !(tol.rel >= 1e-13) {
        return Err(Error::InvalidArgument(format!(
            "relative tolerance must be >= 1e-13, got {}",
            tol.rel
        )));
    }
    match dom {
        Domain::FiniteSymmetric(a) => {
            if !(a > 0.0 && a.is_finite()) {
                return Err(Error::domain(format!("half-width must be positive, got {a}")));
            }
            // u = a sin(theta) absorbs inverse square-root end singularities
            // and keeps GK nodes off the endpoints.
            let g = |theta: f64| {
                let (sin, cos) = theta.sin_cos();
                f(a * sin) * a * cos
            };
            adapt(&g, -FRAC_PI_2, FRAC_PI_2, tol)
        }
        Domain::RealLine { scale: s } => {
            if !(s > 0.0 && s.is_finite()) {
                return Err(Error::domain(format!("scale must be positive, got {s}")));
            }
            // Fold onto u >= 0 and map u = s cot(phi). Decaying tails land at
            // phi -> 0, where doubles are densest.
            let g = |phi: f64| {
                let (sin, cos) = phi.sin_cos();
                let u = s * cos / sin;
                (f(u) + f(-u)) * s / (sin * sin)
            };
            let g = |phi: f64| {
                let v = g(phi);
                // Far tails of a decaying integrand can produce inf * 0 in the
                // map; they carry no mass.
                if v.is_nan() && phi < 1e-8 {
                    0.0
                } else {
                    v
                }
            };
            adapt(&g, 0.0, FRAC_PI_2, tol)
        }
    }
}

pub fn integrate(f: impl Fn(f64) -> f64, dom: Domain, rel_tol: f64) -> Result<QuadResult> {
    integrate_with(f, dom, Tolerance::relative(rel_tol))
}

fn check_weight_point(u: f64, lam: &DeformParam) -> Result<f64> {
    let w = lam.w(u);
    if w > 0.0 {
        Ok(w)
    } else {
        Err(Error::domain(format!(
            "u = {u} outside the domain 1 + lambda u^2 > 0 (lambda = {lam})"
        )))
    }
}

/// Orthogonality weight of the Z polynomials, `(1 + lam z^2)^-(1/2 + 1/lam)`.
pub fn weight_z(z: f64, lam: &DeformParam) -> Result<f64> {
    if lam.is_flat() {
        return Ok((-z * z).exp());
    }
    let w = check_weight_point(z, lam)?;
    Ok(w.powf(-(0.5 + 1.0 / lam.lambda())))
}

/// Orthogonality weight of the Y polynomials, `(1 + lam y^2)^-(G_m/lam)`.
pub fn weight_y(y: f64, m: usize, lam: &DeformParam) -> Result<f64> {
    if lam.is_flat() {
        return Ok((-y * y).exp());
    }
    let w = check_weight_point(y, lam)?;
    let g = 1.0 - m as f64 * lam.lambda();
    Ok(w.powf(-g / lam.lambda()))
}

/// `1/sqrt(1 + lam z^2)`, the measure of the Z factor.
fn z_measure(lam: &DeformParam) -> impl Fn(f64) -> f64 + Copy + '_ {
    move |z| 1.0 / lam.w(z).sqrt()
}

fn product_integral(
    f: &WeightedFunction<f64>,
    g: &WeightedFunction<f64>,
    measure: impl Fn(f64) -> f64,
    lam: &DeformParam,
    tol: Tolerance,
) -> Result<QuadResult> {
    integrate_with(|u| f.eval(u) * g.eval(u) * measure(u), domain_for(lam), tol)
}

fn tol_for(same: bool, rel: f64) -> Tolerance {
    if same {
        Tolerance::relative(rel)
    } else {
        Tolerance::cancelling(rel)
    }
}

fn z_admissible_or_err(m: usize, lam: &DeformParam) -> Result<()> {
    if z_admissible(m, lam) {
        Ok(())
    } else {
        Err(Error::admissibility(format!(
            "Z index {m} beyond the cutoff m < 1/lambda (lambda = {lam})"
        )))
    }
}

fn y_admissible_or_err(n: usize, m: usize, lam: &DeformParam) -> Result<()> {
    if y_admissible(n, m, lam) {
        Ok(())
    } else {
        Err(Error::admissibility(format!(
            "Y index {n} (m = {m}) beyond the cutoff n < 1/lambda - m - 1/2 (lambda = {lam})"
        )))
    }
}

/// `<Z_m1, Z_m2>` with weight `1/sqrt(1 + lam z^2)`.
pub fn orthogonality_z(m1: usize, m2: usize, lam: &DeformParam) -> Result<f64> {
    z_admissible_or_err(m1.max(m2), lam)?;
    let (f, g) = (z_function(m1, lam)?, z_function(m2, lam)?);
    let r = product_integral(&f, &g, z_measure(lam), lam, tol_for(m1 == m2, DEFAULT_REL_TOL))?;
    Ok(r.value)
}

/// Plain inner product `<Y_n1, Y_n2>` for the partner `m`.
pub fn orthogonality_y(n1: usize, n2: usize, m: usize, lam: &DeformParam) -> Result<f64> {
    y_admissible_or_err(n1.max(n2), m, lam)?;
    let (f, g) = (y_function(n1, m, lam)?, y_function(n2, m, lam)?);
    let r = product_integral(&f, &g, |_| 1.0, lam, tol_for(n1 == n2, DEFAULT_REL_TOL))?;
    Ok(r.value)
}

/// Symmetric Gram matrix over consecutive indices starting at 0.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GramMatrix {
    pub indices: Vec<usize>,
    pub entries: Vec<Vec<f64>>,
}

impl GramMatrix {
    /// Largest `|G_ij| / sqrt(G_ii G_jj)` over `i != j`, with its position.
    pub fn worst_off_diagonal(&self) -> (f64, Option<(usize, usize)>) {
        let mut worst = (0.0, None);
        for i in 0..self.indices.len() {
            for j in 0..i {
                let scale = (self.entries[i][i] * self.entries[j][j]).abs().sqrt();
                let r = self.entries[i][j].abs() / scale;
                if !(r <= worst.0) {
                    worst = (r, Some((self.indices[i], self.indices[j])));
                }
            }
        }
        worst
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("index");
        for i in &self.indices {
            out.push_str(&format!(",{i}"));
        }
        out.push('\n');
        for (i, row) in self.indices.iter().zip(&self.entries) {
            out.push_str(&i.to_string());
            for v in row {
                out.push_str(&format!(",{v:e}"));
            }
            out.push('\n');
        }
        out
    }
}

fn gram(
    funcs: Vec<WeightedFunction<f64>>,
    measure: impl Fn(f64) -> f64 + Copy,
    lam: &DeformParam,
    rel: f64,
) -> Result<GramMatrix> {
    let k = funcs.len();
    let mut entries = vec![vec![0.0; k]; k];
    for i in 0..k {
        entries[i][i] = product_integral(&funcs[i], &funcs[i], measure, lam, Tolerance::relative(rel))?.value;
    }
    for i in 0..k {
        for j in 0..i {
            if (i + j) % 2 == 1 {
                // odd integrand on a symmetric domain
                continue;
            }
            let scale = (entries[i][i] * entries[j][j]).abs().sqrt();
            let tol = Tolerance {
                rel,
                abs: rel * scale,
                rel_l1: 0.0,
            };
            let v = product_integral(&funcs[i], &funcs[j], measure, lam, tol)?.value;
            entries[i][j] = v;
            entries[j][i] = v;
        }
    }
    Ok(GramMatrix {
        indices: (0..k).collect(),
        entries,
    })
}

/// Gram matrix of `Z_0 .. Z_max` with weight `1/sqrt(1 + lam z^2)`.
pub fn gram_z(max_index: usize, lam: &DeformParam, rel: f64) -> Result<GramMatrix> {
    z_admissible_or_err(max_index, lam)?;
    let funcs = (0..=max_index).map(|m| z_function(m, lam)).collect::<Result<Vec<_>>>()?;
    gram(funcs, z_measure(lam), lam, rel)
}

/// Gram matrix of `Y_0 .. Y_max` (partner `m`) with unit weight.
pub fn gram_y(max_index: usize, m: usize, lam: &DeformParam, rel: f64) -> Result<GramMatrix> {
    y_admissible_or_err(max_index, m, lam)?;
    let funcs = (0..=max_index).map(|n| y_function(n, m, lam)).collect::<Result<Vec<_>>>()?;
    gram(funcs, |_| 1.0, lam, rel)
}

fn scaled(f: &WeightedFunction<f64>, s: f64) -> WeightedFunction<f64> {
    WeightedFunction {
        p: f.p.scale(&s),
        envelope: f.envelope.clone(),
    }
}

fn unit_scale(f: &WeightedFunction<f64>, norm_sq: f64) -> Result<f64> {
    if !(norm_sq.is_finite() && norm_sq > 0.0) {
        return Err(Error::accuracy(format!("norm^2 = {norm_sq} cannot be normalized")));
    }
    let sign = f.p.leading().map_or(1.0, |c| c.signum());
    let s = sign / norm_sq.sqrt();
    if !s.is_finite() || s == 0.0 {
        return Err(Error::accuracy(format!("normalization factor overflow for norm^2 = {norm_sq}")));
    }
    Ok(s)
}

/// Scale both factors to unit norm (Z with weight `1/sqrt(W)`, Y with weight
/// 1) and make their leading coefficients positive.
pub fn normalize(state: &EigenState) -> Result<EigenState> {
    let lam = &state.lam;
    let tol = Tolerance::relative(DEFAULT_REL_TOL);
    let nz = product_integral(&state.z_part, &state.z_part, z_measure(lam), lam, tol)?.value;
    let ny = product_integral(&state.y_part, &state.y_part, |_| 1.0, lam, tol)?.value;
    let mut out = state.clone();
    out.z_part = scaled(&state.z_part, unit_scale(&state.z_part, nz)?);
    out.y_part = scaled(&state.y_part, unit_scale(&state.y_part, ny)?);
    Ok(out)
}

/// Squared norms of the two factors, `(|Z|^2, |Y|^2)`.
pub fn factor_norms(state: &EigenState) -> Result<(f64, f64)> {
    let lam = &state.lam;
    let tol = Tolerance::relative(DEFAULT_REL_TOL);
    Ok((
        product_integral(&state.z_part, &state.z_part, z_measure(lam), lam, tol)?.value,
        product_integral(&state.y_part, &state.y_part, |_| 1.0, lam, tol)?.value,
    ))
}

/// `<Psi_a, Psi_b>` over the invariant measure for unit-normalized states.
///
/// Uses the exact factorization `1 + lam r^2 = (1 + lam z^2)(1 + lam y^2)`,
/// under which `dmu = dz dy / sqrt(1 + lam z^2)`.
pub fn scalar_product_2d(a: QuantumNumbers, b: QuantumNumbers, lam: &DeformParam) -> Result<f64> {
    let sa = normalize(&EigenState::new(a, lam)?)?;
    let sb = normalize(&EigenState::new(b, lam)?)?;
    factorized_product(&sa, &sb)
}

/// Factorized product of two already-built states (no renormalization).
pub fn factorized_product(sa: &EigenState, sb: &EigenState) -> Result<f64> {
    let lam = &sa.lam;
    let tz = tol_for(sa.qn.m == sb.qn.m, DEFAULT_REL_TOL);
    let ty = tol_for(sa.qn == sb.qn, DEFAULT_REL_TOL);
    let z = if (sa.qn.m + sb.qn.m) % 2 == 1 {
        0.0
    } else {
        product_integral(&sa.z_part, &sb.z_part, z_measure(lam), lam, tz)?.value
    };
    let y = if (sa.qn.n + sb.qn.n) % 2 == 1 {
        0.0
    } else {
        product_integral(&sa.y_part, &sb.y_part, |_| 1.0, lam, ty)?.value
    };
    Ok(z * y)
}

/// The same product by nested quadrature directly in `(x, y)` over
/// `dmu = dx dy / sqrt(1 + lam r^2)`, without using the factorization.
pub fn direct_product_2d(sa: &EigenState, sb: &EigenState, rel: f64) -> Result<f64> {
    let lam = &sa.lam;
    let inner_tol = Tolerance::cancelling(rel * 1e-2);
    let outer_tol = Tolerance::cancelling(rel);
    let inner = |y: f64| -> Result<f64> {
        let dom = match domain_for(lam) {
            Domain::FiniteSymmetric(a) => {
                let half = (a * a - y * y).max(0.0).sqrt();
                if half == 0.0 {
                    return Ok(0.0);
                }
                Domain::FiniteSymmetric(half)
            }
            other => other,
        };
        let f = |x: f64| {
            let w = lam.w((x * x + y * y).sqrt());
            match (sa.psi(x, y), sb.psi(x, y)) {
                (Ok(p), Ok(q)) if w > 0.0 => p * q / w.sqrt(),
                _ => 0.0,
            }
        };
        Ok(integrate_with(f, dom, inner_tol)?.value)
    };
    let failure = std::cell::RefCell::new(None);
    let outer = integrate_with(
        |y| match inner(y) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        },
        domain_for(lam),
        outer_tol,
    )?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(outer.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn lam(v: f64) -> DeformParam {
        DeformParam::new(v).unwrap()
    }

    #[test]
    fn calibration_integrals() {
        let r = integrate(|u| u * u, Domain::FiniteSymmetric(1.0), 1e-12).unwrap();
        assert!((r.value - 2.0 / 3.0).abs() < 1e-14);
        let r = integrate(|u| (-u * u).exp(), Domain::RealLine { scale: 1.0 }, 1e-13).unwrap();
        assert!((r.value - PI.sqrt()).abs() < 1e-12 * PI.sqrt());
        let r = integrate(|u| (1.0 + u * u).powi(-2), Domain::RealLine { scale: 1.0 }, 1e-12).unwrap();
        assert!((r.value - PI / 2.0).abs() < 1e-11);
        assert!(r.abs_error_estimate >= 0.0);
    }

    #[test]
    fn rejects_tiny_tolerance() {
        assert!(integrate(|u| u, Domain::FiniteSymmetric(1.0), 1e-15).is_err());
    }

    #[test]
    fn algebraic_tail() {
        // int (1 + 0.3 u^2)^-2 du = pi / (2 sqrt(0.3))
        let s = 1.0 / 0.3f64.sqrt();
        let r = integrate(|u| (1.0 + 0.3 * u * u).powi(-2), Domain::RealLine { scale: s }, 1e-12).unwrap();
        assert!((r.value - PI * s / 2.0).abs() < 1e-11 * r.value);
    }

    #[test]
    fn integrable_endpoint_singularity() {
        // int_{-1}^{1} (1 - u^2)^-1/2 du = pi
        let r = integrate(|u| 1.0 / (1.0 - u * u).sqrt(), Domain::FiniteSymmetric(1.0), 1e-10).unwrap();
        assert!((r.value - PI).abs() < 1e-9);
    }

    #[test]
    fn weight_examples() {
        assert_eq!(weight_z(0.0, &lam(0.3)).unwrap(), 1.0);
        assert!((weight_z(1.0, &lam(0.5)).unwrap() - 1.5f64.powf(-2.5)).abs() < 1e-15);
        let tiny = weight_z(1.3, &lam(1e-9)).unwrap();
        assert!((tiny - (-1.69f64).exp()).abs() < 1e-7);
        assert!(weight_z(3.0, &lam(-0.25)).is_err());
    }

    #[test]
    fn orthogonality_examples() {
        assert!(orthogonality_z(0, 1, &lam(0.2)).unwrap().abs() < 1e-14);
        let d = orthogonality_z(0, 0, &lam(-0.3)).unwrap();
        let o = orthogonality_z(0, 2, &lam(-0.3)).unwrap();
        assert!(o.abs() < 1e-9 * d);
        let r = orthogonality_z(0, 0, &lam(0.0)).unwrap();
        assert!((r - PI.sqrt()).abs() < 1e-10);

        assert!(orthogonality_y(0, 1, 1, &lam(0.2)).unwrap().abs() < 1e-14);
        let d0 = orthogonality_y(0, 0, 1, &lam(0.2)).unwrap();
        let d2 = orthogonality_y(2, 2, 1, &lam(0.2)).unwrap();
        let o = orthogonality_y(0, 2, 1, &lam(0.2)).unwrap();
        assert!(o.abs() < 1e-9 * (d0 * d2).sqrt());
        let r = orthogonality_y(0, 0, 0, &lam(0.0)).unwrap();
        assert!((r - PI.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn flat_gram_has_hermite_norms() {
        let g = gram_z(4, &lam(0.0), 1e-10).unwrap();
        let mut fact = 1.0;
        for n in 0..=4 {
            if n > 0 {
                fact *= n as f64;
            }
            let expect = PI.sqrt() * 2f64.powi(n as i32) * fact;
            assert!((g.entries[n][n] - expect).abs() < 1e-9 * expect);
        }
        assert!(g.worst_off_diagonal().0 < 1e-10);
        assert!(g.to_csv().starts_with("index,0,1,2,3,4\n"));
    }

    #[test]
    fn gram_rejects_beyond_cutoff() {
        assert!(matches!(gram_z(4, &lam(0.3), 1e-10), Err(Error::Admissibility(_))));
    }

    #[test]
    fn normalize_examples() {
        let s = EigenState::new(QuantumNumbers::new(0, 0), &lam(0.0)).unwrap();
        let n = normalize(&s).unwrap();
        assert!((n.z_part.p.coeff(0) - PI.powf(-0.25)).abs() < 1e-12);

        let s = EigenState::new(QuantumNumbers::new(2, 1), &lam(-0.15)).unwrap();
        let n = normalize(&s).unwrap();
        let (a, b) = factor_norms(&n).unwrap();
        assert!((a - 1.0).abs() < 1e-10 && (b - 1.0).abs() < 1e-10);
        assert!(*n.z_part.p.leading().unwrap() > 0.0);
        let twice = normalize(&n).unwrap();
        for (x, y) in twice.z_part.p.coeffs().iter().zip(n.z_part.p.coeffs()) {
            assert!((x - y).abs() < 1e-12 * y.abs().max(1.0));
        }
    }

    #[test]
    fn scalar_product_examples() {
        let l = lam(-0.3);
        let one = scalar_product_2d(QuantumNumbers::new(0, 0), QuantumNumbers::new(0, 0), &l).unwrap();
        assert!((one - 1.0).abs() < 1e-9);
        let zero = scalar_product_2d(QuantumNumbers::new(0, 1), QuantumNumbers::new(1, 0), &lam(0.2)).unwrap();
        assert_eq!(zero, 0.0);
        let o = scalar_product_2d(QuantumNumbers::new(0, 0), QuantumNumbers::new(0, 2), &l).unwrap();
        assert!(o.abs() < 1e-8);
    }
}
