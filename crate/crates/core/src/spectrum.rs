//! Quantum numbers, eigenvalues, bound-state census and eigenfunctions.

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::DeformParam;
use crate::polyengine::{classical_hermite, rodrigues, Admissibility, FamilyTag, WeightedFunction};
use crate::scalar::{ratio_to_f64, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuantumNumbers {
    pub m: usize,
    pub n: usize,
}

impl QuantumNumbers {
    pub fn new(m: usize, n: usize) -> Self {
        Self { m, n }
    }

    /// Principal level `N = m + n`.
    pub fn level(&self) -> usize {
        self.m + self.n
    }
}

/// Adimensional energy; the physical energy is `hbar * alpha * e`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize)]
pub struct EnergyLevel {
    pub e: f64,
}

impl EnergyLevel {
    pub fn physical(&self, hbar_alpha: f64) -> f64 {
        hbar_alpha * self.e
    }
}

fn below(lhs: BigRational, bound: i64) -> bool {
    lhs < BigRational::from_i64(bound)
}

/// `m lam < 1`, the cutoff for the Z factor alone.
pub fn z_admissible(m: usize, lam: &DeformParam) -> bool {
    !lam.exact().is_positive() || below(lam.exact() * BigRational::from_usize(m), 1)
}

/// `(2n + 2m + 1) lam < 2`, i.e. `n < 1/lam - m - 1/2`.
pub fn y_admissible(n: usize, m: usize, lam: &DeformParam) -> bool {
    level_admissible(n + m, lam)
}

/// Whether level `N` holds bound states: `N < 1/lam - 1/2` for `lam > 0`.
pub fn level_admissible(level: usize, lam: &DeformParam) -> bool {
    !lam.exact().is_positive() || below(lam.exact() * BigRational::from_usize(2 * level + 1), 2)
}

/// Number of bound levels, `None` when the spectrum is infinite (`lam <= 0`).
pub fn level_count(lam: &DeformParam) -> Option<usize> {
    if !lam.exact().is_positive() {
        return None;
    }
    // (2N + 1) lam < 2  <=>  N < 1/lam - 1/2, strictly.
    let bound = (BigRational::from_i64(2) / lam.exact() - BigRational::one()) / BigRational::from_i64(2);
    if !bound.is_positive() {
        return Some(0);
    }
    let ceil: i64 = bound.ceil().to_integer().try_into().unwrap_or(i64::MAX);
    Some(usize::try_from(ceil).unwrap_or(usize::MAX))
}

/// Number of admissible `n` for a given `m` (per-m cutoff), `None` when unbounded.
pub fn n_count(m: usize, lam: &DeformParam) -> Option<usize> {
    level_count(lam).map(|count| count.saturating_sub(m))
}

fn require(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::admissibility(what()))
    }
}

/// `G_m = 1 - m lam`.
pub fn g_factor(m: usize, lam: &DeformParam) -> Result<f64> {
    require(z_admissible(m, lam), || format!("G_m <= 0 for m = {m}, lambda = {lam}"))?;
    Ok(1.0 - m as f64 * lam.lambda())
}

/// `mu_m = (m + 1/2) - lam m^2 / 2`.
pub fn mu(m: usize, lam: &DeformParam) -> Result<f64> {
    require(z_admissible(m, lam), || format!("m = {m} not admissible for lambda = {lam}"))?;
    let m = m as f64;
    Ok(m + 0.5 - 0.5 * lam.lambda() * m * m)
}

/// `nu_n = (n + 1/2) G_m - lam n (n + 1) / 2`.
pub fn nu(n: usize, m: usize, lam: &DeformParam) -> Result<f64> {
    require(y_admissible(n, m, lam), || {
        format!("(m, n) = ({m}, {n}) not admissible for lambda = {lam}")
    })?;
    let g = 1.0 - m as f64 * lam.lambda();
    let n = n as f64;
    Ok((n + 0.5) * g - 0.5 * lam.lambda() * n * (n + 1.0))
}

/// `e_{m,n} = mu_m + nu_n`, summed exactly before rounding.
pub fn energy(qn: QuantumNumbers, lam: &DeformParam) -> Result<EnergyLevel> {
    mu(qn.m, lam)?;
    nu(qn.n, qn.m, lam)?;
    let (m, n) = (BigRational::from_usize(qn.m), BigRational::from_usize(qn.n));
    let l = lam.exact().clone();
    let half = BigRational::half();
    let g = BigRational::one() - m.clone() * l.clone();
    let mu = m.clone() + half.clone() - half.clone() * l.clone() * m.clone() * m;
    let nu = (n.clone() + half.clone()) * g - half * l * n.clone() * (n + BigRational::one());
    Ok(EnergyLevel { e: ratio_to_f64(&(mu + nu)) })
}

fn exact_level_energy(level: usize, lam: &DeformParam) -> BigRational {
    let n = BigRational::from_usize(level);
    (n.clone() + BigRational::one()) * (BigRational::one() - BigRational::half() * lam.exact().clone() * n)
}

/// `e_N = (N + 1)(1 - lam N / 2)`, rounded once from the exact value.
pub fn level_energy(level: usize, lam: &DeformParam) -> Result<f64> {
    require(level_admissible(level, lam), || {
        format!("level N = {level} not bound for lambda = {lam}")
    })?;
    Ok(ratio_to_f64(&exact_level_energy(level, lam)))
}

/// `e_{N+1} - e_N`.
pub fn level_spacing(level: usize, lam: &DeformParam) -> Result<f64> {
    level_energy(level + 1, lam)?;
    Ok(ratio_to_f64(&(exact_level_energy(level + 1, lam) - exact_level_energy(level, lam))))
}

/// All bound states with `e <= e_max`, ordered by energy and then by `m`.
///
/// For `lam > 0` the bound may be omitted; the census is then the full
/// (finite) admissible set.
pub fn enumerate_bound_states(
    lam: &DeformParam,
    e_max: Option<f64>,
) -> Result<Vec<(QuantumNumbers, EnergyLevel)>> {
    let count = match (level_count(lam), e_max) {
        (Some(count), _) => count,
        (None, Some(_)) => usize::MAX,
        (None, None) => return Err(Error::UnboundedEnumeration(lam.lambda())),
    };
    let e_max = e_max.unwrap_or(f64::INFINITY);
    if e_max.is_nan() {
        return Err(Error::InvalidArgument("e_max is NaN".into()));
    }
    // e_N increases with N on every admissible range, so the scan can stop
    // at the first level above the bound.
    let mut states = Vec::new();
    for level in 0..count {
        if level_energy(level, lam)? > e_max {
            break;
        }
        for m in 0..=level {
            let qn = QuantumNumbers::new(m, level - m);
            states.push((qn, energy(qn, lam)?));
        }
    }
    Ok(states)
}

/// All states with `N <= n_max` that are bound.
pub fn states_up_to_level(lam: &DeformParam, n_max: usize) -> Vec<(QuantumNumbers, EnergyLevel)> {
    let count = level_count(lam).map_or(n_max + 1, |c| c.min(n_max + 1));
    let mut states = Vec::new();
    for level in 0..count {
        for m in 0..=level {
            let qn = QuantumNumbers::new(m, level - m);
            if let Ok(e) = energy(qn, lam) {
                states.push((qn, e));
            }
        }
    }
    states
}

/// `Z_m(z) = H_m(z) (1 + lam z^2)^(-1/(2 lam))`; `H_m(z) e^(-z^2/2)` when flat.
pub fn z_function(m: usize, lam: &DeformParam) -> Result<WeightedFunction<f64>> {
    if lam.is_flat() {
        return Ok(WeightedFunction::gaussian(classical_hermite(m), 0.5));
    }
    let p = rodrigues::<BigRational>(FamilyTag::Z, m, lam, Admissibility::Strict)?;
    let l = lam.exact().clone();
    let a = -(BigRational::one() / (BigRational::from_i64(2) * l.clone()));
    Ok(WeightedFunction::power(p, l, a).to_f64())
}

/// `Y_n(y) = H_n(y, m) (1 + lam y^2)^(-G_m/(2 lam))`.
pub fn y_function(n: usize, m: usize, lam: &DeformParam) -> Result<WeightedFunction<f64>> {
    if lam.is_flat() {
        return Ok(WeightedFunction::gaussian(classical_hermite(n), 0.5));
    }
    let tag = FamilyTag::Y { m_partner: m };
    let p = rodrigues::<BigRational>(tag, n, lam, Admissibility::Strict)?;
    let l = lam.exact().clone();
    let g = BigRational::one() - BigRational::from_usize(m) * l.clone();
    let a = -(g / (BigRational::from_i64(2) * l.clone()));
    Ok(WeightedFunction::power(p, l, a).to_f64())
}

/// Separated eigenfunction with its two factors.
#[derive(Clone, Debug)]
pub struct EigenState {
    pub qn: QuantumNumbers,
    pub lam: DeformParam,
    pub z_part: WeightedFunction<f64>,
    pub y_part: WeightedFunction<f64>,
    pub energy: EnergyLevel,
}

impl EigenState {
    pub fn new(qn: QuantumNumbers, lam: &DeformParam) -> Result<Self> {
        Ok(Self {
            qn,
            lam: lam.clone(),
            z_part: z_function(qn.m, lam)?,
            y_part: y_function(qn.n, qn.m, lam)?,
            energy: energy(qn, lam)?,
        })
    }

    fn check(&self, x: f64, y: f64) -> Result<()> {
        if self.lam.w((x * x + y * y).sqrt()) > 0.0 {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "({x}, {y}) outside the disk 1 + lambda r^2 > 0 (lambda = {})",
                self.lam
            )))
        }
    }

    /// `Psi_{m,n}(x, y) = Z_m(x / sqrt(1 + lam y^2)) Y_n(y)`.
    pub fn psi(&self, x: f64, y: f64) -> Result<f64> {
        self.check(x, y)?;
        let zx = x / self.lam.w(y).sqrt();
        Ok(self.z_part.eval(zx) * self.y_part.eval(y))
    }

    /// Alternative separated solution `Phi_{n,m}(x, y) = X_n(x) Z_m(y / sqrt(1 + lam x^2))`,
    /// where `X_n` is the Y-family function in the variable `x`.
    pub fn phi_alt(&self, x: f64, y: f64) -> Result<f64> {
        self.check(x, y)?;
        let zy = y / self.lam.w(x).sqrt();
        Ok(self.y_part.eval(x) * self.z_part.eval(zy))
    }
}

pub fn psi(qn: QuantumNumbers, lam: &DeformParam, x: f64, y: f64) -> Result<f64> {
    EigenState::new(qn, lam)?.psi(x, y)
}

pub fn phi_alt(qn: QuantumNumbers, lam: &DeformParam, x: f64, y: f64) -> Result<f64> {
    EigenState::new(qn, lam)?.phi_alt(x, y)
}
