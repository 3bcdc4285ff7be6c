//! The two deformed Hermite families and their three constructions.
//!
//! * recursion: power-series coefficients of the polynomial solutions,
//!   normalized by value 1 (even index) or slope 1 (odd index) at the origin;
//! * Rodrigues: `(-1)^n W^e d^n/du^n [W^(n-e)]`, differentiated exactly;
//! * generating function: `n! [t^n] (1 + lam(2tu - t^2))^alpha`.
//!
//! The three routes agree up to index-dependent constants `k` (Rodrigues)
//! and `g` (generating function).

use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::DeformParam;
use crate::polyengine::{Poly, TSeries, WeightedFunction};
use crate::scalar::Scalar;
use crate::spectrum::{y_admissible, z_admissible};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyTag {
    Z,
    /// Y family attached to the Z quantum number `m_partner` through `G_m`.
    Y { m_partner: usize },
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTag::Z => write!(f, "Z"),
            FamilyTag::Y { m_partner } => write!(f, "Y(m={m_partner})"),
        }
    }
}

/// Whether indices beyond the bound-state cutoff are rejected.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Admissibility {
    #[default]
    Strict,
    Unchecked,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Recursion,
    Rodrigues,
    GeneratingFunction,
}

impl Route {
    pub const ALL: [Route; 3] = [Route::Recursion, Route::Rodrigues, Route::GeneratingFunction];
}

/// `G_m = 1 - m lam`.
pub fn g_m<T: Scalar>(m: usize, lam: &DeformParam) -> T {
    T::one() - T::from_usize(m) * lam.value::<T>()
}

fn check(tag: FamilyTag, index: usize, lam: &DeformParam, policy: Admissibility) -> Result<()> {
    if policy == Admissibility::Unchecked {
        return Ok(());
    }
    let ok = match tag {
        FamilyTag::Z => z_admissible(index, lam),
        FamilyTag::Y { m_partner } => y_admissible(index, m_partner, lam),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::admissibility(format!(
            "{tag} index {index} is beyond the bound-state cutoff for lambda = {lam}"
        )))
    }
}

/// Coefficients from `c_{k+2} = -c_k bracket(k) / ((k+2)(k+1))`, seeded at the origin.
fn from_recursion<T: Scalar>(index: usize, bracket: impl Fn(&T) -> T) -> Poly<T> {
    let mut c = vec![T::zero(); index + 1];
    c[index % 2] = T::one();
    let mut k = index % 2;
    while k + 2 <= index {
        let kk = T::from_usize(k);
        let denom = T::from_usize((k + 2) * (k + 1));
        c[k + 2] = -(c[k].clone() * bracket(&kk)) / denom;
        k += 2;
    }
    Poly::new(c)
}

/// Polynomial solution of `(1 + lam z^2) p'' + (lam - 2) z p' + (2 mu_m - 1) p = 0`.
pub fn recursion_z<T: Scalar>(m: usize, lam: &DeformParam, policy: Admissibility) -> Result<Poly<T>> {
    check(FamilyTag::Z, m, lam, policy)?;
    let l = lam.value::<T>();
    let mm = T::from_usize(m);
    // 2 mu_m - 1 = m (2 - lam m)
    let eig = mm.clone() * (T::from_i64(2) - l.clone() * mm);
    Ok(from_recursion(m, |k: &T| {
        k.clone() * (l.clone() * k.clone() - T::from_i64(2)) + eig.clone()
    }))
}

/// Polynomial solution of `(1 + lam y^2) q'' + 2 (lam - G) y q' + (2 nu_n - G) q = 0`.
pub fn recursion_y<T: Scalar>(
    n: usize,
    m: usize,
    lam: &DeformParam,
    policy: Admissibility,
) -> Result<Poly<T>> {
    check(FamilyTag::Y { m_partner: m }, n, lam, policy)?;
    let l = lam.value::<T>();
    let g = g_m::<T>(m, lam);
    let nn = T::from_usize(n);
    // 2 nu_n = (2n + 1) G - n (n + 1) lam
    let two_nu = (T::from_usize(2 * n + 1)) * g.clone() - nn.clone() * (nn + T::one()) * l.clone();
    Ok(from_recursion(n, |k: &T| {
        l.clone() * k.clone() * (k.clone() + T::one())
            - g.clone() * (T::from_i64(2) * k.clone() + T::one())
            + two_nu.clone()
    }))
}

pub fn recursion<T: Scalar>(
    tag: FamilyTag,
    index: usize,
    lam: &DeformParam,
    policy: Admissibility,
) -> Result<Poly<T>> {
    match tag {
        FamilyTag::Z => recursion_z(index, lam, policy),
        FamilyTag::Y { m_partner } => recursion_y(index, m_partner, lam, policy),
    }
}

/// Physicists' Hermite polynomial `H_n`.
pub fn classical_hermite<T: Scalar>(n: usize) -> Poly<T> {
    let two_x = Poly::monomial(T::from_i64(2), 1);
    let mut prev = Poly::zero();
    let mut cur = Poly::constant(T::one());
    for k in 0..n {
        let next = &(&two_x * &cur) - &prev.scale(&T::from_usize(2 * k));
        prev = cur;
        cur = next;
    }
    cur
}

/// Rodrigues exponent `e` of the weight `W^-e` for each family.
fn rodrigues_exponent<T: Scalar>(tag: FamilyTag, lam: &DeformParam) -> T {
    let l = lam.value::<T>();
    match tag {
        FamilyTag::Z => T::one() / l + T::half(),
        FamilyTag::Y { m_partner } => g_m::<T>(m_partner, lam) / l,
    }
}

/// Rodrigues-normalized polynomial `H_n`. The flat case is the classical
/// Hermite polynomial; the singular exponents are never formed there.
pub fn rodrigues<T: Scalar>(
    tag: FamilyTag,
    index: usize,
    lam: &DeformParam,
    policy: Admissibility,
) -> Result<Poly<T>> {
    check(tag, index, lam, policy)?;
    if lam.is_flat() {
        return Ok(classical_hermite(index));
    }
    let e = rodrigues_exponent::<T>(tag, lam);
    let seed = WeightedFunction::power(Poly::constant(T::one()), lam.value::<T>(), T::from_usize(index) - e);
    let d = (0..index).fold(seed, |f, _| f.derivative_raw());
    Ok(if index % 2 == 1 { -&d.p } else { d.p })
}

/// Exponent `alpha` of the generating function `(1 + lam(2tu - t^2))^alpha`.
fn genfunc_exponent<T: Scalar>(tag: FamilyTag, lam: &DeformParam) -> T {
    let l = lam.value::<T>();
    match tag {
        FamilyTag::Z => T::one() / l,
        FamilyTag::Y { m_partner } => g_m::<T>(m_partner, lam) / l - T::half(),
    }
}

/// Generating-function-normalized polynomial `index! [t^index] F(t, u)`.
pub fn generating_function<T: Scalar>(
    tag: FamilyTag,
    index: usize,
    lam: &DeformParam,
    policy: Admissibility,
) -> Result<Poly<T>> {
    check(tag, index, lam, policy)?;
    if lam.is_flat() {
        return Ok(classical_hermite(index));
    }
    let l = lam.value::<T>();
    let two_l = T::from_i64(2) * l.clone();
    let u = TSeries::from_terms(
        vec![Poly::zero(), Poly::monomial(two_l, 1), Poly::constant(-l)],
        index,
    );
    let series = u.binomial_power(&genfunc_exponent::<T>(tag, lam));
    let factorial = (1..=index).fold(T::one(), |acc, k| acc * T::from_usize(k));
    Ok(series.coeff(index).scale(&factorial))
}

pub fn construct<T: Scalar>(
    tag: FamilyTag,
    index: usize,
    lam: &DeformParam,
    route: Route,
    policy: Admissibility,
) -> Result<Poly<T>> {
    match route {
        Route::Recursion => recursion(tag, index, lam, policy),
        Route::Rodrigues => rodrigues(tag, index, lam, policy),
        Route::GeneratingFunction => generating_function(tag, index, lam, policy),
    }
}

/// Ratio of leading coefficients of `route` over the recursion polynomial,
/// i.e. `k` for Rodrigues and `g` for the generating function.
pub fn route_constant<T: Scalar>(
    tag: FamilyTag,
    index: usize,
    lam: &DeformParam,
    route: Route,
    policy: Admissibility,
) -> Result<T> {
    let base = recursion::<T>(tag, index, lam, policy)?;
    let other = construct::<T>(tag, index, lam, route, policy)?;
    match (other.leading(), base.leading()) {
        (Some(a), Some(b)) if base.degree() == other.degree() => Ok(a.clone() / b.clone()),
        _ => Err(Error::RouteMismatch(format!(
            "{tag} index {index}: {route:?} has degree {:?}, recursion has {:?}",
            other.degree(),
            base.degree()
        ))),
    }
}
