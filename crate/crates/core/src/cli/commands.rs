use num_rational::BigRational;
use serde::Serialize;

use super::output::{csv, emit, json, Format};
use super::{FamilyArg, Global, RouteArg};
use crate::classical::{hamiltonian_energy, integrate_trajectory, ClassicalState};
use crate::error::{Error, Result};
use crate::geometry::DeformParam;
use crate::polyengine::{construct, recursion, route_constant, Admissibility, FamilyTag, Poly, Route};
use crate::quadrature::{gram_y, gram_z, DEFAULT_REL_TOL};
use crate::scalar::ratio_to_f64;
use crate::spectrum::{enumerate_bound_states, level_count, mu, nu, states_up_to_level, EigenState, QuantumNumbers};
use crate::validation::{
    eigen_residual, interior_grid, psi_infinity_residual, residual_y, residual_z, Operator, ResidualReport,
    DEFAULT_STEP,
};

const ROUTE_TOL: f64 = 1e-10;
const ORTHO_TOL: f64 = 1e-8;
const CERTIFICATE_TOL: f64 = 1e-12;
const FD_TOL: f64 = 1e-5;

#[derive(Serialize)]
struct EnergyRow {
    m: usize,
    n: usize,
    #[serde(rename = "N")]
    level: usize,
    e: f64,
}

pub fn energies(lam: &DeformParam, e_max: Option<f64>, n_max: Option<usize>, g: &Global) -> Result<()> {
    let states = match n_max {
        Some(n_max) => {
            if let Some(count) = level_count(lam) {
                if n_max >= count {
                    return Err(Error::Admissibility(format!(
                        "lambda = {lam} has bound levels N < {count} only, asked for N <= {n_max}"
                    )));
                }
            }
            states_up_to_level(lam, n_max)
        }
        None => enumerate_bound_states(lam, e_max)?,
    };
    let rows: Vec<EnergyRow> = states
        .iter()
        .map(|(qn, e)| EnergyRow {
            m: qn.m,
            n: qn.n,
            level: qn.level(),
            e: e.e,
        })
        .collect();
    let text = match g.format {
        Format::Csv => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| vec![r.m.to_string(), r.n.to_string(), r.level.to_string(), r.e.to_string()])
                .collect();
            csv(&["m", "n", "N", "e"], &body)
        }
        Format::Json => json(&rows)?,
    };
    emit(g.out.as_deref(), &text)
}

fn tag_for(family: FamilyArg, m_partner: usize) -> FamilyTag {
    match family {
        FamilyArg::Z => FamilyTag::Z,
        FamilyArg::Y => FamilyTag::Y { m_partner },
    }
}

fn route_for(route: RouteArg) -> Route {
    match route {
        RouteArg::Recursion => Route::Recursion,
        RouteArg::Rodrigues => Route::Rodrigues,
        RouteArg::Genfunc => Route::GeneratingFunction,
    }
}

/// Largest coefficient gap between `p / k` and the recursion polynomial,
/// relative to the recursion's largest coefficient.
fn route_gap(p: &Poly<BigRational>, k: &BigRational, base: &Poly<BigRational>) -> f64 {
    let scaled = p.scale(&(BigRational::from_integer(1.into()) / k.clone()));
    let diff = &scaled - base;
    let scale = base.max_abs_coeff();
    diff.max_abs_coeff() / if scale > 0.0 { scale } else { 1.0 }
}

#[derive(Serialize)]
struct PolyOutput {
    family: String,
    index: usize,
    lambda: String,
    route: String,
    coefficients: Vec<String>,
    values: Vec<f64>,
    route_constant: String,
}

pub fn poly(
    lam: &DeformParam,
    family: FamilyArg,
    index: usize,
    m_partner: usize,
    route: RouteArg,
    tol: Option<f64>,
    g: &Global,
) -> Result<()> {
    let tag = tag_for(family, m_partner);
    let chosen = route_for(route);
    let policy = Admissibility::Strict;
    let base = recursion::<BigRational>(tag, index, lam, policy)?;
    let threshold = tol.unwrap_or(ROUTE_TOL);
    let mut chosen_k = None;
    for r in Route::ALL {
        let p = construct::<BigRational>(tag, index, lam, r, policy)?;
        let k = route_constant::<BigRational>(tag, index, lam, r, policy)?;
        let gap = route_gap(&p, &k, &base);
        if !(gap <= threshold) {
            return Err(Error::RouteMismatch(format!(
                "{tag} index {index}: {r:?} differs from the recursion by {gap:e} after normalisation"
            )));
        }
        if r == chosen {
            chosen_k = Some(k);
        }
    }
    let p = construct::<BigRational>(tag, index, lam, chosen, policy)?;
    let k = chosen_k.expect("every route is visited");
    let coeffs: Vec<BigRational> = (0..=p.degree().unwrap_or(0)).map(|i| p.coeff(i)).collect();
    let text = match g.format {
        Format::Json => json(&PolyOutput {
            family: tag.to_string(),
            index,
            lambda: lam.exact().to_string(),
            route: format!("{route:?}").to_lowercase(),
            coefficients: coeffs.iter().map(|c| c.to_string()).collect(),
            values: coeffs.iter().map(ratio_to_f64).collect(),
            route_constant: k.to_string(),
        })?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| vec![i.to_string(), c.to_string(), ratio_to_f64(c).to_string()])
                .collect();
            csv(&["power", "exact", "value"], &rows)
        }
    };
    emit(g.out.as_deref(), &text)
}

#[derive(Serialize)]
struct GramOutput<'a> {
    indices: &'a [usize],
    entries: &'a [Vec<f64>],
    worst_ratio: f64,
    worst_pair: Option<(usize, usize)>,
}

pub fn ortho(
    lam: &DeformParam,
    family: FamilyArg,
    max_index: usize,
    m_partner: usize,
    tol: Option<f64>,
    g: &Global,
) -> Result<()> {
    let gram = match family {
        FamilyArg::Z => gram_z(max_index, lam, DEFAULT_REL_TOL)?,
        FamilyArg::Y => gram_y(max_index, m_partner, lam, DEFAULT_REL_TOL)?,
    };
    let (ratio, pair) = gram.worst_off_diagonal();
    let text = match g.format {
        Format::Csv => gram.to_csv(),
        Format::Json => json(&GramOutput {
            indices: &gram.indices,
            entries: &gram.entries,
            worst_ratio: ratio,
            worst_pair: pair,
        })?,
    };
    emit(g.out.as_deref(), &text)?;
    let threshold = tol.unwrap_or(ORTHO_TOL);
    if ratio < threshold {
        Ok(())
    } else {
        Err(Error::accuracy(format!(
            "off-diagonal ratio {ratio:e} at {pair:?} is not below {threshold:e}"
        )))
    }
}

#[derive(Serialize)]
struct Check {
    name: String,
    tolerance: f64,
    pass: bool,
    report: ResidualReport,
}

#[derive(Serialize)]
struct EigencheckOutput {
    lambda: String,
    m: usize,
    n: usize,
    energy: f64,
    mu: f64,
    nu: f64,
    asymptotic_factor_exact: Option<bool>,
    checks: Vec<Check>,
    pass: bool,
}

fn line_sample(lam: &DeformParam) -> Vec<f64> {
    let half = lam.half_width().map_or(5.0, |a| 0.95 * a);
    (0..101).map(|i| -half + 2.0 * half * i as f64 / 100.0).collect()
}

pub fn eigencheck(lam: &DeformParam, m: usize, n: usize, grid: usize, tol: Option<f64>, g: &Global) -> Result<()> {
    if grid == 0 {
        return Err(Error::InvalidArgument("grid needs at least one point per axis".into()));
    }
    let state = EigenState::new(QuantumNumbers::new(m, n), lam)?;
    let (mu_m, nu_n, e) = (mu(m, lam)?, nu(n, m, lam)?, state.energy.e);
    let fd_tol = tol.unwrap_or(FD_TOL);
    let sample = line_sample(lam);
    let mut checks = vec![
        ("residual_z".to_string(), CERTIFICATE_TOL, residual_z(m, lam, &sample)?),
        ("residual_y".to_string(), CERTIFICATE_TOL, residual_y(n, m, lam, &sample)?),
    ];
    let pts = interior_grid(lam, grid);
    let psi = |x: f64, y: f64| state.psi(x, y);
    let phi = |x: f64, y: f64| state.phi_alt(x, y);
    let l = lam.lambda();
    let fd: [(&str, Operator, &dyn Fn(f64, f64) -> Result<f64>, f64); 5] = [
        ("H psi = e psi", Operator::Full, &psi, e),
        ("H phi = e phi", Operator::Full, &phi, e),
        ("H1 psi = mu psi", Operator::Combination([1.0, 0.0, 0.0]), &psi, mu_m),
        ("(H1 - lam J2) phi = nu phi", Operator::Combination([1.0, 0.0, -l]), &phi, nu_n),
        ("H2 phi = mu phi", Operator::Combination([0.0, 1.0, 0.0]), &phi, mu_m),
    ];
    for (name, op, field, value) in fd {
        checks.push((name.to_string(), fd_tol, eigen_residual(op, field, value, lam, &pts, DEFAULT_STEP)?));
    }
    let asymptotic = if lam.is_flat() {
        None
    } else {
        Some(psi_infinity_residual(m, lam)?.is_zero())
    };
    let checks: Vec<Check> = checks
        .into_iter()
        .map(|(name, tolerance, report)| Check {
            pass: report.max_abs <= tolerance,
            name,
            tolerance,
            report,
        })
        .collect();
    let pass = checks.iter().all(|c| c.pass) && asymptotic != Some(false);
    let text = match g.format {
        Format::Json => json(&EigencheckOutput {
            lambda: lam.exact().to_string(),
            m,
            n,
            energy: e,
            mu: mu_m,
            nu: nu_n,
            asymptotic_factor_exact: asymptotic,
            checks,
            pass,
        })?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = checks
                .iter()
                .map(|c| {
                    vec![
                        c.name.clone(),
                        format!("{:e}", c.report.max_abs),
                        c.report.sample_points.to_string(),
                        format!("{:e}", c.tolerance),
                        c.pass.to_string(),
                    ]
                })
                .collect();
            csv(&["check", "max_abs", "sample_points", "tolerance", "pass"], &rows)
        }
    };
    emit(g.out.as_deref(), &text)?;
    if pass {
        Ok(())
    } else {
        Err(Error::accuracy(format!("eigencheck failed for (m, n) = ({m}, {n}) at lambda = {lam}")))
    }
}

#[derive(Serialize)]
struct TrajectoryOutput<'a> {
    lambda: f64,
    alpha: f64,
    step: f64,
    times: &'a [f64],
    states: &'a [ClassicalState],
    energy_drift: f64,
    angular_momentum_drift: f64,
}

pub fn classical(lam: &DeformParam, s0: [f64; 4], dt: f64, steps: usize, g: &Global) -> Result<()> {
    let start = ClassicalState::new(s0[0], s0[1], s0[2], s0[3]);
    let traj = integrate_trajectory(start, lam, g.alpha, dt, steps).map_err(|e| match e {
        Error::TrajectoryExit { index, partial } => Error::Domain(format!(
            "trajectory left 1 + lambda r^2 > 0 at step {index} (t = {}); last state {:?}",
            index as f64 * dt,
            partial.states.last()
        )),
        other => other,
    })?;
    let h0 = hamiltonian_energy(&traj.states[0], lam, g.alpha)?;
    // A start at rest in the origin has H = 0; report the absolute drift then.
    let drift = if h0 == 0.0 {
        traj.states
            .iter()
            .map(|s| hamiltonian_energy(s, lam, g.alpha).map(f64::abs))
            .try_fold(0.0, |acc: f64, h| h.map(|h| acc.max(h)))?
    } else {
        traj.energy_drift()?
    };
    let j_drift = traj.angular_momentum_drift();
    let text = match g.format {
        Format::Csv => traj.to_csv()?,
        Format::Json => json(&TrajectoryOutput {
            lambda: traj.lambda,
            alpha: traj.alpha,
            step: traj.step,
            times: &traj.times,
            states: &traj.states,
            energy_drift: drift,
            angular_momentum_drift: j_drift,
        })?,
    };
    emit(g.out.as_deref(), &text)?;
    eprintln!(
        "steps: {steps}, dt: {dt}, H(0): {h0}, energy drift: {drift:e}, angular momentum drift: {j_drift:e}"
    );
    Ok(())
}
