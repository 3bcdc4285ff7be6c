//! Classical orbits: conservation, quasi-harmonic shape and the amplitude
//! dependence of the frequency on the sphere.

use curvosc::classical::{fit_oscillation_1d, fit_quasi_harmonic, integrate_trajectory, ClassicalState};
use curvosc::geometry::DeformParam;

fn main() -> curvosc::Result<()> {
    let lam = DeformParam::from_decimal("-0.25")?;
    let traj = integrate_trajectory(ClassicalState::new(1.0, 0.0, 0.0, 0.5), &lam, 1.0, 1e-3, 20_000)?;
    let fit = fit_quasi_harmonic(&traj)?;
    println!("lambda = -0.25, start (1, 0, 0, 0.5)");
    println!("  energy drift {:.1e}, J drift {:.1e}", traj.energy_drift()?, traj.angular_momentum_drift());
    println!("  omega {:.6}, A {:.6}, B {:.6}, residual {:.1e}", fit.omega, fit.a, fit.b, fit.relative_residual);

    println!("\n1D oscillations at rest, lambda = -0.5: omega^2 (1 + lambda A^2) stays 1");
    let lam = DeformParam::from_decimal("-0.5")?;
    for x0 in [0.2, 0.6, 1.0] {
        let traj = integrate_trajectory(ClassicalState::new(x0, 0.0, 0.0, 0.0), &lam, 1.0, 1e-3, 15_000)?;
        let (a, omega) = fit_oscillation_1d(&traj)?;
        println!("  A = {a:.6}  omega = {omega:.6}  omega^2 (1 - A^2 / 2) = {:.9}", omega * omega * (1.0 - 0.5 * a * a));
    }

    let lam = DeformParam::from_decimal("0.5")?;
    let escape = integrate_trajectory(ClassicalState::new(0.5, 0.0, 2.0, 0.0), &lam, 1.0, 1e-3, 3000)?;
    let last = escape.states.last().expect("trajectory starts somewhere");
    println!("\nhyperbolic escape, lambda = 0.5: x = {:.2} after t = 3", last.x);
    Ok(())
}
