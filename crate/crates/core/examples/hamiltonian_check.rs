//! Apply the Hamiltonian by finite differences to an exact eigenfunction,
//! then show that a wrong eigenvalue is caught.

use curvosc::geometry::DeformParam;
use curvosc::spectrum::{mu, EigenState, QuantumNumbers};
use curvosc::validation::{eigen_residual, interior_grid, Operator, DEFAULT_STEP};

fn main() -> curvosc::Result<()> {
    for text in ["-0.3", "0.2"] {
        let lam = DeformParam::from_decimal(text)?;
        let pts = interior_grid(&lam, 21);
        println!("lambda = {text}");
        for (m, n) in [(0, 0), (1, 0), (1, 1), (2, 1)] {
            let state = EigenState::new(QuantumNumbers::new(m, n), &lam)?;
            let psi = |x: f64, y: f64| state.psi(x, y);
            let e = state.energy.e;
            let full = eigen_residual(Operator::Full, &psi, e, &lam, &pts, DEFAULT_STEP)?;
            let h1 = eigen_residual(Operator::Combination([1.0, 0.0, 0.0]), &psi, mu(m, &lam)?, &lam, &pts, DEFAULT_STEP)?;
            let wrong = eigen_residual(Operator::Full, &psi, e + 0.1, &lam, &pts, DEFAULT_STEP)?;
            println!(
                "  ({m},{n}) e = {e:.4}: H {:.1e}  H1 {:.1e}  shifted e {:.1e}",
                full.max_abs, h1.max_abs, wrong.max_abs
            );
        }
    }
    Ok(())
}
