//! Independent grid eigenvalues of the one-dimensional problems, compared
//! with the exact spectrum.

use curvosc::geometry::DeformParam;
use curvosc::spectrum::{mu, nu};
use curvosc::validation::{sl_grid_eigen, GridSpec, SlProblem};

fn main() -> curvosc::Result<()> {
    let lam = DeformParam::from_decimal("-0.3")?;
    println!("Z problem, lambda = -0.3");
    for points in [250, 500, 1000, 2000] {
        let grid = sl_grid_eigen(SlProblem::Z, &lam, 3, &GridSpec::for_lambda(&lam, points))?;
        let errs: Vec<String> = grid
            .iter()
            .enumerate()
            .map(|(i, g)| Ok(format!("{:+.2e}", g - mu(i, &lam)?)))
            .collect::<curvosc::Result<_>>()?;
        println!("  {points:>4} points: errors {}", errs.join("  "));
    }

    let lam = DeformParam::from_decimal("0.2")?;
    let grid = sl_grid_eigen(SlProblem::Y { m: 1 }, &lam, 2, &GridSpec::for_lambda(&lam, 2000))?;
    println!("Y problem (m = 1), lambda = 0.2");
    for (n, g) in grid.iter().enumerate() {
        println!("  nu_{n}: grid {g:.6}  exact {:.6}", nu(n, 1, &lam)?);
    }
    Ok(())
}
