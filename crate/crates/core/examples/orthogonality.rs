//! Gram matrices of the Hermite functions under their weights.

use curvosc::geometry::DeformParam;
use curvosc::quadrature::{factorized_product, gram_y, gram_z, normalize, DEFAULT_REL_TOL};
use curvosc::spectrum::{EigenState, QuantumNumbers};

fn main() -> curvosc::Result<()> {
    let lam = DeformParam::from_decimal("-0.3")?;
    let z = gram_z(4, &lam, DEFAULT_REL_TOL)?;
    print!("Z family, lambda = -0.3\n{}", z.to_csv());
    let (ratio, pair) = z.worst_off_diagonal();
    println!("worst off/diagonal ratio {ratio:.2e} at {pair:?}\n");

    let lam = DeformParam::from_decimal("0.15")?;
    let y = gram_y(3, 1, &lam, DEFAULT_REL_TOL)?;
    print!("Y family (m = 1), lambda = 0.15\n{}", y.to_csv());

    // Normalised 2D states are orthonormal under the invariant measure.
    let a = normalize(&EigenState::new(QuantumNumbers::new(1, 1), &lam)?)?;
    let b = normalize(&EigenState::new(QuantumNumbers::new(1, 0), &lam)?)?;
    println!("\n<11|11> = {:.12}", factorized_product(&a, &a)?);
    println!("<11|10> = {:.3e}", factorized_product(&a, &b)?);
    Ok(())
}
