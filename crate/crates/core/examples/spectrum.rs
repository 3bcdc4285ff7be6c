//! Energy levels on the sphere, the plane and the hyperbolic plane.

use curvosc::geometry::DeformParam;
use curvosc::spectrum::{enumerate_bound_states, level_count, level_energy, level_spacing};

fn main() -> curvosc::Result<()> {
    for text in ["-0.3", "0", "0.15", "0.3"] {
        let lam = DeformParam::from_decimal(text)?;
        let levels = level_count(&lam).unwrap_or(4);
        print!("lambda = {text:>5}:");
        for n in 0..levels {
            print!("  e_{n} = {:.4}", level_energy(n, &lam)?);
        }
        match level_count(&lam) {
            Some(c) => println!("  ({c} bound levels)"),
            None => println!("  (spacing e_1 - e_0 = {:.4})", level_spacing(0, &lam)?),
        }
    }

    let lam = DeformParam::from_decimal("0.3")?;
    println!("\nbound states at lambda = 0.3");
    for (qn, e) in enumerate_bound_states(&lam, None)? {
        println!("  (m, n) = ({}, {})  N = {}  e = {}", qn.m, qn.n, qn.level(), e.e);
    }
    Ok(())
}
