//! Build `Z_m` and `Y_n` three ways and print the exact coefficients.
//!
//! ```text
//! cargo run --example deformed_hermite -- -3/10
//! ```

use curvosc::geometry::DeformParam;
use curvosc::polyengine::{construct, route_constant, Admissibility, FamilyTag, Route};
use num_rational::BigRational;

fn main() -> curvosc::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "-0.3".into());
    let lam = DeformParam::from_decimal(&text)?;
    for tag in [FamilyTag::Z, FamilyTag::Y { m_partner: 1 }] {
        println!("{tag} at lambda = {}", lam.exact());
        for index in 0..=4 {
            let p = construct::<BigRational>(tag, index, &lam, Route::Recursion, Admissibility::Strict)?;
            let coeffs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
            let k = route_constant::<BigRational>(tag, index, &lam, Route::Rodrigues, Admissibility::Strict)?;
            let g = route_constant::<BigRational>(tag, index, &lam, Route::GeneratingFunction, Admissibility::Strict)?;
            println!("  {index}: [{}]  k = {k}  g = {g}", coeffs.join(", "));
        }
    }
    Ok(())
}
