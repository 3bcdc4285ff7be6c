//! Metric, invariant measure, Killing fields and the curvature-labelled
//! trigonometric functions.

use curvosc::geometry::{
    killing_fields, ktrig, lagrangian_cartesian, lagrangian_geodesic, measure_density, metric_at, pushforward_polar,
    DeformParam, TrigKind,
};

fn main() -> curvosc::Result<()> {
    for kappa in [1.0, 0.0, -1.0] {
        let t = ktrig(TrigKind::Tan, kappa, 0.8)?;
        println!("kappa = {kappa:+}: Sin {:.6}  Cos {:.6}  Tan {t:.6}", ktrig(TrigKind::Sin, kappa, 0.8)?, ktrig(TrigKind::Cos, kappa, 0.8)?);
    }

    let lam = DeformParam::from_decimal("-0.4")?;
    let (x, y) = (0.5, -0.7);
    let g = metric_at(x, y, &lam)?;
    println!("\nlambda = -0.4 at ({x}, {y})");
    println!("  metric [[{:.6}, {:.6}], [., {:.6}]], det {:.6}", g.g_xx, g.g_xy, g.g_yy, g.determinant());
    println!("  density {:.6} (sqrt det {:.6})", measure_density(x, y, &lam)?, g.determinant().sqrt());
    println!("  Killing fields {:?}", killing_fields(x, y, &lam)?);

    // The same Lagrangian in geodesic polar and in Cartesian coordinates.
    let (r_geo, phi, v_r, v_phi) = (0.9, 0.4, 0.3, -0.8);
    let [x, y, vx, vy] = pushforward_polar(r_geo, phi, v_r, v_phi, 0.4)?;
    println!(
        "  L geodesic {:.12}  L cartesian {:.12}",
        lagrangian_geodesic(r_geo, v_r, v_phi, 0.4, 1.0)?,
        lagrangian_cartesian(x, y, vx, vy, &lam, 1.0)?
    );
    Ok(())
}
