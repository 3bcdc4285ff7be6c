//! Datasets behind the seven figures: potential profiles (I to III),
//! the Hermite function `Z_2` (IV, V) and the level energies (VI, VII).

use std::path::Path;

use super::output::{csv, write_atomic};
use crate::error::{Error, Result};
use crate::geometry::{ktrig, potential, DeformParam, TrigKind};
use crate::spectrum::{level_count, level_energy, z_function};

type Table = (String, Vec<&'static str>, Vec<Vec<String>>);

fn param(text: &str) -> DeformParam {
    DeformParam::from_decimal(text).expect("literal decimals parse")
}

fn samples(lo: f64, hi: f64, count: usize) -> impl Iterator<Item = f64> {
    (0..count).map(move |i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
}

/// `V = (1/2) x^2 / (1 + lam x^2)` for `alpha = 1`, clipped where the
/// sphere's potential wall blows up.
fn potential_curves(lams: &[&str]) -> Result<Vec<Vec<String>>> {
    let mut rows = Vec::new();
    for text in lams {
        let lam = param(text);
        for x in samples(-4.0, 4.0, 401) {
            if lam.w(x) < 0.05 {
                continue;
            }
            let v = potential(x, 0.0, &lam, 1.0)?;
            rows.push(vec![text.to_string(), x.to_string(), v.to_string()]);
        }
    }
    Ok(rows)
}

/// `U_k(R) = (1/2) Tan_k(R)^2` for `alpha = 1`.
fn curved_potential() -> Result<Vec<Vec<String>>> {
    let mut rows = Vec::new();
    for kappa in [-1.0, 0.0, 1.0] {
        for r in samples(0.0, 1.4, 141) {
            let t = ktrig(TrigKind::Tan, kappa, r)?;
            rows.push(vec![kappa.to_string(), r.to_string(), (0.5 * t * t).to_string()]);
        }
    }
    Ok(rows)
}

fn hermite_curves(lams: &[&str]) -> Result<Vec<Vec<String>>> {
    let mut rows = Vec::new();
    for text in lams {
        let lam = param(text);
        let z2 = z_function(2, &lam)?;
        let half = lam.half_width().map_or(4.0, |a| a.min(4.0));
        for z in samples(-half, half, 401) {
            rows.push(vec![text.to_string(), z.to_string(), z2.eval(z).to_string()]);
        }
    }
    Ok(rows)
}

/// Continuous `e(N) = (N + 1)(1 - lam N / 2)` and the bound levels as points.
fn energy_curves(lams: &[&str], n_end: f64, points_for_unbounded: usize) -> Result<[Vec<Vec<String>>; 2]> {
    let mut curves = Vec::new();
    let mut points = Vec::new();
    for text in lams {
        let lam = param(text);
        let l = lam.lambda();
        for n in samples(0.0, n_end, 141) {
            let e = (n + 1.0) * (1.0 - 0.5 * l * n);
            curves.push(vec![text.to_string(), n.to_string(), e.to_string()]);
        }
        if l == 0.0 {
            continue;
        }
        let count = level_count(&lam).unwrap_or(points_for_unbounded);
        for level in 0..count {
            let e = level_energy(level, &lam)?;
            points.push(vec![
                text.to_string(),
                level.to_string(),
                e.to_string(),
                (level + 1).to_string(),
            ]);
        }
    }
    Ok([curves, points])
}

fn tables(id: &str) -> Result<Vec<Table>> {
    let name = |suffix: &str| format!("figure_{id}{suffix}.csv");
    Ok(match id {
        "I" => vec![(name(""), vec!["lambda", "x", "V"], potential_curves(&["-0.25", "-0.5", "-1", "-2"])?)],
        "II" => vec![(name(""), vec!["lambda", "x", "V"], potential_curves(&["0.25", "0.5", "1", "2"])?)],
        "III" => vec![(name(""), vec!["kappa", "R", "U"], curved_potential()?)],
        "IV" => vec![(name(""), vec!["lambda", "z", "Z2"], hermite_curves(&["0", "-0.15", "-0.30"])?)],
        "V" => vec![(name(""), vec!["lambda", "z", "Z2"], hermite_curves(&["0", "0.15", "0.30"])?)],
        "VI" => {
            let [curves, points] = energy_curves(&["0.30", "0", "-0.30"], 6.0, 3)?;
            vec![
                (name("_curves"), vec!["lambda", "N", "e"], curves),
                (name("_points"), vec!["lambda", "N", "e", "degeneracy"], points),
            ]
        }
        "VII" => {
            let [curves, points] = energy_curves(&["0.45", "0.30", "0.15"], 8.0, 0)?;
            vec![
                (name("_curves"), vec!["lambda", "N", "e"], curves),
                (name("_points"), vec!["lambda", "N", "e", "degeneracy"], points),
            ]
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "unknown figure {id:?}; expected one of I, II, III, IV, V, VI, VII"
            )))
        }
    })
}

/// Write the CSV files of figure `id` into `dir` and list them on stdout.
pub fn emit(id: &str, dir: Option<&Path>) -> Result<()> {
    let dir = dir.unwrap_or(Path::new("."));
    let tables = tables(id)?;
    std::fs::create_dir_all(dir)?;
    for (file, header, rows) in tables {
        let path = dir.join(file);
        write_atomic(&path, &csv(&header, &rows))?;
        println!("{}", path.display());
    }
    Ok(())
}
