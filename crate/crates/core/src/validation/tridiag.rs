//! Lowest eigenvalues of a real symmetric tridiagonal matrix by Sturm
//! sequence bisection.

use crate::error::{Error, Result};

/// Number of eigenvalues strictly below `x`.
pub fn sturm_count(d: &[f64], e: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..d.len() {
        let off = if i == 0 { 0.0 } else { e[i - 1] * e[i - 1] / q };
        q = d[i] - x - off;
        if q == 0.0 {
            q = -f64::EPSILON * (d[i].abs() + x.abs()).max(f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn gershgorin(d: &[f64], e: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..d.len() {
        let left = if i > 0 { e[i - 1].abs() } else { 0.0 };
        let right = if i < e.len() { e[i].abs() } else { 0.0 };
        lo = lo.min(d[i] - left - right);
        hi = hi.max(d[i] + left + right);
    }
    (lo, hi)
}

/// The `k` smallest eigenvalues in ascending order. `e` holds the
/// off-diagonal, one shorter than `d`.
pub fn lowest_eigenvalues(d: &[f64], e: &[f64], k: usize) -> Result<Vec<f64>> {
    if d.is_empty() || e.len() + 1 != d.len() {
        return Err(Error::InvalidArgument(format!(
            "diagonal of length {} needs {} off-diagonal entries, got {}",
            d.len(),
            d.len().saturating_sub(1),
            e.len()
        )));
    }
    if k > d.len() {
        return Err(Error::InvalidArgument(format!("asked for {k} eigenvalues of a {}x{} matrix", d.len(), d.len())));
    }
    if d.iter().chain(e).any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("matrix has non-finite entries".into()));
    }
    let (lo, hi) = gershgorin(d, e);
    let scale = lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
    (0..k)
        .map(|j| {
            // Smallest x with more than j eigenvalues below it.
            let (mut a, mut b) = (lo, hi);
            while b - a > 4.0 * f64::EPSILON * scale.max(a.abs().max(b.abs())) {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                if sturm_count(d, e, mid) > j {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            Ok(0.5 * (a + b))
        })
        .collect()
}
