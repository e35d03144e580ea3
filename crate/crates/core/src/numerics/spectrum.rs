use super::eigen::symtridiag_eigen;
use crate::error::{Error, Result};

/// Lowest `k` eigenvalues of `-½ d²/dx² + V` with Dirichlet walls at
/// `±half_width`, discretized by the 3-point Laplacian on `count` interior
/// points.
pub fn discretized_spectrum<V>(potential: V, half_width: f64, count: usize, k: usize) -> Result<Vec<f64>>
where
    V: Fn(f64) -> f64,
{
    if !(half_width > 0.0 && half_width.is_finite()) {
        return Err(Error::InvalidArgument(format!("half_width must be positive, got {half_width}")));
    }
    if count < 100 {
        return Err(Error::InvalidArgument(format!("need at least 100 grid points, got {count}")));
    }
    if k == 0 || k > count {
        return Err(Error::InvalidArgument(format!("k = {k} out of range 1..={count}")));
    }
    let h = 2.0 * half_width / (count + 1) as f64;
    let kinetic = 1.0 / (h * h);
    let mut diag = Vec::with_capacity(count);
    for i in 1..=count {
        let x = -half_width + i as f64 * h;
        let v = potential(x);
        if !v.is_finite() {
            return Err(Error::NonFinite { x, value: v });
        }
        diag.push(kinetic + v);
    }
    let off = vec![-0.5 * kinetic; count - 1];
    symtridiag_eigen(&diag, &off, k)
}
