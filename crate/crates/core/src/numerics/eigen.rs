//! Eigenvalues of real symmetric tridiagonal matrices.
//!
//! Two independent routes: Sturm-sequence bisection (used for the `k`
//! smallest eigenvalues of large finite-difference operators) and the
//! implicit-shift QL iteration, which also tracks the first component of
//! every eigenvector for Golub–Welsch.

use crate::error::{Error, Result};

fn check_shape(diag: &[f64], offdiag: &[f64]) -> Result<()> {
    if diag.is_empty() {
        return Err(Error::InvalidArgument("empty matrix".into()));
    }
    if offdiag.len() + 1 != diag.len() {
        return Err(Error::InvalidArgument(format!(
            "offdiag length {} must be diag length {} minus one",
            offdiag.len(),
            diag.len()
        )));
    }
    if diag.iter().chain(offdiag).any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("matrix entries must be finite".into()));
    }
    Ok(())
}

/// Number of eigenvalues strictly below `lambda` (LDLᵀ inertia count).
pub fn sturm_count(diag: &[f64], offdiag: &[f64], lambda: f64) -> usize {
    let pivmin = f64::MIN_POSITIVE * offdiag.iter().fold(1.0f64, |m, e| m.max(e * e));
    let mut count = 0;
    let mut q = diag[0] - lambda;
    for i in 0.. {
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
        if i + 1 == diag.len() {
            break;
        }
        q = diag[i + 1] - lambda - offdiag[i] * offdiag[i] / q;
    }
    count
}

/// The `k` smallest eigenvalues in ascending order, by bisection.
pub fn symtridiag_eigen(diag: &[f64], offdiag: &[f64], k: usize) -> Result<Vec<f64>> {
    check_shape(diag, offdiag)?;
    if k == 0 || k > diag.len() {
        return Err(Error::InvalidArgument(format!("k = {k} out of range 1..={}", diag.len())));
    }
    // Gershgorin enclosure
    let n = diag.len();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..n {
        let r = if i > 0 { offdiag[i - 1].abs() } else { 0.0 }
            + if i + 1 < n { offdiag[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    let norm = lo.abs().max(hi.abs());
    let pad = 2.0 * f64::EPSILON * norm + f64::MIN_POSITIVE;
    lo -= pad;
    hi += pad;

    let mut out = Vec::with_capacity(k);
    for j in 0..k {
        let (mut a, mut b) = (lo, hi);
        if let Some(&prev) = out.last() {
            a = f64::max(a, prev - pad);
        }
        while b - a > 2.0 * f64::EPSILON * a.abs().max(b.abs()) + f64::MIN_POSITIVE {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if sturm_count(diag, offdiag, mid) > j {
                b = mid;
            } else {
                a = mid;
            }
        }
        out.push(0.5 * (a + b));
    }
    Ok(out)
}

/// All eigenvalues (ascending) together with the first component of each
/// normalized eigenvector, by implicit-shift QL.
pub fn symtridiag_eigen_ql(diag: &[f64], offdiag: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    check_shape(diag, offdiag)?;
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = offdiag.to_vec();
    e.push(0.0);
    let mut z = vec![0.0; n];
    z[0] = 1.0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::InvalidArgument(format!(
                    "QL iteration did not converge for eigenvalue {l}"
                )));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    Ok((order.iter().map(|&i| d[i]).collect(), order.iter().map(|&i| z[i]).collect()))
}
