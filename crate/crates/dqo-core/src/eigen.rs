//! Dense symmetric eigenvalues: Householder tridiagonalization followed by
//! Sturm-sequence bisection.
//!
//! Only eigenvalues are needed downstream (normal-mode frequencies), so the
//! reduction skips all eigenvector accumulation and the bisection refines
//! each eigenvalue independently to machine precision. Deterministic,
//! allocation-light, and fast enough for the few-thousand-mode matrices of
//! [`crate::normal_mode`] — the largest cost is the O(n³) reduction.

use alloc::vec;
use alloc::vec::Vec;

/// Eigenvalues, in ascending order, of the symmetric `n × n` matrix stored
/// row-major in `a`. Only the lower triangle is read.
pub fn symmetric_eigenvalues(a: &[f64], n: usize) -> Vec<f64> {
    assert_eq!(a.len(), n * n, "matrix storage must be n·n");
    if n == 0 {
        return Vec::new();
    }
    let (d, e) = householder_tridiagonal(a, n);
    tridiagonal_eigenvalues(&d, &e)
}

/// Reduces a symmetric matrix to tridiagonal form by Householder reflections
/// (no eigenvector accumulation). Returns the diagonal `d` and subdiagonal
/// `e` (with `e[0] = 0`).
fn householder_tridiagonal(a: &[f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut z = a.to_vec();
    let mut d = vec![0.0f64; n];
    let mut e = vec![0.0f64; n];
    for i in (1..n).rev() {
        let l = i - 1;
        if l > 0 {
            let mut scale = 0.0;
            for k in 0..=l {
                scale += libm::fabs(z[i * n + k]);
            }
            if scale == 0.0 {
                e[i] = z[i * n + l];
            } else {
                let mut h = 0.0;
                for k in 0..=l {
                    z[i * n + k] /= scale;
                    h += z[i * n + k] * z[i * n + k];
                }
                let f = z[i * n + l];
                let g = if f >= 0.0 { -libm::sqrt(h) } else { libm::sqrt(h) };
                e[i] = scale * g;
                h -= f * g;
                z[i * n + l] = f - g;
                // p = A·u/h and the rank-two update A ← A − u·pᵀ − p·uᵀ,
                // using e[0..=l] as workspace for p (finalized later).
                let mut udotp = 0.0;
                for j in 0..=l {
                    let mut g2 = 0.0;
                    for k in 0..=j {
                        g2 += z[j * n + k] * z[i * n + k];
                    }
                    for k in (j + 1)..=l {
                        g2 += z[k * n + j] * z[i * n + k];
                    }
                    e[j] = g2 / h;
                    udotp += e[j] * z[i * n + j];
                }
                let hh = udotp / (2.0 * h);
                for j in 0..=l {
                    let fj = z[i * n + j];
                    let gj = e[j] - hh * fj;
                    e[j] = gj;
                    for k in 0..=j {
                        z[j * n + k] -= fj * e[k] + gj * z[i * n + k];
                    }
                }
            }
        } else {
            e[i] = z[i * n + l];
        }
    }
    for i in 0..n {
        d[i] = z[i * n + i];
    }
    (d, e)
}

/// Number of eigenvalues of the tridiagonal matrix strictly below `x`,
/// counted through the signs of the Sturm sequence (LDLᵀ pivots).
fn sturm_count(d: &[f64], e2: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0f64;
    for i in 0..d.len() {
        q = d[i] - x - if i > 0 { e2[i] / q } else { 0.0 };
        if q < 0.0 {
            count += 1;
        }
        if q == 0.0 {
            q = 1e-300;
        }
    }
    count
}

/// All eigenvalues of the tridiagonal matrix (diagonal `d`, subdiagonal `e`)
/// by bisection on the Sturm count; ascending order.
fn tridiagonal_eigenvalues(d: &[f64], e: &[f64]) -> Vec<f64> {
    let n = d.len();
    let e2: Vec<f64> = e.iter().map(|x| x * x).collect();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = libm::fabs(e[i]) + if i + 1 < n { libm::fabs(e[i + 1]) } else { 0.0 };
        lo = lo.min(d[i] - r);
        hi = hi.max(d[i] + r);
    }
    let margin = 1e-13 * (hi - lo) + 1e-300;
    lo -= margin;
    hi += margin;
    let mut out = vec![0.0f64; n];
    for k in 0..n {
        // Previously found eigenvalues bound the next one from below.
        let mut a = if k > 0 { out[k - 1] - margin } else { lo };
        let mut b = hi;
        while b - a > 1e-15 * libm::fabs(a).max(libm::fabs(b)) + 1e-300 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if sturm_count(d, &e2, mid) > k {
                b = mid;
            } else {
                a = mid;
            }
        }
        out[k] = 0.5 * (a + b);
    }
    out
}
