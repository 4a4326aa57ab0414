//! Householder QR, used for orthonormal bases of column spans.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;

/// Orthonormal basis of the column span of `a` via Householder QR.
/// Requires full column rank to tolerance: the factorization must produce
/// every diagonal of R above `rank_tol * ||a||_F`.
pub fn orthonormalize(a: &CMatrix, rank_tol: f64) -> Result<CMatrix> {
    let (m, n) = (a.rows(), a.cols());
    if n == 0 {
        return Ok(CMatrix::zeros(m, 0));
    }
    if m < n {
        return Err(Error::RankDeficient {
            op: "orthonormalize",
            pivot: 0.0,
        });
    }
    let scale = a.fro_norm();
    let floor = rank_tol * if scale > 0.0 { scale } else { 1.0 };
    let mut r = a.clone();
    // reflectors v_k stored column-wise; each is unit 2-norm
    let mut reflectors: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for k in 0..n {
        let mut v: Vec<Complex64> = (k..m).map(|i| r[(i, k)]).collect();
        let norm_x = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm_x < floor {
            return Err(Error::RankDeficient {
                op: "orthonormalize",
                pivot: norm_x,
            });
        }
        // alpha = -exp(i arg(x0)) ||x|| avoids cancellation in v0
        let phase = if v[0].norm() > 0.0 { v[0] / v[0].norm() } else { Complex64::new(1.0, 0.0) };
        let alpha = -phase * norm_x;
        v[0] -= alpha;
        let vn = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vn > 0.0 {
            for z in v.iter_mut() {
                *z /= vn;
            }
            // apply P = I - 2 v v* to the trailing columns
            for j in k..n {
                let mut dot = Complex64::new(0.0, 0.0);
                for i in k..m {
                    dot += v[i - k].conj() * r[(i, j)];
                }
                let f = dot * 2.0;
                for i in k..m {
                    let w = v[i - k];
                    r[(i, j)] -= f * w;
                }
            }
        }
        let diag = r[(k, k)].norm();
        if diag < floor {
            return Err(Error::RankDeficient {
                op: "orthonormalize",
                pivot: diag,
            });
        }
        reflectors.push(v);
    }
    // Q = P_0 ... P_{n-1} [e_0 .. e_{n-1}]
    let mut q = CMatrix::zeros(m, n);
    for j in 0..n {
        q[(j, j)] = Complex64::new(1.0, 0.0);
    }
    for k in (0..n).rev() {
        let v = &reflectors[k];
        for j in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for i in k..m {
                dot += v[i - k].conj() * q[(i, j)];
            }
            let f = dot * 2.0;
            for i in k..m {
                let w = v[i - k];
                q[(i, j)] -= f * w;
            }
        }
    }
    Ok(q)
}
