//! Partial-pivoted LU factorization and the solves built on it.


use crate::error::{Error, Result};
use crate::matrix::CMatrix;

struct Lu {
    lu: CMatrix,
    perm: Vec<usize>,
}

/// Factor `a` with partial pivoting. A pivot whose magnitude falls below
/// `rank_tol * ||a||_F` is reported as a singularity together with the
/// offending pivot magnitude.
fn factor(a: &CMatrix, rank_tol: f64) -> Result<Lu> {
    if !a.is_square() {
        return Err(Error::Dimension {
            op: "solve",
            detail: format!("coefficient matrix is {}x{}", a.rows(), a.cols()),
        });
    }
    if !a.is_finite() {
        return Err(Error::NonFinite("solve"));
    }
    let n = a.rows();
    let scale = a.fro_norm();
    let floor = rank_tol * if scale > 0.0 { scale } else { 1.0 };
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let (mut piv, mut pmag) = (k, lu[(k, k)].norm());
        for i in k + 1..n {
            let m = lu[(i, k)].norm();
            if m > pmag {
                piv = i;
                pmag = m;
            }
        }
        if pmag < floor {
            return Err(Error::Singular { pivot: pmag });
        }
        if piv != k {
            perm.swap(k, piv);
            for j in 0..n {
                let tmp = lu[(k, j)];
                lu[(k, j)] = lu[(piv, j)];
                lu[(piv, j)] = tmp;
            }
        }
        let d = lu[(k, k)];
        for i in k + 1..n {
            let f = lu[(i, k)] / d;
            lu[(i, k)] = f;
            for j in k + 1..n {
                let s = lu[(k, j)];
                lu[(i, j)] -= f * s;
            }
        }
    }
    Ok(Lu { lu, perm })
}

fn substitute(f: &Lu, b: &CMatrix) -> CMatrix {
    let n = f.lu.rows();
    let m = b.cols();
    let mut x = CMatrix::zeros(n, m);
    for (i, &pi) in f.perm.iter().enumerate() {
        for j in 0..m {
            x[(i, j)] = b[(pi, j)];
        }
    }
    // forward: L y = P b
    for k in 0..n {
        for i in k + 1..n {
            let f_ik = f.lu[(i, k)];
            if f_ik.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..m {
                let y = x[(k, j)];
                x[(i, j)] -= f_ik * y;
            }
        }
    }
    // backward: U x = y
    for k in (0..n).rev() {
        let d = f.lu[(k, k)];
        for j in 0..m {
            x[(k, j)] /= d;
        }
        for i in 0..k {
            let u_ik = f.lu[(i, k)];
            if u_ik.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..m {
                let y = x[(k, j)];
                x[(i, j)] -= u_ik * y;
            }
        }
    }
    x
}

/// Solve `a X = b` by partial-pivoted elimination.
pub fn solve(a: &CMatrix, b: &CMatrix, rank_tol: f64) -> Result<CMatrix> {
    if b.rows() != a.rows() {
        return Err(Error::Dimension {
            op: "solve",
            detail: format!("rhs has {} rows, matrix is {}x{}", b.rows(), a.rows(), a.cols()),
        });
    }
    if a.rows() == 0 {
        return Ok(CMatrix::zeros(0, b.cols()));
    }
    let f = factor(a, rank_tol)?;
    Ok(substitute(&f, b))
}

/// Solve `a* X = b` without forming the adjoint at the call site.
pub fn solve_adjoint(a: &CMatrix, b: &CMatrix, rank_tol: f64) -> Result<CMatrix> {
    solve(&a.adjoint(), b, rank_tol)
}

pub fn inverse(a: &CMatrix, rank_tol: f64) -> Result<CMatrix> {
    solve(a, &CMatrix::identity(a.rows()), rank_tol)
}
