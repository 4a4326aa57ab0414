//! Singular values by one-sided Jacobi orthogonalization. Accurate to
//! rounding for the desk-scale matrices this crate works with.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;

/// Descending singular values of `a`.
pub fn svd_values(a: &CMatrix) -> Result<Vec<f64>> {
    if !a.is_finite() {
        return Err(Error::NonFinite("svd_values"));
    }
    // work on the tall orientation; singular values are shared with a*
    let work = if a.rows() >= a.cols() { a.clone() } else { a.adjoint() };
    let (m, n) = (work.rows(), work.cols());
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut g: Vec<Vec<Complex64>> = (0..n)
        .map(|j| (0..m).map(|i| work[(i, j)]).collect())
        .collect();
    let tol = 1e-15;
    let max_sweeps = 60;
    for _ in 0..max_sweeps {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = Complex64::new(0.0, 0.0);
                for i in 0..m {
                    app += g[p][i].norm_sqr();
                    aqq += g[q][i].norm_sqr();
                    apq += g[p][i].conj() * g[q][i];
                }
                let denom = (app * aqq).sqrt();
                if denom == 0.0 || apq.norm() <= tol * denom {
                    continue;
                }
                off = off.max(apq.norm() / denom);
                // rotation diagonalizing [[app, apq], [conj(apq), aqq]]
                let phi = apq / apq.norm();
                let theta = 0.5 * (2.0 * apq.norm()).atan2(app - aqq);
                let (cs, sn) = (theta.cos(), theta.sin());
                for i in 0..m {
                    let gp = g[p][i];
                    let gq = g[q][i];
                    g[p][i] = gp * cs + gq * phi.conj() * sn;
                    g[q][i] = -gp * phi * sn + gq * cs;
                }
            }
        }
        if off <= tol {
            let mut sv: Vec<f64> = g
                .iter()
                .map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
                .collect();
            sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
            return Ok(sv);
        }
    }
    Err(Error::NonConvergence { what: "Jacobi SVD" })
}
