//! Dense complex eigendecomposition: Householder reduction to Hessenberg
//! form, single-shift QR iteration with Wilkinson shifts to a triangular
//! Schur form, and eigenvectors by back-substitution on the Schur factor.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;

pub type EigPair = (Vec<Complex64>, CMatrix);

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Unitary reduction to upper Hessenberg form: returns (H, Q) with
/// A = Q H Q* and Q unitary.
fn hessenberg(a: &CMatrix) -> (CMatrix, CMatrix) {
    let n = a.rows();
    let mut h = a.clone();
    let mut q = CMatrix::identity(n);
    if n < 3 {
        return (h, q);
    }
    for k in 0..n - 2 {
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let norm_x = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let phase = if v[0].norm() > 0.0 { v[0] / v[0].norm() } else { ONE };
        v[0] += phase * norm_x; // v0 = x0 + phase*||x||, no cancellation
        let vn = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vn == 0.0 {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vn;
        }
        // left: H <- P H on rows k+1..n
        for j in k..n {
            let mut dot = ZERO;
            for i in k + 1..n {
                dot += v[i - k - 1].conj() * h[(i, j)];
            }
            let f = dot * 2.0;
            for i in k + 1..n {
                let w = v[i - k - 1];
                h[(i, j)] -= f * w;
            }
        }
        // right: H <- H P on cols k+1..n
        for i in 0..n {
            let mut dot = ZERO;
            for j in k + 1..n {
                dot += h[(i, j)] * v[j - k - 1];
            }
            let f = dot * 2.0;
            for j in k + 1..n {
                h[(i, j)] -= f * v[j - k - 1].conj();
            }
        }
        // accumulate Q <- Q P
        for i in 0..n {
            let mut dot = ZERO;
            for j in k + 1..n {
                dot += q[(i, j)] * v[j - k - 1];
            }
            let f = dot * 2.0;
            for j in k + 1..n {
                q[(i, j)] -= f * v[j - k - 1].conj();
            }
        }
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
    (h, q)
}

/// Givens rotation [[c, s], [-conj(s), c]] with real c >= 0 mapping (a, b)
/// to (r, 0).
fn rotation(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let an = a.norm();
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, ZERO);
    }
    if an == 0.0 {
        return (0.0, ONE);
    }
    let r = (an * an + bn * bn).sqrt();
    let c = an / r;
    let s = (a / an) * b.conj() / r;
    (c, s)
}

/// Wilkinson shift: the eigenvalue of the trailing 2x2 block closest to its
/// bottom-right entry.
fn wilkinson(h: &CMatrix, m: usize) -> Complex64 {
    let a = h[(m - 1, m - 1)];
    let b = h[(m - 1, m)];
    let cc = h[(m, m - 1)];
    let d = h[(m, m)];
    let delta = (a - d) * 0.5;
    let bc = b * cc;
    let disc = (delta * delta + bc).sqrt();
    // pick the branch that maximizes |delta + disc| for stability
    let denom = if (delta + disc).norm() >= (delta - disc).norm() {
        delta + disc
    } else {
        delta - disc
    };
    if denom.norm() == 0.0 {
        d
    } else {
        d - bc / denom
    }
}

/// Schur decomposition A = Q T Q* with T upper triangular and Q unitary.
pub fn schur(a: &CMatrix) -> Result<(CMatrix, CMatrix)> {
    if !a.is_square() {
        return Err(Error::Dimension {
            op: "eig",
            detail: format!("{}x{}", a.rows(), a.cols()),
        });
    }
    if !a.is_finite() {
        return Err(Error::NonFinite("eig"));
    }
    let n = a.rows();
    if n == 0 {
        return Ok((CMatrix::zeros(0, 0), CMatrix::zeros(0, 0)));
    }
    let (mut h, mut q) = hessenberg(a);
    let eps = f64::EPSILON;
    let hnorm = h.fro_norm().max(f64::MIN_POSITIVE);
    let mut m = n - 1; // active bottom index
    let mut window_iters = 0usize;
    let mut total_iters = 0usize;
    let cap = 100 * n.max(4);
    loop {
        // deflate tiny subdiagonals
        for i in 0..m {
            let s = h[(i, i)].norm() + h[(i + 1, i + 1)].norm();
            let s = if s > 0.0 { s } else { hnorm };
            if h[(i + 1, i)].norm() <= eps * s {
                h[(i + 1, i)] = ZERO;
            }
        }
        // shrink from the bottom
        while m > 0 && h[(m, m - 1)].norm() == 0.0 {
            m -= 1;
            window_iters = 0;
        }
        if m == 0 {
            break;
        }
        // window start
        let mut l = m;
        while l > 0 && h[(l, l - 1)].norm() != 0.0 {
            l -= 1;
        }
        window_iters += 1;
        total_iters += 1;
        if total_iters > cap {
            return Err(Error::NonConvergence { what: "QR eigenvalue iteration" });
        }
        let sigma = if window_iters % 12 == 0 {
            // exceptional shift breaks rare cycling
            h[(m, m)] + Complex64::new(1.5 * h[(m, m - 1)].norm(), 0.5 * h[(m, m - 1)].norm())
        } else {
            wilkinson(&h, m)
        };
        for i in l..=m {
            h[(i, i)] -= sigma;
        }
        // QR sweep: left rotations zero the subdiagonal
        let mut rots: Vec<(f64, Complex64)> = Vec::with_capacity(m - l);
        for i in l..m {
            let (c, s) = rotation(h[(i, i)], h[(i + 1, i)]);
            rots.push((c, s));
            for j in i..n {
                let x = h[(i, j)];
                let y = h[(i + 1, j)];
                h[(i, j)] = x * c + y * s;
                h[(i + 1, j)] = -s.conj() * x + y * c;
            }
            h[(i + 1, i)] = ZERO;
        }
        // right rotations: H <- H G*, Q <- Q G*
        for (idx, &(c, s)) in rots.iter().enumerate() {
            let i = l + idx;
            let top = (i + 1).min(m);
            for r in 0..=top {
                let x = h[(r, i)];
                let y = h[(r, i + 1)];
                h[(r, i)] = x * c + y * s.conj();
                h[(r, i + 1)] = -s * x + y * c;
            }
            for r in 0..n {
                let x = q[(r, i)];
                let y = q[(r, i + 1)];
                q[(r, i)] = x * c + y * s.conj();
                q[(r, i + 1)] = -s * x + y * c;
            }
        }
        for i in l..=m {
            h[(i, i)] += sigma;
        }
    }
    // clean the strictly lower part
    for i in 0..n {
        for j in 0..i {
            h[(i, j)] = ZERO;
        }
    }
    Ok((h, q))
}

/// Eigenvalues and unit-norm right eigenvectors. Eigenvectors are obtained
/// by back-substitution on the triangular Schur factor; near-singular
/// denominators are perturbed at the rounding level, so vectors for tightly
/// clustered eigenvalues remain usable as a set even when individually
/// ill-conditioned.
pub fn eig(a: &CMatrix) -> Result<EigPair> {
    let n = a.rows();
    let (t, q) = schur(a)?;
    let vals: Vec<Complex64> = (0..n).map(|k| t[(k, k)]).collect();
    let tnorm = t.fro_norm().max(f64::MIN_POSITIVE);
    let tiny = f64::EPSILON * tnorm;
    let mut vecs = CMatrix::zeros(n, n);
    for k in 0..n {
        let lam = vals[k];
        let mut x = vec![ZERO; n];
        x[k] = ONE;
        for i in (0..k).rev() {
            let mut s = ZERO;
            for j in i + 1..=k {
                s += t[(i, j)] * x[j];
            }
            let mut d = t[(i, i)] - lam;
            if d.norm() < tiny {
                d = Complex64::new(tiny, 0.0);
            }
            x[i] = -s / d;
        }
        // v = Q x, normalized
        let mut norm2 = 0.0;
        for xi in x.iter().take(k + 1) {
            norm2 += xi.norm_sqr();
        }
        let norm = norm2.sqrt();
        for i in 0..n {
            let mut v = ZERO;
            for (j, xj) in x.iter().enumerate().take(k + 1) {
                v += q[(i, j)] * xj;
            }
            vecs[(i, k)] = v / norm;
        }
    }
    Ok((vals, vecs))
}

/// Eigendecomposition of a Hermitian matrix via the Schur form (which is
/// diagonal here), with eigenvalues sorted descending and a genuinely
/// unitary eigenvector matrix even for repeated eigenvalues.
pub fn eig_hermitian(a: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let (t, q) = schur(&a.herm_part())?;
    let n = a.rows();
    let mut idx: Vec<usize> = (0..n).collect();
    let vals: Vec<f64> = (0..n).map(|k| t[(k, k)].re).collect();
    idx.sort_by(|&i, &j| vals[j].partial_cmp(&vals[i]).unwrap());
    let sorted: Vec<f64> = idx.iter().map(|&i| vals[i]).collect();
    let mut qs = CMatrix::zeros(n, n);
    for (new, &old) in idx.iter().enumerate() {
        for r in 0..n {
            qs[(r, new)] = q[(r, old)];
        }
    }
    Ok((sorted, qs))
}
