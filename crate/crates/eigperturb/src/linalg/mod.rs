//! Dense complex linear-algebra kernel: LU solves, Householder QR,
//! Hessenberg + shifted-QR eigendecomposition, one-sided Jacobi singular
//! values, and a scaling-and-squaring matrix exponential. All routines are
//! pure functions of their inputs.

mod eig;
mod expm;
mod lu;
mod qr;
mod svd;

pub use eig::{eig, eig_hermitian, schur, EigPair};
pub use expm::expm;
pub use lu::{inverse, solve, solve_adjoint};
pub use qr::orthonormalize;
pub use svd::svd_values;

use crate::matrix::CMatrix;

/// Two-norm condition estimate from singular values; infinite when the
/// smallest singular value underflows to zero.
pub fn cond_estimate(a: &CMatrix) -> f64 {
    if a.rows() == 0 || a.cols() == 0 {
        return 1.0;
    }
    let sv = svd_values(a).unwrap_or_default();
    match (sv.first(), sv.last()) {
        (Some(&hi), Some(&lo)) if lo > 0.0 => hi / lo,
        _ => f64::INFINITY,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{c, CMatrix};
    use num_complex::Complex64;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMatrix {
        CMatrix::from_fn(rows, cols, |_, _| {
            Complex64::new(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0)
        })
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let b = CMatrix::from_real(&[&[1.0, 2.0], &[3.0, 4.0], &[5.0, 6.0]]);
        let x = solve(&CMatrix::identity(3), &b, 1e-12).unwrap();
        assert!((&x - &b).fro_norm() < 1e-14);
    }

    #[test]
    fn solve_scaled_identity() {
        let a = CMatrix::identity(3).scale_re(2.0);
        let x = solve(&a, &CMatrix::identity(3), 1e-12).unwrap();
        assert!((&x - &CMatrix::identity(3).scale_re(0.5)).fro_norm() < 1e-14);
    }

    #[test]
    fn solve_residual_on_random_system() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = random_matrix(&mut rng, 5, 5);
        let b = random_matrix(&mut rng, 5, 2);
        let x = solve(&a, &b, 1e-12).unwrap();
        let r = (&a.matmul(&x).unwrap() - &b).fro_norm();
        assert!(r <= 1e-12 * a.fro_norm() * x.fro_norm().max(1.0), "residual {r}");
    }

    #[test]
    fn solve_reports_singularity_with_pivot() {
        let a = CMatrix::from_real(&[&[1.0, 2.0], &[2.0, 4.0]]);
        match solve(&a, &CMatrix::identity(2), 1e-12) {
            Err(crate::error::Error::Singular { pivot }) => assert!(pivot < 1e-12 * a.fro_norm()),
            other => panic!("expected singularity, got {other:?}"),
        }
    }

    #[test]
    fn solve_matmul_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let a = &random_matrix(&mut rng, 6, 6) + &CMatrix::identity(6).scale_re(4.0);
            let x = random_matrix(&mut rng, 6, 3);
            let b = a.matmul(&x).unwrap();
            let x2 = solve(&a, &b, 1e-12).unwrap();
            assert!((&x2 - &x).fro_norm() <= 1e-10 * x.fro_norm());
        }
    }

    #[test]
    fn orthonormalize_unit_column() {
        let a = CMatrix::from_real(&[&[1.0], &[1.0]]);
        let q = orthonormalize(&a, 1e-12).unwrap();
        let inv = 1.0 / 2.0_f64.sqrt();
        // up to column phase
        let phase = q[(0, 0)] / c(inv, 0.0);
        assert!((phase.norm() - 1.0).abs() < 1e-12);
        assert!((q[(1, 0)] / phase - c(inv, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn orthonormalize_gram_residual() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_matrix(&mut rng, 6, 3);
        let q = orthonormalize(&a, 1e-12).unwrap();
        let g = q.adjoint().matmul(&q).unwrap();
        assert!((&g - &CMatrix::identity(3)).fro_norm() <= 1e-13);
        // range preserved: columns of a lie in span(q)
        let proj = &q.matmul(&q.adjoint().matmul(&a).unwrap()).unwrap() - &a;
        assert!(proj.fro_norm() <= 1e-12 * a.fro_norm());
    }

    #[test]
    fn orthonormalize_detects_rank_deficiency() {
        let a = CMatrix::from_real(&[&[1.0, 2.0], &[1.0, 2.0], &[1.0, 2.0]]);
        assert!(orthonormalize(&a, 1e-12).is_err());
    }

    #[test]
    fn svd_identity_and_diag() {
        let sv = svd_values(&CMatrix::identity(3)).unwrap();
        assert!(sv.iter().all(|&s| (s - 1.0).abs() < 1e-14));
        let d = CMatrix::from_real(&[&[3.0, 0.0], &[0.0, 0.0]]);
        let sv = svd_values(&d).unwrap();
        assert!((sv[0] - 3.0).abs() < 1e-14 && sv[1].abs() < 1e-14);
    }

    #[test]
    fn svd_matches_eig_of_gram_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let a = random_matrix(&mut rng, 4, 2);
        let sv = svd_values(&a).unwrap();
        let gram = a.adjoint().matmul(&a).unwrap();
        let (vals, _) = eig(&gram).unwrap();
        let mut want: Vec<f64> = vals.iter().map(|z| z.re.max(0.0).sqrt()).collect();
        want.sort_by(|x, y| y.partial_cmp(x).unwrap());
        for (s, w) in sv.iter().zip(&want) {
            assert!((s - w).abs() < 1e-12, "{s} vs {w}");
        }
    }

    #[test]
    fn eig_diagonal_spectrum() {
        let a = CMatrix::diag(&[c(1.0, 0.0), c(0.0, 2.0), c(-3.0, 0.0)]);
        let (vals, vecs) = eig(&a).unwrap();
        let mut got: Vec<(f64, f64)> = vals.iter().map(|z| (z.re, z.im)).collect();
        got.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let want = [(-3.0, 0.0), (0.0, 2.0), (1.0, 0.0)];
        for (g, w) in got.iter().zip(&want) {
            assert!((g.0 - w.0).abs() < 1e-12 && (g.1 - w.1).abs() < 1e-12);
        }
        check_eig_residual(&a, &vals, &vecs, 1e-12);
    }

    #[test]
    fn eig_small_coupling_gives_sqrt_split() {
        let t = 1e-4;
        let a = CMatrix::from_real(&[&[0.0, 1.0], &[t, 0.0]]);
        let (vals, _) = eig(&a).unwrap();
        let mut re: Vec<f64> = vals.iter().map(|z| z.re).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((re[0] + 1e-2).abs() < 1e-12);
        assert!((re[1] - 1e-2).abs() < 1e-12);
    }

    #[test]
    fn eig_rotation_spectrum() {
        let j = CMatrix::from_real(&[&[0.0, 1.0], &[-1.0, 0.0]]);
        let (vals, vecs) = eig(&j).unwrap();
        let mut im: Vec<f64> = vals.iter().map(|z| z.im).collect();
        im.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((im[0] + 1.0).abs() < 1e-12 && (im[1] - 1.0).abs() < 1e-12);
        assert!(vals.iter().all(|z| z.re.abs() < 1e-12));
        check_eig_residual(&j, &vals, &vecs, 1e-12);
    }

    fn check_eig_residual(a: &CMatrix, vals: &[Complex64], vecs: &CMatrix, tol: f64) {
        let scale = a.fro_norm().max(1.0);
        for (k, &lam) in vals.iter().enumerate() {
            let v = vecs.column(k);
            let r = (&a.matmul(&v).unwrap() - &v.scale(lam)).fro_norm();
            assert!(r <= tol * scale, "pair {k}: residual {r}");
            assert!((v.fro_norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn eig_reconstruction_on_random_separated() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for n in [3usize, 6, 10] {
            let a = random_matrix(&mut rng, n, n);
            let (vals, vecs) = eig(&a).unwrap();
            // ||AV - V Lambda|| <= 1e-10 ||A||
            let av = a.matmul(&vecs).unwrap();
            let vl = vecs.matmul(&CMatrix::diag(&vals)).unwrap();
            assert!((&av - &vl).fro_norm() <= 1e-10 * a.fro_norm().max(1.0));
        }
    }

    #[test]
    fn eig_hermitian_orthonormal_for_repeated_eigenvalues() {
        // form with eigenvalues {1,1,-1,-1}
        let g = CMatrix::from_real(&[
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
        ]);
        let (vals, q) = eig_hermitian(&g).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-12 && (vals[1] - 1.0).abs() < 1e-12);
        assert!((vals[2] + 1.0).abs() < 1e-12 && (vals[3] + 1.0).abs() < 1e-12);
        let qq = q.adjoint().matmul(&q).unwrap();
        assert!((&qq - &CMatrix::identity(4)).fro_norm() < 1e-12);
        let recon = q
            .matmul(&CMatrix::diag(&vals.iter().map(|&v| c(v, 0.0)).collect::<Vec<_>>()))
            .unwrap()
            .matmul(&q.adjoint())
            .unwrap();
        assert!((&recon - &g).fro_norm() < 1e-12);
    }

    #[test]
    fn expm_zero_and_diagonal() {
        assert!((&expm(&CMatrix::zeros(3, 3)) - &CMatrix::identity(3)).fro_norm() < 1e-15);
        let d = CMatrix::diag(&[c(1.0, 0.0), c(0.0, std::f64::consts::PI)]);
        let e = expm(&d);
        assert!((e[(0, 0)] - c(1.0_f64.exp(), 0.0)).norm() < 1e-13);
        assert!((e[(1, 1)] - c(-1.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn expm_skew_hermitian_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let z = random_matrix(&mut rng, 5, 5);
        let k = (&z - &z.adjoint()).scale_re(0.5);
        let u = expm(&k);
        let g = u.adjoint().matmul(&u).unwrap();
        assert!((&g - &CMatrix::identity(5)).fro_norm() < 1e-13);
    }

    #[test]
    fn expm_matches_squaring_oracle() {
        // exp(A)^2 = exp(2A)
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let a = random_matrix(&mut rng, 4, 4).scale_re(0.8);
        let e1 = expm(&a);
        let e2 = expm(&a.scale_re(2.0));
        assert!((&e1.matmul(&e1).unwrap() - &e2).fro_norm() < 1e-12 * e2.fro_norm());
    }
}
