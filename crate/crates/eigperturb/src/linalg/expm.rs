//! Matrix exponential by scaling and squaring with a [13/13] Padé
//! approximant (Higham's coefficients).


use crate::matrix::CMatrix;

const THETA_13: f64 = 5.371920351148152;

const B: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

pub fn expm(a: &CMatrix) -> CMatrix {
    assert!(a.is_square());
    let n = a.rows();
    if n == 0 {
        return CMatrix::zeros(0, 0);
    }
    let norm = a.one_norm();
    let s = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil() as i32
    } else {
        0
    };
    let a = a.scale_re(0.5_f64.powi(s));
    let i = CMatrix::identity(n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;
    let w1 = &(&a6.scale_re(B[13]) + &a4.scale_re(B[11])) + &a2.scale_re(B[9]);
    let w2 = &(&(&a6 * &w1) + &a6.scale_re(B[7])) + &(&a4.scale_re(B[5]) + &a2.scale_re(B[3]));
    let u = &a * &(&w2 + &i.scale_re(B[1]));
    let z1 = &(&a6.scale_re(B[12]) + &a4.scale_re(B[10])) + &a2.scale_re(B[8]);
    let v = &(&(&a6 * &z1) + &a6.scale_re(B[6])) + &(&(&a4.scale_re(B[4]) + &a2.scale_re(B[2])) + &i.scale_re(B[0]));
    // r = (v - u)^{-1} (v + u)
    let mut r = crate::linalg::solve(&(&v - &u), &(&v + &u), 1e-16).expect("Pade denominator is singular");
    for _ in 0..s {
        r = &r * &r;
    }
    r
}
