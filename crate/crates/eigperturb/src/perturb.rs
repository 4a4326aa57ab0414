//! Eigenstructure machinery for a single defective eigenvalue: the block
//! partition of a p x p perturbation matrix conformal with the Jordan
//! structure, the nested coupling matrices W_k built from leading-chain
//! entries, their Schur complements S_rho governing the order-t^(1/rho)
//! splitting, the block companion matrix whose spectrum is every rho-th
//! root, and the explicit leading-order invariant-subspace pattern.
//!
//! Indexing convention: a p x p matrix B is partitioned into block rows and
//! columns, block j covering j*s_j rows/columns (one chain stage per
//! sub-block). Inside the (i, j) block, sub-block (k, l) with 1 <= k <= i,
//! 1 <= l <= j has size s_i x s_j. All public indices here are 1-based to
//! match that convention; ranges into matrices are 0-based.

use std::ops::Range;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{cond_estimate, eig, solve};
use crate::matrix::CMatrix;
use crate::tol::Tolerances;

/// Block geometry induced by the counts `s_1..s_m` of Jordan blocks of each
/// size. Serves both the p x p partition and chain-matrix column slicing.
#[derive(Debug, Clone)]
pub struct BlockLayout {
    s: Vec<usize>,
    offsets: Vec<usize>, // offsets[j-1] = start of block j = sum_{i<j} i*s_i
    p: usize,
}

impl BlockLayout {
    pub fn new(s: &[usize]) -> Self {
        let mut offsets = Vec::with_capacity(s.len());
        let mut at = 0;
        for (idx, &sj) in s.iter().enumerate() {
            offsets.push(at);
            at += (idx + 1) * sj;
        }
        BlockLayout { s: s.to_vec(), offsets, p: at }
    }

    pub fn m(&self) -> usize {
        self.s.len()
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn s(&self, j: usize) -> usize {
        self.s[j - 1]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.s
    }

    /// Number of columns of the coupling matrix W_k: sum of s_j for j >= k.
    pub fn tail_count(&self, k: usize) -> usize {
        self.s[k - 1..].iter().sum()
    }

    /// Index range of chain stage `i` of block `j` (1-based j, i; i <= j).
    pub fn stage(&self, j: usize, i: usize) -> Range<usize> {
        debug_assert!(1 <= i && i <= j && j <= self.m());
        let start = self.offsets[j - 1] + (i - 1) * self.s[j - 1];
        start..start + self.s[j - 1]
    }

    /// Ranges of the first chain stage of every block j >= k (skipping
    /// empty blocks).
    pub fn first_stages(&self, k: usize) -> Vec<Range<usize>> {
        (k..=self.m()).filter(|&j| self.s(j) > 0).map(|j| self.stage(j, 1)).collect()
    }

    /// Ranges of the last chain stage of every block j >= k.
    pub fn last_stages(&self, k: usize) -> Vec<Range<usize>> {
        (k..=self.m()).filter(|&j| self.s(j) > 0).map(|j| self.stage(j, j)).collect()
    }

    /// Sub-block (k, l) of partition block (i, j) of a p x p matrix.
    pub fn sub_block(&self, b: &CMatrix, i: usize, j: usize, k: usize, l: usize) -> CMatrix {
        b.gather(&[self.stage(i, k)], &[self.stage(j, l)])
    }

    pub fn check_dims(&self, b: &CMatrix) -> Result<()> {
        if b.rows() != self.p || b.cols() != self.p {
            return Err(Error::Dimension {
                op: "block partition",
                detail: format!("matrix is {}x{}, layout needs p={}", b.rows(), b.cols(), self.p),
            });
        }
        Ok(())
    }
}

/// Coupling matrix W_k: rows take the last chain stage, columns the first
/// chain stage, of every block j >= k. W_m is the single corner sub-block.
pub fn coupling_matrix(b: &CMatrix, layout: &BlockLayout, k: usize) -> CMatrix {
    b.gather(&layout.last_stages(k), &layout.first_stages(k))
}

/// Schur complement data of W_rho with respect to W_{rho+1}.
pub struct Splitting {
    /// S_rho, the s_rho x s_rho matrix whose eigenvalues scale the
    /// t^(1/rho) splitting.
    pub matrix: CMatrix,
    /// Stacked mixing block G = -W_{rho+1}^{-1} W_{rho+1,rho}; rows grouped
    /// by block k > rho, empty when rho = m.
    pub mixing: CMatrix,
}

/// Compute S_rho and the mixing block. Errors with the offending index when
/// W_{rho+1} is singular to the condition threshold.
pub fn splitting(b: &CMatrix, layout: &BlockLayout, rho: usize, tols: &Tolerances) -> Result<Splitting> {
    layout.check_dims(b)?;
    let m = layout.m();
    assert!(1 <= rho && rho <= m, "order out of range");
    let s_rho = layout.s(rho);
    let corner = b.gather(&[layout.stage(rho, rho)], &[layout.stage(rho, 1)]);
    if rho == m {
        return Ok(Splitting { matrix: corner, mixing: CMatrix::zeros(0, s_rho) });
    }
    let w_next = coupling_matrix(b, layout, rho + 1);
    if w_next.rows() == 0 {
        // no blocks above rho: same as the top-order branch
        return Ok(Splitting { matrix: corner, mixing: CMatrix::zeros(0, s_rho) });
    }
    let cond = cond_estimate(&w_next);
    if !(cond <= tols.w_cond_max) {
        return Err(Error::NonGeneric { k: rho + 1, cond });
    }
    // row block of W_rho to the right of the corner, and column block below
    let row = b.gather(&[layout.stage(rho, rho)], &layout.first_stages(rho + 1));
    let col = b.gather(&layout.last_stages(rho + 1), &[layout.stage(rho, 1)]);
    let mixing = -&solve(&w_next, &col, tols.rank_tol)?;
    let matrix = &corner + &row.matmul(&mixing)?;
    Ok(Splitting { matrix, mixing })
}

/// Block companion embedding: rho x rho blocks of size s, identity on the
/// superdiagonal and `s_matrix` in the bottom-left corner. Its spectrum is
/// all rho-th roots of the spectrum of `s_matrix`.
pub fn companion_embed(s_matrix: &CMatrix, rho: usize) -> CMatrix {
    assert!(s_matrix.is_square());
    let s = s_matrix.rows();
    if rho == 1 {
        return s_matrix.clone();
    }
    let mut out = CMatrix::zeros(rho * s, rho * s);
    for blk in 0..rho - 1 {
        out.set_block(blk * s, (blk + 1) * s, &CMatrix::identity(s));
    }
    out.set_block((rho - 1) * s, 0, s_matrix);
    out
}

/// One rho-th root attached to an eigenvalue of the splitting matrix.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Root {
    /// Index into the eigenvalue list of S_rho.
    pub gamma_index: usize,
    #[serde(with = "crate::matrix::c64_serde")]
    pub mu: Complex64,
}

/// Per-coupling-matrix condition information.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CouplingInfo {
    pub k: usize,
    pub cond: f64,
}

/// Everything the order-rho prediction needs.
#[derive(Debug, Clone)]
pub struct PerturbationAnalysis {
    pub rho: usize,
    pub s_rho: usize,
    /// W_k for k = rho..=m, in that order.
    pub couplings: Vec<CMatrix>,
    /// Condition estimates of W_k for every k = 1..=m.
    pub coupling_conds: Vec<CouplingInfo>,
    /// All of W_1..W_m pass the condition threshold.
    pub generic: bool,
    pub splitting: CMatrix,
    pub mixing: CMatrix,
    pub companion: CMatrix,
    pub gammas: Vec<Complex64>,
    /// All rho*s_rho roots, grouped per gamma and ordered within each group
    /// by increasing argument in (-pi, pi].
    pub roots: Vec<Root>,
}

/// Principal rho-th root branch set of a scalar, ordered by increasing
/// argument in (-pi, pi].
pub fn roots_of(gamma: Complex64, rho: usize) -> Vec<Complex64> {
    let r = gamma.norm().powf(1.0 / rho as f64);
    let base = gamma.arg() / rho as f64;
    let mut out: Vec<Complex64> = (0..rho)
        .map(|j| {
            let ang = base + 2.0 * std::f64::consts::PI * j as f64 / rho as f64;
            Complex64::from_polar(r, ang)
        })
        .collect();
    out.sort_by(|a, b| normalized_arg(*a).partial_cmp(&normalized_arg(*b)).unwrap());
    out
}

fn normalized_arg(z: Complex64) -> f64 {
    let mut a = z.arg();
    if a <= -std::f64::consts::PI + f64::EPSILON {
        a += 2.0 * std::f64::consts::PI;
    }
    a
}

/// Full analysis of one fractional order for the effective perturbation
/// matrix `b` (p x p, in the coordinates of the Jordan structure).
pub fn analyze(b: &CMatrix, layout: &BlockLayout, rho: usize, tols: &Tolerances) -> Result<PerturbationAnalysis> {
    layout.check_dims(b)?;
    let m = layout.m();
    if !(1 <= rho && rho <= m) || layout.s(rho) == 0 {
        return Err(Error::InvalidSpec(format!("order rho={rho} has no Jordan blocks (m={m})")));
    }
    let mut coupling_conds = Vec::with_capacity(m);
    let mut couplings = Vec::new();
    for k in 1..=m {
        let w = coupling_matrix(b, layout, k);
        let cond = if w.rows() == 0 { 1.0 } else { cond_estimate(&w) };
        coupling_conds.push(CouplingInfo { k, cond });
        if k >= rho {
            couplings.push(w);
        }
    }
    let generic = coupling_conds.iter().all(|c| c.cond <= tols.w_cond_max);
    let sp = splitting(b, layout, rho, tols)?;
    let companion = companion_embed(&sp.matrix, rho);
    let (gammas, _) = eig(&sp.matrix)?;
    let mut roots = Vec::with_capacity(rho * gammas.len());
    for (gi, &g) in gammas.iter().enumerate() {
        for mu in roots_of(g, rho) {
            roots.push(Root { gamma_index: gi, mu });
        }
    }
    Ok(PerturbationAnalysis {
        rho,
        s_rho: layout.s(rho),
        couplings,
        coupling_conds,
        generic,
        splitting: sp.matrix,
        mixing: sp.mixing,
        companion,
        gammas,
        roots,
    })
}

/// Leading-order perturbed eigenvalues `lambda0 + t^(1/rho) mu` over all
/// roots, in root order.
pub fn predict_eigenvalues(lambda0: Complex64, analysis: &PerturbationAnalysis, t: f64) -> Vec<Complex64> {
    let scale = t.powf(1.0 / analysis.rho as f64);
    analysis.roots.iter().map(|r| lambda0 + scale * r.mu).collect()
}

/// Leading-order basis pattern of the order-rho invariant subspace, with
/// the per-block-stage exponent table of the dropped remainder terms.
#[derive(Debug, Clone)]
pub struct SubspacePrediction {
    pub rho: usize,
    /// Explicit identity / t-power / mixing blocks, every remainder block
    /// set to zero.
    pub basis: CMatrix,
    /// Leading t-exponent of each column group j = 1..=rho.
    pub column_exponents: Vec<f64>,
    /// Declared remainder exponent per (block k, chain stage i).
    pub remainder_exponents: Vec<(usize, Vec<f64>)>,
    /// Expected indefinite Gram matrix and its t-exponent, when a
    /// structured case attaches one.
    pub expected_gram: Option<CMatrix>,
    pub gram_scale_exp: f64,
}

/// Remainder order of the dropped terms at chain stage i of block k.
pub fn remainder_exponent(k: usize, i: usize, rho: usize) -> f64 {
    let rho_f = rho as f64;
    if k < rho {
        1.0 - (k - i + 1) as f64 / rho_f
    } else if k == rho {
        i as f64 / rho_f
    } else {
        let step = if i <= 2 { 1 } else { i - 1 };
        (step as f64 / rho_f).min(1.0)
    }
}

pub fn leading_basis(layout: &BlockLayout, analysis: &PerturbationAnalysis, t: f64) -> SubspacePrediction {
    let rho = analysis.rho;
    let s_rho = analysis.s_rho;
    let m = layout.m();
    let rho_f = rho as f64;
    let mut basis = CMatrix::zeros(layout.p(), rho * s_rho);
    // block k = rho: diag(I, t^{1/rho} I, ..., t^{1-1/rho} I)
    for j in 0..rho {
        let w = t.powf(j as f64 / rho_f);
        let rows = layout.stage(rho, j + 1);
        for (r, row) in rows.enumerate() {
            basis[(row, j * s_rho + r)] = Complex64::new(w, 0.0);
        }
    }
    // blocks k > rho: mixing block at (first stage, first column group)
    let mut at = 0;
    for k in rho + 1..=m {
        let sk = layout.s(k);
        if sk == 0 {
            continue;
        }
        let g = analysis.mixing.block(at..at + sk, 0..s_rho);
        at += sk;
        let rows = layout.stage(k, 1);
        basis.set_block(rows.start, 0, &g);
    }
    let column_exponents = (0..rho).map(|j| j as f64 / rho_f).collect();
    let remainder_exponents = (1..=m)
        .filter(|&k| layout.s(k) > 0)
        .map(|k| (k, (1..=k).map(|i| remainder_exponent(k, i, rho)).collect()))
        .collect();
    SubspacePrediction {
        rho,
        basis,
        column_exponents,
        remainder_exponents,
        expected_gram: None,
        gram_scale_exp: 1.0 - 1.0 / rho_f,
    }
}

/// Invariant-pair restriction of the companion matrix to a selected subset
/// of its roots.
#[derive(Debug, Clone)]
pub struct Restriction {
    /// Stacked eigenbasis [Q; Q Omega; ...; Q Omega^(rho-1)].
    pub f: CMatrix,
    /// Top block, satisfying S Q = Q Omega^rho.
    pub q: CMatrix,
    /// Diagonal of the selected roots.
    pub omega: CMatrix,
    /// Indices into `analysis.roots` actually matched.
    pub selected: Vec<usize>,
}

/// Restrict to the companion roots nearest to `selection`. The selected set
/// must be isolated from the remaining roots by the cluster gap.
pub fn restrict_cluster(
    analysis: &PerturbationAnalysis,
    selection: &[Complex64],
    tols: &Tolerances,
) -> Result<Restriction> {
    let rho = analysis.rho;
    let (_, q_vecs) = eig(&analysis.splitting)?;
    let mut selected: Vec<usize> = Vec::with_capacity(selection.len());
    for &want in selection {
        let (best, _) = analysis
            .roots
            .iter()
            .enumerate()
            .filter(|(i, _)| !selected.contains(i))
            .min_by(|a, b| {
                let da = (a.1.mu - want).norm();
                let db = (b.1.mu - want).norm();
                da.partial_cmp(&db).unwrap()
            })
            .ok_or_else(|| Error::InvalidSpec("empty root selection".into()))?;
        selected.push(best);
    }
    // isolation of the selected set inside the companion spectrum
    let mut gap = f64::INFINITY;
    for (i, r) in analysis.roots.iter().enumerate() {
        if selected.contains(&i) {
            continue;
        }
        for &j in &selected {
            gap = gap.min((analysis.roots[j].mu - r.mu).norm());
        }
    }
    if gap < tols.cluster_gap {
        return Err(Error::ClusterNotIsolated { gap });
    }
    let s_rho = analysis.s_rho;
    let ell = selected.len();
    let mut q = CMatrix::zeros(s_rho, ell);
    let mut omega = CMatrix::zeros(ell, ell);
    for (col, &ri) in selected.iter().enumerate() {
        let root = analysis.roots[ri];
        omega[(col, col)] = root.mu;
        let qv = q_vecs.column(root.gamma_index);
        // normalize the stacked column [q; mu q; ...] to unit length
        let stack_norm: f64 = (0..rho).map(|j| root.mu.norm().powi(2 * j as i32)).sum::<f64>().sqrt();
        for r in 0..s_rho {
            q[(r, col)] = qv[(r, 0)] / stack_norm;
        }
    }
    // F = [Q; Q Omega; ...; Q Omega^{rho-1}]
    let mut parts: Vec<CMatrix> = Vec::with_capacity(rho);
    let mut cur = q.clone();
    for _ in 0..rho {
        parts.push(cur.clone());
        cur = &cur * &omega;
    }
    let refs: Vec<&CMatrix> = parts.iter().collect();
    let f = CMatrix::vcat(&refs);
    let resid = (&(&analysis.companion * &f) - &(&f * &omega)).fro_norm();
    let scale = analysis.companion.fro_norm().max(1.0);
    if resid > 1e-8 * scale {
        return Err(Error::Structure(format!(
            "companion restriction residual {resid:.3e} exceeds 1e-8 * {scale:.3e}"
        )));
    }
    Ok(Restriction { f, q, omega, selected })
}
