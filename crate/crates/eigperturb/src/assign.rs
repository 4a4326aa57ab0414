//! Minimum-cost perfect matching (Hungarian algorithm with potentials,
//! O(n^3)), used to pair predicted eigenvalues with computed ones.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Minimum-total-cost assignment of rows to columns of a square cost
/// matrix. Returns `out[i] = j`, the column matched to row i.
pub fn min_cost_assignment(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    if n == 0 {
        return Vec::new();
    }
    debug_assert!(cost.iter().all(|r| r.len() == n), "cost matrix must be square");
    let inf = f64::INFINITY;
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut p = vec![0usize; n + 1]; // p[j]: row matched to column j (1-based)
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut out = vec![0usize; n];
    for j in 1..=n {
        out[p[j] - 1] = j - 1;
    }
    out
}

/// Assignment of a (possibly smaller) row set to columns: rows are padded
/// with zero-cost dummies so every real row gets a distinct column.
pub fn min_cost_assignment_rect(cost: &[Vec<f64>]) -> Vec<usize> {
    let rows = cost.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = cost[0].len();
    assert!(rows <= cols, "more rows than columns in rectangular assignment");
    if rows == cols {
        return min_cost_assignment(cost);
    }
    let mut square: Vec<Vec<f64>> = cost.to_vec();
    for _ in rows..cols {
        square.push(vec![0.0; cols]);
    }
    min_cost_assignment(&square)[..rows].to_vec()
}

/// Pair predicted eigenvalues with actual ones by minimum total distance.
/// Lists must have equal length; returns the matched actual index per
/// prediction.
pub fn match_eigenvalues(predicted: &[Complex64], actual: &[Complex64]) -> Result<Vec<usize>> {
    if predicted.len() != actual.len() {
        return Err(Error::Dimension {
            op: "match_eigenvalues",
            detail: format!("{} predictions vs {} eigenvalues", predicted.len(), actual.len()),
        });
    }
    let cost: Vec<Vec<f64>> = predicted
        .iter()
        .map(|p| actual.iter().map(|a| (p - a).norm()).collect())
        .collect();
    Ok(min_cost_assignment(&cost))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::c;

    fn total(cost: &[Vec<f64>], assign: &[usize]) -> f64 {
        assign.iter().enumerate().map(|(i, &j)| cost[i][j]).sum()
    }

    fn brute_force(cost: &[Vec<f64>]) -> f64 {
        fn rec(cost: &[Vec<f64>], row: usize, used: &mut Vec<bool>, acc: f64, best: &mut f64) {
            if row == cost.len() {
                *best = best.min(acc);
                return;
            }
            for j in 0..cost.len() {
                if !used[j] {
                    used[j] = true;
                    rec(cost, row + 1, used, acc + cost[row][j], best);
                    used[j] = false;
                }
            }
        }
        let mut best = f64::INFINITY;
        rec(cost, 0, &mut vec![false; cost.len()], 0.0, &mut best);
        best
    }

    #[test]
    fn identical_lists_match_identically_with_zero_cost() {
        let xs = vec![c(1.0, 0.0), c(2.0, -1.0), c(0.0, 3.0)];
        let m = match_eigenvalues(&xs, &xs).unwrap();
        for (i, &j) in m.iter().enumerate() {
            assert!((xs[i] - xs[j]).norm() == 0.0);
        }
    }

    #[test]
    fn sign_respecting_match() {
        let pred = vec![c(1e-2, 0.0), c(-1e-2, 0.0)];
        let act = vec![c(1.01e-2, 0.0), c(-0.99e-2, 0.0)];
        let m = match_eigenvalues(&pred, &act).unwrap();
        assert_eq!(m, vec![0, 1]);
    }

    #[test]
    fn permuted_list_costs_zero() {
        let xs = vec![c(0.3, 0.1), c(-1.0, 2.0), c(4.0, 0.0), c(0.0, -0.5), c(2.2, 2.2)];
        let mut perm = xs.clone();
        perm.rotate_left(2);
        let m = match_eigenvalues(&xs, &perm).unwrap();
        let cost: f64 = m.iter().enumerate().map(|(i, &j)| (xs[i] - perm[j]).norm()).sum();
        assert!(cost < 1e-15);
    }

    #[test]
    fn optimal_against_brute_force() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for n in 1..=6 {
            for _ in 0..20 {
                let cost: Vec<Vec<f64>> =
                    (0..n).map(|_| (0..n).map(|_| rng.gen::<f64>()).collect()).collect();
                let a = min_cost_assignment(&cost);
                let mut seen = vec![false; n];
                for &j in &a {
                    assert!(!seen[j], "column used twice");
                    seen[j] = true;
                }
                let got = total(&cost, &a);
                let want = brute_force(&cost);
                assert!((got - want).abs() < 1e-12, "n={n}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn rectangular_padding() {
        let cost = vec![vec![5.0, 1.0, 9.0], vec![1.0, 8.0, 7.0]];
        let a = min_cost_assignment_rect(&cost);
        assert_eq!(a, vec![1, 0]);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(match_eigenvalues(&[c(0.0, 0.0)], &[]).is_err());
    }
}
