//! Numerical tolerances with their crate-wide defaults. Every threshold the
//! analysis and verification code applies lives here so experiment configs
//! can override them in one place.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Tolerances {
    /// Pivot below `rank_tol * ||A||_F` declares singularity.
    pub rank_tol: f64,
    /// Coupling-matrix condition estimate above this is a non-generic error.
    pub w_cond_max: f64,
    /// Generation rejects perturbations whose coupling matrices exceed this.
    pub gen_cond_max: f64,
    /// Minimum gap between selected and unselected companion roots.
    pub cluster_gap: f64,
    /// Relative residual allowed in structural Hermitian checks.
    pub structure_tol: f64,
    /// Relative residual allowed in chain consistency checks.
    pub chain_tol: f64,
    /// Absolute residual allowed in spectrum mirror-symmetry checks.
    pub symmetry_tol: f64,
    /// Residuals below `noise_floor_factor * eps * ||A||` are rounding noise
    /// and excluded from exponent fits.
    pub noise_floor_factor: f64,
    /// Cluster eigenvector-matrix condition above this flags an exceptional t.
    pub eigvec_cond_max: f64,
    /// Coefficient c in the cluster attribution radius r(t) = c * t^(1/(m+1)).
    pub match_radius_coeff: f64,
    /// Hard cap on the attribution radius (half the enforced spectral gap).
    pub match_radius_cap: f64,
    /// Allowed deviation of the fitted order exponent from 1/rho.
    pub order_tol: f64,
    /// Required margin of the residual exponent above 1/rho.
    pub residual_margin: f64,
    /// Allowed shortfall of the angle exponent below 1/rho.
    pub angle_tol: f64,
    /// Minimum fitted Gram-residual exponent.
    pub gram_min: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rank_tol: 1e-12,
            w_cond_max: 1e8,
            gen_cond_max: 1e6,
            cluster_gap: 1e-6,
            structure_tol: 1e-12,
            chain_tol: 1e-10,
            symmetry_tol: 1e-10,
            noise_floor_factor: 1e2,
            eigvec_cond_max: 1e8,
            match_radius_coeff: 1.0,
            match_radius_cap: 0.25,
            order_tol: 0.05,
            residual_margin: 0.1,
            angle_tol: 0.05,
            gram_min: 0.95,
        }
    }
}

/// Optional per-field overrides as they appear in a run configuration.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TolOverrides {
    pub rank_tol: Option<f64>,
    pub w_cond_max: Option<f64>,
    pub gen_cond_max: Option<f64>,
    pub cluster_gap: Option<f64>,
    pub structure_tol: Option<f64>,
    pub chain_tol: Option<f64>,
    pub symmetry_tol: Option<f64>,
    pub noise_floor_factor: Option<f64>,
    pub eigvec_cond_max: Option<f64>,
    pub match_radius_coeff: Option<f64>,
    pub match_radius_cap: Option<f64>,
    pub order_tol: Option<f64>,
    pub residual_margin: Option<f64>,
    pub angle_tol: Option<f64>,
    pub gram_min: Option<f64>,
}

impl TolOverrides {
    pub fn apply(&self, base: Tolerances) -> Tolerances {
        let mut t = base;
        macro_rules! set {
            ($($f:ident),*) => { $( if let Some(v) = self.$f { t.$f = v; } )* };
        }
        set!(
            rank_tol,
            w_cond_max,
            gen_cond_max,
            cluster_gap,
            structure_tol,
            chain_tol,
            symmetry_tol,
            noise_floor_factor,
            eigvec_cond_max,
            match_radius_coeff,
            match_radius_cap,
            order_tol,
            residual_margin,
            angle_tol,
            gram_min
        );
        t
    }
}
