//! Brute-force verification layer.
//!
//! Nothing here uses the solver's equation systems: constants are estimated
//! directly from the defect landscape, and the inequalities are probed
//! on grids. Randomized suites are deterministic given a 64-bit seed.

mod estimate;
mod inequalities;
pub mod suites;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::formulas::pow;

pub use estimate::{
    check_triangle, estimate_r, estimate_sigma, min_defect_biased, min_defect_segment,
    TriangleReport, SLACK,
};
pub use inequalities::{
    check_extremizer, jacobian_det, jacobian_sign_check, psi_value, ExtremizerReport,
};

/// A nonnegative function on Z_3, as its three values under the uniform
/// probability measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Z3Function {
    values: [f64; 3],
}

impl Z3Function {
    pub fn new(values: [f64; 3]) -> Result<Self> {
        for v in values {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(domain("f(k)", v, "finite and >= 0"));
            }
        }
        Ok(Self { values })
    }

    /// `1 + a chi + a conj(chi)` for real `a` in `[-1/2, 1]`.
    pub fn segment(a: f64) -> Result<Self> {
        Self::new([1.0 + 2.0 * a, 1.0 - a, 1.0 - a])
    }

    pub fn values(&self) -> [f64; 3] {
        self.values
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / 3.0
    }

    /// Uniform on `[0, 1]^3`, with one coordinate zeroed with probability 0.1.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut values = [rng.gen::<f64>(), rng.gen::<f64>(), rng.gen::<f64>()];
        if rng.gen_bool(0.1) {
            values[rng.gen_range(0..3)] = 0.0;
        }
        Self { values }
    }
}

/// `((|f0|^p + |f1|^p + |f2|^p)/3)^{1/p}`.
pub fn lp_norm(f: &Z3Function, p: f64) -> f64 {
    let s: f64 = f.values.iter().map(|v| pow(v.abs(), p)).sum();
    pow(s / 3.0, 1.0 / p)
}

/// `T_r f = E f + r (f - E f)`.
pub fn apply_tr(f: &Z3Function, r: f64) -> Result<Z3Function> {
    if !(0.0..=1.0).contains(&r) {
        return Err(domain("r", r, "0 <= r <= 1"));
    }
    let m = f.mean();
    Ok(Z3Function {
        values: f.values.map(|v| (m + r * (v - m)).max(0.0)),
    })
}

/// Grid sizes for the oracle scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n_rho: usize,
    pub n_theta: usize,
    /// Number of golden-section refinement stages after the coarse scan.
    pub refine_depth: usize,
}

impl GridSpec {
    pub fn new(n_rho: usize, n_theta: usize, refine_depth: usize) -> Result<Self> {
        if n_rho < 64 {
            return Err(domain("n_rho", n_rho as f64, "n_rho >= 64"));
        }
        if n_theta < 2 {
            return Err(domain("n_theta", n_theta as f64, "n_theta >= 2"));
        }
        Ok(Self {
            n_rho,
            n_theta,
            refine_depth,
        })
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            n_rho: 4096,
            n_theta: 256,
            refine_depth: 3,
        }
    }
}
