//! Randomized and grid property suites. Each returns a [`SuiteOutcome`]
//! instead of panicking so that callers can tabulate results.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{apply_tr, jacobian_sign_check, lp_norm, psi_value, Z3Function};
use crate::formulas::{defect_polar_raw, defect_segment_raw, z2_constant};
use crate::par;
use crate::solver::{solve_biased, solve_z3, DEFAULT_TOL};
use crate::types::{BiasParam, ExponentPair, PolarPoint};

const SQRT3: f64 = 1.732_050_807_568_877_2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub name: String,
    pub samples: usize,
    pub failures: usize,
    /// Worst value of the quantity checked; its meaning depends on the suite.
    pub worst: f64,
    /// Report-only suites never fail.
    pub asserted: bool,
}

impl SuiteOutcome {
    fn new(name: &str, samples: usize, failures: usize, worst: f64) -> Self {
        Self {
            name: name.to_string(),
            samples,
            failures,
            worst,
            asserted: true,
        }
    }

    pub fn passed(&self) -> bool {
        !self.asserted || self.failures == 0
    }
}

/// `||T_r f||_q <= ||f||_p + 1e-12` at `r = 0.99 r_{p,q}`; `worst` is the
/// largest excess.
pub fn contraction_below_critical(
    pair: &ExponentPair,
    n: usize,
    seed: u64,
) -> crate::Result<SuiteOutcome> {
    let r = 0.99 * solve_z3(pair, DEFAULT_TOL)?.r;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut failures, mut worst) = (0, f64::NEG_INFINITY);
    for _ in 0..n {
        let f = Z3Function::random(&mut rng);
        let excess = lp_norm(&apply_tr(&f, r)?, pair.q()) - lp_norm(&f, pair.p());
        worst = worst.max(excess);
        if excess > 1e-12 {
            failures += 1;
        }
    }
    Ok(SuiteOutcome::new(
        "contraction_below_critical",
        n,
        failures,
        worst,
    ))
}

/// Some `rho` on a `10^4` grid has `G(r_{p,q} + 0.01, rho) < -1e-9`;
/// `worst` is the minimum defect found.
pub fn violation_above_critical(pair: &ExponentPair) -> crate::Result<SuiteOutcome> {
    let r = solve_z3(pair, DEFAULT_TOL)?.r + 0.01;
    let n = 10_000;
    let min = par::map_range(n + 1, |i| defect_segment_raw(pair, r, i as f64 / n as f64))
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    Ok(SuiteOutcome::new(
        "violation_above_critical",
        n + 1,
        usize::from(!(min < -1e-9)),
        min,
    ))
}

/// `||T_r f||_q >= r^{1/(q-1)} ||f||_q - 1e-12` for random `f` and `r`.
/// Meaningful for `1 < q < 2`.
pub fn reverse_estimate(q: f64, n: usize, seed: u64) -> crate::Result<SuiteOutcome> {
    if !(q > 1.0 && q < 2.0) {
        return Err(crate::error::domain("q", q, "1 < q < 2"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut failures, mut worst) = (0, f64::NEG_INFINITY);
    for _ in 0..n {
        let f = Z3Function::random(&mut rng);
        let r: f64 = rng.gen_range(0.0..1.0);
        let deficit = r.powf(1.0 / (q - 1.0)) * lp_norm(&f, q) - lp_norm(&apply_tr(&f, r)?, q);
        worst = worst.max(deficit);
        if deficit > 1e-12 {
            failures += 1;
        }
    }
    Ok(SuiteOutcome::new("reverse_estimate", n, failures, worst))
}

/// `||f||_q >= ||f||_p` for random `f` and random `1 <= p < q`.
pub fn norm_monotonicity(n: usize, seed: u64) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut failures, mut worst) = (0, f64::NEG_INFINITY);
    for _ in 0..n {
        let f = Z3Function::random(&mut rng);
        let p = rng.gen_range(1.0..6.0);
        let q = p + rng.gen_range(0.01..6.0);
        let deficit = lp_norm(&f, p) - lp_norm(&f, q);
        worst = worst.max(deficit);
        if deficit > 1e-14 {
            failures += 1;
        }
    }
    SuiteOutcome::new("norm_monotonicity", n, failures, worst)
}

/// `psi < 0` on an `nx x ny x nq` grid of cell midpoints of the open region;
/// `worst` is the largest value.
pub fn psi_grid(nx: usize, ny: usize, nq: usize) -> SuiteOutcome {
    let vals = par::map_range(nq * ny, |k| {
        let (iq, iy) = (k / ny, k % ny);
        let q = 1.0 + (iq as f64 + 0.5) / nq as f64;
        let y = (iy as f64 + 0.5) / ny as f64 * SQRT3 / 4.0;
        let (lo, hi) = (SQRT3 * y / 3.0, 1.0 - SQRT3 * y);
        (0..nx)
            .map(|ix| {
                let x = lo + (ix as f64 + 0.5) / nx as f64 * (hi - lo);
                psi_value(q, x, y).unwrap_or(f64::NAN)
            })
            .collect::<Vec<_>>()
    });
    let flat: Vec<f64> = vals.into_iter().flatten().collect();
    let failures = flat.iter().filter(|v| !(**v < 0.0)).count();
    let worst = flat.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    SuiteOutcome::new("psi_negative", flat.len(), failures, worst)
}

/// `det J_H < 0` on an `n x n` grid of `(-0.99, 0.99) x (0.01, 0.49)`.
pub fn jacobian_grid(n: usize) -> SuiteOutcome {
    let at = |i: usize, lo: f64, hi: f64| lo + (hi - lo) * i as f64 / (n - 1) as f64;
    let vals = par::map_range(n * n, |k| {
        jacobian_sign_check(at(k / n, -0.99, 0.99), at(k % n, 0.01, 0.49)).unwrap_or(f64::NAN)
    });
    let failures = vals.iter().filter(|v| !(**v < 0.0)).count();
    let worst = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    SuiteOutcome::new("jacobian_negative", vals.len(), failures, worst)
}

/// `theta -> G(r, rho e^{i theta})` is nondecreasing on an `n_theta` grid
/// for `n_rho` radii, where the radius is inside the triangle for every
/// `theta`. `worst` is the largest decrease between neighbours.
pub fn theta_monotonicity(
    pair: &ExponentPair,
    r: f64,
    n_rho: usize,
    n_theta: usize,
) -> SuiteOutcome {
    let rho_max = PolarPoint::max_radius(std::f64::consts::PI / 6.0);
    let drops = par::map_range(n_rho, |i| {
        let rho = rho_max * (i + 1) as f64 / n_rho as f64;
        let mut prev = defect_polar_raw(pair, r, rho, 0.0);
        let mut worst: f64 = 0.0;
        for j in 1..n_theta {
            let th = std::f64::consts::PI / 3.0 * j as f64 / (n_theta - 1) as f64;
            if rho > PolarPoint::max_radius(th) {
                break;
            }
            let g = defect_polar_raw(pair, r, rho, th);
            worst = worst.max(prev - g);
            prev = g;
        }
        worst
    });
    let worst = drops.iter().copied().fold(0.0, f64::max);
    let failures = drops.iter().filter(|d| **d > 1e-14).count();
    SuiteOutcome::new("theta_monotonicity", n_rho * n_theta, failures, worst)
}

/// `sigma_{p,q}(lambda)` along a `lambda` grid for `n_pairs` random pairs;
/// counts decreases. Report-only.
pub fn sigma_monotonicity(n_pairs: usize, n_lambda: usize, seed: u64) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<ExponentPair> = (0..n_pairs)
        .map(|_| {
            let p = rng.gen_range(1.2..3.0);
            let q = p + rng.gen_range(0.3..3.0);
            ExponentPair::new(p, q).expect("valid pair")
        })
        .collect();
    let mut decreases = 0;
    let mut worst: f64 = 0.0;
    for pair in &pairs {
        let sig = par::map_range(n_lambda, |i| {
            let lam = 0.5 * (i + 1) as f64 / (n_lambda + 1) as f64;
            BiasParam::new(lam)
                .and_then(|l| solve_biased(l, pair, 1e-10))
                .map(|s| s.sigma)
                .unwrap_or(f64::NAN)
        });
        let mut prev = f64::NEG_INFINITY;
        for s in sig.into_iter().chain(std::iter::once(z2_constant(pair))) {
            if s.is_finite() {
                if s < prev {
                    decreases += 1;
                    worst = worst.max(prev - s);
                }
                prev = s;
            }
        }
    }
    let mut out = SuiteOutcome::new(
        "sigma_monotone_in_lambda",
        n_pairs * n_lambda,
        decreases,
        worst,
    );
    out.asserted = false;
    out
}
