//! Batch checks of the identities the solver output must satisfy.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{solve_biased, solve_z3, DEFAULT_TOL};
use crate::formulas::{cross_ratio_raw, dual_pair_constant, residual_selfdual, z2_constant};
use crate::types::{conjugate, BiasParam, ExponentPair, UnitSquarePoint};

/// Exponents used for the pivot identity `r_{p,p*} = r_{p,2} r_{2,p*}`.
pub const PIVOT_EXPONENTS: [f64; 4] = [1.2, 4.0 / 3.0, 1.5, 1.8];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityRow {
    pub name: String,
    pub samples: usize,
    pub max_error: f64,
    pub threshold: f64,
    pub passed: bool,
    /// Solver failures, one message per failing sample.
    pub errors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub seed: u64,
    pub sample_size: usize,
    pub rows: Vec<IdentityRow>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }
}

/// `n` random pairs, cycling through `1<p<q<2`, `1<p<=2<q` and `2<p<q`.
pub fn random_pairs(n: usize, seed: u64) -> Vec<ExponentPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let (p, q) = match i % 3 {
                0 => {
                    let p = rng.gen_range(1.1..1.85);
                    (p, rng.gen_range(p + 0.05..1.95))
                }
                1 => (rng.gen_range(1.1..2.0), rng.gen_range(2.1..8.0)),
                _ => {
                    let p = rng.gen_range(2.1..6.0);
                    (p, rng.gen_range(p + 0.1..p + 6.0))
                }
            };
            ExponentPair::new(p, q).expect("sampled pair is valid")
        })
        .collect()
}

struct Acc {
    row: IdentityRow,
}

impl Acc {
    fn new(name: &str, threshold: f64) -> Self {
        Self {
            row: IdentityRow {
                name: name.to_string(),
                samples: 0,
                max_error: 0.0,
                threshold,
                passed: true,
                errors: Vec::new(),
            },
        }
    }

    fn record(&mut self, err: crate::Result<f64>) {
        self.row.samples += 1;
        match err {
            Ok(e) => {
                self.row.max_error = self.row.max_error.max(e);
                if !(e < self.row.threshold) {
                    self.row.passed = false;
                }
            }
            Err(e) => {
                self.row.passed = false;
                self.row.errors.push(e.to_string());
            }
        }
    }
}

/// Duality `r_{p,q} = r_{q*,p*}`.
fn duality_gap(pair: &ExponentPair) -> crate::Result<f64> {
    let a = solve_z3(pair, DEFAULT_TOL)?.r;
    let b = solve_z3(&pair.dual(), DEFAULT_TOL)?.r;
    Ok((a - b).abs())
}

/// Cross-ratio symmetry `(x,y; -1/2,1) = (y^{q-1}, x^{p-1}; -1/2,1)`.
fn cross_symmetry_gap(pair: &ExponentPair) -> crate::Result<f64> {
    let s = solve_z3(pair, DEFAULT_TOL)?;
    let swapped = cross_ratio_raw(s.y.powf(pair.q() - 1.0), s.x.powf(pair.p() - 1.0));
    Ok((s.r - swapped).abs())
}

/// `|r_{p,p*} - r_{p,2} r_{2,p*}|`.
pub fn pivot_gap(p: f64) -> crate::Result<f64> {
    let ps = conjugate(p);
    let direct = solve_z3(&ExponentPair::new(p, ps)?, DEFAULT_TOL)?.r;
    let left = solve_z3(&ExponentPair::new(p, 2.0)?, DEFAULT_TOL)?.r;
    let right = solve_z3(&ExponentPair::new(2.0, ps)?, DEFAULT_TOL)?.r;
    Ok((direct - left * right).abs())
}

/// Positive when `r < r_Z2 - 1e-6`; reported as the violation amount.
fn strict_bound_violation(pair: &ExponentPair) -> crate::Result<f64> {
    let r = solve_z3(pair, DEFAULT_TOL)?.r;
    Ok((r - (z2_constant(pair) - 1e-6)).max(0.0))
}

fn sigma_gap(pair: &ExponentPair) -> crate::Result<f64> {
    let lam = BiasParam::new(1.0 / 3.0)?;
    let s = solve_biased(lam, pair, DEFAULT_TOL)?.sigma;
    let r = solve_z3(pair, DEFAULT_TOL)?.r;
    Ok((s - r).abs())
}

/// Residual of the self-dual form at the solved point.
fn selfdual_residual(pair: &ExponentPair) -> crate::Result<f64> {
    let s = solve_z3(pair, DEFAULT_TOL)?;
    let (a, b) = residual_selfdual(pair, UnitSquarePoint { x: s.x, y: s.y });
    Ok(a.abs().max(b.abs()))
}

/// Runs every identity on `sample_size` random pairs drawn from `seed`.
/// A sample size of zero yields an empty report.
pub fn run_identities(sample_size: usize, seed: u64) -> IdentityReport {
    let mut rows = Vec::new();
    if sample_size > 0 {
        let pairs = random_pairs(sample_size, seed);
        let mut dual = Acc::new("duality", 1e-9);
        let mut cross = Acc::new("cross_ratio_symmetry", 1e-9);
        let mut strict = Acc::new("strict_bound", f64::MIN_POSITIVE);
        let mut sigma = Acc::new("sigma_one_third", 1e-8);
        let mut selfdual = Acc::new("selfdual_form", 1e-9);
        for pair in &pairs {
            dual.record(duality_gap(pair));
            cross.record(cross_symmetry_gap(pair));
            strict.record(strict_bound_violation(pair));
            sigma.record(sigma_gap(pair));
            selfdual.record(selfdual_residual(pair));
        }
        let mut pivot = Acc::new("multiplicative_pivot", 1e-9);
        let mut closed = Acc::new("dual_pair_closed_form", 1e-10);
        for p in PIVOT_EXPONENTS {
            pivot.record(pivot_gap(p));
            closed.record(
                ExponentPair::new(p, conjugate(p))
                    .and_then(|pair| solve_z3(&pair, DEFAULT_TOL))
                    .and_then(|s| Ok((s.r - dual_pair_constant(p)?).abs())),
            );
        }
        rows = [dual, cross, pivot, closed, strict, sigma, selfdual]
            .into_iter()
            .map(|a| a.row)
            .collect();
    }
    IdentityReport {
        seed,
        sample_size,
        rows,
    }
}
