use serde::{Deserialize, Serialize};

use super::{Method, Z3Solution};
use crate::formulas::{pow, segment_norm};
use crate::types::ExponentPair;

const MAX_NEWTON: usize = 60;
const F_FLOOR: f64 = 1e-15;
/// Residual accepted as converged when no descent direction improves it.
const NOISE: f64 = 1e-13;

/// Result of the Newton cross-check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirectSolve {
    pub solution: Z3Solution,
    pub iterations: usize,
    /// False when Newton diverged and `solution` is the unchanged seed.
    pub converged: bool,
}

/// `d/da ||1 + a chi + a conj(chi)||_p`.
fn segment_norm_prime(p: f64, a: f64) -> f64 {
    let (hi, lo) = ((1.0 + 2.0 * a).max(0.0), (1.0 - a).max(0.0));
    let s = pow(hi, p) + 2.0 * pow(lo, p);
    2.0 * segment_norm(p, a) * (pow(hi, p - 1.0) - pow(lo, p - 1.0)) / s
}

/// `(G, dG/drho)` at `(r, rho)`; both vanish at the critical extremizer.
fn system(pair: &ExponentPair, r: f64, rho: f64) -> [f64; 2] {
    let (p, q) = (pair.p(), pair.q());
    [
        segment_norm(p, rho) - segment_norm(q, r * rho),
        segment_norm_prime(p, rho) - r * segment_norm_prime(q, r * rho),
    ]
}

fn norm(f: [f64; 2]) -> f64 {
    f[0].abs().max(f[1].abs())
}

/// Damped Newton on `G(r, rho) = 0`, `dG/drho (r, rho) = 0`, seeded from a
/// solver result, with a finite-difference Jacobian.
///
/// The converged `(r, rho)` is mapped back through
/// `x = (1 - rho)/(1 + 2 rho)`, `y = (1 - r rho)/(1 + 2 r rho)`.
pub fn solve_z3_direct(pair: &ExponentPair, seed: &Z3Solution, _tol: f64) -> DirectSolve {
    let (mut r, mut rho) = (seed.r, seed.rho0);
    let mut f = system(pair, r, rho);
    let mut iterations = 0;
    let mut converged = false;
    while iterations < MAX_NEWTON {
        if norm(f) <= F_FLOOR {
            converged = true;
            break;
        }
        iterations += 1;
        let hr = 1e-7 * r.abs().max(1e-3);
        let hp = 1e-7 * rho.abs().max(1e-3);
        let fr_p = system(pair, r + hr, rho);
        let fr_m = system(pair, r - hr, rho);
        let fp_p = system(pair, r, rho + hp);
        let fp_m = system(pair, r, rho - hp);
        let j = [
            [
                (fr_p[0] - fr_m[0]) / (2.0 * hr),
                (fp_p[0] - fp_m[0]) / (2.0 * hp),
            ],
            [
                (fr_p[1] - fr_m[1]) / (2.0 * hr),
                (fp_p[1] - fp_m[1]) / (2.0 * hp),
            ],
        ];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if !(det.is_finite() && det != 0.0) {
            break;
        }
        let dr = (f[0] * j[1][1] - f[1] * j[0][1]) / det;
        let dp = (f[1] * j[0][0] - f[0] * j[1][0]) / det;
        let mut step = 1.0;
        let mut accepted = false;
        for _ in 0..30 {
            let (nr, np) = (r - step * dr, rho - step * dp);
            if nr > 0.0 && nr < 1.0 && np > 0.0 && np < 1.0 {
                let nf = system(pair, nr, np);
                if norm(nf) < norm(f) {
                    r = nr;
                    rho = np;
                    f = nf;
                    accepted = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if !accepted {
            converged = norm(f) < NOISE;
            break;
        }
        if dr.abs().max(dp.abs()) * step < 1e-15 {
            converged = true;
            break;
        }
    }
    if !converged {
        return DirectSolve {
            solution: *seed,
            iterations,
            converged: false,
        };
    }
    let x = (1.0 - rho) / (1.0 + 2.0 * rho);
    let y = (1.0 - r * rho) / (1.0 + 2.0 * r * rho);
    let mut solution = Z3Solution::from_point(pair, x, y, Method::DirectNewton);
    solution.unique = seed.unique;
    DirectSolve {
        solution,
        iterations,
        converged: true,
    }
}
