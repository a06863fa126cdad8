use serde::{Deserialize, Serialize};

use super::scan::{refine, scan, MAX_ITER};
use super::{check_tol, Method, Z3Solution};
use crate::curves::{sym_h1_log, sym_h2_log};
use crate::error::{domain, Error, Result};
use crate::types::ExponentPair;

/// Number of ordinate samples in the bracketing scan.
pub const N_SCAN: usize = 2048;
/// Smallest ordinate scanned.
pub const V_FLOOR: f64 = 1e-12;
/// Lower end of the inversion parameter `w = (1 - |alpha|) log t`.
const W_MIN: f64 = -740.0;

#[inline]
fn s_of_w(alpha: f64, w: f64) -> f64 {
    w / (1.0 - alpha.abs())
}

/// `H2(alpha, .)` at the far end of the inversion range; `1` up to rounding.
fn h2_sup(alpha: f64) -> f64 {
    sym_h2_log(alpha, s_of_w(alpha, W_MIN))
}

/// `log t` with `H2(alpha, t) = v`, to full floating point resolution.
pub(crate) fn invert_h2_log(alpha: f64, v: f64) -> Result<f64> {
    let sup = h2_sup(alpha);
    if !(v > 0.0 && v < sup) {
        return Err(Error::Bracket {
            samples: 0,
            v_lo: 0.0,
            v_hi: sup,
            dump: format!("target ordinate {v:e} outside the range of H2({alpha}, .)"),
        });
    }
    // H2 decreases in w: positive excess at lo, negative at hi
    let excess = |w: f64| sym_h2_log(alpha, s_of_w(alpha, w)) - v;
    let (mut lo, mut hi) = (W_MIN, 0.0_f64);
    let (mut e_lo, mut e_hi) = (sup - v, -v);
    for _ in 0..MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if !(mid > lo && mid < hi) {
            break;
        }
        let e = excess(mid);
        if e > 0.0 {
            lo = mid;
            e_lo = e;
        } else if e < 0.0 {
            hi = mid;
            e_hi = e;
        } else {
            return Ok(s_of_w(alpha, mid));
        }
    }
    let w = if e_lo.abs() <= e_hi.abs() { lo } else { hi };
    Ok(s_of_w(alpha, w))
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > -1.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(domain("alpha", alpha, "-1 < alpha < 1"))
    }
}

/// The unique `t` in `(0, 1)` with `H2(alpha, t) = v`.
pub fn invert_h2(alpha: f64, v: f64, tol: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let s = invert_h2_log(alpha, v)?;
    let residual = (sym_h2_log(alpha, s) - v).abs();
    if residual >= tol {
        return Err(Error::Residual { residual, tol });
    }
    Ok(s.exp())
}

/// One crossing of `H(alpha1, .)` and `H(alpha2, .)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveRoot {
    pub t1: f64,
    pub t2: f64,
    /// `log t1`, `log t2`; exact even where `t` underflows.
    pub s1: f64,
    pub s2: f64,
    /// Common ordinate.
    pub v: f64,
    /// First-coordinate gap at the crossing.
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Intersection {
    /// Crossings in increasing order of the common ordinate.
    pub roots: Vec<CurveRoot>,
    pub unique: bool,
}

/// First-coordinate gap divided by `v^{3/2}`; the blowup makes the crossing
/// transversal near the common endpoint `(0, 0)`.
fn blown_gap(a1: f64, a2: f64, v: f64) -> f64 {
    match (invert_h2_log(a1, v), invert_h2_log(a2, v)) {
        (Ok(s1), Ok(s2)) => (sym_h1_log(a1, s1) - sym_h1_log(a2, s2)) / (v * v.sqrt()),
        _ => f64::NAN,
    }
}

/// All crossings of two members of the symmetrized family.
///
/// The curves are parametrized by their common ordinate `v`. The first
/// coordinate gap is scanned on a geometric grid, every sign change is
/// bisected to floating point resolution and polished by one secant step.
pub fn intersect_h_curves(alpha1: f64, alpha2: f64, tol: f64) -> Result<Intersection> {
    check_alpha(alpha1)?;
    check_alpha(alpha2)?;
    if alpha1 == alpha2 {
        return Err(domain("alpha2", alpha2, "alpha2 != alpha1"));
    }
    let v_hi = h2_sup(alpha1).min(h2_sup(alpha2)) * (1.0 - 1e-9);
    let gap = |v: f64| blown_gap(alpha1, alpha2, v);
    let sc = scan(V_FLOOR, v_hi, N_SCAN, gap);
    let brackets = sc.brackets();
    if brackets.is_empty() {
        return Err(Error::Bracket {
            samples: N_SCAN,
            v_lo: V_FLOOR,
            v_hi,
            dump: sc.dump(),
        });
    }
    let mut roots = Vec::with_capacity(brackets.len());
    for b in brackets {
        let (v, _) = refine(b, gap);
        let s1 = invert_h2_log(alpha1, v)?;
        let s2 = invert_h2_log(alpha2, v)?;
        let gap = sym_h1_log(alpha1, s1) - sym_h1_log(alpha2, s2);
        let h2_gap = sym_h2_log(alpha1, s1) - sym_h2_log(alpha2, s2);
        let residual = gap.abs().max(h2_gap.abs());
        if residual >= tol {
            return Err(Error::Residual { residual, tol });
        }
        roots.push(CurveRoot {
            t1: s1.exp(),
            t2: s2.exp(),
            s1,
            s2,
            v,
            gap,
        });
    }
    let unique = roots.len() == 1;
    Ok(Intersection { roots, unique })
}

/// `x = 2^{-2/p}` and `y` from the `alpha = 0` quadratic, for `q = 2`;
/// the roles swap when `p = 2`.
fn pivot_two(other: f64) -> (f64, f64) {
    let alpha = 1.0 - 2.0 / other;
    let on_curve = 2f64.powf(-2.0 / other);
    let v = (2.0 - 2f64.powf(alpha)) * (2.0 - 2f64.powf(-alpha)) / 6.0;
    // (1 - t)^2 = v (1 + 2t^2), smaller root written without cancellation
    let axis = (1.0 - v) / (1.0 + (3.0 * v - 2.0 * v * v).sqrt());
    (on_curve, axis)
}

fn solve_general(pair: &ExponentPair, tol: f64) -> Result<Z3Solution> {
    let (ap, aq) = (pair.alpha_p(), pair.alpha_q());
    let inter = intersect_h_curves(ap, aq, tol)?;
    let mut best: Option<Z3Solution> = None;
    for root in &inter.roots {
        let x = ((1.0 - ap) * root.s1).exp();
        let y = ((1.0 - aq) * root.s2).exp();
        let sol = Z3Solution::from_point(pair, x, y, Method::CurveIntersection);
        if best.is_none_or(|b| sol.r < b.r) {
            best = Some(sol);
        }
    }
    let mut sol = best.expect("intersection has at least one root");
    sol.unique = inter.unique;
    Ok(sol)
}

/// Solves the Z_3 system for `(x, y)` and returns `r_{p,q}(Z_3)`.
///
/// Dispatch: `q = p*`, then `p = 2` or `q = 2`, then reflection through
/// duality when `2 < p`, then the general curve intersection. When the
/// intersection reports several crossings the smallest cross ratio is kept.
pub fn solve_z3(pair: &ExponentPair, tol: f64) -> Result<Z3Solution> {
    check_tol(tol)?;
    let (p, q) = (pair.p(), pair.q());
    let sol = if pair.is_conjugate() {
        let x = 2f64.powf(-2.0 / p);
        let y = 2f64.powf(-2.0 / pair.p_star());
        Z3Solution::from_point(pair, x, y, Method::ClosedFormPpStar)
    } else if p == 2.0 {
        let (y, x) = pivot_two(q);
        Z3Solution::from_point(pair, x, y, Method::ClosedFormWolff)
    } else if q == 2.0 {
        let (x, y) = pivot_two(p);
        Z3Solution::from_point(pair, x, y, Method::ClosedFormWolff)
    } else if p > 2.0 {
        let dual = solve_general(&pair.dual(), tol)?;
        let x = dual.y.powf(1.0 / (p - 1.0));
        let y = dual.x.powf(1.0 / (q - 1.0));
        let mut sol = Z3Solution::from_point(pair, x, y, Method::DualReflection);
        sol.unique = dual.unique;
        sol
    } else {
        solve_general(pair, tol)?
    };
    if !(sol.residual_max < tol) {
        return Err(Error::Residual {
            residual: sol.residual_max,
            tol,
        });
    }
    Ok(sol)
}
