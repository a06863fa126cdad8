use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::GridSpec;
use crate::error::{domain, Result};
use crate::formulas::{defect_polar_raw, defect_segment_raw, pow, z2_constant};
use crate::par;
use crate::types::{BiasParam, ExponentPair, PolarPoint};

/// Feasibility slack: `r` is accepted while the minimum defect is `>= -SLACK`.
pub const SLACK: f64 = 1e-12;

const GOLDEN_ITERS: usize = 24;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section minimization of `f` on `[a, b]`; returns `(f_min, x_min)`.
fn golden<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iters {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (fc, c)
    } else {
        (fd, d)
    }
}

/// Minimum of `f` on `[lo, hi]`: uniform scan, then `depth` golden-section
/// stages, each on a window around the best point so far.
fn scan_min<F>(f: F, lo: f64, hi: f64, n: usize, depth: usize) -> (f64, f64)
where
    F: Fn(f64) -> f64 + Sync + Send,
{
    let step = (hi - lo) / (n - 1) as f64;
    let xs = |i: usize| if i == n - 1 { hi } else { lo + step * i as f64 };
    let vals = par::map_range(n, |i| f(xs(i)));
    let mut best = (vals[0], xs(0));
    for (i, &v) in vals.iter().enumerate() {
        if v < best.0 {
            best = (v, xs(i));
        }
    }
    let mut width = step;
    for _ in 0..depth {
        let (a, b) = ((best.1 - width).max(lo), (best.1 + width).min(hi));
        let cand = golden(&f, a, b, GOLDEN_ITERS);
        if cand.0 < best.0 {
            best = cand;
        }
        width *= 4.0 * INV_PHI.powi(GOLDEN_ITERS as i32);
    }
    best
}

/// Minimum of `G(r, .)` over `rho` in `[0, 1]`, with its location.
pub fn min_defect_segment(pair: &ExponentPair, r: f64, grid: &GridSpec) -> (f64, f64) {
    scan_min(
        |rho| defect_segment_raw(pair, r, rho),
        0.0,
        1.0,
        grid.n_rho,
        grid.refine_depth,
    )
}

/// `||1 + rho X||_p` for the biased Bernoulli `X`.
fn two_point_norm(lam: f64, p: f64, rho: f64) -> f64 {
    let a = (1.0 + (1.0 - lam) * rho).max(0.0);
    let b = (1.0 - lam * rho).max(0.0);
    pow(lam * pow(a, p) + (1.0 - lam) * pow(b, p), 1.0 / p)
}

/// Minimum over `rho` in `[-1/(1-lambda), 1/lambda]` of the biased defect
/// `||1 + rho X||_p - ||1 + r rho X||_q`.
pub fn min_defect_biased(
    lam: BiasParam,
    pair: &ExponentPair,
    r: f64,
    grid: &GridSpec,
) -> (f64, f64) {
    let l = lam.value();
    let (p, q) = (pair.p(), pair.q());
    scan_min(
        |rho| two_point_norm(l, p, rho) - two_point_norm(l, q, r * rho),
        -1.0 / (1.0 - l),
        1.0 / l,
        grid.n_rho,
        grid.refine_depth,
    )
}

fn bisect_feasible<F: Fn(f64) -> bool>(feasible: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if !(mid > lo && mid < hi) {
            break;
        }
        if feasible(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn check_estimate_tol(tol: f64) -> Result<()> {
    if (1e-8..1.0).contains(&tol) {
        Ok(())
    } else {
        Err(domain("tol", tol, "1e-8 <= tol < 1"))
    }
}

/// Largest `r` with `min_rho G(r, rho) >= -SLACK`, by bisection on
/// `[0, r_Z2]` to width `tol`.
pub fn estimate_r(pair: &ExponentPair, tol: f64, grid: &GridSpec) -> Result<f64> {
    check_estimate_tol(tol)?;
    Ok(bisect_feasible(
        |r| min_defect_segment(pair, r, grid).0 >= -SLACK,
        0.0,
        z2_constant(pair),
        tol,
    ))
}

/// Biased analogue of [`estimate_r`].
pub fn estimate_sigma(
    lam: BiasParam,
    pair: &ExponentPair,
    tol: f64,
    grid: &GridSpec,
) -> Result<f64> {
    check_estimate_tol(tol)?;
    Ok(bisect_feasible(
        |r| min_defect_biased(lam, pair, r, grid).0 >= -SLACK,
        0.0,
        z2_constant(pair),
        tol,
    ))
}

/// Result of a scan of the defect over the fundamental triangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleReport {
    pub min: f64,
    pub rho: f64,
    pub theta: f64,
    /// True in the regimes `1<p<q<2` and `1<p<=2<q`, where the minimum is
    /// known to sit on the `theta = 0` edge.
    pub regime_proven: bool,
}

/// Values within this distance of the minimum count as ties.
const TIE: f64 = 1e-13;

/// Minimum of the polar defect over `n_theta x n_rho` points of the
/// triangle; ties are resolved toward the smallest `theta`, then `rho`.
pub fn check_triangle(pair: &ExponentPair, r: f64, grid: &GridSpec) -> Result<TriangleReport> {
    if !(0.0..=1.0).contains(&r) {
        return Err(domain("r", r, "0 <= r <= 1"));
    }
    let (nt, nr) = (grid.n_theta, grid.n_rho);
    let theta_of = |j: usize| {
        if j == nt - 1 {
            PI / 3.0
        } else {
            PI / 3.0 * j as f64 / (nt - 1) as f64
        }
    };
    let rows: Vec<Vec<f64>> = par::map_range(nt, |j| {
        let th = theta_of(j);
        let rmax = PolarPoint::max_radius(th);
        (0..nr)
            .map(|i| defect_polar_raw(pair, r, rmax * i as f64 / (nr - 1) as f64, th))
            .collect()
    });
    let min = rows
        .iter()
        .flat_map(|row| row.iter().copied())
        .fold(f64::INFINITY, f64::min);
    let (j, i) = rows
        .iter()
        .enumerate()
        .find_map(|(j, row)| row.iter().position(|&v| v <= min + TIE).map(|i| (j, i)))
        .expect("grid is nonempty");
    let theta = theta_of(j);
    let (p, q) = (pair.p(), pair.q());
    Ok(TriangleReport {
        min,
        rho: PolarPoint::max_radius(theta) * i as f64 / (nr - 1) as f64,
        theta,
        regime_proven: q < 2.0 || (p <= 2.0 && q > 2.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{dual_pair_constant, wolff_2q};

    #[test]
    fn golden_finds_parabola_minimum() {
        let (v, x) = golden(&|x: f64| (x - 0.3).powi(2) - 1.0, 0.0, 1.0, 80);
        assert!((x - 0.3).abs() < 1e-8 && (v + 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_dilation() {
        let pair = ExponentPair::new(2.0, 4.0).unwrap();
        let (m, at) = min_defect_segment(&pair, 0.0, &GridSpec::default());
        assert_eq!((m, at), (0.0, 0.0));
    }

    #[test]
    fn critical_and_supercritical() {
        let pair = ExponentPair::new(2.0, 4.0).unwrap();
        let r = wolff_2q(4.0).unwrap();
        let (m, at) = min_defect_segment(&pair, r, &GridSpec::default());
        assert!(m.abs() < 1e-12, "{m}");
        let rho0 = crate::solver::solve_z3(&pair, 1e-12).unwrap().rho0;
        assert!(at == 0.0 || (at - rho0).abs() < 1e-3, "{at} {rho0}");
        let (m, _) = min_defect_segment(&pair, r + 0.01, &GridSpec::default());
        assert!(m < -1e-6);
    }

    #[test]
    fn estimates_match_closed_forms() {
        let g = GridSpec::default();
        let pair = ExponentPair::new(2.0, 4.0).unwrap();
        assert!((estimate_r(&pair, 1e-8, &g).unwrap() - wolff_2q(4.0).unwrap()).abs() < 1e-4);
        let pair = ExponentPair::new(4.0 / 3.0, 4.0).unwrap();
        let e = estimate_r(&pair, 1e-8, &g).unwrap();
        assert!((e - dual_pair_constant(4.0 / 3.0).unwrap()).abs() < 1e-4);
    }

    #[test]
    fn triangle_at_zero() {
        let pair = ExponentPair::new(1.5, 3.0).unwrap();
        let g = GridSpec::new(128, 32, 0).unwrap();
        let rep = check_triangle(&pair, 0.0, &g).unwrap();
        assert_eq!((rep.rho, rep.theta), (0.0, 0.0));
        assert!(rep.min.abs() < 1e-15);
    }
}
