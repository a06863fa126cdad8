use std::time::Instant;

use hyperc_core::formulas::{sigma_pp_star, wolff_2q, z2_constant};
use hyperc_core::oracle::suites::{
    contraction_below_critical, jacobian_grid, norm_monotonicity, psi_grid, reverse_estimate,
    sigma_monotonicity, theta_monotonicity, violation_above_critical,
};
use hyperc_core::oracle::{
    check_extremizer, check_triangle, estimate_r, estimate_sigma, min_defect_segment, GridSpec,
};
use hyperc_core::solver::identities::random_pairs;
use hyperc_core::solver::{solve_z3, DEFAULT_TOL};
use hyperc_core::{BiasParam, ExponentPair};

fn pair(p: f64, q: f64) -> ExponentPair {
    ExponentPair::new(p, q).unwrap()
}

#[test]
fn estimate_r_agrees_with_solver() {
    let g = GridSpec::default();
    for (p, q) in [(2.0, 4.0), (4.0 / 3.0, 4.0), (1.5, 1.8), (3.0, 6.0)] {
        let pr = pair(p, q);
        let start = Instant::now();
        let e = estimate_r(&pr, 1e-8, &g).unwrap();
        let s = solve_z3(&pr, DEFAULT_TOL).unwrap().r;
        assert!((e - s).abs() < 1e-4, "({p},{q}): oracle {e} solver {s}");
        eprintln!("estimate_r({p},{q}) = {e} vs {s} in {:?}", start.elapsed());
    }
}

#[test]
fn estimate_sigma_cases() {
    let g = GridSpec::default();
    let third = BiasParam::new(1.0 / 3.0).unwrap();
    let pr = pair(2.0, 4.0);
    let s = estimate_sigma(third, &pr, 1e-8, &g).unwrap();
    assert!((s - wolff_2q(4.0).unwrap()).abs() < 2e-4, "{s}");
    let lam = BiasParam::new(0.25).unwrap();
    let s = estimate_sigma(lam, &pair(1.5, 3.0), 1e-8, &g).unwrap();
    assert!(
        (s - sigma_pp_star(lam, 1.5).unwrap().value).abs() < 1e-4,
        "{s}"
    );
    let lam = BiasParam::new(0.49).unwrap();
    let s = estimate_sigma(lam, &pr, 1e-8, &g).unwrap();
    assert!((s - 1.0 / 3f64.sqrt()).abs() < 2e-3, "{s}");
}

#[test]
fn supercritical_defect_is_negative() {
    let pr = pair(2.0, 4.0);
    let r = wolff_2q(4.0).unwrap();
    let (m, _) = min_defect_segment(&pr, r + 0.01, &GridSpec::default());
    assert!(m < 0.0);
}

#[test]
fn triangle_minimum_on_the_edge() {
    let g = GridSpec::default();
    let pr = pair(2.0, 4.0);
    let rep = check_triangle(&pr, wolff_2q(4.0).unwrap(), &g).unwrap();
    assert!(rep.regime_proven);
    assert!(rep.min >= -1e-9 && rep.min.abs() < 1e-9, "{rep:?}");
    assert!(rep.theta < 1e-12);
    let pr = pair(1.5, 1.8);
    let r = solve_z3(&pr, DEFAULT_TOL).unwrap().r;
    let rep = check_triangle(&pr, r, &g).unwrap();
    assert!(rep.min >= -1e-9 && rep.theta < 1e-12, "{rep:?}");
    let rep = check_triangle(&pr, 0.0, &g).unwrap();
    assert_eq!((rep.rho, rep.theta), (0.0, 0.0));
}

#[test]
fn extremizer_certificates() {
    for pr in random_pairs(10, 41) {
        let sol = solve_z3(&pr, DEFAULT_TOL).unwrap();
        let rep = check_extremizer(&pr, &sol, 1e-8).unwrap();
        assert!(rep.defect_at_one > 0.0);
    }
    let pr = pair(4.0 / 3.0, 4.0);
    let sol = solve_z3(&pr, DEFAULT_TOL).unwrap();
    assert!(check_extremizer(&pr, &sol, 1e-8).is_ok());
    assert!((sol.rho0 - (1.0 - 2f64.powf(-1.5)) / (1.0 + 2f64.powf(-0.5))).abs() < 1e-12);
}

#[test]
fn contraction_and_violation() {
    for (i, pr) in random_pairs(6, 8).iter().enumerate() {
        let c = contraction_below_critical(pr, 200, i as u64).unwrap();
        assert!(c.passed(), "{c:?}");
        let v = violation_above_critical(pr).unwrap();
        assert!(v.passed(), "{v:?}");
    }
}

#[test]
fn reverse_and_norm_monotonicity() {
    for q in [1.1, 1.5, 1.9] {
        let r = reverse_estimate(q, 200, 5).unwrap();
        assert!(r.passed(), "{r:?}");
    }
    assert!(norm_monotonicity(500, 6).passed());
}

#[test]
fn inequality_grids() {
    let start = Instant::now();
    let psi = psi_grid(64, 64, 16);
    assert_eq!(psi.samples, 64 * 64 * 16);
    assert!(psi.passed(), "{psi:?}");
    let jac = jacobian_grid(32);
    assert_eq!(jac.samples, 32 * 32);
    assert!(jac.passed(), "{jac:?}");
    eprintln!("inequality grids in {:?}", start.elapsed());
}

#[test]
fn theta_monotone_below_z2() {
    for (p, q) in [(1.5, 3.0), (2.0, 4.0), (1.2, 1.7)] {
        let pr = pair(p, q);
        for r in [0.5 * z2_constant(&pr), z2_constant(&pr)] {
            let out = theta_monotonicity(&pr, r, 32, 1000);
            assert!(out.passed(), "({p},{q}) r={r}: {out:?}");
        }
    }
}

#[test]
fn sigma_monotonicity_is_report_only() {
    let out = sigma_monotonicity(2, 8, 1);
    assert!(!out.asserted && out.passed());
}
