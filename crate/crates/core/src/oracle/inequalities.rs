use serde::{Deserialize, Serialize};

use crate::curves::sym_curve;
use crate::error::{domain, Error, Result};
use crate::formulas::defect_segment_raw;
use crate::solver::Z3Solution;
use crate::types::ExponentPair;

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// `A(q, t) = (1+t)^{q-1} (log(1+t) - t/(2(1+t)))`.
fn a_term(q: f64, t: f64) -> f64 {
    let u = 1.0 + t;
    u.powf(q - 1.0) * (u.ln() - t / (2.0 * u))
}

/// The three-variable function `psi(q, x, y)`, negative on the open region
/// `0 < y < sqrt(3)/4`, `sqrt(3) y/3 < x < 1 - sqrt(3) y`.
///
/// The edge `x = sqrt(3) y/3`, on which `psi` vanishes, is also accepted.
pub fn psi_value(q: f64, x: f64, y: f64) -> Result<f64> {
    if !(q > 1.0 && q < 2.0) {
        return Err(domain("q", q, "1 < q < 2"));
    }
    if !(y > 0.0 && y < SQRT3 / 4.0) {
        return Err(domain("y", y, "0 < y < sqrt(3)/4"));
    }
    let edge = SQRT3 * y / 3.0;
    if !(x >= edge * (1.0 - 1e-12) && x < 1.0 - SQRT3 * y) {
        return Err(domain("x", x, "sqrt(3) y/3 <= x < 1 - sqrt(3) y"));
    }
    Ok(a_term(q, 2.0 * x) * (-2.0 * y)
        + a_term(q, -x - SQRT3 * y) * (-SQRT3 * x + y)
        + a_term(q, -x + SQRT3 * y) * (SQRT3 * x + y))
}

/// Central-difference determinant of the Jacobian of `H` at `(alpha, t)`.
pub fn jacobian_det(alpha: f64, t: f64, h: f64) -> Result<f64> {
    let da_p = sym_curve(alpha + h, t)?;
    let da_m = sym_curve(alpha - h, t)?;
    let dt_p = sym_curve(alpha, t + h)?;
    let dt_m = sym_curve(alpha, t - h)?;
    let (h1a, h2a) = ((da_p.u - da_m.u) / (2.0 * h), (da_p.v - da_m.v) / (2.0 * h));
    let (h1t, h2t) = ((dt_p.u - dt_m.u) / (2.0 * h), (dt_p.v - dt_m.v) / (2.0 * h));
    Ok(h1a * h2t - h1t * h2a)
}

/// `det J_H(alpha, t)` with step `1e-6`, for `t` in `(0, 1/2)`; negative
/// throughout that strip.
pub fn jacobian_sign_check(alpha: f64, t: f64) -> Result<f64> {
    if !(alpha > -1.0 && alpha < 1.0) {
        return Err(domain("alpha", alpha, "-1 < alpha < 1"));
    }
    if !(t > 0.0 && t < 0.5) {
        return Err(domain("t", t, "0 < t < 1/2"));
    }
    jacobian_det(alpha, t, 1e-6)
}

/// Values behind the three extremizer clauses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremizerReport {
    /// `G(r, rho0)`.
    pub defect: f64,
    /// Central difference of `G(r, .)` at `rho0`, step `1e-6`.
    pub slope: f64,
    /// `G(r, 1)`.
    pub defect_at_one: f64,
    pub violations: Vec<String>,
}

/// Checks that `rho0` is a critical zero of `G(r, .)` and that `G(r, 1) > 0`.
///
/// Returns [`Error::Verification`] naming each violated clause.
pub fn check_extremizer(
    pair: &ExponentPair,
    sol: &Z3Solution,
    tol: f64,
) -> Result<ExtremizerReport> {
    let (r, rho) = (sol.r, sol.rho0);
    let h = 1e-6;
    let defect = defect_segment_raw(pair, r, rho);
    let slope =
        (defect_segment_raw(pair, r, rho + h) - defect_segment_raw(pair, r, rho - h)) / (2.0 * h);
    let defect_at_one = defect_segment_raw(pair, r, 1.0);
    let mut violations = Vec::new();
    if !(defect.abs() < tol) {
        violations.push(format!(
            "defect: |G(r, rho0)| = {:e} >= {tol:e}",
            defect.abs()
        ));
    }
    if !(slope.abs() < tol.sqrt()) {
        violations.push(format!(
            "stationarity: |dG/drho (r, rho0)| = {:e} >= {:e}",
            slope.abs(),
            tol.sqrt()
        ));
    }
    if !(defect_at_one > 0.0) {
        violations.push(format!(
            "endpoint: G(r, 1) = {defect_at_one:e} is not positive"
        ));
    }
    if violations.is_empty() {
        Ok(ExtremizerReport {
            defect,
            slope,
            defect_at_one,
            violations,
        })
    } else {
        Err(Error::Verification(violations))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::solve_z3;

    /// Closed form of `det J_H`.
    fn det_closed(alpha: f64, t: f64) -> f64 {
        let (lo, hi) = (t.powf(1.0 - alpha), t.powf(1.0 + alpha));
        let d = 1.0 + 2.0 * t * t;
        let a = -(2.0 - (1.0 + alpha) * lo - (1.0 - alpha) * hi) * 4.0 * t.ln();
        let b = (2.0 - 2.0 * (1.0 + alpha) * lo - 2.0 * (1.0 - alpha) * hi
            + (1.0 + alpha) / lo
            + (1.0 - alpha) / hi)
            * (d / 3.0).ln();
        t / (2.0 * d * d) * (a + b)
    }

    #[test]
    fn psi_edge_and_interior() {
        for q in [1.2, 1.5, 1.9] {
            for y in [0.05, 0.2, 0.4] {
                let v = psi_value(q, SQRT3 * y / 3.0, y).unwrap();
                assert!(v.abs() < 1e-15, "{v}");
            }
        }
        assert!(psi_value(1.5, 0.4, 0.1).unwrap() < 0.0);
        assert!(psi_value(1.9, 0.3, 0.2).unwrap() < 0.0);
        assert!(psi_value(1.5, 0.9, 0.1).is_err());
        assert!(psi_value(2.5, 0.4, 0.1).is_err());
    }

    #[test]
    fn jacobian_negative_and_symmetric() {
        let a = jacobian_sign_check(0.5, 0.25).unwrap();
        let b = jacobian_sign_check(-0.5, 0.25).unwrap();
        assert!(a < 0.0 && (a - b).abs() < 1e-6);
        assert!(jacobian_sign_check(0.1, 0.45).unwrap() < 0.0);
        assert!(jacobian_sign_check(0.1, 0.6).is_err());
    }

    #[test]
    fn jacobian_closed_form_agrees() {
        for (alpha, t) in [(0.5, 0.25), (-0.3, 0.1), (0.9, 0.4)] {
            let fd = jacobian_det(alpha, t, 1e-5).unwrap();
            let cf = det_closed(alpha, t);
            assert!(
                (fd - cf).abs() < 1e-7 * cf.abs().max(1.0),
                "{alpha} {t}: {fd} {cf}"
            );
        }
    }

    #[test]
    fn extremizer_clauses() {
        let pair = ExponentPair::new(2.0, 4.0).unwrap();
        let sol = solve_z3(&pair, 1e-12).unwrap();
        assert!(check_extremizer(&pair, &sol, 1e-8).is_ok());
        let mut bad = sol;
        bad.rho0 += 0.1;
        match check_extremizer(&pair, &bad, 1e-8) {
            Err(Error::Verification(v)) => assert!(v.iter().any(|s| s.starts_with("stationarity"))),
            other => panic!("expected failure, got {other:?}"),
        }
    }
}
