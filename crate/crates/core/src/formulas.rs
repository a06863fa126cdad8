//! Norms and defect functions together with the characterizing systems.
//!
//! Every function here is a pure evaluation in binary64. Checked entry points
//! return [`Result`]; the `*_raw` variants skip validation and are used in the
//! solver and oracle inner loops.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::types::{BiasParam, ExponentPair, PolarPoint, UnitSquarePoint};

/// `x^p` for `x >= 0`, with the endpoints `0` and `1` returned exactly.
#[inline]
pub(crate) fn pow(x: f64, p: f64) -> f64 {
    if x == 0.0 {
        if p > 0.0 {
            0.0
        } else if p == 0.0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else if x == 1.0 {
        1.0
    } else {
        x.powf(p)
    }
}

/// Negative rounding residue at the triangle boundary is clamped to zero.
#[inline]
fn pow_nonneg(x: f64, p: f64) -> f64 {
    pow(x.max(0.0), p)
}

#[inline]
pub(crate) fn ell_raw(p: f64, x: f64) -> f64 {
    pow((1.0 + 2.0 * pow(x, p)) / 3.0, 1.0 / p) / (1.0 + 2.0 * x)
}

/// `l(p, x) = (1/(1+2x)) ((1 + 2x^p)/3)^{1/p}`, the abscissa of the curve family.
pub fn ell(p: f64, x: f64) -> Result<f64> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(domain("p", p, "p > 1"));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(domain("x", x, "0 <= x <= 1"));
    }
    Ok(ell_raw(p, x))
}

/// Ordinate `(1-x)(1-x^{p-1})/(1+2x^p)` of the curve family.
#[inline]
pub(crate) fn h2_raw(p: f64, x: f64) -> f64 {
    (1.0 - x) * (1.0 - pow(x, p - 1.0)) / (1.0 + 2.0 * pow(x, p))
}

/// `||1 + a chi + a conj(chi)||_p` for real `a` in `[-1/2, 1]`.
#[inline]
pub fn segment_norm(p: f64, a: f64) -> f64 {
    let s = pow_nonneg(1.0 + 2.0 * a, p) + 2.0 * pow_nonneg(1.0 - a, p);
    pow(s / 3.0, 1.0 / p)
}

/// Unchecked segment defect, valid for `rho` and `r * rho` in `[-1/2, 1]`.
#[inline]
pub fn defect_segment_raw(pair: &ExponentPair, r: f64, rho: f64) -> f64 {
    segment_norm(pair.p(), rho) - segment_norm(pair.q(), r * rho)
}

/// Defect `G(r, rho) = ||f_rho||_p - ||T_r f_rho||_q` on the segment
/// `f_rho = 1 + rho (chi + conj(chi))`, `rho` in `[0, 1]`.
pub fn defect_segment(pair: &ExponentPair, r: f64, rho: f64) -> Result<f64> {
    check_unit("r", r)?;
    check_unit("rho", rho)?;
    Ok(defect_segment_raw(pair, r, rho))
}

fn check_unit(what: &'static str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(domain(what, v, "0 <= value <= 1"))
    }
}

/// `3 ||f_a||_p^p` for `a = rho e^{i theta}` anywhere in the nonnegativity
/// triangle with vertices `1`, `e^{2 pi i/3}`, `e^{-2 pi i/3}`.
pub fn fourier_power_sum(p: f64, rho: f64, theta: f64) -> f64 {
    let third = 2.0 * PI / 3.0;
    pow_nonneg(1.0 + 2.0 * rho * theta.cos(), p)
        + pow_nonneg(1.0 + 2.0 * rho * (theta + third).cos(), p)
        + pow_nonneg(1.0 + 2.0 * rho * (theta - third).cos(), p)
}

/// `F(p, rho, theta) = 3 ||f_{rho e^{i theta}}||_p^p` on the fundamental triangle.
pub fn f_polar(p: f64, rho: f64, theta: f64) -> Result<f64> {
    let point = PolarPoint::new(rho, theta)?;
    Ok(fourier_power_sum(p, point.rho(), point.theta()))
}

pub(crate) fn defect_polar_raw(pair: &ExponentPair, r: f64, rho: f64, theta: f64) -> f64 {
    let (p, q) = (pair.p(), pair.q());
    pow(fourier_power_sum(p, rho, theta) / 3.0, 1.0 / p)
        - pow(fourier_power_sum(q, r * rho, theta) / 3.0, 1.0 / q)
}

/// Defect of `f_{rho e^{i theta}}` over the fundamental triangle.
pub fn defect_polar(pair: &ExponentPair, r: f64, point: PolarPoint) -> Result<f64> {
    check_unit("r", r)?;
    Ok(defect_polar_raw(pair, r, point.rho(), point.theta()))
}

/// Residuals of the two equations `l(p,x) = l(q,y)` and
/// `h2(p,x) = h2(q,y)` characterizing `r_{p,q}(Z_3)`.
pub fn residual_z3(pair: &ExponentPair, pt: UnitSquarePoint) -> (f64, f64) {
    let (p, q) = (pair.p(), pair.q());
    (
        ell_raw(p, pt.x) - ell_raw(q, pt.y),
        h2_raw(p, pt.x) - h2_raw(q, pt.y),
    )
}

/// Residuals of the self-dual form `l(p,x) = l(q,y)`,
/// `l(p*, x^{p-1}) = l(q*, y^{q-1})`.
pub fn residual_selfdual(pair: &ExponentPair, pt: UnitSquarePoint) -> (f64, f64) {
    let (p, q) = (pair.p(), pair.q());
    (
        ell_raw(p, pt.x) - ell_raw(q, pt.y),
        ell_raw(pair.p_star(), pow(pt.x, p - 1.0)) - ell_raw(pair.q_star(), pow(pt.y, q - 1.0)),
    )
}

#[inline]
pub(crate) fn biased_abscissa_raw(lambda: f64, p: f64, x: f64) -> f64 {
    pow(lambda + (1.0 - lambda) * pow(x, p), 1.0 / p) / (lambda + (1.0 - lambda) * x)
}

#[inline]
pub(crate) fn biased_ordinate_raw(lambda: f64, p: f64, x: f64) -> f64 {
    (1.0 - x) * (1.0 - pow(x, p - 1.0)) / (lambda + (1.0 - lambda) * pow(x, p))
}

/// Residuals of the two-equation system characterizing `sigma_{p,q}(lambda)`.
pub fn residual_biased(lam: BiasParam, pair: &ExponentPair, pt: UnitSquarePoint) -> (f64, f64) {
    let l = lam.value();
    let (p, q) = (pair.p(), pair.q());
    (
        biased_abscissa_raw(l, p, pt.x) - biased_abscissa_raw(l, q, pt.y),
        biased_ordinate_raw(l, p, pt.x) - biased_ordinate_raw(l, q, pt.y),
    )
}

/// Cross ratio `(x, y; -1/2, 1) = (1+2x)(1-y) / ((1+2y)(1-x))`.
pub fn cross_ratio(pt: UnitSquarePoint) -> Result<f64> {
    if pt.x == 1.0 {
        return Err(Error::Singular("cross ratio at x = 1"));
    }
    Ok(cross_ratio_raw(pt.x, pt.y))
}

#[inline]
pub(crate) fn cross_ratio_raw(x: f64, y: f64) -> f64 {
    (1.0 + 2.0 * x) * (1.0 - y) / ((1.0 + 2.0 * y) * (1.0 - x))
}

/// Biased cross ratio `(1-y)(x + c) / ((1-x)(y + c))` with `c = lambda/(1-lambda)`.
pub(crate) fn biased_ratio_raw(lam: BiasParam, x: f64, y: f64) -> f64 {
    let c = lam.odds();
    (1.0 - y) * (x + c) / ((1.0 - x) * (y + c))
}

/// `r_{p,q}(Z_2) = sqrt((p-1)/(q-1))`.
pub fn z2_constant(pair: &ExponentPair) -> f64 {
    ((pair.p() - 1.0) / (pair.q() - 1.0)).sqrt()
}

/// `r_{2,q}(Z_3) = sqrt(2(4^{1/q} - 1)/(4 - 4^{1/q}))`.
pub fn wolff_2q(q: f64) -> Result<f64> {
    if !(q > 1.0 && q.is_finite()) {
        return Err(domain("q", q, "q > 1"));
    }
    let a = 4f64.powf(1.0 / q);
    Ok((2.0 * (a - 1.0) / (4.0 - a)).sqrt())
}

/// `r_{p,p*}(Z_3) = 2(4^{1/p*} - 1)/(4 - 4^{1/p*})` for `1 < p < 2`.
pub fn dual_pair_constant(p: f64) -> Result<f64> {
    if !(p > 1.0 && p < 2.0) {
        return Err(domain("p", p, "1 < p < 2"));
    }
    let a = 4f64.powf(1.0 - 1.0 / p);
    Ok(2.0 * (a - 1.0) / (4.0 - a))
}

/// Value of a closed form together with a flag marking a limiting case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedForm {
    pub value: f64,
    /// Set when the formula is singular at the input and its limit was returned.
    pub limit: bool,
}

/// `sigma_{p,p*}(lambda) = sinh(L/p*) / sinh(L/p)` with `L = log((1-lambda)/lambda)`.
///
/// At `lambda = 1/2` the ratio is `0/0`; the symmetric limit `p - 1` is
/// returned with `limit` set.
pub fn sigma_pp_star(lam: BiasParam, p: f64) -> Result<ClosedForm> {
    if !(p > 1.0 && p < 2.0) {
        return Err(domain("p", p, "1 < p < 2"));
    }
    if lam.is_symmetric() {
        return Ok(ClosedForm {
            value: p - 1.0,
            limit: true,
        });
    }
    let l = lam.value();
    let big_l = ((1.0 - l) / l).ln();
    let a = big_l * (1.0 - 1.0 / p);
    let b = big_l / p;
    // sinh(a)/sinh(b) = e^{a-b} (1 - e^{-2a}) / (1 - e^{-2b}), overflow-free
    let value = (a - b).exp() * (-2.0 * a).exp_m1() / (-2.0 * b).exp_m1();
    Ok(ClosedForm {
        value,
        limit: false,
    })
}
