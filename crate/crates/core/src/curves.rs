//! Curve families and the coordinate changes that symmetrize and blow them up.
//!
//! The raw family `h(p, x) = (l(p,x), h2(p,x))` is pulled back along
//! `Phi(alpha, t) = (2/(1-alpha), t^{1-alpha})` and pushed through
//! `Psi(u, v) = (log u + log(9 - 6v)/2, v)`, producing the family
//! `H(alpha, t)` which is odd in `alpha` in its first coordinate and even in
//! its second. Internally `H` is evaluated in `s = log t` with `expm1`/`ln_1p`
//! so that the first coordinate keeps its relative accuracy near `t = 1`,
//! where the curves of the family become nearly tangent.

use crate::error::{domain, Error, Result};
use crate::formulas::{biased_abscissa_raw, biased_ordinate_raw, ell_raw, h2_raw};
use crate::types::{BiasParam, PlanePoint};

/// `h(p, x)` for `x` in `[0, 1]`; the endpoints are `(3^{-1/p}, 1)` and `(1/3, 0)`.
pub fn h_curve(p: f64, x: f64) -> Result<PlanePoint> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(domain("p", p, "p > 1"));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(domain("x", x, "0 <= x <= 1"));
    }
    Ok(PlanePoint::new(ell_raw(p, x), h2_raw(p, x)))
}

/// `Phi(alpha, t) = (2/(1-alpha), t^{1-alpha})`, returned as `(p, x)`.
pub fn phi(alpha: f64, t: f64) -> Result<(f64, f64)> {
    check_alpha(alpha)?;
    check_open_unit("t", t)?;
    Ok((2.0 / (1.0 - alpha), t.powf(1.0 - alpha)))
}

/// Inverse of [`phi`]: `(p, x) -> (1 - 2/p, x^{p/2})`.
pub fn phi_inverse(p: f64, x: f64) -> Result<(f64, f64)> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(domain("p", p, "p > 1"));
    }
    check_open_unit("x", x)?;
    Ok((1.0 - 2.0 / p, x.powf(p / 2.0)))
}

/// `Psi(u, v) = (log u - log(1/sqrt(9 - 6v)), v)`, natural logarithm.
pub fn psi(pt: PlanePoint) -> Result<PlanePoint> {
    if !(pt.u > 0.0) {
        return Err(domain("u", pt.u, "u > 0"));
    }
    if !(pt.v < 1.5) {
        return Err(domain("v", pt.v, "v < 3/2"));
    }
    Ok(PlanePoint::new(
        pt.u.ln() + 0.5 * (9.0 - 6.0 * pt.v).ln(),
        pt.v,
    ))
}

pub fn psi_inverse(pt: PlanePoint) -> Result<PlanePoint> {
    if !(pt.v < 1.5) {
        return Err(domain("v", pt.v, "v < 3/2"));
    }
    Ok(PlanePoint::new(
        pt.u.exp() / (9.0 - 6.0 * pt.v).sqrt(),
        pt.v,
    ))
}

/// Symmetrized family `H(alpha, t)` for `t` in `[0, 1]`.
///
/// The endpoints are returned as their limits: `H(alpha, 0) = (alpha log 3 / 2, 1)`
/// and `H(alpha, 1) = (0, 0)`.
pub fn sym_curve(alpha: f64, t: f64) -> Result<PlanePoint> {
    check_alpha(alpha)?;
    if !(0.0..=1.0).contains(&t) {
        return Err(domain("t", t, "0 <= t <= 1"));
    }
    if t == 0.0 {
        return Ok(PlanePoint::new(0.5 * alpha * 3f64.ln(), 1.0));
    }
    Ok(PlanePoint::new(
        sym_h1_log(alpha, t.ln()),
        sym_h2_log(alpha, t.ln()),
    ))
}

/// Number of Taylor coefficients kept by [`LogSeries`].
const SERIES_LEN: usize = 28;
/// Largest `|z|` at which [`LogSeries`] replaces direct evaluation.
pub(crate) const SERIES_RADIUS: f64 = 0.25;

/// Taylor coefficients of `z -> log(1 + beta (e^z - 1))` at `0`.
///
/// For `0 < beta < 1` the nearest singularity has modulus at least `pi`,
/// so at `|z| <= SERIES_RADIUS` the truncation error is far below one ulp.
#[derive(Debug, Clone)]
pub(crate) struct LogSeries {
    pub c: [f64; SERIES_LEN],
}

impl LogSeries {
    pub fn new(beta: f64) -> Self {
        let mut u = [0.0; SERIES_LEN];
        let mut fact = 1.0;
        for (k, uk) in u.iter_mut().enumerate().skip(1) {
            fact *= k as f64;
            *uk = beta / fact;
        }
        // log(1 + u) = sum_j (-1)^{j+1} u^j / j, truncated power series
        let mut c = [0.0; SERIES_LEN];
        let mut pw = u;
        for j in 1..SERIES_LEN {
            let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
            for k in 0..SERIES_LEN {
                c[k] += sign * pw[k] / j as f64;
            }
            let mut next = [0.0; SERIES_LEN];
            for a in 1..SERIES_LEN {
                if pw[a] == 0.0 {
                    continue;
                }
                for b in 1..SERIES_LEN - a {
                    next[a + b] += pw[a] * u[b];
                }
            }
            pw = next;
        }
        Self { c }
    }

    /// `sum_k c_k w_k z^k` for weights `w_k`.
    pub fn weighted(&self, z: f64, weight: impl Fn(usize) -> f64) -> f64 {
        let mut acc = 0.0;
        for k in (1..SERIES_LEN).rev() {
            acc = acc * z + self.c[k] * weight(k);
        }
        acc * z
    }
}

fn third_series() -> &'static LogSeries {
    static SERIES: std::sync::OnceLock<LogSeries> = std::sync::OnceLock::new();
    SERIES.get_or_init(|| LogSeries::new(2.0 / 3.0))
}

/// First coordinate of `H` at `t = e^s`, `s <= 0`.
///
/// With `L(z) = log((1 + 2e^z)/3)`,
/// `H1 = (L((1+alpha)s) - L((1-alpha)s) - alpha L(2s))/2`; the terms of order
/// one and two cancel identically, so near `s = 0` the sum is taken
/// coefficientwise from the Taylor series of `L`.
#[inline]
pub(crate) fn sym_h1_log(alpha: f64, s: f64) -> f64 {
    if s.abs() <= SERIES_RADIUS / 2.0 {
        let (a, b) = (1.0 + alpha, 1.0 - alpha);
        return 0.5
            * third_series().weighted(s, |k| {
                let k = k as i32;
                if k < 3 {
                    0.0
                } else {
                    a.powi(k) - b.powi(k) - alpha * 2f64.powi(k)
                }
            });
    }
    // log((1 + 2t^2)/3) = ln_1p(2 (t^2 - 1)/3)
    let a = (2.0 * (2.0 * s).exp_m1() / 3.0).ln_1p();
    // log((1 + 2t^{1+a})/(1 + 2t^{1-a})) = ln_1p(2 t^{1-a} (t^{2a} - 1) / (1 + 2 t^{1-a}))
    let lo = ((1.0 - alpha) * s).exp();
    let b = (2.0 * lo * (2.0 * alpha * s).exp_m1() / (1.0 + 2.0 * lo)).ln_1p();
    -0.5 * alpha * a + 0.5 * b
}

/// Second coordinate of `H` at `t = e^s`.
#[inline]
pub(crate) fn sym_h2_log(alpha: f64, s: f64) -> f64 {
    ((1.0 - alpha) * s).exp_m1() * ((1.0 + alpha) * s).exp_m1() / (1.0 + 2.0 * (2.0 * s).exp())
}

/// First-order blowup `b(u, v) = (u/v, v)`.
pub fn blowup_first(pt: PlanePoint) -> Result<PlanePoint> {
    if !(pt.v > 0.0) {
        return Err(Error::Singular("first-order blowup needs v > 0"));
    }
    Ok(PlanePoint::new(pt.u / pt.v, pt.v))
}

/// Three-halves blowup `B(u, v) = (u/v^{3/2}, v^{1/2})`.
pub fn blowup_three_halves(pt: PlanePoint) -> Result<PlanePoint> {
    if !(pt.v > 0.0) {
        return Err(Error::Singular("3/2-order blowup needs v > 0"));
    }
    let root = pt.v.sqrt();
    Ok(PlanePoint::new(pt.u / (pt.v * root), root))
}

/// Biased family `h_lambda(p, x)`.
pub fn biased_curve(lam: BiasParam, p: f64, x: f64) -> Result<PlanePoint> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(domain("p", p, "p > 1"));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(domain("x", x, "0 <= x <= 1"));
    }
    let l = lam.value();
    Ok(PlanePoint::new(
        biased_abscissa_raw(l, p, x),
        biased_ordinate_raw(l, p, x),
    ))
}

/// `log(e^a + e^b)` without overflow or underflow.
#[inline]
pub(crate) fn log_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// `log(lambda + (1 - lambda) t^e)` from `log lambda`, `log(1 - lambda)` and `log t`.
#[inline]
fn log_mix(log_l: f64, log_1ml: f64, e: f64, log_t: f64) -> f64 {
    log_add_exp(log_l, log_1ml + e * log_t)
}

/// Symmetrized biased family `H_lambda(alpha, t)`, both coordinates divided
/// by `log lambda`.
///
/// Computed entirely in log space, so `lambda` down to the smallest normal
/// doubles and `t` down to `0` stay finite. `H_lambda(alpha, 0) = (alpha, 1)`.
pub fn sym_curve_biased(lam: BiasParam, alpha: f64, t: f64) -> Result<PlanePoint> {
    check_alpha(alpha)?;
    if !(0.0..=1.0).contains(&t) {
        return Err(domain("t", t, "0 <= t <= 1"));
    }
    let l = lam.value();
    let log_l = l.ln();
    let log_1ml = (-l).ln_1p();
    let log_t = if t == 0.0 { f64::NEG_INFINITY } else { t.ln() };
    let sq = log_mix(log_l, log_1ml, 2.0, log_t);
    let plus = log_mix(log_l, log_1ml, 1.0 + alpha, log_t);
    let minus = log_mix(log_l, log_1ml, 1.0 - alpha, log_t);
    Ok(PlanePoint::new(
        (alpha * sq - plus + minus) / log_l,
        (-sq + plus + minus) / log_l,
    ))
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > -1.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(domain("alpha", alpha, "-1 < alpha < 1"))
    }
}

fn check_open_unit(what: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(domain(what, v, "0 < value < 1"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_endpoints() {
        for p in [1.2, 2.0, 5.0] {
            let a = h_curve(p, 0.0).unwrap();
            assert!((a.u - 3f64.powf(-1.0 / p)).abs() < 1e-15 && a.v == 1.0);
            let b = h_curve(p, 1.0).unwrap();
            assert!((b.u - 1.0 / 3.0).abs() < 1e-15 && b.v == 0.0);
            let near = h_curve(p, 1.0 - 1e-9).unwrap();
            assert!((near.u - 1.0 / 3.0).abs() < 1e-8 && near.v < 1e-8);
        }
        let mid = h_curve(2.0, 0.5).unwrap();
        assert!((mid.u - 0.353_553_390_593_273_8).abs() < 1e-15);
        assert!((mid.v - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn phi_cases() {
        let (p, x) = phi(0.0, 0.37).unwrap();
        assert_eq!((p, x), (2.0, 0.37));
        let alpha = 0.3;
        let (p, x) = phi(alpha, 0.5).unwrap();
        assert!((p - 2.0 / 0.7).abs() < 1e-15);
        assert!((x - 2f64.powf(alpha - 1.0)).abs() < 1e-15);
        let (a, t) = phi_inverse(p, x).unwrap();
        assert!((a - alpha).abs() < 1e-15 && (t - 0.5).abs() < 1e-15);
        assert!(phi(1.0, 0.5).is_err());
    }

    #[test]
    fn psi_cases() {
        let v: f64 = 0.4;
        let axis = psi(PlanePoint::new(1.0 / (9.0 - 6.0 * v).sqrt(), v)).unwrap();
        assert!(axis.u.abs() < 1e-15 && axis.v == v);
        let left = psi(PlanePoint::new(1.0 / 3.0, v)).unwrap();
        assert!((left.u - 0.5 * ((3.0 - 2.0 * v) / 3.0).ln()).abs() < 1e-15);
        assert!(left.u < 0.0);
        let third = psi(PlanePoint::new(1.0 / 3.0, 1.0 / 3.0)).unwrap();
        assert!((third.u + 0.125_657_214_140_453_04).abs() < 1e-15);
        assert!(psi(PlanePoint::new(0.0, 0.5)).is_err());
    }

    #[test]
    fn sym_curve_special_values() {
        for t in [0.05, 0.3, 0.5, 0.9] {
            let h = sym_curve(0.0, t).unwrap();
            assert_eq!(h.u, 0.0);
            assert!((h.v - (1.0 - t) * (1.0 - t) / (1.0 + 2.0 * t * t)).abs() < 1e-15);
        }
        for alpha in [-0.8, -0.2, 0.4, 0.95] {
            let h = sym_curve(alpha, 0.5).unwrap();
            assert!(h.u.abs() < 1e-16);
            let expected = (2.0 - 2f64.powf(alpha)) * (2.0 - 2f64.powf(-alpha)) / 6.0;
            assert!((h.v - expected).abs() < 1e-15);
        }
        let h = sym_curve(0.5, 0.25).unwrap();
        assert!((h.u - 0.010_205_498_630_063_782).abs() < 1e-15);
        assert!((h.v - 0.388_888_888_888_888_9).abs() < 1e-15);
        assert_eq!(sym_curve(0.3, 1.0).unwrap(), PlanePoint::new(0.0, 0.0));
        let start = sym_curve(0.3, 0.0).unwrap();
        let near = sym_curve(0.3, 1e-12).unwrap();
        assert!((start.u - near.u).abs() < 1e-6 && (start.v - near.v).abs() < 1e-6);
    }

    #[test]
    fn series_matches_direct() {
        let series = LogSeries::new(2.0 / 3.0);
        for z in [-0.25, -0.1, 0.07, 0.2] {
            let direct = ((1.0 + 2.0 * f64::exp(z)) / 3.0).ln();
            assert!((series.weighted(z, |_| 1.0) - direct).abs() < 1e-16);
        }
        for alpha in [-0.9_f64, 0.0001, 0.5] {
            for s in [-0.2_f64, -0.13, -0.124] {
                let lo = ((1.0 - alpha) * s).exp();
                let b = (2.0 * lo * (2.0 * alpha * s).exp_m1() / (1.0 + 2.0 * lo)).ln_1p();
                let a = (2.0 * (2.0 * s).exp_m1() / 3.0).ln_1p();
                let direct = -0.5 * alpha * a + 0.5 * b;
                let via = sym_h1_log(alpha, s);
                assert!((direct - via).abs() < 1e-16, "{alpha} {s}: {direct} {via}");
            }
        }
        // leading behaviour c3 (alpha^3 - alpha) s^3 with c3 = -1/81
        let (alpha, s) = (0.4, -1e-6);
        let lead = -(alpha * alpha * alpha - alpha) * s * s * s / 81.0;
        assert!((sym_h1_log(alpha, s) / lead - 1.0).abs() < 1e-4);
    }

    #[test]
    fn blowups() {
        assert_eq!(
            blowup_first(PlanePoint::new(0.0, 0.3)).unwrap(),
            PlanePoint::new(0.0, 0.3)
        );
        assert_eq!(
            blowup_three_halves(PlanePoint::new(0.7, 1.0)).unwrap(),
            PlanePoint::new(0.7, 1.0)
        );
        let b = blowup_three_halves(PlanePoint::new(0.02, 0.04)).unwrap();
        assert!((b.u - 2.5).abs() < 1e-14 && (b.v - 0.2).abs() < 1e-15);
        assert!(blowup_first(PlanePoint::new(1.0, 0.0)).is_err());
        assert!(blowup_three_halves(PlanePoint::new(1.0, -0.1)).is_err());
    }

    #[test]
    fn biased_curve_value() {
        let lam = BiasParam::new(0.25).unwrap();
        let h = biased_curve(lam, 2.0, 0.5).unwrap();
        assert!((h.u - 1.058_300_524_425_836).abs() < 1e-15);
        assert!((h.v - 0.571_428_571_428_571_4).abs() < 1e-15);
        let end = biased_curve(lam, 3.0, 1.0 - 1e-12).unwrap();
        assert!(end.v.abs() < 1e-11);
    }

    #[test]
    fn biased_curve_at_one_third_rescales_h() {
        let lam = BiasParam::new(1.0 / 3.0).unwrap();
        for (p, x) in [(1.5, 0.2), (2.0, 0.5), (4.0, 0.9)] {
            let hb = biased_curve(lam, p, x).unwrap();
            let h = h_curve(p, x).unwrap();
            assert!((hb.u - 3.0 * h.u).abs() < 1e-14);
            assert!((hb.v - 3.0 * h.v).abs() < 1e-14);
        }
    }

    #[test]
    fn biased_sym_curve_identities() {
        for l in [0.3, 0.01, 1e-100] {
            let lam = BiasParam::new(l).unwrap();
            let c = lam.odds();
            for t in [0.1, 0.6] {
                assert_eq!(sym_curve_biased(lam, 0.0, t).unwrap().u, 0.0);
            }
            for alpha in [-0.7, 0.2, 0.9] {
                let h = sym_curve_biased(lam, alpha, c).unwrap();
                assert!(h.u.abs() < 1e-14, "lambda {l} alpha {alpha}: {}", h.u);
                let a = sym_curve_biased(lam, alpha, 0.0).unwrap();
                assert!((a.u - alpha).abs() < 1e-15 && (a.v - 1.0).abs() < 1e-15);
                let b = sym_curve_biased(lam, alpha, 1.0).unwrap();
                assert!(b.u.abs() < 1e-15 && b.v.abs() < 1e-15);
            }
            let pleat = sym_curve_biased(lam, 0.0, c).unwrap();
            let expected = (4.0 * l * (1.0 - l)).ln() / l.ln();
            assert!((pleat.v - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn log_add_exp_stable() {
        assert!((log_add_exp(0.0, 0.0) - 2f64.ln()).abs() < 1e-15);
        assert_eq!(log_add_exp(-230.0, f64::NEG_INFINITY), -230.0);
        assert!((log_add_exp(1000.0, 1000.0) - (1000.0 + 2f64.ln())).abs() < 1e-12);
    }
}
