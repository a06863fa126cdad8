use num_bigint::BigInt;
use num_traits::{FromPrimitive, ToPrimitive, Zero};
use serde::Serialize;

use crate::poly::IntPoly;

const EPS: f64 = f64::EPSILON / 2.0;

pub(crate) fn to_f64(c: &BigInt) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

/// `c · 2^-shift` as an unevaluated sum `hi + lo` accurate to about 106 bits.
fn split(c: &BigInt, shift: u64) -> (f64, f64) {
    if c.is_zero() {
        return (0.0, 0.0);
    }
    let t = c.bits().saturating_sub(106);
    let m: BigInt = c >> t;
    let hi = to_f64(&m);
    let lo = to_f64(&(&m - BigInt::from_f64(hi).unwrap()));
    let scale = (t as i64 - shift as i64) as i32;
    (ldexp(hi, scale), ldexp(lo, scale))
}

fn ldexp(x: f64, e: i32) -> f64 {
    let mut x = x;
    let mut e = e;
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e)
}

fn gamma(n: usize) -> f64 {
    let ne = n as f64 * EPS;
    ne / (1.0 - ne)
}

/// Result of evaluating an integer polynomial at a float.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RootCheck {
    /// `|P(r)| / max|coeff|`.
    pub abs_value: f64,
    /// Rigorous bound on the error in `abs_value`.
    pub error_bound: f64,
    /// `rel_tol · max(1, |r|)^deg`.
    pub threshold: f64,
    pub exact_fallback: bool,
    pub passed: bool,
}

/// Compensated Horner evaluation of `p` (scaled by `2^-shift`) at `x`.
///
/// Returns the value and an a priori error bound.
fn comp_horner(p: &IntPoly, shift: u64, x: f64) -> (f64, f64) {
    let parts: Vec<(f64, f64)> = p.coeffs().iter().map(|c| split(c, shift)).collect();
    let n = parts.len() - 1;
    let (mut s, mut c) = parts[n];
    let mut abs = parts[n].0.abs();
    for &(hi, lo) in parts[..n].iter().rev() {
        let prod = s * x;
        let pi = s.mul_add(x, -prod);
        let sum = prod + hi;
        let bb = sum - prod;
        let sigma = (prod - (sum - bb)) + (hi - bb);
        s = sum;
        c = c * x + (pi + sigma + lo);
        abs = abs * x.abs() + hi.abs();
    }
    let res = s + c;
    let ptilde = abs * (1.0 + gamma(2 * n + 2));
    let bound =
        EPS * res.abs() + 2.0 * (gamma(4 * n + 2) * gamma(2 * n) + 2f64.powi(-100)) * ptilde;
    (res, bound)
}

/// Exact value of `p(x)` scaled by `2^-shift`, rounded once to f64.
fn exact_eval(p: &IntPoly, shift: u64, x: f64) -> f64 {
    if x == 0.0 {
        return split(&p.coeff(0), shift).0;
    }
    let (mant, exp, sign) = num_traits::float::FloatCore::integer_decode(x);
    let mut m = BigInt::from(mant);
    if sign < 0 {
        m = -m;
    }
    // x = m · 2^exp; evaluate Σ a_i m^i 2^{exp·i} over a common denominator.
    let n = p.degree().unwrap_or(0);
    let den_exp = if exp < 0 { (-exp as u64) * n as u64 } else { 0 };
    let mut acc = BigInt::zero();
    let mut mp = BigInt::from(1);
    for (i, a) in p.coeffs().iter().enumerate() {
        let e = exp as i64 * i as i64 + den_exp as i64;
        let term = a * &mp;
        acc += term << (e as u64);
        mp *= &m;
    }
    let bits = acc.bits();
    let t = bits.saturating_sub(60);
    let top = to_f64(&(&acc >> t));
    let total = t as i64 - den_exp as i64 - shift as i64;
    ldexp(top, total.clamp(-4000, 4000) as i32)
}

/// Evaluate `p` at `r` and compare `|p(r)|` to `rel_tol · max|coeff| · max(1,|r|)^deg`.
pub fn check_root(p: &IntPoly, r: f64, rel_tol: f64) -> RootCheck {
    let Some(n) = p.degree() else {
        return RootCheck {
            abs_value: 0.0,
            error_bound: 0.0,
            threshold: 0.0,
            exact_fallback: false,
            passed: false,
        };
    };
    let max = p.max_abs_coeff();
    let shift = max.bits();
    let maxf = split(&max, shift).0;
    let threshold = rel_tol * r.abs().max(1.0).powi(n as i32);
    let (v, err) = comp_horner(p, shift, r);
    let (v, err) = (v.abs() / maxf, err / maxf);
    if v + err <= threshold || v - err > threshold {
        return RootCheck {
            abs_value: v,
            error_bound: err,
            threshold,
            exact_fallback: false,
            passed: v <= threshold,
        };
    }
    let v = exact_eval(p, shift, r).abs() / maxf;
    RootCheck {
        abs_value: v,
        error_bound: 4.0 * EPS * v,
        threshold,
        exact_fallback: true,
        passed: v <= threshold,
    }
}

/// True iff `|p(r)| ≤ rel_tol · max|coeff| · max(1,|r|)^deg`.
pub fn verify_root(p: &IntPoly, r: f64, rel_tol: f64) -> bool {
    check_root(p, r, rel_tol).passed
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_eval_agrees_with_horner() {
        let p = IntPoly::from_i64s(&[-2, 0, 4, 0, 7]);
        let shift = p.max_abs_coeff().bits();
        for &x in &[0.3, -1.25, 0.5660188, 2.0] {
            let (h, err) = comp_horner(&p, shift, x);
            let e = exact_eval(&p, shift, x);
            assert!((h - e).abs() <= err + 1e-15, "{x}: {h} vs {e}");
        }
    }

    #[test]
    fn split_keeps_low_bits() {
        let c: BigInt = (BigInt::from(1) << 80u32) + 3;
        let (hi, lo) = split(&c, 80);
        assert_eq!(hi, 1.0);
        assert_eq!(lo, 3.0 * 2f64.powi(-80));
    }
}
