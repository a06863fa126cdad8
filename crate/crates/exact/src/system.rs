use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{BiPoly, IntPoly, Poly};
use crate::ring::Ring;

/// Exponents `p = m/n`, `q = j/k` in lowest terms with `1 < p < q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RationalExponents {
    pub m: u64,
    pub n: u64,
    pub j: u64,
    pub k: u64,
}

/// A positive rational `num/den` in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rational {
    pub num: u64,
    pub den: u64,
}

impl Rational {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::Input(format!(
                "{num}/{den} is not a positive rational"
            )));
        }
        let g = num.gcd(&den);
        Ok(Self {
            num: num / g,
            den: den / g,
        })
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `m/n` or a bare integer.
    fn from_str(s: &str) -> Result<Self> {
        let parse = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::Input(format!("`{s}` is not of the form m/n")))
        };
        match s.split_once('/') {
            Some((a, b)) => Self::new(parse(a)?, parse(b)?),
            None => Self::new(parse(s)?, 1),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl RationalExponents {
    pub fn new(p: Rational, q: Rational) -> Result<Self> {
        let (m, n, j, k) = (p.num, p.den, q.num, q.den);
        if m <= n {
            return Err(Error::Input(format!("p = {p} must exceed 1")));
        }
        if (j as u128) * (n as u128) <= (m as u128) * (k as u128) {
            return Err(Error::Input(format!("q = {q} must exceed p = {p}")));
        }
        Ok(Self { m, n, j, k })
    }

    pub fn parse(p: &str, q: &str) -> Result<Self> {
        Self::new(p.parse()?, q.parse()?)
    }

    pub fn p(&self) -> Rational {
        Rational {
            num: self.m,
            den: self.n,
        }
    }

    pub fn q(&self) -> Rational {
        Rational {
            num: self.j,
            den: self.k,
        }
    }
}

impl fmt::Display for RationalExponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p(), self.q())
    }
}

/// `a + b·x^e` over Z.
fn binom(a: i64, b: i64, e: u64) -> IntPoly {
    IntPoly::from_i64s(&[a]).add(&IntPoly::monomial(b.into(), e as usize))
}

/// Embed a polynomial in `u` into `Z[v][u]`.
fn in_u(p: &IntPoly) -> BiPoly {
    p.map(|c| IntPoly::constant(c.clone()))
}

/// Embed a polynomial in `v` into `Z[v][u]`.
fn in_v(p: &IntPoly) -> BiPoly {
    Poly::constant(p.clone())
}

fn int(c: u64) -> BiPoly {
    in_v(&IntPoly::constant(c.into()))
}

/// Largest total degree accepted by [`build_system`].
pub const MAX_DEGREE: u64 = 256;

/// The integer system `(P1, P2)` in `(u, v) = (x^{1/n}, y^{1/k})`.
pub fn build_system(re: &RationalExponents) -> Result<(BiPoly, BiPoly)> {
    let RationalExponents { m, n, j, k } = *re;
    let deg = m
        .checked_mul(n)
        .and_then(|d| d.checked_mul(j))
        .and_then(|d| d.checked_add(m.checked_mul(j)?.checked_mul(k)?))
        .unwrap_or(u64::MAX);
    if deg > MAX_DEGREE {
        return Err(Error::Capacity {
            what: "total degree of P1",
            value: deg,
            limit: MAX_DEGREE,
        });
    }
    let three = |e: u64| int(3).pow(e);

    let lhs = three(m * k)
        .mul(&in_u(&binom(1, 2, m)).pow(n * j))
        .mul(&in_v(&binom(1, 2, k)).pow(m * j));
    let rhs = three(n * j)
        .mul(&in_v(&binom(1, 2, j)).pow(m * k))
        .mul(&in_u(&binom(1, 2, n)).pow(m * j));
    let p1 = lhs.sub(&rhs);

    let p2 = in_u(&binom(1, -1, n))
        .mul(&in_u(&binom(1, -1, m - n)))
        .mul(&in_v(&binom(1, 2, j)))
        .sub(
            &in_v(&binom(1, -1, k))
                .mul(&in_v(&binom(1, -1, j - k)))
                .mul(&in_u(&binom(1, 2, m))),
        );
    Ok((p1, p2))
}

/// Evaluate a bivariate polynomial at floats, together with its largest
/// coefficient magnitude.
pub fn eval_bi(p: &BiPoly, u: f64, v: f64) -> (f64, f64) {
    let value = p
        .coeffs()
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * u + c.eval_f64(v));
    let max = p
        .coeffs()
        .iter()
        .map(|c| crate::eval::to_f64(&c.max_abs_coeff()))
        .fold(0.0, f64::max);
    (value, max)
}
