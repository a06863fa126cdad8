use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::Ring;

/// Dense univariate polynomial over `R`, lowest degree first.
///
/// The leading entry is nonzero unless the polynomial is zero, in which case
/// the coefficient list is empty.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

pub type IntPoly = Poly<BigInt>;

/// Polynomial in `u` whose coefficients are polynomials in `v`.
pub type BiPoly = Poly<IntPoly>;

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// `c · x^k`.
    pub fn monomial(c: R, k: usize) -> Self {
        if c.is_zero() {
            return Self { coeffs: Vec::new() };
        }
        let mut coeffs = vec![R::zero(); k + 1];
        coeffs[k] = c;
        Self { coeffs }
    }

    pub fn x() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn scalar_mul(&self, c: &R) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.mul(&R::from_i64(i as i64)))
                .collect(),
        )
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![R::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Substitute `x ↦ x^k`.
    pub fn inflate(&self, k: usize) -> Self {
        assert!(k > 0);
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![R::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = a.clone();
        }
        Self { coeffs }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Pseudo-remainder `lc(b)^(deg a − deg b + 1) · a mod b`.
    pub fn prem(&self, b: &Self) -> Self {
        let db = b.degree().expect("prem by the zero polynomial");
        let Some(da) = self.degree() else {
            return Self::zero();
        };
        if da < db {
            return self.clone();
        }
        let lb = b.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        let mut e = da - db + 1;
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            for c in r.iter_mut() {
                *c = c.mul(&lb);
            }
            let off = dr - db;
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[off + i] = r[off + i].sub(&lr.mul(bc));
            }
            while r.last().is_some_and(Ring::is_zero) {
                r.pop();
            }
            e -= 1;
        }
        let r = Self::new(r);
        if e > 0 {
            r.scalar_mul(&lb.pow(e as u64))
        } else {
            r
        }
    }

    /// Exact quotient `self / b`, failing when the division leaves a remainder.
    pub fn exact_divide(&self, b: &Self) -> Result<Self> {
        self.exact_div(b).ok_or(Error::Divisibility(
            "polynomial division leaves a remainder",
        ))
    }

    /// Evaluate at `x` in the coefficient ring.
    pub fn eval(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc.mul(x).add(c))
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    fn one() -> Self {
        Self::constant(R::one())
    }

    fn from_i64(n: i64) -> Self {
        Self::new(vec![R::from_i64(n)])
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                    (Some(a), Some(b)) => a.add(b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }

    fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                    (Some(a), Some(b)) => a.sub(b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.neg(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Self::new(out)
    }

    fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(Ring::neg).collect(),
        }
    }

    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        let db = rhs.degree()?;
        let Some(da) = self.degree() else {
            return Some(Self::zero());
        };
        if da < db {
            return None;
        }
        let lb = rhs.leading().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![R::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let c = &r[k + db];
            if c.is_zero() {
                continue;
            }
            let t = c.exact_div(lb)?;
            for (i, bc) in rhs.coeffs.iter().enumerate() {
                r[k + i] = r[k + i].sub(&t.mul(bc));
            }
            q[k] = t;
        }
        r.iter().all(Ring::is_zero).then(|| Self::new(q))
    }

    fn max_bits(&self) -> u64 {
        self.coeffs.iter().map(Ring::max_bits).max().unwrap_or(0)
    }
}

impl IntPoly {
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Nonnegative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(<BigInt as Zero>::zero(), |g, c| g.gcd(c))
    }

    /// `self / content`, normalized to a positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().unwrap().is_negative() {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + crate::eval::to_f64(c))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_in(f, "x")
    }
}

impl IntPoly {
    /// Render with `var` as the variable name.
    pub fn to_string_in(&self, var: &str) -> String {
        struct In<'a>(&'a IntPoly, &'a str);
        impl fmt::Display for In<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.write_in(f, self.1)
            }
        }
        In(self, var).to_string()
    }

    fn write_in(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if Zero::is_zero(c) {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = a == BigInt::from(1);
            match i {
                0 => write!(f, "{a}")?,
                _ if unit => {}
                _ => write!(f, "{a}*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "{var}")?,
                _ => write!(f, "{var}^{i}")?,
            }
        }
        Ok(())
    }
}

/// Swap the two variables of a bivariate polynomial.
pub fn transpose<R: Ring>(p: &Poly<Poly<R>>) -> Poly<Poly<R>> {
    let inner = p.coeffs.iter().map(|c| c.coeffs.len()).max().unwrap_or(0);
    Poly::new(
        (0..inner)
            .map(|j| Poly::new(p.coeffs.iter().map(|c| c.coeff(j)).collect()))
            .collect(),
    )
}

/// Degrees `(outer, inner)` of a bivariate polynomial.
pub fn bidegree<R: Ring>(p: &Poly<Poly<R>>) -> (usize, usize) {
    let outer = p.degree().unwrap_or(0);
    let inner = p.coeffs.iter().filter_map(Poly::degree).max().unwrap_or(0);
    (outer, inner)
}
