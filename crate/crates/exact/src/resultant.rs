use crate::error::{Error, Result};
use crate::poly::{transpose, BiPoly, IntPoly, Poly};
use crate::ring::Ring;

/// Size budget for eliminations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_sylvester: usize,
    pub max_bits: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_sylvester: 64,
            max_bits: 1 << 20,
        }
    }
}

impl Limits {
    fn check_dim(&self, dim: usize) -> Result<()> {
        if dim > self.max_sylvester {
            return Err(Error::Capacity {
                what: "Sylvester dimension",
                value: dim as u64,
                limit: self.max_sylvester as u64,
            });
        }
        Ok(())
    }

    fn check_bits(&self, bits: u64) -> Result<()> {
        if bits > self.max_bits {
            return Err(Error::Capacity {
                what: "coefficient bit length",
                value: bits,
                limit: self.max_bits,
            });
        }
        Ok(())
    }
}

/// Which variable of a [`BiPoly`] to eliminate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    U,
    V,
}

/// Resultant of two univariate polynomials over `R` by the subresultant PRS.
pub fn resultant<R: Ring>(a: &Poly<R>, b: &Poly<R>) -> Result<R> {
    resultant_with(a, b, &Limits::default())
}

pub fn resultant_with<R: Ring>(a: &Poly<R>, b: &Poly<R>, limits: &Limits) -> Result<R> {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return Err(Error::Input("resultant of the zero polynomial".into()));
    };
    limits.check_dim(da + db)?;
    let (mut a, mut b, mut sign) = if da < db {
        (b.clone(), a.clone(), (da * db) % 2 == 1)
    } else {
        (a.clone(), b.clone(), false)
    };
    if b.degree() == Some(0) {
        let r = b.leading().unwrap().pow(a.degree().unwrap() as u64);
        return Ok(if sign { r.neg() } else { r });
    }

    let mut g = R::one();
    let mut h = R::one();
    loop {
        let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = !sign;
        }
        let r = a.prem(&b);
        if r.is_zero() {
            return Ok(R::zero());
        }
        limits.check_bits(r.max_bits())?;
        a = b;
        let div = g.mul(&h.pow(delta as u64));
        b = r
            .exact_div(&Poly::constant(div))
            .ok_or(Error::Divisibility("subresultant quotient"))?;
        g = a.leading().unwrap().clone();
        if delta > 0 {
            h = g
                .pow(delta as u64)
                .exact_div(&h.pow(delta as u64 - 1))
                .ok_or(Error::Divisibility("subresultant scale"))?;
        }
        if b.degree() == Some(0) {
            break;
        }
    }
    let da = a.degree().unwrap() as u64;
    let lb = b.leading().unwrap();
    let r = lb
        .pow(da)
        .exact_div(&h.pow(da - 1))
        .ok_or(Error::Divisibility("subresultant result"))?;
    Ok(if sign { r.neg() } else { r })
}

/// Sylvester matrix of `a` and `b`, rows of `a` first.
pub fn sylvester<R: Ring>(a: &Poly<R>, b: &Poly<R>) -> Vec<Vec<R>> {
    let da = a.degree().unwrap_or(0);
    let db = b.degree().unwrap_or(0);
    let n = da + db;
    let mut m = vec![vec![R::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate().take(db) {
        for k in 0..=da {
            row[i + k] = a.coeff(da - k);
        }
    }
    for (i, row) in m.iter_mut().skip(db).enumerate() {
        for k in 0..=db {
            row[i + k] = b.coeff(db - k);
        }
    }
    m
}

/// Fraction-free Gaussian elimination determinant.
pub fn bareiss_det<R: Ring>(mut m: Vec<Vec<R>>) -> Result<R> {
    let n = m.len();
    if n == 0 {
        return Ok(R::one());
    }
    let mut neg = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Ok(R::zero());
            };
            m.swap(k, p);
            neg = !neg;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t
                    .exact_div(&prev)
                    .ok_or(Error::Divisibility("Bareiss step"))?;
            }
            m[i][k] = R::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if neg { d.neg() } else { d })
}

/// Resultant as the Bareiss determinant of the Sylvester matrix.
pub fn resultant_bareiss<R: Ring>(a: &Poly<R>, b: &Poly<R>, max_dim: usize) -> Result<R> {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return Err(Error::Input("resultant of the zero polynomial".into()));
    };
    if da + db > max_dim {
        return Err(Error::Capacity {
            what: "Sylvester dimension",
            value: (da + db) as u64,
            limit: max_dim as u64,
        });
    }
    if da + db == 0 {
        return Ok(R::one());
    }
    bareiss_det(sylvester(a, b))
}

/// Eliminate one variable of a pair of bivariate polynomials.
pub fn resultant_bi(p: &BiPoly, q: &BiPoly, eliminate: Var) -> Result<IntPoly> {
    match eliminate {
        Var::U => resultant(p, q),
        Var::V => resultant(&transpose(p), &transpose(q)),
    }
}
