use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::{check_root, RootCheck};
use crate::gcd::{squarefree, strip_outer_content};
use crate::poly::{bidegree, BiPoly, IntPoly, Poly};
use crate::resultant::{resultant_with, Limits};
use crate::ring::Ring;
use crate::system::{build_system, RationalExponents};

/// Tolerance used by [`certify`] for the root check.
pub const CERTIFY_REL_TOL: f64 = 1e-6;

/// Polynomial in `u` over `Z[v][R]`.
type TriPoly = Poly<Poly<IntPoly>>;

/// Serialized certificate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertifiedPoly {
    pub variable: String,
    /// Decimal strings, lowest degree first.
    pub coefficients: Vec<String>,
    pub evaluated_at: f64,
    /// `|R(r)| / max|coeff|`.
    pub abs_value: f64,
    /// `rel_tol · max(1, r)^deg`.
    pub bound: f64,
}

impl CertifiedPoly {
    pub fn from_poly(poly: &IntPoly, r: f64, check: &RootCheck) -> Self {
        Self {
            variable: "r".into(),
            coefficients: poly.coeffs().iter().map(BigInt::to_string).collect(),
            evaluated_at: r,
            abs_value: check.abs_value,
            bound: check.threshold,
        }
    }

    pub fn poly(&self) -> Result<IntPoly> {
        self.coefficients
            .iter()
            .map(|c| {
                c.parse::<BigInt>()
                    .map_err(|_| Error::Input(format!("bad coefficient `{c}`")))
            })
            .collect::<Result<Vec<_>>>()
            .map(IntPoly::new)
    }
}

/// Degrees observed along the elimination chain.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Degrees {
    /// `(deg_u, deg_v)`.
    pub p1: (usize, usize),
    pub p2: (usize, usize),
    /// `(deg_v, deg_R)` after stripping factors in `v` alone.
    pub r1: (usize, usize),
    pub r2: (usize, usize),
    pub resultant: usize,
    pub squarefree: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub exponents: RationalExponents,
    pub poly: IntPoly,
    pub r: f64,
    pub check: RootCheck,
    pub degrees: Degrees,
}

impl Certificate {
    pub fn to_json(&self) -> CertifiedPoly {
        CertifiedPoly::from_poly(&self.poly, self.r, &self.check)
    }
}

fn lift(p: &BiPoly) -> TriPoly {
    p.map(|cv| cv.map(|c| IntPoly::constant(c.clone())))
}

/// `R(1+2v^k)(1−u^n) − (1+2u^n)(1−v^k)`.
fn cross_ratio_poly(n: u64, k: u64) -> TriPoly {
    let (n, k) = (n as usize, k as usize);
    let c = |a: i64| IntPoly::from_i64s(&[a]);
    let r = IntPoly::from_i64s(&[0, 1]);
    let in_v = |p: Poly<IntPoly>| TriPoly::constant(p);
    let one_plus_2vk = Poly::constant(c(1)).add(&Poly::monomial(c(2), k));
    let one_minus_vk = Poly::constant(c(1)).sub(&Poly::monomial(c(1), k));
    let one_minus_un = TriPoly::one().sub(&TriPoly::monomial(Poly::one(), n));
    let one_plus_2un = TriPoly::one().add(&TriPoly::monomial(Poly::constant(c(2)), n));
    in_v(one_plus_2vk.map(|a| a.mul(&r)))
        .mul(&one_minus_un)
        .sub(&one_plus_2un.mul(&in_v(one_minus_vk)))
}

fn strip(p: &Poly<IntPoly>) -> Poly<IntPoly> {
    let (_, q) = strip_outer_content(p);
    let c = q.coeffs().iter().fold(BigInt::from(0), |g, c| {
        num_integer::Integer::gcd(&g, &c.content())
    });
    if c > BigInt::from(1) {
        q.map(|cv| cv.map(|a| a / &c))
    } else {
        q
    }
}

/// Eliminate `u` and `v` from the system and certify `r` as a root of the
/// resulting integer polynomial.
pub fn certify(re: &RationalExponents, r: f64) -> Result<Certificate> {
    certify_with(re, r, &Limits::default())
}

pub fn certify_with(re: &RationalExponents, r: f64, limits: &Limits) -> Result<Certificate> {
    if !(r.is_finite() && r > 0.0 && r < 1.0) {
        return Err(Error::Input(format!("r = {r} is not in (0, 1)")));
    }
    let (p1, p2) = build_system(re)?;
    let mut degrees = Degrees {
        p1: bidegree(&p1),
        p2: bidegree(&p2),
        ..Degrees::default()
    };
    let p3 = cross_ratio_poly(re.n, re.k);

    // (u, v) = (1, 1) solves all three equations for every R, so each
    // eliminant carries a factor in v alone that must go before Res_v.
    let r1 = strip(&resultant_with(&lift(&p1), &p3, limits)?);
    let r2 = strip(&resultant_with(&lift(&p2), &p3, limits)?);
    degrees.r1 = bidegree(&r1);
    degrees.r2 = bidegree(&r2);
    if r1.degree().unwrap_or(0) == 0 || r2.degree().unwrap_or(0) == 0 {
        return Err(Error::Degenerate(format!(
            "eliminants constant in v: {degrees:?}"
        )));
    }

    let res = resultant_with(&r1, &r2, limits)?;
    degrees.resultant = res.degree().unwrap_or(0);
    if res.is_zero() {
        return Err(Error::Degenerate(format!("Res_v vanishes: {degrees:?}")));
    }
    let poly = squarefree(&res);
    degrees.squarefree = poly.degree().unwrap_or(0);
    if poly.degree().unwrap_or(0) == 0 {
        return Err(Error::Degenerate(format!(
            "constant after reduction: {degrees:?}"
        )));
    }

    let check = check_root(&poly, r, CERTIFY_REL_TOL);
    if !check.passed {
        return Err(Error::Certification {
            value: check.abs_value,
            bound: check.threshold,
        });
    }
    Ok(Certificate {
        exponents: *re,
        poly,
        r,
        check,
        degrees,
    })
}

/// The degree-20 integer polynomial satisfied by `r_{3,6}`.
pub fn paper_p20() -> IntPoly {
    IntPoly::from_i64s(&[
        -20, -20, -5540, 17160, -118680, 97920, 407592, -1287048, 1067232, 1575484, -3942536,
        4269364, 1557057, -3882063, 901467, -5287590, -1846590, 3456600, -54275, 2600125, 2600125,
    ])
}
