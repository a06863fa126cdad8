//! Exact integer polynomial arithmetic and resultant-based certification of
//! the hypercontractive constant for rational exponents.

mod certify;
mod error;
mod eval;
mod gcd;
mod poly;
mod resultant;
mod ring;
mod system;

pub use certify::{
    certify, certify_with, paper_p20, Certificate, CertifiedPoly, Degrees, CERTIFY_REL_TOL,
};
pub use error::{Error, Result};
pub use eval::{check_root, verify_root, RootCheck};
pub use gcd::{gcd, inner_content, squarefree, strip_outer_content};
pub use poly::{bidegree, transpose, BiPoly, IntPoly, Poly};
pub use resultant::{
    bareiss_det, resultant, resultant_bareiss, resultant_bi, resultant_with, sylvester, Limits, Var,
};
pub use ring::Ring;
pub use system::{build_system, eval_bi, Rational, RationalExponents, MAX_DEGREE};

pub use num_bigint::BigInt;
