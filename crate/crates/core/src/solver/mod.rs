//! Solvers for the characterizing systems of `r_{p,q}(Z_3)` and
//! `sigma_{p,q}(lambda)`.
//!
//! Closed forms are used whenever they apply. Otherwise the Z_3 system is
//! solved by intersecting two members of the symmetrized family `H`, with the
//! common ordinate as parameter, and the biased system by the same scheme on
//! the raw family `h_lambda`.

mod biased;
mod direct;
pub mod identities;
mod scan;
mod z3;

use serde::{Deserialize, Serialize};

use crate::formulas::{cross_ratio_raw, residual_z3};
use crate::types::{ExponentPair, UnitSquarePoint};

pub use biased::solve_biased;
pub use direct::{solve_z3_direct, DirectSolve};
pub use z3::{intersect_h_curves, invert_h2, solve_z3, CurveRoot, Intersection};

/// Default solve tolerance.
pub const DEFAULT_TOL: f64 = 1e-12;

/// How a [`Z3Solution`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// `p = 2` or `q = 2`: the crossing sits at `t = 1/2` on the other curve.
    ClosedFormWolff,
    /// `q = p*`: `(x, y) = (2^{-2/p}, 2^{-2/p*})`.
    ClosedFormPpStar,
    /// `2 < p`: the adjoint pair `(q*, p*)` was solved and mapped back.
    DualReflection,
    CurveIntersection,
    /// Damped Newton on the extremizer system in `(r, rho)`.
    DirectNewton,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ClosedFormWolff => "closed_form_wolff",
            Method::ClosedFormPpStar => "closed_form_pp_star",
            Method::DualReflection => "dual_reflection",
            Method::CurveIntersection => "curve_intersection",
            Method::DirectNewton => "direct_newton",
        }
    }
}

/// Solution of the Z_3 system together with the constant and extremizer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Z3Solution {
    pub x: f64,
    pub y: f64,
    /// `r_{p,q}(Z_3)`, the cross ratio of `(x, y; -1/2, 1)`.
    pub r: f64,
    /// Critical extremizer parameter `(1 - x)/(1 + 2x)`.
    pub rho0: f64,
    /// Largest absolute residual of the two equations at `(x, y)`.
    pub residual_max: f64,
    pub method: Method,
    /// False when the intersection scan found more than one crossing.
    pub unique: bool,
}

impl Z3Solution {
    pub(crate) fn from_point(pair: &ExponentPair, x: f64, y: f64, method: Method) -> Self {
        let (a, b) = residual_z3(pair, UnitSquarePoint { x, y });
        Self {
            x,
            y,
            r: cross_ratio_raw(x, y),
            rho0: (1.0 - x) / (1.0 + 2.0 * x),
            residual_max: a.abs().max(b.abs()),
            method,
            unique: true,
        }
    }

    pub fn point(&self) -> UnitSquarePoint {
        UnitSquarePoint {
            x: self.x,
            y: self.y,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BiasedMethod {
    /// `q = p*`: `sigma = sinh(L/p*)/sinh(L/p)`.
    ClosedFormSinh,
    CurveIntersection,
}

impl BiasedMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            BiasedMethod::ClosedFormSinh => "closed_form_sinh",
            BiasedMethod::CurveIntersection => "curve_intersection",
        }
    }
}

/// Solution of the biased system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BiasedSolution {
    pub x: f64,
    pub y: f64,
    /// `sigma_{p,q}(lambda) = (1-y)(x+c)/((1-x)(y+c))`, `c = lambda/(1-lambda)`.
    pub sigma: f64,
    /// Largest residual, each equation scaled by `max(1, |lhs|)`.
    pub residual_max: f64,
    pub method: BiasedMethod,
    /// Number of admissible crossings found; the smallest `sigma` is kept.
    pub roots: usize,
}

pub(crate) fn check_tol(tol: f64) -> crate::Result<()> {
    if (1e-14..=1e-6).contains(&tol) {
        Ok(())
    } else {
        Err(crate::error::domain("tol", tol, "1e-14 <= tol <= 1e-6"))
    }
}
