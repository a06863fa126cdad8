//! Validated domain types shared across the crate.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{domain, Error, Result};

/// Radial slack allowed when testing membership of the fundamental triangle.
pub const TRIANGLE_TOL: f64 = 1e-12;

/// A pair of exponents `1 < p < q < inf`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentPair {
    p: f64,
    q: f64,
}

impl ExponentPair {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        if !(p.is_finite() && q.is_finite() && p > 1.0 && q > p) {
            return Err(Error::InvalidPair { p, q });
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn p_star(&self) -> f64 {
        conjugate(self.p)
    }

    pub fn q_star(&self) -> f64 {
        conjugate(self.q)
    }

    /// Symmetrized index `1 - 2/p`.
    pub fn alpha_p(&self) -> f64 {
        alpha_of(self.p)
    }

    pub fn alpha_q(&self) -> f64 {
        alpha_of(self.q)
    }

    /// The adjoint pair `(q*, p*)`, which has the same optimal constant.
    pub fn dual(&self) -> Self {
        Self {
            p: self.q_star(),
            q: self.p_star(),
        }
    }

    /// True when `q` is the conjugate of `p` up to a few ulps.
    pub fn is_conjugate(&self) -> bool {
        (self.q - self.p_star()).abs() <= 1e-14 * self.q
    }
}

/// Conjugate exponent `p / (p - 1)`.
pub fn conjugate(p: f64) -> f64 {
    p / (p - 1.0)
}

/// Symmetrized index `1 - 2/p`, mapping `(1, inf)` onto `(-1, 1)`.
pub fn alpha_of(p: f64) -> f64 {
    1.0 - 2.0 / p
}

/// Atom mass of a biased Bernoulli variable, `0 < lambda <= 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BiasParam(f64);

impl BiasParam {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda <= 0.5) {
            return Err(domain("lambda", lambda, "0 < lambda <= 1/2"));
        }
        Ok(Self(lambda))
    }

    pub fn value(&self) -> f64 {
        self.0
    }

    pub fn is_symmetric(&self) -> bool {
        self.0 == 0.5
    }

    /// `lambda / (1 - lambda)`, the offset appearing in the biased cross ratio.
    pub fn odds(&self) -> f64 {
        self.0 / (1.0 - self.0)
    }
}

/// A point of the unit square.
///
/// [`UnitSquarePoint::new`] enforces the open square; [`UnitSquarePoint::closed`]
/// admits the boundary so that residuals can be probed at fixed points such as
/// `(1, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitSquarePoint {
    pub x: f64,
    pub y: f64,
}

impl UnitSquarePoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(x > 0.0 && x < 1.0) {
            return Err(domain("x", x, "0 < x < 1"));
        }
        if !(y > 0.0 && y < 1.0) {
            return Err(domain("y", y, "0 < y < 1"));
        }
        Ok(Self { x, y })
    }

    pub fn closed(x: f64, y: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&x) {
            return Err(domain("x", x, "0 <= x <= 1"));
        }
        if !(0.0..=1.0).contains(&y) {
            return Err(domain("y", y, "0 <= y <= 1"));
        }
        Ok(Self { x, y })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanePoint {
    pub u: f64,
    pub v: f64,
}

impl PlanePoint {
    pub fn new(u: f64, v: f64) -> Self {
        Self { u, v }
    }

    pub fn is_finite(&self) -> bool {
        self.u.is_finite() && self.v.is_finite()
    }
}

/// Polar coordinates of a point `rho * e^{i theta}` of the fundamental
/// triangle with vertices `0`, `1` and `e^{i pi/3} / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarPoint {
    rho: f64,
    theta: f64,
}

impl PolarPoint {
    pub fn new(rho: f64, theta: f64) -> Result<Self> {
        if !(-TRIANGLE_TOL..=PI / 3.0 + TRIANGLE_TOL).contains(&theta) {
            return Err(domain("theta", theta, "0 <= theta <= pi/3"));
        }
        let theta = theta.clamp(0.0, PI / 3.0);
        if !(rho >= 0.0 && rho <= Self::max_radius(theta) + TRIANGLE_TOL) {
            return Err(domain("rho", rho, "0 <= rho <= 1/(2 sin(theta + pi/6))"));
        }
        Ok(Self { rho, theta })
    }

    /// Distance from the origin to the far edge of the triangle along `theta`.
    pub fn max_radius(theta: f64) -> f64 {
        0.5 / (theta + PI / 6.0).sin()
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_validation() {
        assert!(ExponentPair::new(2.0, 4.0).is_ok());
        assert!(ExponentPair::new(3.0, 1.5).is_err());
        assert!(ExponentPair::new(1.0, 2.0).is_err());
        assert!(ExponentPair::new(2.0, 2.0).is_err());
        assert!(ExponentPair::new(2.0, f64::INFINITY).is_err());
    }

    #[test]
    fn pair_derived_quantities() {
        let pair = ExponentPair::new(1.5, 4.0).unwrap();
        assert!((1.0 / pair.p() + 1.0 / pair.p_star() - 1.0).abs() < 1e-14);
        assert!((1.0 / pair.q() + 1.0 / pair.q_star() - 1.0).abs() < 1e-14);
        assert!(pair.alpha_p() < pair.alpha_q());
        assert!(pair.alpha_p() > -1.0 && pair.alpha_q() < 1.0);
        let dual = pair.dual();
        assert!((dual.p() - 4.0 / 3.0).abs() < 1e-15);
        assert!((dual.q() - 3.0).abs() < 1e-15);
        assert!((dual.alpha_p() + pair.alpha_q()).abs() < 1e-15);
    }

    #[test]
    fn conjugate_detection() {
        assert!(ExponentPair::new(4.0 / 3.0, 4.0).unwrap().is_conjugate());
        assert!(ExponentPair::new(1.5, 3.0).unwrap().is_conjugate());
        assert!(!ExponentPair::new(2.0, 4.0).unwrap().is_conjugate());
    }

    #[test]
    fn bias_param_range() {
        assert!(BiasParam::new(0.5).unwrap().is_symmetric());
        assert!(BiasParam::new(1e-100).is_ok());
        assert!(BiasParam::new(0.0).is_err());
        assert!(BiasParam::new(0.6).is_err());
    }

    #[test]
    fn polar_membership() {
        assert!(PolarPoint::new(1.0, 0.0).is_ok());
        assert!(PolarPoint::new(0.5, PI / 3.0).is_ok());
        assert!(PolarPoint::new(0.5 + 1e-6, PI / 3.0).is_err());
        assert!(PolarPoint::new(1.0 + 1e-13, 0.0).is_ok());
        assert!(PolarPoint::new(0.1, -0.1).is_err());
        assert!((PolarPoint::max_radius(PI / 6.0) - 0.5 / (PI / 3.0).sin()).abs() < 1e-15);
    }

    #[test]
    fn square_points() {
        assert!(UnitSquarePoint::new(0.5, 0.5).is_ok());
        assert!(UnitSquarePoint::new(1.0, 0.5).is_err());
        assert!(UnitSquarePoint::closed(1.0, 1.0).is_ok());
        assert!(UnitSquarePoint::closed(1.1, 1.0).is_err());
    }
}
