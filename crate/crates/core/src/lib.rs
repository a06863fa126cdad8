//! Optimal hypercontractive constants on the cyclic group of order three and
//! for biased Bernoulli variables.
//!
//! * [`formulas`] and [`curves`] evaluate norms, defects, the characterizing
//!   systems and the curve families with their coordinate changes.
//! * [`solver`] computes `r_{p,q}(Z_3)` and `sigma_{p,q}(lambda)`.
//! * [`oracle`] is an independent brute-force layer used to check the solver.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod curves;
pub mod error;
pub mod formulas;
pub mod oracle;
pub mod par;
pub mod solver;
pub mod types;

pub use curves::{
    biased_curve, blowup_first, blowup_three_halves, h_curve, phi, phi_inverse, psi, psi_inverse,
    sym_curve, sym_curve_biased,
};
pub use error::{Error, Result};
pub use formulas::{
    cross_ratio, defect_polar, defect_segment, dual_pair_constant, ell, f_polar, residual_biased,
    residual_selfdual, residual_z3, sigma_pp_star, wolff_2q, z2_constant, ClosedForm,
};
pub use solver::{
    intersect_h_curves, invert_h2, solve_biased, solve_z3, solve_z3_direct, BiasedMethod,
    BiasedSolution, DirectSolve, Intersection, Method, Z3Solution,
};
pub use types::{BiasParam, ExponentPair, PlanePoint, PolarPoint, UnitSquarePoint};
