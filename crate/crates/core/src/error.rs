use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} = {value} is outside its domain ({expected})")]
    Domain {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("singular evaluation: {0}")]
    Singular(&'static str),

    #[error("invalid exponent pair (p = {p}, q = {q}): need 1 < p < q < inf")]
    InvalidPair { p: f64, q: f64 },

    #[error("no sign change of the curve gap over {samples} ordinate samples in ({v_lo:e}, {v_hi:e}); sweep dump: {dump}")]
    Bracket {
        samples: usize,
        v_lo: f64,
        v_hi: f64,
        dump: String,
    },

    #[error("solution residual {residual:e} exceeds tolerance {tol:e}")]
    Residual { residual: f64, tol: f64 },

    #[error("verification failed: {}", .0.join("; "))]
    Verification(Vec<String>),
}

pub(crate) fn domain(what: &'static str, value: f64, expected: &'static str) -> Error {
    Error::Domain {
        what,
        value,
        expected,
    }
}
