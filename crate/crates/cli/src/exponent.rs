use hyperc_core::ExponentPair;
use hyperc_exact::{Rational, RationalExponents};

use crate::error::{CliError, CliResult};

/// A number given either as `m/n`, an integer, or a decimal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Number {
    pub value: f64,
    /// Present when the input was written as `m/n` or an integer.
    pub rational: Option<Rational>,
}

impl Number {
    pub fn parse(s: &str) -> CliResult<Self> {
        let t = s.trim();
        let exact = t.contains('/') || (!t.is_empty() && t.bytes().all(|b| b.is_ascii_digit()));
        if exact {
            let r: Rational = t
                .parse()
                .map_err(|e: hyperc_exact::Error| CliError::input(format!("`{s}`: {e}")))?;
            return Ok(Self {
                value: r.value(),
                rational: Some(r),
            });
        }
        let value: f64 = t
            .parse()
            .map_err(|_| CliError::input(format!("`{s}` is not a number or m/n")))?;
        if !value.is_finite() {
            return Err(CliError::input(format!("`{s}` is not finite")));
        }
        Ok(Self {
            value,
            rational: None,
        })
    }

    pub fn label(&self) -> String {
        match self.rational {
            Some(r) => r.to_string(),
            None => crate::output::fmt_float(self.value),
        }
    }
}

pub fn parse_list(s: &str) -> CliResult<Vec<Number>> {
    s.split(',').map(Number::parse).collect()
}

/// Parsed `(p, q)` with the original spellings kept.
#[derive(Debug, Clone, Copy)]
pub struct Exponents {
    pub p: Number,
    pub q: Number,
    pub pair: ExponentPair,
}

impl Exponents {
    pub fn parse(p: &str, q: &str) -> CliResult<Self> {
        let (p, q) = (Number::parse(p)?, Number::parse(q)?);
        let pair = ExponentPair::new(p.value, q.value)?;
        Ok(Self { p, q, pair })
    }

    /// Exact form, required for certification.
    pub fn rational(&self) -> CliResult<RationalExponents> {
        match (self.p.rational, self.q.rational) {
            (Some(p), Some(q)) => Ok(RationalExponents::new(p, q)?),
            _ => Err(CliError::input(
                "certification needs rational exponents written as m/n or integers",
            )),
        }
    }
}
