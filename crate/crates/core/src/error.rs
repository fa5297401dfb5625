use thiserror::Error;

/// Reasons the curve parameters fail the nondegeneracy conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degeneracy {
    /// `a*b*c*d == 0`
    ZeroCoefficient,
    /// `a*d - b*c == 0`
    ProportionalEquations,
}

impl std::fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Degeneracy::ZeroCoefficient => f.write_str("abcd=0"),
            Degeneracy::ProportionalEquations => f.write_str("ad-bc=0"),
        }
    }
}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("degenerate curve ({0})")]
    DegenerateCurve(Degeneracy),
    #[error("point is not on the curve")]
    OffCurve,
    #[error("search too large: {0}")]
    SearchTooLarge(String),
    #[error("factorization budget exhausted for {0}")]
    FactorizationBudget(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    /// True for errors that indicate an arithmetic bug rather than bad input.
    pub fn is_invariant(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
