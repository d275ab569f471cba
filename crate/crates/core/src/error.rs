use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid weight sequence: `{field}` {reason}")]
    InvalidWeight { field: &'static str, reason: String },

    #[error("invalid sequence: `{field}` {reason}")]
    InvalidSequence { field: &'static str, reason: String },

    #[error("invalid envelope: `{field}` {reason}")]
    InvalidEnvelope { field: &'static str, reason: String },

    #[error("invalid family: `{field}` {reason}")]
    InvalidFamily { field: &'static str, reason: String },

    #[error("invalid argument `{name}`: {reason}")]
    InvalidArgument { name: &'static str, reason: String },

    /// Only a bound on `|a_i|` is available at this index.
    #[error("term {index} is only known through its envelope")]
    UnknownTerm { index: u64 },

    /// The rearrangement could not be separated from the envelope within the horizon budget.
    #[error("horizon budget {budget} exhausted before the rearrangement could be certified")]
    HorizonExhausted { budget: usize },

    #[error("sequence is not summable: {reason}")]
    NotSummable { reason: String },

    /// The requested tolerance was not reached; `best` is the tightest enclosure found.
    #[error("budget {budget} exhausted; best enclosure [{}, {}]", best.0, best.1)]
    BudgetExhausted { budget: usize, best: (f64, f64) },

    #[error("membership could not be decided: {reason}")]
    Inconclusive { reason: String },

    #[error("operation not supported for {0}")]
    UnsupportedVariant(&'static str),

    #[error("support of size {support} exceeds the search cap {max}")]
    SupportTooLarge { support: usize, max: usize },

    #[error("family does not vanish uniformly")]
    NotUniform,
}

pub(crate) fn check_exponent<T: crate::Real>(p: T) -> Result<()> {
    if !(p.is_finite() && p >= T::one()) {
        return Err(Error::InvalidArgument {
            name: "p",
            reason: format!("must be a finite real >= 1, got {p}"),
        });
    }
    Ok(())
}

pub(crate) fn check_positive<T: crate::Real>(name: &'static str, x: T) -> Result<()> {
    if !(x.is_finite() && x > T::zero()) {
        return Err(Error::InvalidArgument {
            name,
            reason: format!("must be a finite positive real, got {x}"),
        });
    }
    Ok(())
}
