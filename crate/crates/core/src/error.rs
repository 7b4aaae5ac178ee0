use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A parameter fell outside the range the operation is defined on.
    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: String,
        range: &'static str,
    },

    #[error("denominator vanishes at s = {at}")]
    Pole { at: String },

    #[error("not a probability generating function: {0}")]
    InvalidPgf(String),

    #[error("invalid mixing distribution: {0}")]
    InvalidMixture(String),

    #[error("prefix m(0..={available}) is too short for order {order}")]
    InsufficientPrefix { available: usize, order: usize },

    /// The survival function has no extension to non-integer arguments.
    #[error("unsupported provenance: {0}")]
    UnsupportedProvenance(String),

    #[error("no exact rational value for {0}")]
    NotExact(String),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

impl Error {
    pub(crate) fn out_of_range(
        name: &'static str,
        value: impl ToString,
        range: &'static str,
    ) -> Self {
        Error::OutOfRange {
            name,
            value: value.to_string(),
            range,
        }
    }
}
