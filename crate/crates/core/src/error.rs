use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different rings")]
    RingMismatch,

    #[error("variable X{index} is out of range for a ring with {num_vars} variables")]
    VariableOutOfRange { index: u32, num_vars: u32 },

    #[error("rings with more than {max} variables are not supported (requested {requested})")]
    TooManyVariables { requested: u32, max: u32 },

    #[error("invalid rewrite rule {rule}: {reason}")]
    InvalidRule { rule: String, reason: String },

    #[error("rewrite system is not confluent at {monomial}: {left} vs {right}")]
    NonConfluent {
        monomial: String,
        left: String,
        right: String,
    },

    #[error("{op} requires a monomial-mode ideal")]
    NotMonomialMode { op: &'static str },

    #[error("the unit ideal has no minimal primes")]
    UnitIdeal,

    #[error("syntax error at line {line}, column {col}: expected {expected}, found {found}")]
    Syntax {
        line: u32,
        col: u32,
        expected: String,
        found: String,
    },

    #[error("pattern error: {0}")]
    Pattern(String),

    #[error("unknown example tag `{0}`")]
    UnknownTag(String),

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),
}
