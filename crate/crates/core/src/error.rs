use thiserror::Error;

/// Errors produced by field construction, function parsing and analysis.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    CompositeCharacteristic(u32),
    #[error("field of order {p}^{m} exceeds 2^16 elements")]
    FieldTooLarge { p: u32, m: u32 },
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u32),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different field contexts")]
    ContextMismatch,
    #[error("{l} does not divide the extension degree {m}")]
    NonDivisorSubfield { l: u32, m: u32 },
    #[error("element index {index} out of range for a field of order {q}")]
    ElementOutOfRange { index: u64, q: u32 },
    #[error("t = {0} does not make x^2+x+t irreducible")]
    InvalidT(String),
    #[error("no root of x^2+x+t found in the quadratic extension")]
    NoRootFound,
    #[error("point does not belong to the function's domain")]
    DomainMismatch,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("quartic has a0*a1 = 0")]
    DegenerateQuartic,
    #[error("c is the identity multiplier, which the statement does not cover")]
    IdentityC,
    #[error("not covered: {0}")]
    NotCovered(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
