use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("truncation cap must be a positive integer")]
    InvalidCap,
    #[error("operands live over different alphabets or caps")]
    Mismatch,
    #[error("the zero series has no leading term")]
    ZeroInput,
    #[error("not a potential: {0}")]
    NotAPotential(String),
    #[error("substitution image of `{0}` has a nonzero constant term")]
    ConstantImage(String),
    #[error("generator {0} vanishes after truncation")]
    ZeroGenerator(usize),
    #[error("no generators to complete")]
    AllZero,
    #[error("generator {index} has a constant term and generates the unit ideal")]
    UnitGenerator { index: usize },
    #[error("cap {cap} is below the order {order} of generator {index}")]
    CapTooSmall { index: usize, order: usize, cap: usize },
    #[error("classification needs exactly 2 variables, got {0}")]
    VariableCount(usize),
    #[error("parameter out of range: {0}")]
    Parameter(String),
}

impl Error {
    /// True for errors caused by malformed input text rather than by the
    /// mathematics of a well-formed input.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Syntax { .. } | Error::UnknownVariable(_))
    }
}
