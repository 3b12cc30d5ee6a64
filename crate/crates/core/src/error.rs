use thiserror::Error;

use crate::dsl::ParseError;
use crate::yb::VerificationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A sampled point hit a pole of a rational expression.
    #[error("division by zero")]
    DivisionByZero,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("sampling exhausted after {attempts} attempts")]
    SamplingExhausted { attempts: usize },
    #[error("invalid field configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("undeclared symbol `{name}` at line {line}, column {column}")]
    UndeclaredSymbol { name: String, line: usize, column: usize },
    #[error("unbound symbol `{0}`")]
    UnboundSymbol(String),
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("unknown quasigroup `{0}`")]
    UnknownQuasigroup(String),
    #[error("incompatible structure: {0}")]
    IncompatibleStructure(String),
    #[error("precondition failed: {} ({})", .0.identity, .0.verdict)]
    PreconditionFailed(Box<VerificationReport>),
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("unsupported matrix order {0}; only order 2 is implemented")]
    UnsupportedOrder(usize),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Pole-like errors are not failures: verifiers resample the whole tuple.
    pub fn is_pole(&self) -> bool {
        matches!(self, Error::DivisionByZero | Error::SingularMatrix)
    }
}
