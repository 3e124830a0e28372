use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("operands belong to different algebras or scalar modes")]
    Incompatible,
    #[error("algebra `{0}` declares no involution")]
    NoInvolution(String),
    #[error("operation needs a field, but the scalars are integers mod {0}")]
    NotAField(u64),
    #[error("{0} is not invertible")]
    NotInvertible(String),
    #[error("at most {max} generators are supported, got {got}")]
    TooManyGenerators { max: usize, got: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("sign mismatch: {0}")]
    Sign(String),
    #[error("malformed algebra description: {0}")]
    Malformed(String),
    #[error("axiom `{axiom}` fails at {at}")]
    Axiom { axiom: &'static str, at: String },
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("inner structure algebra is not closed: {0}")]
    Closure(String),
    #[error("weight {0} is not a root")]
    NotARoot(String),
    #[error("enumeration exceeded cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("{0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
