use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("incompatible fields: {0} vs {1}")]
    IncompatibleField(String, String),
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("degenerate curve: {0}")]
    DegenerateCurve(String),
    #[error("point is not smooth on the curve")]
    NotSmooth,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("truncation too small: order reached {0} without ideal membership")]
    TruncationTooSmall(usize),
    #[error("extension degree cap {0} exhausted: {1}")]
    ExtensionExhausted(u32, String),
    #[error("sampling defect: {0}")]
    SamplingDefect(String),
    #[error("contract violation: {0}")]
    ContractViolation(String),
    #[error("ambiguous cone: intersection has dimension {0}")]
    AmbiguousCone(usize),
    #[error("invalid direction: {0}")]
    InvalidDirection(String),
    #[error("zero class: form lies in the span of the cone")]
    ZeroClass,
    #[error("genericity failure: {0}")]
    GenericityFailure(String),
    #[error("budget exhausted after {done} steps (resume at {resume})")]
    BudgetExhausted { done: u64, resume: u64 },
    #[error("certificate failure in record {record}: {detail}")]
    CertificateFailure { record: u8, detail: String },
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
