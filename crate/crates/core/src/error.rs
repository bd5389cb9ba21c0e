//! Crate-wide error type.

use crate::rational::Rational;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid network: {reason}")]
    InvalidNetwork { reason: String },
    #[error("row {row} has {found} entries, expected {expected} (matrix must be square)")]
    NotSquare { row: usize, expected: usize, found: usize },
    #[error("row {row}, col {col}: bare JSON numbers are rejected, use a number string like \"1/2\" or \"0.25\"")]
    BareNumber { row: usize, col: usize },
    #[error("row {row}, col {col}: unparsable number {text:?}: {reason}")]
    UnparsableNumber { row: usize, col: usize, text: String, reason: String },
    #[error("row {row}, col {col}: negative channel strength {value}")]
    NegativeEntry { row: usize, col: usize, value: Rational },
    #[error("user index {index} out of range for a {k}-user network")]
    IndexOutOfRange { index: usize, k: usize },
    #[error("empty user set")]
    EmptyUserSet,
    #[error("{what} supports at most {limit}, requested {requested}")]
    CapExceeded { what: &'static str, limit: usize, requested: usize },
    #[error("cycles overlap at user {user}")]
    CyclesOverlap { user: usize },
    #[error("cycle combination needs at least two cycles")]
    TooFewCycles,
    #[error("not a cyclic partition: {reason}")]
    NotAPartition { reason: String },
    #[error("matrix is outside the SLS regime: {witness}")]
    NotSls { witness: String },
    #[error("invalid {what}: {reason}")]
    InvalidParameter { what: &'static str, reason: String },
    #[error("polyhedral region is empty: cycle {cycle} has negative bound {bound}")]
    EmptyPolyhedralRegion { cycle: String, bound: Rational },
    #[error("GDoF point has positive entry for user {user} outside the subset")]
    PointOutsideSubset { user: usize },
    #[error("GDoF point has negative entry for user {user}")]
    NegativeGdof { user: usize },
    #[error("decode order of receiver {receiver} names unknown message {id:?}")]
    UnknownMessage { id: String, receiver: usize },
    #[error("receiver {receiver} is in the audience of {id:?} but never decodes it")]
    AudienceMissing { id: String, receiver: usize },
    #[error("invalid scheme: {reason}")]
    InvalidScheme { reason: String },
    #[error("TINA sum-GDoF is zero (all direct links have zero strength), ratio undefined")]
    DegenerateTina,
    #[error("cannot parse {what} from {text:?}: {reason}")]
    ParseSyntax { what: &'static str, text: String, reason: String },
}
