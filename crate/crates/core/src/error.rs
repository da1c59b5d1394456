use thiserror::Error;

/// Errors raised by the library. Every variant has a stable machine-readable
/// code (see [`Error::code`]) used by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("modulus is not a monic irreducible polynomial of degree {0}")]
    NotIrreducible(usize),
    #[error("no element of order {order} in GF({p}^{m})")]
    NoSuchRoot { order: String, p: u64, m: usize },
    #[error("{n} is not coprime to the characteristic {p}")]
    NotCoprime { n: String, p: u64 },
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("index set is not contained in the ground set: {0}")]
    NotASubset(String),
    #[error("parts of a direct sum overlap on {0}")]
    OverlappingParts(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("input rows are linearly dependent")]
    DependentRows,
    #[error("enumeration of {0} candidates exceeds the limit")]
    EnumerationTooLarge(String),
    #[error("basis family violates the exchange axiom")]
    NotAMatroid,
    #[error("delete and contract sets overlap")]
    MinorOverlap,
    #[error("system is not triangular: {0}")]
    NotTriangular(String),
    #[error("assignment has no value for variable {0}")]
    MissingVariable(String),
    #[error("search space of {0} assignments exceeds the limit")]
    SearchTooLarge(String),
    #[error("element lies in a forbidden subfield: {0}")]
    ForbiddenSubfield(String),
    #[error("obstruction: {0}")]
    Obstruction(String),
    #[error("point {0} lies outside the stored window")]
    OutOfWindow(String),
    #[error("no compatible automorphism: {0}")]
    IncompatibleAutomorphism(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not_prime",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::NotIrreducible(_) => "not_irreducible",
            Error::NoSuchRoot { .. } => "no_such_root",
            Error::NotCoprime { .. } => "not_coprime",
            Error::FieldMismatch => "field_mismatch",
            Error::NotASubset(_) => "not_a_subset",
            Error::OverlappingParts(_) => "overlapping_parts",
            Error::NotSquare { .. } => "not_square",
            Error::DependentRows => "dependent_rows",
            Error::EnumerationTooLarge(_) => "enumeration_too_large",
            Error::NotAMatroid => "not_a_matroid",
            Error::MinorOverlap => "minor_overlap",
            Error::NotTriangular(_) => "not_triangular",
            Error::MissingVariable(_) => "missing_variable",
            Error::SearchTooLarge(_) => "search_too_large",
            Error::ForbiddenSubfield(_) => "forbidden_subfield",
            Error::Obstruction(_) => "obstruction",
            Error::OutOfWindow(_) => "out_of_window",
            Error::IncompatibleAutomorphism(_) => "incompatible_automorphism",
            Error::Parse(_) => "parse_error",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
