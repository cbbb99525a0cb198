use thiserror::Error;

/// Errors raised by path-space construction, operator evaluation and I/O.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex set must contain at least one vertex")]
    EmptyVertexSet,
    #[error("vertex labels must be nonempty")]
    EmptyLabel,
    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex index {index} out of range for a set of {size} vertices")]
    VertexOutOfRange { index: u32, size: usize },
    #[error("operands are defined over different vertex sets")]
    VertexSetMismatch,
    #[error("weighting has {got} values for {expected} vertices")]
    WeightingLength { expected: usize, got: usize },
    #[error("index {index} is out of range for `{operator}` on a path of degree {degree}")]
    IndexOutOfRange {
        operator: &'static str,
        index: usize,
        degree: usize,
    },
    #[error("basis of dimension {requested} exceeds the basis cap {cap}")]
    BasisCapExceeded { requested: String, cap: usize },
    #[error("irregular path `{0}` given to an operator on regular paths")]
    IrregularInput(String),
    #[error("the degree of the zero chain is undefined")]
    ZeroChainDegree,
    #[error("chain is not homogeneous")]
    InhomogeneousChain,
    #[error("operator shifts differ ({0} vs {1})")]
    ShiftMismatch(i64, i64),
    #[error("operators do not compose: {0}")]
    SpaceMismatch(String),
    #[error("{0}")]
    Parse(String),
}

/// Coarse classification used for exit codes and C status codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Domain,
    Resource,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse(_)
            | Error::EmptyVertexSet
            | Error::EmptyLabel
            | Error::DuplicateVertex(_)
            | Error::UnknownVertex(_)
            | Error::WeightingLength { .. } => ErrorKind::Parse,
            Error::BasisCapExceeded { .. } => ErrorKind::Resource,
            _ => ErrorKind::Domain,
        }
    }

    /// Process exit code: 2 usage/parse, 3 domain, 4 resource cap.
    pub fn exit_code(&self) -> i32 {
        match self.kind() {
            ErrorKind::Parse => 2,
            ErrorKind::Domain => 3,
            ErrorKind::Resource => 4,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
