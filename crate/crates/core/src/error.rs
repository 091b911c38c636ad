use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("generator index {index} out of range for algebra of dimension {dim}")]
    InvalidGenerator { index: usize, dim: usize },

    #[error("operands belong to different algebras")]
    MismatchedAlgebras,

    #[error("unsupported algebra {0}")]
    UnsupportedAlgebra(String),

    #[error("bilinear form is degenerate")]
    DegenerateForm,

    #[error("element is not in the span of the basis")]
    NotInSpan,

    #[error("invalid sl2-triple: {0}")]
    InvalidTriple(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("ad_h is not semisimple with integer eigenvalues")]
    NonSemisimple,

    #[error("truncation error: {0}")]
    Truncation(String),

    #[error("operator is not monic: {0}")]
    NonMonic(String),

    #[error("not a total derivative")]
    NotExact,

    #[error("unsupported Lax operator parametrization: {0}")]
    UnsupportedParametrization(String),

    #[error("grading rejected: {0}")]
    BadGrading(String),

    #[error("element does not lie in U(v)")]
    NotInV,

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("Neumann series did not terminate within {0} steps")]
    NeumannDiverged(usize),

    #[error("odd index set of size {0}")]
    OddIndexSet(usize),

    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),

    #[error("malformed tableau: {0}")]
    MalformedTableau(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("cannot evaluate expression: {0}")]
    Evaluation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("serialization error: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;
