use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("cannot parse scalar `{0}`")]
    BadScalar(String),
    #[error("denominator of {value} vanishes in GF({p})")]
    DenominatorVanishes { value: String, p: u64 },
    #[error("unknown field `{0}` (expected Q or GF(p))")]
    UnknownField(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("GF({0}) is not compiled in; supported primes: {list}", list = crate::field::SUPPORTED_PRIMES.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "))]
    UnsupportedPrime(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(i64),
    #[error("duplicate arrow name `{0}`")]
    DuplicateArrow(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(i64),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("arrows `{left}` and `{right}` do not compose")]
    NotComposable { left: String, right: String },
    #[error("relation {index} mixes non-parallel paths ({first} and {second})")]
    NonParallel { index: usize, first: String, second: String },
    #[error("relation {index} contains the path {path} of length < 2")]
    RelationTooShort { index: usize, path: String },
    #[error("relation {0} is empty or all coefficients are zero")]
    EmptyRelation(usize),

    #[error("ideal is not admissible at path-length bound {bound}: {path} is not in the ideal (raise max_path_len)")]
    NotAdmissibleAtBound { bound: usize, path: String },
    #[error("path {path} is longer than the bound {bound}")]
    PathTooLong { path: String, bound: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix has a negative entry at ({row}, {col})")]
    NegativeEntry { row: usize, col: usize },
    #[error("tolerance must be positive")]
    BadTolerance,
    #[error("invalid index subset: {0}")]
    BadIndexSubset(String),

    #[error("representation violates relation {0}")]
    RelationViolated(String),
    #[error("operation needs a nonzero module")]
    ZeroModule,
    #[error("projective resolution exceeds the stage bound {0}")]
    StageBoundExceeded(usize),
    #[error("brick set must not be empty")]
    EmptyBrickSet,
    #[error("module is not a direct sum of indecomposable projectives with known decomposition")]
    NotProjective,
    #[error("module is decomposable: {0}")]
    Decomposable(String),

    #[error("catalog bound exceeded by a module with dimension vector {dims:?}")]
    BoundExceeded { dims: Vec<usize> },
    #[error("catalog is not complete")]
    IncompleteCatalog,

    #[error("parameters out of range: {0}")]
    FamilyOutOfRange(String),
    #[error("spec is not a canonical-family algebra")]
    NotCanonical,
    #[error("classifier verdict is 0; no witness brick set exists")]
    NoWitness,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
