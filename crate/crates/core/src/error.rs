use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("not a signed permutation: {0}")]
    InvalidPermutation(String),
    #[error("k = {k} exceeds the brute-force bound {bound} (set HECKE2B_MAX_K to raise it)")]
    BoundExceeded { k: usize, bound: usize },
    #[error("invalid content vector: {0}")]
    InvalidContent(String),
    #[error("J not subset of P(c): {0}")]
    NotSubsetOfP(String),
    #[error("inconsistent region: {0}")]
    InconsistentRegion(String),
    #[error("w is not in the region: {0}")]
    NotInRegion(String),
    #[error("region is not skew")]
    NotSkew,
    #[error("genericity violated: {0}")]
    GenericityViolated(String),
    #[error("intertwiner undefined: {0}")]
    UndefinedIntertwiner(String),
    #[error("polynomial is not W0-invariant")]
    NotInvariant,
    #[error("unknown class: {0}")]
    UnknownClass(String),
    #[error("operation needs the exact backend")]
    FloatBackendUnsupported,
    #[error("partition not reachable: {0}")]
    NotReachable(String),
    #[error("inconsistent path: {0}")]
    InconsistentPath(String),
    #[error("partition has {rows} rows but n = {n}")]
    TooManyRows { rows: usize, n: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
