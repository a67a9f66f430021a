use thiserror::Error;

/// Errors raised by every module of the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix has non-integral entry at ({row}, {col})")]
    NonIntegral { row: usize, col: usize },
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("vectors are linearly dependent (rank {rank} < {expected})")]
    RankDeficient { rank: usize, expected: usize },
    #[error("metric is not positive definite on the given span")]
    NotPositiveDefinite,
    #[error("unsupported field Q(sqrt(-{0})); supported d are 1, 2, 3, 7, 11")]
    UnsupportedField(u32),
    #[error("unsupported group {kind} over d = {d}")]
    UnsupportedGroup { d: u32, kind: String },
    #[error("zero ideal")]
    ZeroIdeal,
    #[error("determinant is not a unit modulo the level")]
    NonUnitDeterminant,
    #[error("prime search exhausted its budget (norm bound {norm_bound}, {examined} candidates examined)")]
    SearchExhausted { norm_bound: u64, examined: u64 },
    #[error("coset action is not transitive ({reached} of {degree} cosets reached)")]
    Intransitive { reached: usize, degree: usize },
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error("invalid permutation for generator '{0}'")]
    InvalidPermutation(String),
    #[error("relator {index} does not hold for the matrix images")]
    RelatorFails { index: usize },
    #[error(
        "malformed complex: coboundary composite is nonzero between orbits '{from}' and '{to}'"
    )]
    MalformedComplex { from: String, to: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("degree {0} out of range")]
    DegreeOutOfRange(usize),
    #[error("orbifold torsion unsupported: cell '{0}' has a nontrivial stabilizer")]
    OrbifoldTorsion(String),
    #[error("cochain is not closed")]
    NotClosed,
    #[error("negative eigenvalue {0}")]
    NegativeEigenvalue(String),
    #[error("degenerate symbol: endpoints coincide at the place above {0}")]
    DegenerateSymbol(String),
    #[error("split verification failed: {0}")]
    Verification(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("number too large for factorization: {0}")]
    TooLarge(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Schema(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
