use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} is too large (must be below 2^31)")]
    PrimeTooLarge(u64),
    #[error("alphabet must contain at least one letter")]
    EmptyAlphabet,
    #[error("duplicate letter name `{0}`")]
    DuplicateLetter(String),
    #[error("letter `{0}` must have a positive weight")]
    InvalidWeight(String),
    #[error("letter index {letter} is out of range for an alphabet of {size} letters")]
    AlphabetMismatch { letter: usize, size: usize },
    #[error("letter order is not a permutation of {0} letters")]
    InvalidPermutation(usize),
    #[error("invalid letter map: {0}")]
    InvalidLetterMap(String),
    #[error("the empty word is not allowed here")]
    EmptyWord,
    #[error("inhomogeneous input: degrees {0} and {1}")]
    Inhomogeneous(usize, usize),
    #[error("degree {degree} is not below the prime {prime}; the Lyndon basis is not available")]
    DegreeNotBelowPrime { degree: usize, prime: u32 },
    #[error("the Lyndon words of length {0} do not form a basis of the shuffle quotient for this order")]
    NoLyndonBasis(usize),
    #[error("truncation cap must be at least 1")]
    InvalidCap,
    #[error("word of length {len} exceeds the truncation cap {cap}")]
    BeyondCap { len: usize, cap: usize },
    #[error("syllable exponent must be nonzero")]
    ZeroExponent,
    #[error("{what} needs {needed} entries, above the configured bound {bound}")]
    TooLarge {
        what: &'static str,
        needed: u128,
        bound: u128,
    },
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("a presentation needs at least one relator")]
    NoRelators,
    #[error("relator {0} is the identity")]
    IdentityRelator(usize),
    #[error("invalid Koch data: {0}")]
    InvalidKochData(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("relator {relator} has no nonzero coefficient of length 1..={cap}")]
    RelatorBeyondCap { relator: usize, cap: usize },
    #[error("relator {relator} is not in the Frattini subgroup: coefficient of `{generator}` is {coefficient}")]
    NotMinimal {
        relator: usize,
        generator: String,
        coefficient: u32,
    },
    #[error("word {0} is not compatible with the presentation")]
    Incompatible(String),
    #[error("invalid word set: {0}")]
    InvalidWordSet(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("invalid row operation: {0}")]
    InvalidOperation(String),
    #[error("zero polynomial where a nonzero homogeneous element is required")]
    ZeroPolynomial,
    #[error("order is not an ordered monoid: {0}")]
    NotOrderedMonoid(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("entry degree mismatch: {0}")]
    EntryDegree(String),
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
