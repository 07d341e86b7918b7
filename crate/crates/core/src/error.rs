use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("polynomial degree too low for this operation")]
    DegreeTooLow,
    #[error("zero input where a nonzero rational is required")]
    ZeroInput,
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
    #[error("cannot parse prime set from {0:?}")]
    ParsePrimeSet(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid JSON input: {0}")]
    InvalidJson(String),

    #[error("P + Q^2/4 has a repeated root; the model is singular")]
    NonSquarefree,
    #[error("the prime 2 must belong to S")]
    MissingPrimeTwo,
    #[error("coefficient {0} is not an S-integer")]
    NotSIntegral(String),
    #[error("{0} is not an admissible reduction prime")]
    BadPrime(u64),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("invalid genus {0}")]
    InvalidGenus(u32),

    #[error("constant term is zero")]
    ZeroConstantTerm,
    #[error("polynomial does not split over the rationals")]
    NotSplit,
    #[error("polynomial has repeated roots")]
    RepeatedRoots,
    #[error("polynomials share a root")]
    NotCoprime,

    #[error("configuration contains a repeated point")]
    RepeatedPoint,
    #[error("configuration needs at least four points")]
    TooFewPoints,

    #[error("at node {path}: {source}")]
    AtNode { path: String, source: Box<Error> },
}

impl Error {
    /// Stable machine-readable name, used in CLI error JSON and by the C ABI.
    pub fn name(&self) -> &'static str {
        match self {
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::DegreeTooLow => "DegreeTooLow",
            Error::ZeroInput => "ZeroInput",
            Error::ParseRational(_) => "ParseRational",
            Error::ParsePrimeSet(_) => "ParsePrimeSet",
            Error::NotPrime(_) => "NotPrime",
            Error::InvalidJson(_) => "InvalidJson",
            Error::NonSquarefree => "NonSquarefree",
            Error::MissingPrimeTwo => "MissingPrimeTwo",
            Error::NotSIntegral(_) => "NotSIntegral",
            Error::BadPrime(_) => "BadPrime",
            Error::DegreeMismatch { .. } => "DegreeMismatch",
            Error::InvalidGenus(_) => "InvalidGenus",
            Error::ZeroConstantTerm => "ZeroConstantTerm",
            Error::NotSplit => "NotSplit",
            Error::RepeatedRoots => "RepeatedRoots",
            Error::NotCoprime => "NotCoprime",
            Error::RepeatedPoint => "RepeatedPoint",
            Error::TooFewPoints => "TooFewPoints",
            Error::AtNode { source, .. } => source.name(),
        }
    }

    /// Innermost error, with any node-path wrappers removed.
    pub fn root_cause(&self) -> &Error {
        match self {
            Error::AtNode { source, .. } => source.root_cause(),
            e => e,
        }
    }

    pub(crate) fn at_node(self, path: &str) -> Error {
        match self {
            Error::AtNode { .. } => self,
            e => Error::AtNode { path: path.to_string(), source: Box::new(e) },
        }
    }
}
