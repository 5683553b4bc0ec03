use thiserror::Error;

/// Every failure the library can report. The variant name doubles as the
/// error tag emitted by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("incompatible ring: {0}")]
    IncompatibleRing(String),
    #[error("incompatible base: {0}")]
    IncompatibleBase(String),
    #[error("module is not projective")]
    NotProjective,
    #[error("not computable over {0}")]
    NotComputable(String),
    #[error("cokernel is not free: {0}")]
    NonFreeCokernel(String),
    #[error("rank vectors differ")]
    RankMismatch,
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("internal consistency failure: {0}")]
    TheoremViolation(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("universal map is neither mono nor epi")]
    NeitherMonoNorEpi,
    #[error("quiver has an oriented cycle")]
    CyclicQuiver,
    #[error("not a real Schur root")]
    NotSchurRoot,
    #[error("search bound exceeded")]
    BoundExceeded,
    #[error("representation is not rigid")]
    NotRigid,
    #[error("decomposition is not unique: {0}")]
    AmbiguousDecomposition(String),
    #[error("peeling failed: {0}")]
    PeelFailure(String),
    #[error("ring homomorphism does not have nilpotent kernel")]
    NotNilpotentKernel,
    #[error("invalid representation: {0}")]
    InvalidRep(String),
    #[error("not a morphism of representations: {0}")]
    NotMorphism(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable tag used in structured error reports.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidRing(_) => "InvalidRing",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::IncompatibleRing(_) => "IncompatibleRing",
            Error::IncompatibleBase(_) => "IncompatibleBase",
            Error::NotProjective => "NotProjective",
            Error::NotComputable(_) => "NotComputable",
            Error::NonFreeCokernel(_) => "NonFreeCokernel",
            Error::RankMismatch => "RankMismatch",
            Error::Inconclusive(_) => "Inconclusive",
            Error::TheoremViolation(_) => "TheoremViolation",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::NeitherMonoNorEpi => "NeitherMonoNorEpi",
            Error::CyclicQuiver => "CyclicQuiver",
            Error::NotSchurRoot => "NotSchurRoot",
            Error::BoundExceeded => "BoundExceeded",
            Error::NotRigid => "NotRigid",
            Error::AmbiguousDecomposition(_) => "AmbiguousDecomposition",
            Error::PeelFailure(_) => "PeelFailure",
            Error::NotNilpotentKernel => "NotNilpotentKernel",
            Error::InvalidRep(_) => "InvalidRep",
            Error::NotMorphism(_) => "NotMorphism",
            Error::Parse(_) => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
