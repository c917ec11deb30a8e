use thiserror::Error;

/// Errors raised by the library.
///
/// Variants fall into two families: malformed input (bad files, unparsable
/// words, graphs violating their invariants) and domain failures (a
/// precondition of an operation does not hold). [`Error::is_input_error`]
/// tells them apart.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("self-loop at vertex `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(String, String),
    #[error("graph has {count} vertices, above the cap of {cap}")]
    TooManyVertices { count: usize, cap: usize },
    #[error("operation requires a nonempty graph")]
    EmptyGraph,

    #[error("cannot parse word: {0}")]
    ParseWord(String),
    #[error("words live over different ambient graphs")]
    MismatchedAmbient,
    #[error("operation requires a nonempty word")]
    EmptyWord,
    #[error("word is not cyclically reduced")]
    NotCyclicallyReduced,

    #[error("vertex `{dominator}` does not dominate `{vertex}`")]
    NotDominated { vertex: String, dominator: String },
    #[error("invalid partial conjugation component: {0}")]
    InvalidComponent(String),
    #[error("permutation is not a graph automorphism: {0}")]
    NotAutomorphism(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cup product data is not alternating at ({0}, {1})")]
    NotAlternating(usize, usize),
    #[error("algebra is not in monomial position: {0}")]
    NotMonomial(String),
    #[error("matrix is singular")]
    Singular,
    #[error("cannot parse rational `{0}`")]
    ParseRational(String),
    #[error("sublattice is not contained in the superlattice")]
    NotContained,

    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("cannot parse free word: {0}")]
    ParseFreeWord(String),
    #[error("free group rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("free group rank must be positive")]
    ZeroRank,

    #[error("inconsistent relation data: {0}")]
    InconsistentRelations(String),
    #[error("mapping-class conventions violated: {0}")]
    ConventionViolation(String),
    #[error("collection is redundant: {0}")]
    Redundant(String),
    #[error("incomplete reduction-system labeling: {0}")]
    IncompleteLabeling(String),

    #[error("surface of genus {genus} with {punctures} punctures is not hyperbolic")]
    NonHyperbolicSurface { genus: u64, punctures: u64 },
    #[error("genus must be at least 2, got {0}")]
    GenusTooSmall(u64),

    #[error("matrix does not have determinant one")]
    DeterminantNotOne,
    #[error("map is plus or minus the identity")]
    IdentityMap,
    #[error("map is elliptic")]
    Elliptic,
    #[error("boundary intervals overlap: {0}")]
    OverlappingIntervals(String),
    #[error("boundary intervals cover the whole circle")]
    CoveringIntervals,
    #[error("invalid boundary interval: {0}")]
    InvalidInterval(String),
    #[error("expected one interval set per map: {maps} maps, {sets} sets")]
    IntervalCountMismatch { maps: usize, sets: usize },
    #[error("operation requires at least one map")]
    NoMaps,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for errors caused by malformed input rather than by a failed
    /// mathematical precondition.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::UnknownVertex(_)
                | Error::DuplicateVertex(_)
                | Error::SelfLoop(_)
                | Error::DuplicateEdge(..)
                | Error::ParseWord(_)
                | Error::ParseRational(_)
                | Error::ParseFreeWord(_)
                | Error::InvalidInterval(_)
                | Error::InvalidArgument(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
