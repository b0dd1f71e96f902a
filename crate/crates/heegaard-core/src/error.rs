use alloc::string::String;
use alloc::vec::Vec;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A word mentions a generator the basis does not have.
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    /// An exponent after `^` is missing or not an integer.
    #[error("malformed exponent near `{0}`")]
    MalformedExponent(String),
    /// Parentheses do not balance.
    #[error("unbalanced parentheses")]
    UnbalancedParentheses,
    /// A term is empty where a generator or group was expected.
    #[error("unexpected `{0}`")]
    UnexpectedToken(String),
    /// A generator name is empty, repeated, or contains a reserved character.
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    /// Two objects that must share a rank do not.
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch {
        /// Rank required by the operation.
        expected: usize,
        /// Rank actually supplied.
        found: usize,
    },
    /// A Whitehead move violates `a ∈ A`, `a⁻¹ ∉ A`.
    #[error("malformed Whitehead move: {0}")]
    MalformedMove(String),
    /// A free-factor rank outside `1..=k`.
    #[error("target rank {m} outside 1..={k}")]
    RankOutOfRange {
        /// Requested rank.
        m: usize,
        /// Ambient rank.
        k: usize,
    },
    /// An operation needs at least one curve.
    #[error("empty curve system")]
    EmptySystem,
    /// Curve names in a system repeat.
    #[error("duplicate curve name `{0}`")]
    DuplicateCurve(String),
    /// A diagram fails validation.
    #[error("invalid diagram: {}", .0.join("; "))]
    InvalidDiagram(Vec<String>),
    /// A curve name is not present.
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    /// A disk name is not present.
    #[error("unknown disk `{0}`")]
    UnknownDisk(String),
    /// Cutting along the proposed disks does not leave a planar surface.
    #[error("curves {0:?} do not form a complete disk system")]
    IncompleteDiskSystem(Vec<String>),
    /// Cover data is inconsistent.
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    /// A Dehn filling slope is unusable.
    #[error("invalid slope {m}/{n}: {reason}")]
    InvalidSlope {
        /// Meridian coefficient.
        m: i64,
        /// Longitude coefficient.
        n: i64,
        /// What is wrong with it.
        reason: String,
    },
    /// Pretzel parameters outside the supported family.
    #[error("unsupported pretzel parameters: {0}")]
    UnsupportedPretzel(String),
    /// No embedded curve system realizes the given words.
    #[error("no embedded diagram realizes the words: {0}")]
    NotRealizable(String),
    /// A generated diagram does not reproduce its target words.
    #[error("diagram gate failed for curve `{0}`")]
    GateFailure(String),
    /// A pipeline stage failed.
    #[error("stage `{stage}` failed: {source}")]
    Stage {
        /// Name of the failing stage.
        stage: String,
        /// Underlying error.
        #[source]
        source: alloc::boxed::Box<Error>,
    },
}

/// Result alias for this crate.
pub type Result<T, E = Error> = core::result::Result<T, E>;

impl Error {
    pub(crate) fn at_stage(self, stage: &str) -> Self {
        Error::Stage { stage: String::from(stage), source: alloc::boxed::Box::new(self) }
    }
}
