use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("size limit exceeded: {what} needs {size} > {limit}")]
    SizeLimit {
        what: String,
        size: u128,
        limit: u128,
    },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("generator index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("cannot compose: target of the first arrow is not the source of the second")]
    SourceTargetMismatch,

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("module is not a self-invariant Z/2Z module: {0}")]
    NotZ2(String),

    #[error("operands live on different modules or truncations")]
    ModuleMismatch,

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("degenerate metric: {0}")]
    DegenerateMetric(String),

    #[error("supplied unit is not a unit: {0}")]
    UnitFails(String),

    #[error("restrictions to the shared subspace disagree: {0}")]
    RestrictionMismatch(String),

    #[error("metric block has the wrong sector degree: {0}")]
    BlockDegreeViolation(String),

    #[error("potential is not of G-degree e: {0}")]
    GDegreeViolation(String),

    #[error("third derivatives are not integrable: {0}")]
    IntegrabilityFailure(String),

    #[error("bad index: {0}")]
    BadIndex(String),

    #[error("not braided: {0}")]
    NotBraided(String),

    #[error("parse error: {0}")]
    Parse(String),
}
