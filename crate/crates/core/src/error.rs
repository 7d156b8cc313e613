use thiserror::Error;

/// Validation failures raised by constructors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("basis index {0} is outside 1..=5")]
    InvalidBasisIndex(usize),
    #[error("{0} must be finite")]
    NonFinite(&'static str),
    #[error("negative radius {0}")]
    NegativeRadius(f64),
    #[error("plane normal has length {0}, expected 1")]
    NonUnitNormal(f64),
    #[error("segment parameter {0} is outside [0, 1]")]
    ParameterOutOfRange(f64),
    #[error("robot `{0}` has no components")]
    EmptyRobot(String),
}

/// What went wrong on a scene line.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SceneErrorKind {
    #[error("no robots")]
    NoRobots,
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("negative radius {0}")]
    NegativeRadius(f64),
    #[error("non-finite number `{0}`")]
    NonFinite(String),
    #[error("duplicate robot name `{0}`")]
    DuplicateRobot(String),
    #[error("robot `{0}` has no components")]
    EmptyRobot(String),
}

/// A scene parse failure with its 1-based position.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct SceneError {
    pub line: usize,
    pub column: usize,
    pub kind: SceneErrorKind,
}
