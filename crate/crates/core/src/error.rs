use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("invalid generator name {0:?}")]
    InvalidName(String),
    #[error("duplicate generator {0}")]
    DuplicateGenerator(String),
    #[error("undeclared symbol {0}")]
    UndeclaredSymbol(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("no image given for generator {0}")]
    MissingImage(String),
    #[error("image given for unknown generator {0}")]
    UnknownImage(String),
    #[error("invalid JSON presentation: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KervaireError {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("map does not match the given presentations: {0}")]
    MismatchedPresentations(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("no twist degree given for generator {0}")]
    MissingDegree(String),
    #[error("twist degree given for unknown generator {0}")]
    UnknownDegree(String),
    #[error("meridian word must be nonempty")]
    EmptyMeridian,
    #[error("inclusion map does not run from the boundary group to the ambient group")]
    MismatchedInclusion,
    #[error("at least one spin component is required")]
    NoComponents,
    #[error("suspension needs a connected singular set, got {0} components")]
    DisconnectedSingularSet(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("face {face:?} of simplex {simplex:?} is missing")]
    FaceClosure { simplex: Vec<u32>, face: Vec<u32> },
    #[error("simplex {0:?} repeats a vertex")]
    RepeatedVertex(Vec<u32>),
    #[error("H_{dimension} is nonzero but the ambient dimension {ambient} allows nothing above {limit}")]
    DimensionViolation {
        dimension: usize,
        ambient: usize,
        limit: i64,
    },
    #[error("invalid complex file: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlexanderError {
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("cannot parse polynomial at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

/// Any error raised by this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Kervaire(#[from] KervaireError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Alexander(#[from] AlexanderError),
}
