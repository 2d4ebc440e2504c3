use thiserror::Error;

/// Errors raised by the algebra, the primitives and the blending engines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("grade index {0} is out of range (must be at most 5)")]
    InvalidGrade(usize),
    #[error("multivector is not homogeneous in grade")]
    NotHomogeneous,
    #[error("multivector is not a bivector")]
    NotBivector,
    #[error("not a valid rotor: {0}")]
    InvalidRotor(&'static str),
    #[error("exponential series did not converge within {0} terms")]
    SeriesDiverged(usize),
    #[error("point lies at infinity")]
    PointAtInfinity,
    #[error("vector is not null")]
    NotNull,
    #[error("coordinates must be finite")]
    NonFinite,
    #[error("points are coincident")]
    CoincidentPoints,
    #[error("circle is degenerate (coincident generating points)")]
    DegenerateCircle,
    #[error("sphere is degenerate (cocircular or coincident generating points)")]
    DegenerateSphere,
    #[error("object is flat, radius is infinite")]
    InfiniteRadius,
    #[error("round object has imaginary radius")]
    ImaginaryRadius,
    #[error("object is zero")]
    ZeroObject,
    #[error("expected a flat object")]
    NotFlat,
    #[error("point pair has no real points")]
    NoRealPoints,
    #[error("point pair degenerates to a single tangent point")]
    TangentPoint,
    #[error("round objects have mismatched magnitude signs")]
    SignMismatch,
    #[error("pathological configuration: {0}")]
    Pathological(&'static str),
    #[error("blend target is opposite to the source object")]
    OppositeObjects,
    #[error("blended sphere is degenerate")]
    DegenerateBlend,
    #[error("parameter out of range: {0}")]
    OutOfRange(&'static str),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("segment {index}: {source}")]
    Segment {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn at_segment(self, index: usize) -> Self {
        Error::Segment {
            index,
            source: Box::new(self),
        }
    }

    /// Innermost error, looking through segment wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Segment { source, .. } => source.root(),
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
