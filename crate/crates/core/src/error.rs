use thiserror::Error;

use crate::complex::{Face, VertexId};

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("face {0} lists a vertex more than once")]
    DuplicateVertex(Face),

    #[error("{0} is not a face of the complex")]
    NotAFace(Face),

    #[error("{0} is not a facet of the complex")]
    NotAFacet(Face),

    #[error("{0} is already a face of the complex")]
    AlreadyAFace(Face),

    #[error("vertex {0} already belongs to the complex")]
    VertexInUse(VertexId),

    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),

    #[error("complexes share vertices {0:?}; a join needs disjoint vertex sets")]
    OverlappingVertices(Vec<VertexId>),

    #[error("complex is not pure")]
    NotPure,

    #[error("index {index} out of range 0..={max}")]
    OutOfRange { index: i64, max: i64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid face: {0}")]
    InvalidFace(String),

    #[error("involution fixes vertex {0}")]
    FixedPoint(VertexId),

    #[error("involution is not an involution at vertex {0}")]
    NotInvolutive(VertexId),

    #[error("antipode of face {0} is not a face")]
    AntipodeNotAFace(Face),

    #[error("face {0} is its own antipode")]
    SelfAntipodal(Face),

    #[error("complex is not centrally symmetric: {0}")]
    NotCentrallySymmetric(String),

    #[error("link of vertex {vertex} is not the join of the boundary of {face} with a complex")]
    NotJoinForm { vertex: VertexId, face: Face },

    #[error("connected sum would identify distinct vertices: {0}")]
    BadIdentification(String),

    #[error("link splits into {0} parts along the missing face, expected 2")]
    BadSplit(usize),

    #[error("vertex {0} has no coordinates")]
    MissingCoordinates(VertexId),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("framework does not affinely span R^{0}")]
    DegenerateSpan(usize),

    #[error("projection is not injective: vertices {0} and {1} collide")]
    NonInjectiveProjection(VertexId, VertexId),

    #[error("geometric construction failed: {0}")]
    Geometry(String),

    #[error("invalid subdivision: {0}")]
    InvalidSubdivision(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
