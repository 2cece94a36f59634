use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different universes")]
    UniverseMismatch,

    #[error("element index {index} is out of range for a universe of {size} elements")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("invalid universe labels: {0}")]
    InvalidLabels(String),

    #[error("exhaustive enumeration over {size} elements exceeds the cap of {cap}")]
    EnumerationCapExceeded { size: usize, cap: usize },

    #[error("lattice on {elements} elements exceeds the supported maximum of {max}")]
    LatticeTooLarge { elements: usize, max: usize },

    #[error("relation is not serial: element {element} has no successor")]
    NotSerial { element: String },

    #[error("relation is not transitive: {x} -> {y} and {y} -> {z} hold but {x} -> {z} does not")]
    NotTransitive { x: String, y: String, z: String },

    #[error("{set} is not a regular set of the space")]
    NotRegular { set: String },

    #[error("family is not closed under {operation}: {left} {operation} {right} = {result} is not a member")]
    NotClosedUnder {
        operation: &'static str,
        left: String,
        right: String,
        result: String,
    },

    #[error("family is not a lattice: {left} and {right} have no unique {bound}")]
    NoUniqueBound {
        bound: &'static str,
        left: String,
        right: String,
    },

    #[error("family has no least element")]
    NoLeastElement,

    #[error("family has no greatest element")]
    NoGreatestElement,

    #[error("{set} is not an element of the lattice")]
    NotAnElement { set: String },

    #[error("interval endpoints are not ordered: {lower} is not contained in {upper}")]
    IncomparableEndpoints { lower: String, upper: String },
}

pub type Result<T> = std::result::Result<T, Error>;
