use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the library.
///
/// Each variant maps to a stable machine-readable kind (see [`Error::kind`])
/// and to one of two broad classes: invalid input, or numerical failure.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} has modulus {modulus}, outside the allowed range")]
    ModulusOutOfRange { what: String, modulus: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inconsistent data: {0}")]
    Inconsistent(String),

    #[error("no admissible function: w_{index} lies {excess} outside its disk")]
    Infeasible { index: usize, excess: f64 },

    #[error("series mismatch: {0}")]
    SeriesMismatch(String),

    #[error(
        "composition alignment: inner series starts at {inner} but outer is expanded at {outer}"
    )]
    CompositionAlignment { inner: Complex64, outer: Complex64 },

    #[error("derivative order {k} exceeds series order {order}")]
    OrderExceeded { k: usize, order: usize },

    #[error("division by series with constant term of modulus {modulus}")]
    DivisionFloor { modulus: f64 },

    #[error("pole: denominator vanishes at {0}")]
    Pole(Complex64),

    #[error("bracket degenerated to the infinity signal")]
    InfiniteBracket,

    #[error("coincident nodes in divided difference at index {0}")]
    CoincidentNodes(usize),

    #[error("degenerate: parameter {index} has unit modulus")]
    Degenerate { index: usize },

    #[error("integer overflow computing {0}")]
    Overflow(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ModulusOutOfRange { .. } => "modulus_out_of_range",
            Error::Precondition(_) => "precondition",
            Error::Inconsistent(_) => "inconsistent_data",
            Error::Infeasible { .. } => "infeasible",
            Error::SeriesMismatch(_) => "series_mismatch",
            Error::CompositionAlignment { .. } => "composition_alignment",
            Error::OrderExceeded { .. } => "order_exceeded",
            Error::DivisionFloor { .. } => "division_floor",
            Error::Pole(_) => "pole",
            Error::InfiniteBracket => "infinite_bracket",
            Error::CoincidentNodes(_) => "coincident_nodes",
            Error::Degenerate { .. } => "degenerate",
            Error::Overflow(_) => "overflow",
        }
    }

    /// True for failures of the arithmetic itself rather than of the caller's data.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::DivisionFloor { .. }
                | Error::Overflow(_)
                | Error::Pole(_)
                | Error::InfiniteBracket
                | Error::SeriesMismatch(_)
                | Error::CompositionAlignment { .. }
                | Error::OrderExceeded { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_open_disk(what: &str, z: Complex64) -> Result<()> {
    let modulus = z.norm();
    if modulus < 1.0 && modulus.is_finite() {
        Ok(())
    } else {
        Err(Error::ModulusOutOfRange {
            what: what.to_string(),
            modulus,
        })
    }
}

pub(crate) fn check_closed_disk(what: &str, z: Complex64) -> Result<()> {
    let modulus = z.norm();
    if modulus <= 1.0 + crate::UNIT_TOLERANCE && modulus.is_finite() {
        Ok(())
    } else {
        Err(Error::ModulusOutOfRange {
            what: what.to_string(),
            modulus,
        })
    }
}
