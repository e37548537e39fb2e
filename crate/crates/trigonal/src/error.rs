//! Error taxonomy shared by every module.
//!
//! Each variant corresponds to one failure mode of the pipeline; the CLI maps
//! variants to stable machine-readable codes via [`Error::code`]. Degenerate
//! algebraic configurations (special divisors, kernel-dimension surprises,
//! involution collisions) are reported precisely rather than papered over.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two operands belong to different fields.
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },

    /// Division (or inversion) of zero.
    #[error("division by zero")]
    DivisionByZero,

    /// An exact polynomial division left a nonzero remainder; an upstream
    /// precondition (root containment) was violated.
    #[error("polynomial division left a nonzero remainder: {0}")]
    NotDivisible(String),

    /// Exhaustive enumeration requested over a field beyond the size bound.
    #[error("field of size {p} exceeds the enumeration bound {bound}")]
    FieldTooLarge { p: u64, bound: u64 },

    /// Exhaustive enumeration requested over the rationals.
    #[error("operation `{0}` requires a finite field")]
    RationalFieldUnsupported(&'static str),

    /// Field specification rejected (composite or tiny characteristic, ...).
    #[error("bad field: {0}")]
    BadField(String),

    /// A curve coefficient was supplied for a weight with no admissible slot.
    #[error("weight {weight} is not an admissible coefficient slot: {reason}")]
    BadWeight { weight: u64, reason: String },

    /// The nondegeneracy scan found an affine singular point.
    #[error("curve is singular at ({x}, {y})")]
    SingularCurve { x: String, y: String },

    /// A supplied point does not satisfy the curve equation.
    #[error("point ({x}, {y}) does not lie on the curve")]
    OffCurvePoint { x: String, y: String },

    /// A kernel had unexpected dimension: the divisor is in special position.
    #[error("kernel dimension {got}, expected {expected}: special configuration")]
    KernelDimensionError { expected: usize, got: usize },

    /// A repeated point sits where the fiber ramifies (∂f/∂y = 0), so the
    /// local expansion in x does not exist.
    #[error("repeated point ({x}, {y}) lies on the ramification locus of the x-projection")]
    DerivativeRowSingular { x: String, y: String },

    /// The y-recovery rule broke down: the y-coefficient vanishes at a root,
    /// so points sharing that x are entangled by the involution.
    #[error("involution collision at x = {x}: y-coefficient vanishes there")]
    InvolutionCollision { x: String },

    /// Two distinct points of the divisor share an x-coordinate, so the
    /// function-pair encoding cannot distinguish the configuration.
    #[error("divisor is not strictly non-special: {0}")]
    NotStrictlyNonSpecial(String),

    /// The divisor (or its class) is special; no generic reduced
    /// representative exists.
    #[error("special divisor: {0}")]
    SpecialDivisor(String),

    /// A mid-pipeline degree drop: the class has no full-degree representative.
    #[error("degenerate class: {0}")]
    DegenerateClass(String),

    /// The appended point annihilates the minimal function, so the extension
    /// formula degenerates.
    #[error("appended point lies on the zero set of the minimal function")]
    PointOnI,

    /// A degenerate configuration that no fallback could repair.
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),

    /// A serialized representation violates its structural invariants.
    #[error("malformed representation: {0}")]
    MalformedRep(String),

    /// A parameter is outside the supported range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// Stable machine-readable code used in the CLI error envelope.
    pub fn code(&self) -> &'static str {
        match self {
            Error::FieldMismatch { .. } => "FieldMismatch",
            Error::DivisionByZero => "DivisionByZero",
            Error::NotDivisible(_) => "NotDivisible",
            Error::FieldTooLarge { .. } => "FieldTooLarge",
            Error::RationalFieldUnsupported(_) => "RationalFieldUnsupported",
            Error::BadField(_) => "BadField",
            Error::BadWeight { .. } => "BadWeight",
            Error::SingularCurve { .. } => "SingularCurve",
            Error::OffCurvePoint { .. } => "OffCurvePoint",
            Error::KernelDimensionError { .. } => "KernelDimensionError",
            Error::DerivativeRowSingular { .. } => "DerivativeRowSingular",
            Error::InvolutionCollision { .. } => "InvolutionCollision",
            Error::NotStrictlyNonSpecial(_) => "NotStrictlyNonSpecial",
            Error::SpecialDivisor(_) => "SpecialDivisor",
            Error::DegenerateClass(_) => "DegenerateClass",
            Error::PointOnI => "PointOnI",
            Error::DegenerateConfiguration(_) => "DegenerateConfiguration",
            Error::MalformedRep(_) => "MalformedRep",
            Error::InvalidParameter(_) => "InvalidParameter",
        }
    }
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
