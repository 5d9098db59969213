use crate::num::Rational;

/// Errors raised by precondition violations across the crate.
///
/// Negative mathematical outcomes (a class outside the cone, a refused
/// certificate, a vector outside the reduced orbit) are *not* errors; they are
/// first-class verdict values on the relevant operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {left} exceptional coordinates vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("blowdown count l = {l} out of range for k = {k}")]
    BlowdownCountOutOfRange { l: usize, k: usize },

    #[error("square must be positive, got {0}")]
    NonPositiveSquare(Rational),

    #[error("area of the line class must be positive, got {0}")]
    NonPositiveLineArea(Rational),

    #[error("cremona step needs at least 3 exceptional areas, got {0}")]
    TooFewBlowups(usize),

    #[error("period vector is not sorted descending")]
    NotSorted,

    #[error("period vector already satisfies the head inequality; no cremona step applies")]
    AlreadyReduced,

    #[error("period vector is not reduced")]
    NotReduced,

    #[error("exceptional areas must all be positive")]
    NonPositiveExceptionalArea,

    #[error("class has non-integer coefficients")]
    NonIntegerCoefficients,

    #[error("tail deformation starts at index {0}, but indices below 5 are part of the head")]
    DeformIndexTooSmall(usize),

    #[error("tail deformation cannot reach a strict margin with negative canonical pairing")]
    TailDeformationImpossible,

    #[error("width formula not applicable to this manifold descriptor")]
    FormulaNotApplicable,

    #[error("period vector is not in the symplectic cone of the model")]
    NotInSymplecticCone,

    #[error("no fiber class on the minimal manifold; at least one blowup is required")]
    NoFiberClass,

    #[error("matrix is {rows}x{cols}, expected {expected}x{expected}")]
    BadMatrixShape {
        rows: usize,
        cols: usize,
        expected: usize,
    },

    #[error("matrix is not an isometry of the intersection lattice")]
    NotAnIsometry,

    #[error("isometry does not fix the last {0} exceptional coordinates")]
    IsometryMovesBlowupClasses(usize),

    #[error("malformed rational literal '{0}'")]
    BadRationalLiteral(String),

    #[error("a coefficient vector needs at least one entry")]
    EmptyCoefficients,
}
