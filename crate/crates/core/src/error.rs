use thiserror::Error;

use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the supported bound 2^31-1")]
    ModulusTooLarge(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error(
        "ring mismatch: {left_vars} variables over {left_field} vs {right_vars} variables over {right_field}"
    )]
    RingMismatch {
        left_vars: usize,
        left_field: Field,
        right_vars: usize,
        right_field: Field,
    },
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("Groebner computation produced a degree-{degree} polynomial, above the bound {bound}")]
    DegreeBoundExceeded { bound: u32, degree: u32 },
    #[error("minor size {size} exceeds the {rows}x{cols} matrix")]
    MinorSize { size: usize, rows: usize, cols: usize },
    #[error("ideal power exponent must be positive")]
    ZeroPower,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character '{0}'")]
    UnexpectedChar(char),
    #[error("unexpected {found}, expected {expected}")]
    Unexpected { found: String, expected: &'static str },
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("exponent must be a nonnegative integer literal")]
    BadExponent,
    #[error("exponent {0} is too large")]
    ExponentTooLarge(String),
    #[error("division by a non-constant or zero expression")]
    BadDivision,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SceneError {
    #[error("scene file: {0}")]
    Syntax(String),
    #[error("unsupported scene schema version {0}")]
    Version(u32),
    #[error(transparent)]
    Field(#[from] ScalarError),
    #[error("variable name '{0}' is not an identifier")]
    BadVariableName(String),
    #[error("variable '{0}' declared twice")]
    DuplicateVariable(String),
    #[error("scene declares no variables")]
    NoVariables,
    #[error("hypersurface: {0}")]
    Expression(#[from] ParseError),
    #[error("center '{center}': offset for '{var}': {error}")]
    Offset {
        center: String,
        var: String,
        error: ParseError,
    },
    #[error("center '{center}' offset for '{var}' is not a constant")]
    NonConstantOffset { center: String, var: String },
    #[error("center '{center}' names unknown variable '{var}'")]
    UnknownCenterVariable { center: String, var: String },
    #[error("center '{center}' lists variable '{var}' twice")]
    DuplicateCenterVariable { center: String, var: String },
    #[error("center '{0}' has an empty vanishing set")]
    EmptyCenter(String),
    #[error("center name '{0}' used twice")]
    DuplicateCenter(String),
    #[error("hypersurface equation is zero")]
    ZeroHypersurface,
    #[error("hypersurface equation is a nonzero constant")]
    UnitHypersurface,
    #[error("centers '{0}' and '{1}' intersect")]
    OverlappingCenters(String, String),
    #[error("center '{0}' is not contained in the hypersurface")]
    CenterNotContained(String),
    #[error(transparent)]
    Kernel(#[from] IdealError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Scene(#[from] SceneError),
    #[error(transparent)]
    Kernel(IdealError),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl From<IdealError> for GeometryError {
    fn from(e: IdealError) -> Self {
        GeometryError::Kernel(e)
    }
}

impl From<PolyError> for GeometryError {
    fn from(e: PolyError) -> Self {
        GeometryError::Internal(e.to_string())
    }
}
