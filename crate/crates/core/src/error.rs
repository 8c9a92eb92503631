use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("reducible minimal polynomial: element shares a factor with the modulus")]
    ReducibleMinimalPolynomial,
    #[error("field descriptor error: {0}")]
    Descriptor(String),
    #[error("operands belong to different fields")]
    DescriptorMismatch,
}

/// Parse failure with a 1-based position in the source text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at line {line}, column {column}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("field generator `{0}` used over the rationals")]
    GeneratorOverRationals(String),
    #[error("arithmetic error: {0}")]
    Arith(ArithError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DatumError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("degree violation: {0}")]
    Degree(String),
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComputeError {
    #[error("monad verification failed: {0}")]
    NotAMonad(String),
    #[error("insufficient samples: need {needed}, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("integrity error: {0}")]
    Integrity(String),
    #[error(transparent)]
    Datum(#[from] DatumError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}
