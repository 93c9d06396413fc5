use thiserror::Error;

/// Errors produced while building or evaluating supercharacter theories.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },
    #[error("matrix is not invertible mod {modulus} (determinant {det})")]
    NotInvertible { det: u64, modulus: u64 },
    #[error("{what} exceeds cap of {cap}")]
    CapExceeded { what: &'static str, cap: u64 },
    #[error("group is not J-symmetric: {0}")]
    NotJSymmetric(String),
    #[error("unsupported symmetry: {0}")]
    UnsupportedSymmetry(String),
    #[error("U fails unitarity: max |UU* - I| = {residual:e} > {tolerance:e}")]
    UnitarityViolation { residual: f64, tolerance: f64 },
    #[error("function is identically zero")]
    ZeroFunction,
    #[error("superclass function does not belong to this theory: {0}")]
    TheoryMismatch(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("integer overflow computing {0}")]
    Overflow(&'static str),
    #[error("incomplete divisor data: expected {expected} values, got {got}")]
    IncompleteDivisorData { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
