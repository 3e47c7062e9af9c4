use thiserror::Error;

/// Errors produced by validation and comparison routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty value list")]
    Empty,
    #[error("negative entry {value} at index {index}")]
    NegativeEntry { index: usize, value: f64 },
    #[error("non-finite entry at index {index}")]
    NonFinite { index: usize },
    #[error("entries sum to {sum}, expected 1 within tolerance {tol}")]
    BadSum { sum: f64, tol: f64 },
    #[error("index {index} out of range for dimension {dim}")]
    BadIndex { index: usize, dim: usize },
    #[error("not a permutation: {reason}")]
    BadPermutation { reason: &'static str },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("dimension {dim} unsupported: {reason}")]
    BadDimension { dim: usize, reason: &'static str },
    #[error("parameter {name} = {value} outside its valid range")]
    BadParameter { name: &'static str, value: f64 },
    #[error("invalid restricted-order parameters: {}", .0.join("; "))]
    InvalidParams(Vec<String>),
    #[error("empty meet: at least one member order is required")]
    EmptyMeet,
    #[error("no feature vector is defined for this order")]
    UnsupportedSpec,
    #[error("distribution is not monotonically decreasing")]
    NotMonotone,
    #[error("antisymmetry violated: both directions hold for distinct points {left:?} and {right:?}")]
    AntisymmetryViolation { left: Vec<f64>, right: Vec<f64> },
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian: deviation {deviation} exceeds tolerance {tol}")]
    NotHermitian { deviation: f64, tol: f64 },
    #[error("matrix is not positive semidefinite: smallest eigenvalue {min_eigenvalue}")]
    NotPsd { min_eigenvalue: f64 },
    #[error("trace is {trace}, expected 1 within tolerance {tol}")]
    BadTrace { trace: f64, tol: f64 },
    #[error("operators do not commute: commutator norm {norm} exceeds tolerance {tol}")]
    NotCommuting { norm: f64, tol: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
