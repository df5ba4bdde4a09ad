//! Exact computations with n-Lie (Filippov) algebras given by structure
//! constants: identity checks, invariants, basis changes, the canonical
//! (n+1)- and (n+2)-dimensional classes, and a witness-producing classifier.

pub mod algebra;
pub mod catalog;
pub mod classify;
pub mod cli;
pub mod exactlin;
pub mod exec;
pub mod io;
pub mod transform;

pub use algebra::{Algebra, DerivationSpace, Subspace};
pub use catalog::ClassLabel;
pub use classify::{InvariantSignature, Status, Verdict};
pub use exactlin::{Matrix, Rational};
pub use transform::TransitionMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported arity {0}")]
    UnsupportedArity(usize),
    #[error("derived algebra of dimension {derived} exceeds arity + 1 = {bound}")]
    ArityBoundViolated { derived: usize, bound: usize },
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse {
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("i/o error: {0}")]
    Io(String),
}
