use alloc::string::String;

use crate::algebra::ValidationReport;

/// Which residual a derivation failed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidualSide {
    /// `a\c`: no greatest `b` with `a;b <= c`.
    Left,
    /// `c/b`: no greatest `a` with `a;b <= c`.
    Right,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("not residuated: {side:?} residual of ({first}, {second}) has no maximum")]
    NotResiduated { side: ResidualSide, first: usize, second: usize },

    #[error("join table is not a semilattice")]
    InvalidSemilattice,

    #[error("unbound variable v{0}")]
    UnboundVariable(u32),

    #[error("size {size} exceeds the enumeration cap {cap}")]
    SizeCapExceeded { size: usize, cap: usize },

    #[error("algebra failed validation ({} violations)", .0.violations.len())]
    InvalidAlgebra(ValidationReport),

    #[error("relations are over different bases")]
    BaseMismatch,

    #[error("generator set is invalid")]
    InvalidGenerators(ValidationReport),

    #[error("malformed prenetwork: {0}")]
    MalformedPrenetwork(String),

    #[error("invalid goal ({a}, {b}): {a} <= {b}")]
    InvalidGoal { a: usize, b: usize },

    #[error("illegal move: {0}")]
    IllegalMove(String),

    #[error("depth {depth} exceeds the cap {cap}")]
    DepthCapExceeded { depth: usize, cap: usize },

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("∀ wins goal ({a}, {b}) at depth {depth}; no ∃ strategy to extract from")]
    NotKnownExistsWin { a: usize, b: usize, depth: usize },

    #[error("formula syntax error at byte {pos}: {msg}")]
    FormulaSyntax { pos: usize, msg: String },

    #[error("internal invariant breached: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
