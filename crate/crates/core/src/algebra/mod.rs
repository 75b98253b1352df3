//! Finite ordered algebras: posets, residuated semigroups, join
//! semilattice-ordered semigroups, terms, and small-structure enumeration.

mod enumerate;
pub mod fixtures;
mod jsl;
mod poset;
mod report;
mod residuated;
mod table;
mod term;

pub use enumerate::{
    canonical_form, enumerate_algebras, enumerate_algebras_capped, permutations, AlgebraKind, FiniteAlgebra,
    DEFAULT_SIZE_CAP,
};
pub use jsl::{order_from_join, validate_jsl, JoinSemilatticeSemigroup};
pub use poset::{down_cone, up_close, validate_poset, FinitePoset};
pub use report::{ValidationReport, Violation, DEFAULT_WITNESS_CAP};
pub use residuated::{derive_residuals, validate_residuated_semigroup, ResiduatedSemigroup};
pub use table::Table;
pub use term::{eval_term, Term, Valuation};

/// Index of an element in the carrier of its algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(pub usize);

impl ElementId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for ElementId {
    fn from(i: usize) -> Self {
        ElementId(i)
    }
}
