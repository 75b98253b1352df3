//! Binary relations over a finite base, generator sets, the hat map and the
//! end-to-end representation of a finite residuated semigroup.

mod generators;
mod rel;
mod represent;

pub use generators::{check_generators, minimize_generators, GeneratorSet, HatMap};
pub use rel::{rel_compose, rel_lres, rel_rres, FiniteBase, Rel};
pub use represent::{
    represent, represent_with, verify_representation, RepresentOptions, Representation, RepresentationReport,
    SideConditions,
};

use crate::completion::{FiniteQuantale, SubsetId};
use crate::error::Result;

/// `â = { (g, p) : g ∈ G, g <= a;p }` over the carrier of `q`.
pub fn hat(a: SubsetId, q: &FiniteQuantale, g: &GeneratorSet) -> Result<Rel> {
    Ok(HatMap::new(q, g.clone())?.hat(a))
}
