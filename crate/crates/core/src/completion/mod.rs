//! Galois closure `m = lu` on subsets of a residuated semigroup and the finite
//! quantale of its closed sets.
//!
//! Closed sets are exactly the intersections of principal down-cones (the
//! empty intersection being the whole carrier), so they are generated from
//! the down-cones instead of filtering all `2^n` subsets. They are numbered in
//! canonical order: by cardinality, then by the integer whose bit `i` is set
//! iff element `i` is a member.

mod nucleus;
mod quantale;

pub use nucleus::{check_quantic_nucleus, check_quantic_nucleus_with, NucleusConfig, NucleusReport, NucleusWitness};
pub use quantale::{build_quantale, dm_embed, quantale_residuals, FiniteQuantale, QuantaleResiduals, SubsetId};

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::algebra::ResiduatedSemigroup;
use crate::bits::ElementSet;

/// `lX = { y : y <= x for all x in X }`.
pub fn lower_bounds(x: ElementSet, rs: &ResiduatedSemigroup) -> ElementSet {
    rs.poset().lower_bounds(x)
}

/// `uX = { y : x <= y for all x in X }`.
pub fn upper_bounds(x: ElementSet, rs: &ResiduatedSemigroup) -> ElementSet {
    rs.poset().upper_bounds(x)
}

/// `m X = l(u X)`.
pub fn galois_closure(x: ElementSet, rs: &ResiduatedSemigroup) -> ElementSet {
    lower_bounds(upper_bounds(x, rs), rs)
}

/// `{ x;y : x in X, y in Y }`.
pub fn pairwise_product(x: ElementSet, y: ElementSet, rs: &ResiduatedSemigroup) -> ElementSet {
    let mut out = ElementSet::EMPTY;
    for a in x.iter() {
        for b in y.iter() {
            out.insert(rs.compose(a, b));
        }
    }
    out
}

fn canonical_key(s: &ElementSet) -> (usize, u64) {
    (s.len(), s.bits())
}

/// All `m`-closed subsets, each once, in canonical order.
pub fn closed_sets(rs: &ResiduatedSemigroup) -> Vec<ElementSet> {
    let n = rs.size();
    let cones: Vec<ElementSet> = (0..n).map(|a| rs.poset().down_set(a)).collect();
    let mut found: BTreeSet<ElementSet> = cones.iter().copied().collect();
    found.insert(rs.poset().carrier());
    let mut frontier: Vec<ElementSet> = found.iter().copied().collect();
    while let Some(s) = frontier.pop() {
        for c in &cones {
            let t = s.intersection(*c);
            if found.insert(t) {
                frontier.push(t);
            }
        }
    }
    let mut out: Vec<ElementSet> = found.into_iter().collect();
    out.sort_by_key(canonical_key);
    debug_assert!(out.iter().all(|&s| galois_closure(s, rs) == s));
    out
}
