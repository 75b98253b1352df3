//! Small named algebras used in tests, docs and the CLI fixture corpus.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::jsl::JoinSemilatticeSemigroup;
use super::poset::FinitePoset;
use super::residuated::ResiduatedSemigroup;
use super::table::Table;
use crate::bits::{BitMatrix, MAX_CARRIER};
use crate::error::{Error, Result};

pub fn one_element_rs() -> ResiduatedSemigroup {
    ResiduatedSemigroup::from_compose(FinitePoset::chain(1), Table::from_fn(1, |_, _| 0))
        .expect("one-element algebra is residuated")
}

/// The chain `0 < 1` with `a;b = min(a, b)`.
pub fn two_chain_min_rs() -> ResiduatedSemigroup {
    ResiduatedSemigroup::from_compose(FinitePoset::chain(2), Table::from_fn(2, |a, b| a.min(b)))
        .expect("min on a chain is residuated")
}

/// The chain `0 < 1 < .. < n-1` with `a;b = min(a, b)` (a finite Heyting algebra).
pub fn chain_min_rs(n: usize) -> ResiduatedSemigroup {
    ResiduatedSemigroup::from_compose(FinitePoset::chain(n), Table::from_fn(n, |a, b| a.min(b)))
        .expect("min on a chain is residuated")
}

pub fn one_element_jsl() -> JoinSemilatticeSemigroup {
    JoinSemilatticeSemigroup::new(Table::from_fn(1, |_, _| 0), Table::from_fn(1, |_, _| 0)).unwrap()
}

/// `{0, 1}` with `+ = max` and `; = max`.
pub fn two_chain_max_jsl() -> JoinSemilatticeSemigroup {
    JoinSemilatticeSemigroup::new(Table::from_fn(2, |a, b| a.max(b)), Table::from_fn(2, |a, b| a.max(b))).unwrap()
}

/// The three-chain with `+ = max` and `; = min`.
pub fn three_chain_max_min_jsl() -> JoinSemilatticeSemigroup {
    JoinSemilatticeSemigroup::new(Table::from_fn(3, |a, b| a.min(b)), Table::from_fn(3, |a, b| a.max(b))).unwrap()
}

/// Closes `generators` (relations over a common base) under union and
/// composition and returns the resulting algebra together with the relation
/// denoted by each element. Elements are numbered in sorted relation order.
pub fn relation_jsl(generators: &[BitMatrix]) -> Result<(JoinSemilatticeSemigroup, Vec<BitMatrix>)> {
    let Some(first) = generators.first() else {
        return Err(Error::MalformedInput("at least one generator relation is required".into()));
    };
    if generators.iter().any(|g| g.dim() != first.dim()) {
        return Err(Error::BaseMismatch);
    }
    let mut elems: Vec<BitMatrix> = Vec::new();
    for g in generators {
        if !elems.contains(g) {
            elems.push(g.clone());
        }
    }
    let mut i = 0;
    while i < elems.len() {
        for j in 0..=i {
            for r in [elems[i].union(&elems[j]), elems[i].compose(&elems[j]), elems[j].compose(&elems[i])] {
                if !elems.contains(&r) {
                    if elems.len() == MAX_CARRIER {
                        return Err(Error::MalformedInput("closure exceeds the carrier limit".into()));
                    }
                    elems.push(r);
                }
            }
        }
        i += 1;
    }
    elems.sort();
    let index: BTreeMap<&BitMatrix, usize> = elems.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let n = elems.len();
    let compose = Table::from_fn(n, |a, b| index[&elems[a].compose(&elems[b])]);
    let join = Table::from_fn(n, |a, b| index[&elems[a].union(&elems[b])]);
    let alg = JoinSemilatticeSemigroup::new(compose, join)?;
    Ok((alg, elems))
}

#[cfg(test)]
mod tests {
    use super::super::jsl::validate_jsl;
    use super::*;

    #[test]
    fn relation_closure_is_a_valid_jsl() {
        let mut r = BitMatrix::zeros(2);
        r.set(0, 1, true);
        let (alg, rels) = relation_jsl(&[r, BitMatrix::identity(2)]).unwrap();
        // r, id, r;r = {}, r + id, {} + ..
        assert!(validate_jsl(&alg).ok());
        assert_eq!(rels.len(), alg.size());
        assert!(rels.contains(&BitMatrix::zeros(2)));
    }
}
