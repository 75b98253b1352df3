use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{galois_closure, pairwise_product};
use crate::algebra::{ResiduatedSemigroup, DEFAULT_WITNESS_CAP};
use crate::bits::ElementSet;

/// How [`check_quantic_nucleus_with`] covers the subset pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NucleusConfig {
    /// Carriers up to this size are checked on every pair of subsets.
    pub exhaustive_limit: usize,
    /// Pairs drawn for larger carriers.
    pub samples: usize,
    pub seed: u64,
}

impl NucleusConfig {
    pub const DEFAULT_SEED: u64 = 0x6d5f_6e75_636c_6575;
}

impl Default for NucleusConfig {
    fn default() -> Self {
        NucleusConfig { exhaustive_limit: 4, samples: 10_000, seed: Self::DEFAULT_SEED }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NucleusWitness {
    pub law: &'static str,
    pub x: ElementSet,
    pub y: ElementSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NucleusReport {
    pub is_closure: bool,
    pub is_nucleus: bool,
    pub witnesses: Vec<NucleusWitness>,
    pub pairs_checked: usize,
    pub exhaustive: bool,
}

pub fn check_quantic_nucleus(rs: &ResiduatedSemigroup) -> NucleusReport {
    check_quantic_nucleus_with(rs, NucleusConfig::default())
}

/// Checks that `m` is extensive, idempotent and monotone and that
/// `m(X) m(Y) ⊆ m(XY)`, on all subset pairs or on a seeded sample.
pub fn check_quantic_nucleus_with(rs: &ResiduatedSemigroup, config: NucleusConfig) -> NucleusReport {
    let n = rs.size();
    let exhaustive = n <= config.exhaustive_limit;
    let full = ElementSet::full(n).bits();
    let pairs: Vec<(ElementSet, ElementSet)> = if exhaustive {
        (0..=full).flat_map(|x| (0..=full).map(move |y| (ElementSet::from_bits(x), ElementSet::from_bits(y)))).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        (0..config.samples)
            .map(|_| {
                let x = ElementSet::from_bits(rng.random::<u64>() & full);
                let y = ElementSet::from_bits(rng.random::<u64>() & full);
                (x, y)
            })
            .collect()
    };

    let mut closure_ok = true;
    let mut nucleus_ok = true;
    let mut witnesses = Vec::new();
    let fail = |law, x, y, witnesses: &mut Vec<NucleusWitness>| {
        if witnesses.len() < DEFAULT_WITNESS_CAP {
            witnesses.push(NucleusWitness { law, x, y });
        }
    };
    for &(x, y) in &pairs {
        let mx = galois_closure(x, rs);
        let my = galois_closure(y, rs);
        if !x.is_subset(mx) {
            closure_ok = false;
            fail("extensive", x, x, &mut witnesses);
        }
        if galois_closure(mx, rs) != mx {
            closure_ok = false;
            fail("idempotent", x, x, &mut witnesses);
        }
        // Monotonicity on the pair (X ∩ Y, X) keeps every sampled pair useful.
        let meet = x.intersection(y);
        if !galois_closure(meet, rs).is_subset(mx) {
            closure_ok = false;
            fail("monotone", meet, x, &mut witnesses);
        }
        let lhs = pairwise_product(mx, my, rs);
        let rhs = galois_closure(pairwise_product(x, y, rs), rs);
        if !lhs.is_subset(rhs) {
            nucleus_ok = false;
            fail("nucleus", x, y, &mut witnesses);
        }
    }
    NucleusReport {
        is_closure: closure_ok,
        is_nucleus: closure_ok && nucleus_ok,
        witnesses,
        pairs_checked: pairs.len(),
        exhaustive,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures;

    #[test]
    fn small_examples_are_nuclei() {
        for rs in [fixtures::one_element_rs(), fixtures::two_chain_min_rs()] {
            let r = check_quantic_nucleus(&rs);
            assert!(r.is_closure && r.is_nucleus && r.exhaustive, "{r:?}");
        }
    }

    #[test]
    fn large_carrier_is_sampled() {
        let rs = fixtures::chain_min_rs(6);
        let r = check_quantic_nucleus(&rs);
        assert!(!r.exhaustive);
        assert_eq!(r.pairs_checked, 10_000);
        assert!(r.is_nucleus);
    }
}
