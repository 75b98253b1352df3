use alloc::vec::Vec;

use super::poset::FinitePoset;
use super::report::{ValidationReport, DEFAULT_WITNESS_CAP};
use super::table::Table;
use crate::bits::ElementSet;
use crate::error::{Error, Result};

/// A finite semigroup with a binary join over which composition distributes.
///
/// The order `a <= b iff a + b = b` is derived once at construction when the
/// join table is a semilattice; otherwise it is absent and [`Self::validate`]
/// reports the failing laws.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JoinSemilatticeSemigroup {
    compose: Table,
    join: Table,
    order: Option<FinitePoset>,
}

impl JoinSemilatticeSemigroup {
    pub fn new(compose: Table, join: Table) -> Result<Self> {
        if compose.size() != join.size() {
            return Err(Error::MalformedInput("composition and join sizes differ".into()));
        }
        let order = order_from_join(&join).ok();
        Ok(JoinSemilatticeSemigroup { compose, join, order })
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.compose.size()
    }

    #[inline]
    pub fn compose(&self, a: usize, b: usize) -> usize {
        self.compose.get(a, b)
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join.get(a, b)
    }

    pub fn compose_table(&self) -> &Table {
        &self.compose
    }

    pub fn join_table(&self) -> &Table {
        &self.join
    }

    /// The derived order; `None` when the join table is not a semilattice.
    pub fn order(&self) -> Option<&FinitePoset> {
        self.order.as_ref()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.join(a, b) == b
    }

    /// `up[a] = { b : a <= b }` for every element.
    pub fn up_sets(&self) -> Vec<ElementSet> {
        let n = self.size();
        (0..n).map(|a| (0..n).filter(|&b| self.leq(a, b)).collect()).collect()
    }

    pub fn validate(&self, cap: usize) -> ValidationReport {
        let n = self.size();
        let mut report = semilattice_report(&self.join, cap);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = self.compose(a, self.compose(b, c));
                    let rhs = self.compose(self.compose(a, b), c);
                    report.check(lhs == rhs, "associative", &[a, b, c]);
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let l = self.compose(a, self.join(b, c));
                    report.check(
                        l == self.join(self.compose(a, b), self.compose(a, c)),
                        "left-distributive",
                        &[a, b, c],
                    );
                    let r = self.compose(self.join(a, b), c);
                    report.check(
                        r == self.join(self.compose(a, c), self.compose(b, c)),
                        "right-distributive",
                        &[a, b, c],
                    );
                }
            }
        }
        report
    }

    pub(crate) fn relabel(&self, perm: &[usize]) -> JoinSemilatticeSemigroup {
        let compose = self.compose.relabel(perm);
        let join = self.join.relabel(perm);
        let order = order_from_join(&join).ok();
        JoinSemilatticeSemigroup { compose, join, order }
    }
}

fn semilattice_report(join: &Table, cap: usize) -> ValidationReport {
    let n = join.size();
    let mut report = ValidationReport::with_cap(cap);
    for a in 0..n {
        report.check(join.get(a, a) == a, "join-idempotent", &[a]);
    }
    for a in 0..n {
        for b in a + 1..n {
            report.check(join.get(a, b) == join.get(b, a), "join-commutative", &[a, b]);
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = join.get(a, join.get(b, c));
                let rhs = join.get(join.get(a, b), c);
                report.check(lhs == rhs, "join-associative", &[a, b, c]);
            }
        }
    }
    report
}

/// Validates with the default per-law witness cap.
pub fn validate_jsl(alg: &JoinSemilatticeSemigroup) -> ValidationReport {
    alg.validate(DEFAULT_WITNESS_CAP)
}

/// The order `a <= b iff a + b = b` of a semilattice join table.
pub fn order_from_join(join: &Table) -> Result<FinitePoset> {
    if !semilattice_report(join, 1).ok() {
        return Err(Error::InvalidSemilattice);
    }
    let n = join.size();
    Ok(FinitePoset::from_up_sets((0..n).map(|a| (0..n).filter(|&b| join.get(a, b) == b).collect()).collect()))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures;
    use super::*;

    #[test]
    fn one_element_is_valid() {
        assert!(validate_jsl(&fixtures::one_element_jsl()).ok());
    }

    #[test]
    fn two_chain_max_max_is_valid() {
        let alg = fixtures::two_chain_max_jsl();
        assert!(validate_jsl(&alg).ok());
        assert_eq!(alg.order().unwrap().matrix(), [[true, true], [false, true]]);
    }

    #[test]
    fn constant_zero_composition_over_max_join() {
        // a;b = 0 for all a, b with + = max: both distribution laws read 0 = 0 + 0.
        let alg =
            JoinSemilatticeSemigroup::new(Table::from_fn(2, |_, _| 0), Table::from_fn(2, |a, b| a.max(b))).unwrap();
        assert!(validate_jsl(&alg).ok());
    }

    #[test]
    fn order_from_join_examples() {
        assert_eq!(order_from_join(&Table::from_rows(&[[0]]).unwrap()).unwrap().matrix(), [[true]]);
        let max = Table::from_fn(2, |a, b| a.max(b));
        assert_eq!(order_from_join(&max).unwrap().matrix(), [[true, true], [false, true]]);
        let left_projection = Table::from_rows(&[[0, 0], [1, 1]]).unwrap();
        assert_eq!(order_from_join(&left_projection), Err(Error::InvalidSemilattice));
    }

    #[test]
    fn non_commutative_join_is_reported() {
        let alg =
            JoinSemilatticeSemigroup::new(Table::from_fn(2, |_, _| 0), Table::from_rows(&[[0, 0], [1, 1]]).unwrap())
                .unwrap();
        let report = validate_jsl(&alg);
        assert!(report.has_law("join-commutative"));
        assert!(alg.order().is_none());
    }
}
