use alloc::format;
use alloc::vec::Vec;

use super::report::ValidationReport;
use super::table::check_size;
use crate::bits::ElementSet;
use crate::error::{Error, Result};

/// A finite binary relation intended as a partial order. Construction only
/// checks shape; [`FinitePoset::validate`] checks the order laws.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinitePoset {
    /// `up[a] = { b : a <= b }`
    up: Vec<ElementSet>,
    /// `down[a] = { b : b <= a }`
    down: Vec<ElementSet>,
}

impl FinitePoset {
    pub fn from_matrix<R: AsRef<[bool]>>(rows: &[R]) -> Result<FinitePoset> {
        let n = rows.len();
        check_size(n)?;
        let mut up = Vec::with_capacity(n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::MalformedInput(format!("order row {i} has {} entries, expected {n}", row.len())));
            }
            up.push(row.iter().enumerate().filter(|(_, &b)| b).map(|(j, _)| j).collect());
        }
        Ok(Self::from_up_sets(up))
    }

    pub(crate) fn from_up_sets(up: Vec<ElementSet>) -> FinitePoset {
        let n = up.len();
        let down = (0..n).map(|a| (0..n).filter(|&b| up[b].contains(a)).collect()).collect();
        FinitePoset { up, down }
    }

    /// The chain `0 < 1 < .. < n-1`.
    pub fn chain(n: usize) -> FinitePoset {
        Self::from_up_sets((0..n).map(|a| ElementSet::full(n).difference(ElementSet::full(a))).collect())
    }

    /// The discrete order on `n` points.
    pub fn antichain(n: usize) -> FinitePoset {
        Self::from_up_sets((0..n).map(ElementSet::singleton).collect())
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.up.len()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    #[inline]
    pub fn up_set(&self, a: usize) -> ElementSet {
        self.up[a]
    }

    #[inline]
    pub fn down_set(&self, a: usize) -> ElementSet {
        self.down[a]
    }

    pub fn carrier(&self) -> ElementSet {
        ElementSet::full(self.size())
    }

    pub fn up_close(&self, s: ElementSet) -> ElementSet {
        s.iter().fold(ElementSet::EMPTY, |acc, a| acc.union(self.up[a]))
    }

    pub fn down_close(&self, s: ElementSet) -> ElementSet {
        s.iter().fold(ElementSet::EMPTY, |acc, a| acc.union(self.down[a]))
    }

    /// `{ y : y <= x for all x in s }`; the whole carrier when `s` is empty.
    pub fn lower_bounds(&self, s: ElementSet) -> ElementSet {
        s.iter().fold(self.carrier(), |acc, x| acc.intersection(self.down[x]))
    }

    /// `{ y : x <= y for all x in s }`; the whole carrier when `s` is empty.
    pub fn upper_bounds(&self, s: ElementSet) -> ElementSet {
        s.iter().fold(self.carrier(), |acc, x| acc.intersection(self.up[x]))
    }

    /// Greatest element of `s`, if `s` has one.
    pub fn maximum(&self, s: ElementSet) -> Option<usize> {
        s.iter().find(|&m| s.is_subset(self.down[m]))
    }

    /// Least element of `s`, if `s` has one.
    pub fn minimum(&self, s: ElementSet) -> Option<usize> {
        s.iter().find(|&m| s.is_subset(self.up[m]))
    }

    /// Minimal elements of `s`.
    pub fn minimal(&self, s: ElementSet) -> ElementSet {
        s.iter().filter(|&m| self.down[m].intersection(s) == ElementSet::singleton(m)).collect()
    }

    pub fn matrix(&self) -> Vec<Vec<bool>> {
        let n = self.size();
        (0..n).map(|a| (0..n).map(|b| self.leq(a, b)).collect()).collect()
    }

    pub fn validate(&self, cap: usize) -> ValidationReport {
        let n = self.size();
        let mut report = ValidationReport::with_cap(cap);
        for a in 0..n {
            report.check(self.leq(a, a), "reflexive", &[a]);
        }
        for a in 0..n {
            for b in a + 1..n {
                report.check(!(self.leq(a, b) && self.leq(b, a)), "antisymmetric", &[a, b]);
            }
        }
        for a in 0..n {
            for b in self.up[a].iter() {
                for c in self.up[b].iter() {
                    report.check(self.leq(a, c), "transitive", &[a, b, c]);
                }
            }
        }
        report
    }

    pub fn is_partial_order(&self) -> bool {
        self.validate(1).ok()
    }

    pub(crate) fn relabel(&self, perm: &[usize]) -> FinitePoset {
        let n = self.size();
        let mut up = alloc::vec![ElementSet::EMPTY; n];
        for a in 0..n {
            up[perm[a]] = self.up[a].iter().map(|b| perm[b]).collect();
        }
        Self::from_up_sets(up)
    }
}

/// Checks reflexivity, antisymmetry and transitivity of a square boolean matrix.
pub fn validate_poset<R: AsRef<[bool]>>(leq: &[R]) -> Result<ValidationReport> {
    Ok(FinitePoset::from_matrix(leq)?.validate(super::DEFAULT_WITNESS_CAP))
}

/// Smallest upward-closed superset of `s`.
pub fn up_close(s: ElementSet, poset: &FinitePoset) -> ElementSet {
    poset.up_close(s)
}

/// `{ x : x <= a }`.
pub fn down_cone(a: usize, poset: &FinitePoset) -> ElementSet {
    poset.down_set(a)
}
