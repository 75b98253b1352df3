use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::{closed_sets, galois_closure, pairwise_product};
use crate::algebra::{ElementId, FinitePoset, ResiduatedSemigroup};
use crate::bits::ElementSet;
use crate::error::{Error, Result};

/// Index into the canonical list of closed sets of a [`FiniteQuantale`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetId(pub usize);

impl SubsetId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

/// The quantale of `m`-closed subsets of a finite residuated semigroup, with
/// `X ;m Y = m(XY)` and `Σm F = m(∪F)`. Products and binary joins are
/// tabulated; arbitrary sups are computed on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuantale {
    poset: FinitePoset,
    sets: Vec<ElementSet>,
    index: BTreeMap<ElementSet, SubsetId>,
    product: Vec<SubsetId>,
    join: Vec<SubsetId>,
}

impl FiniteQuantale {
    #[inline]
    pub fn size(&self) -> usize {
        self.sets.len()
    }

    pub fn ids(&self) -> impl Iterator<Item = SubsetId> + Clone {
        (0..self.size()).map(SubsetId)
    }

    /// The closed set with this id.
    #[inline]
    pub fn set(&self, q: SubsetId) -> ElementSet {
        self.sets[q.0]
    }

    pub fn closed_sets(&self) -> &[ElementSet] {
        &self.sets
    }

    pub fn id_of(&self, s: ElementSet) -> Option<SubsetId> {
        self.index.get(&s).copied()
    }

    /// Galois closure in the underlying algebra.
    pub fn close(&self, s: ElementSet) -> ElementSet {
        self.poset.lower_bounds(self.poset.upper_bounds(s))
    }

    fn id_of_closure(&self, s: ElementSet) -> SubsetId {
        self.index[&self.close(s)]
    }

    #[inline]
    pub fn product(&self, x: SubsetId, y: SubsetId) -> SubsetId {
        self.product[x.0 * self.size() + y.0]
    }

    #[inline]
    pub fn join(&self, x: SubsetId, y: SubsetId) -> SubsetId {
        self.join[x.0 * self.size() + y.0]
    }

    /// Intersection; closed sets are closed under it.
    pub fn meet(&self, x: SubsetId, y: SubsetId) -> SubsetId {
        self.index[&self.set(x).intersection(self.set(y))]
    }

    #[inline]
    pub fn leq(&self, x: SubsetId, y: SubsetId) -> bool {
        self.set(x).is_subset(self.set(y))
    }

    /// `Σm F = m(∪F)`; the bottom for an empty family.
    pub fn sup(&self, family: impl IntoIterator<Item = SubsetId>) -> SubsetId {
        let u = family.into_iter().fold(ElementSet::EMPTY, |acc, q| acc.union(self.set(q)));
        self.id_of_closure(u)
    }

    pub fn bottom(&self) -> SubsetId {
        SubsetId(0)
    }

    pub fn top(&self) -> SubsetId {
        SubsetId(self.size() - 1)
    }
}

/// Builds the quantale of closed sets of a validated residuated semigroup.
pub fn build_quantale(rs: &ResiduatedSemigroup) -> FiniteQuantale {
    let sets = closed_sets(rs);
    let index: BTreeMap<ElementSet, SubsetId> = sets.iter().enumerate().map(|(i, &s)| (s, SubsetId(i))).collect();
    let k = sets.len();
    let mut product = Vec::with_capacity(k * k);
    let mut join = Vec::with_capacity(k * k);
    for &x in &sets {
        for &y in &sets {
            product.push(index[&galois_closure(pairwise_product(x, y, rs), rs)]);
            join.push(index[&galois_closure(x.union(y), rs)]);
        }
    }
    FiniteQuantale { poset: rs.poset().clone(), sets, index, product, join }
}

/// Residual tables of a quantale: `lres[a][b] = a\b = Σ{c : a;c <= b}` and
/// `rres[c][b] = c/b = Σ{a : a;b <= c}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantaleResiduals {
    size: usize,
    lres: Vec<SubsetId>,
    rres: Vec<SubsetId>,
}

impl QuantaleResiduals {
    /// `a\c`
    pub fn lres(&self, a: SubsetId, c: SubsetId) -> SubsetId {
        self.lres[a.0 * self.size + c.0]
    }

    /// `c/b`
    pub fn rres(&self, c: SubsetId, b: SubsetId) -> SubsetId {
        self.rres[c.0 * self.size + b.0]
    }
}

pub fn quantale_residuals(q: &FiniteQuantale) -> QuantaleResiduals {
    let k = q.size();
    let mut lres = Vec::with_capacity(k * k);
    let mut rres = Vec::with_capacity(k * k);
    for a in q.ids() {
        for b in q.ids() {
            lres.push(q.sup(q.ids().filter(|&c| q.leq(q.product(a, c), b))));
        }
    }
    for c in q.ids() {
        for b in q.ids() {
            rres.push(q.sup(q.ids().filter(|&a| q.leq(q.product(a, b), c))));
        }
    }
    QuantaleResiduals { size: k, lres, rres }
}

/// The embedding `a ↦ ↓a`.
pub fn dm_embed(a: ElementId, rs: &ResiduatedSemigroup, q: &FiniteQuantale) -> Result<SubsetId> {
    if a.0 >= rs.size() {
        return Err(Error::MalformedInput(format!("element {} outside carrier", a.0)));
    }
    q.id_of(rs.poset().down_set(a.0))
        .ok_or_else(|| Error::Internal(format!("down-cone of {} is not among the closed sets", a.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures;

    #[test]
    fn two_chain_quantale() {
        let rs = fixtures::two_chain_min_rs();
        let q = build_quantale(&rs);
        assert_eq!(q.size(), 2);
        let (q0, q1) = (SubsetId(0), SubsetId(1));
        assert_eq!(q.product(q0, q0), q0);
        assert_eq!(q.product(q0, q1), q0);
        assert_eq!(q.product(q1, q0), q0);
        assert_eq!(q.product(q1, q1), q1);
        assert_eq!(q.sup(q.ids()), q.top());
        assert_eq!(q.sup([]), q0);
        let res = quantale_residuals(&q);
        assert_eq!(res.lres(q1, q0), q0);
        assert_eq!(res.lres(q0, q0), q1);
        assert_eq!(dm_embed(ElementId(0), &rs, &q), Ok(q0));
        assert_eq!(dm_embed(ElementId(1), &rs, &q), Ok(q1));
    }

    #[test]
    fn one_element_quantale() {
        let rs = fixtures::one_element_rs();
        let q = build_quantale(&rs);
        assert_eq!(q.size(), 1);
        assert_eq!(q.product(SubsetId(0), SubsetId(0)), SubsetId(0));
        assert_eq!(quantale_residuals(&q).lres(SubsetId(0), SubsetId(0)), SubsetId(0));
        assert_eq!(dm_embed(ElementId(0), &rs, &q), Ok(SubsetId(0)));
    }
}
