use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::bits::BitMatrix;
use crate::error::{Error, Result};

/// A finite set of points with one distinct label each.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteBase {
    labels: Vec<String>,
}

impl FiniteBase {
    pub fn new(labels: Vec<String>) -> Result<Arc<FiniteBase>> {
        if labels.is_empty() {
            return Err(Error::MalformedInput("a base needs at least one point".into()));
        }
        let mut sorted: Vec<&String> = labels.iter().collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedInput("base labels must be distinct".into()));
        }
        Ok(Arc::new(FiniteBase { labels }))
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

/// A binary relation over a [`FiniteBase`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rel {
    base: Arc<FiniteBase>,
    pairs: BitMatrix,
}

impl Rel {
    pub fn empty(base: &Arc<FiniteBase>) -> Rel {
        Rel { base: base.clone(), pairs: BitMatrix::zeros(base.size()) }
    }

    pub fn identity(base: &Arc<FiniteBase>) -> Rel {
        Rel { base: base.clone(), pairs: BitMatrix::identity(base.size()) }
    }

    pub fn full(base: &Arc<FiniteBase>) -> Rel {
        Rel { base: base.clone(), pairs: BitMatrix::full(base.size()) }
    }

    pub fn from_matrix(base: &Arc<FiniteBase>, pairs: BitMatrix) -> Result<Rel> {
        if pairs.dim() != base.size() {
            return Err(Error::BaseMismatch);
        }
        Ok(Rel { base: base.clone(), pairs })
    }

    pub fn from_pairs(base: &Arc<FiniteBase>, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Rel> {
        let n = base.size();
        let mut m = BitMatrix::zeros(n);
        for (x, y) in pairs {
            if x >= n || y >= n {
                return Err(Error::MalformedInput(alloc::format!("pair ({x}, {y}) outside a base of size {n}")));
            }
            m.set(x, y, true);
        }
        Ok(Rel { base: base.clone(), pairs: m })
    }

    pub fn base(&self) -> &Arc<FiniteBase> {
        &self.base
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.pairs
    }

    #[inline]
    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.pairs.get(x, y)
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        self.pairs.set(x, y, true);
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.pairs.pairs().collect()
    }

    pub fn len(&self) -> usize {
        self.pairs.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_subset(&self, other: &Rel) -> Result<bool> {
        same_base(self, other)?;
        Ok(self.pairs.is_subset(&other.pairs))
    }

    pub fn union(&self, other: &Rel) -> Result<Rel> {
        same_base(self, other)?;
        Ok(Rel { base: self.base.clone(), pairs: self.pairs.union(&other.pairs) })
    }

    pub fn is_transitive(&self) -> bool {
        self.pairs.compose(&self.pairs).is_subset(&self.pairs)
    }
}

fn same_base(r: &Rel, s: &Rel) -> Result<()> {
    if Arc::ptr_eq(&r.base, &s.base) || r.base == s.base {
        Ok(())
    } else {
        Err(Error::BaseMismatch)
    }
}

/// `(x, z)` iff `(x, y) ∈ r` and `(y, z) ∈ s` for some `y`.
pub fn rel_compose(r: &Rel, s: &Rel) -> Result<Rel> {
    same_base(r, s)?;
    Ok(Rel { base: r.base.clone(), pairs: r.pairs.compose(&s.pairs) })
}

/// `a\b = { (x, y) : ∀z. (z, x) ∈ a ⇒ (z, y) ∈ b }`.
pub fn rel_lres(a: &Rel, b: &Rel) -> Result<Rel> {
    same_base(a, b)?;
    let (at, bt) = (a.pairs.transpose(), b.pairs.transpose());
    let n = a.base.size();
    let mut out = BitMatrix::zeros(n);
    for x in 0..n {
        for y in 0..n {
            if at.row_subset(x, &bt, y) {
                out.set(x, y, true);
            }
        }
    }
    Ok(Rel { base: a.base.clone(), pairs: out })
}

/// `a/b = { (x, y) : ∀z. (y, z) ∈ b ⇒ (x, z) ∈ a }`.
pub fn rel_rres(a: &Rel, b: &Rel) -> Result<Rel> {
    same_base(a, b)?;
    let n = a.base.size();
    let mut out = BitMatrix::zeros(n);
    for x in 0..n {
        for y in 0..n {
            if b.pairs.row_subset(y, &a.pairs, x) {
                out.set(x, y, true);
            }
        }
    }
    Ok(Rel { base: a.base.clone(), pairs: out })
}
