use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::rel::{FiniteBase, Rel};
use crate::algebra::ValidationReport;
use crate::bits::{BitMatrix, ElementSet};
use crate::completion::{FiniteQuantale, SubsetId};
use crate::error::{Error, Result};

/// A subset of a quantale's carrier, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorSet(Vec<SubsetId>);

impl GeneratorSet {
    pub fn new(q: &FiniteQuantale, members: impl IntoIterator<Item = SubsetId>) -> Result<GeneratorSet> {
        let mut v: Vec<SubsetId> = members.into_iter().collect();
        if let Some(bad) = v.iter().find(|g| g.0 >= q.size()) {
            return Err(Error::MalformedInput(format!("q{} is not in a quantale of size {}", bad.0, q.size())));
        }
        v.sort();
        v.dedup();
        Ok(GeneratorSet(v))
    }

    pub fn full(q: &FiniteQuantale) -> GeneratorSet {
        GeneratorSet(q.ids().collect())
    }

    pub fn contains(&self, q: SubsetId) -> bool {
        self.0.binary_search(&q).is_ok()
    }

    pub fn members(&self) -> &[SubsetId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Checks both generator conditions:
/// `q <= Σ{g ∈ G : g <= q}` for every `q`, and
/// `g <= q1;q2` implies `g <= q1;r` for some `r ∈ G` with `r <= q2`.
pub fn check_generators(q: &FiniteQuantale, g: &GeneratorSet) -> ValidationReport {
    let mut report = ValidationReport::new();
    for x in q.ids() {
        let cover = q.sup(g.members().iter().copied().filter(|&h| q.leq(h, x)));
        report.check(q.leq(x, cover), "generator-cover", &[x.0]);
    }
    for &h in g.members() {
        for q1 in q.ids() {
            for q2 in q.ids() {
                if !q.leq(h, q.product(q1, q2)) {
                    continue;
                }
                let factors = g.members().iter().any(|&r| q.leq(r, q2) && q.leq(h, q.product(q1, r)));
                report.check(factors, "generator-factor", &[h.0, q1.0, q2.0]);
            }
        }
    }
    report
}

/// A minimal valid generator set, obtained by dropping carrier elements in
/// canonical order whenever the remainder still generates.
pub fn minimize_generators(q: &FiniteQuantale) -> GeneratorSet {
    let mut current = GeneratorSet::full(q);
    for x in q.ids() {
        let candidate = GeneratorSet(current.0.iter().copied().filter(|&h| h != x).collect());
        if check_generators(q, &candidate).ok() {
            current = candidate;
        }
    }
    current
}

/// Point labels for a quantale carrier: the members of each closed set.
pub(crate) fn quantale_base(q: &FiniteQuantale) -> Arc<FiniteBase> {
    let labels = q.closed_sets().iter().map(|s| set_label(*s)).collect();
    FiniteBase::new(labels).expect("closed sets are distinct and non-empty in number")
}

fn set_label(s: ElementSet) -> String {
    let mut out = String::from("{");
    for (k, i) in s.iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        out.push_str(&format!("{i}"));
    }
    out.push('}');
    out
}

/// The hat map of a quantale for a fixed, validated generator set.
#[derive(Debug, Clone)]
pub struct HatMap<'q> {
    quantale: &'q FiniteQuantale,
    generators: GeneratorSet,
    base: Arc<FiniteBase>,
}

impl<'q> HatMap<'q> {
    pub fn new(quantale: &'q FiniteQuantale, generators: GeneratorSet) -> Result<Self> {
        let report = check_generators(quantale, &generators);
        if !report.ok() {
            return Err(Error::InvalidGenerators(report));
        }
        Ok(HatMap { quantale, generators, base: quantale_base(quantale) })
    }

    pub fn base(&self) -> &Arc<FiniteBase> {
        &self.base
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.generators
    }

    /// Rows outside the generator set are empty; columns range over the whole carrier.
    pub fn hat(&self, a: SubsetId) -> Rel {
        let q = self.quantale;
        let mut m = BitMatrix::zeros(q.size());
        for &g in self.generators.members() {
            for p in q.ids() {
                if q.leq(g, q.product(a, p)) {
                    m.set(g.0, p.0, true);
                }
            }
        }
        Rel::from_matrix(&self.base, m).expect("dimension matches base")
    }
}
