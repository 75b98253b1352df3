use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::generators::{minimize_generators, GeneratorSet, HatMap};
use super::rel::{rel_compose, rel_lres, rel_rres, FiniteBase, Rel};
use crate::algebra::{ElementId, ResiduatedSemigroup, ValidationReport, DEFAULT_WITNESS_CAP};
use crate::completion::{build_quantale, dm_embed};
use crate::error::{Error, Result};

/// An interpretation of every element of an algebra as a relation over one base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    base: Arc<FiniteBase>,
    map: Vec<Rel>,
}

impl Representation {
    pub fn new(base: Arc<FiniteBase>, map: Vec<Rel>) -> Result<Representation> {
        if map.iter().any(|r| r.base() != &base) {
            return Err(Error::BaseMismatch);
        }
        Ok(Representation { base, map })
    }

    pub fn base(&self) -> &Arc<FiniteBase> {
        &self.base
    }

    pub fn get(&self, a: ElementId) -> &Rel {
        &self.map[a.0]
    }

    pub fn relations(&self) -> &[Rel] {
        &self.map
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RepresentOptions {
    /// Use a minimal generator set instead of the whole quantale carrier.
    pub minimize_generators: bool,
}

pub fn represent(rs: &ResiduatedSemigroup) -> Result<Representation> {
    represent_with(rs, RepresentOptions::default())
}

/// `a ↦ hat(↓a)` over the closed-set quantale of `rs`.
pub fn represent_with(rs: &ResiduatedSemigroup, options: RepresentOptions) -> Result<Representation> {
    let report = rs.validate(DEFAULT_WITNESS_CAP);
    if !report.ok() {
        return Err(Error::InvalidAlgebra(report));
    }
    let q = build_quantale(rs);
    let generators = if options.minimize_generators { minimize_generators(&q) } else { GeneratorSet::full(&q) };
    let hat = HatMap::new(&q, generators)?;
    let map = (0..rs.size()).map(|a| dm_embed(ElementId(a), rs, &q).map(|s| hat.hat(s))).collect::<Result<Vec<_>>>()?;
    Ok(Representation { base: hat.base().clone(), map })
}

/// Conditions on the union of all represented relations that the operational
/// checks do not cover. Reported, never failed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SideConditions {
    pub union_transitive: bool,
    /// Every base point is the first coordinate of some pair of the union.
    pub base_is_domain: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentationReport {
    pub report: ValidationReport,
    pub side_conditions: SideConditions,
}

impl RepresentationReport {
    pub fn ok(&self) -> bool {
        self.report.ok()
    }
}

/// Checks injectivity, order, composition and both residuals of `rep`
/// against the tables of `rs`.
pub fn verify_representation(rs: &ResiduatedSemigroup, rep: &Representation) -> Result<RepresentationReport> {
    let n = rs.size();
    if rep.len() != n {
        return Err(Error::MalformedInput(format!("representation covers {} elements, algebra has {n}", rep.len())));
    }
    if rep.relations().iter().any(|r| r.base() != rep.base()) {
        return Err(Error::BaseMismatch);
    }
    let r = |a: usize| &rep.map[a];
    let mut report = ValidationReport::new();
    for a in 0..n {
        for b in 0..n {
            if a < b {
                report.check(r(a) != r(b), "injective", &[a, b]);
            }
            report.check(rs.leq(a, b) == r(a).is_subset(r(b))?, "order", &[a, b]);
            report.check(*r(rs.compose(a, b)) == rel_compose(r(a), r(b))?, "compose", &[a, b]);
            report.check(*r(rs.lres(a, b)) == rel_lres(r(a), r(b))?, "left-residual", &[a, b]);
            report.check(*r(rs.rres(a, b)) == rel_rres(r(a), r(b))?, "right-residual", &[a, b]);
        }
    }
    let mut union = Rel::empty(rep.base());
    for rel in rep.relations() {
        union = union.union(rel)?;
    }
    let base_is_domain = (0..rep.base().size()).all(|x| union.matrix().ones_in_row(x).next().is_some());
    Ok(RepresentationReport {
        report,
        side_conditions: SideConditions { union_transitive: union.is_transitive(), base_is_domain },
    })
}
