use alloc::format;

use super::poset::FinitePoset;
use super::report::{ValidationReport, DEFAULT_WITNESS_CAP};
use super::table::Table;
use crate::error::{Error, ResidualSide, Result};

/// A finite partially ordered semigroup with both residuals tabulated.
///
/// `lres[a][c]` holds `a\c` and `rres[c][b]` holds `c/b`, so that
/// `b <= a\c  <=>  a;b <= c  <=>  a <= c/b` reads off the tables directly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResiduatedSemigroup {
    poset: FinitePoset,
    compose: Table,
    lres: Table,
    rres: Table,
}

impl ResiduatedSemigroup {
    /// Assembles the structure after checking dimensions only.
    pub fn new(poset: FinitePoset, compose: Table, lres: Table, rres: Table) -> Result<Self> {
        let n = poset.size();
        for (name, t) in [("composition", &compose), ("left residual", &lres), ("right residual", &rres)] {
            if t.size() != n {
                return Err(Error::MalformedInput(format!("{name} table has size {}, order has size {n}", t.size())));
            }
        }
        Ok(ResiduatedSemigroup { poset, compose, lres, rres })
    }

    /// Builds the structure from its order and composition, deriving both residuals.
    pub fn from_compose(poset: FinitePoset, compose: Table) -> Result<Self> {
        if compose.size() != poset.size() {
            return Err(Error::MalformedInput("composition and order sizes differ".into()));
        }
        let (lres, rres) = derive_residuals(&compose, &poset)?;
        Ok(ResiduatedSemigroup { poset, compose, lres, rres })
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.poset.size()
    }

    #[inline]
    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    #[inline]
    pub fn compose(&self, a: usize, b: usize) -> usize {
        self.compose.get(a, b)
    }

    /// `a\c`
    #[inline]
    pub fn lres(&self, a: usize, c: usize) -> usize {
        self.lres.get(a, c)
    }

    /// `c/b`
    #[inline]
    pub fn rres(&self, c: usize, b: usize) -> usize {
        self.rres.get(c, b)
    }

    pub fn compose_table(&self) -> &Table {
        &self.compose
    }

    pub fn lres_table(&self) -> &Table {
        &self.lres
    }

    pub fn rres_table(&self) -> &Table {
        &self.rres
    }

    pub fn validate(&self, cap: usize) -> ValidationReport {
        let n = self.size();
        let mut report = self.poset.validate(cap);
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
            for b in self.poset.up_set(a).iter() {
                for c in 0..n {
                    report.check(self.leq(self.compose(a, c), self.compose(b, c)), "monotone-left", &[a, b, c]);
                    report.check(self.leq(self.compose(c, a), self.compose(c, b)), "monotone-right", &[a, b, c]);
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let mid = self.leq(self.compose(a, b), c);
                    let left = self.leq(b, self.lres(a, c));
                    let right = self.leq(a, self.rres(c, b));
                    report.check(left == mid && mid == right, "adjunction", &[a, b, c]);
                }
            }
        }
        report
    }

    pub(crate) fn relabel(&self, perm: &[usize]) -> ResiduatedSemigroup {
        ResiduatedSemigroup {
            poset: self.poset.relabel(perm),
            compose: self.compose.relabel(perm),
            lres: self.lres.relabel(perm),
            rres: self.rres.relabel(perm),
        }
    }
}

/// Validates with the default per-law witness cap.
pub fn validate_residuated_semigroup(rs: &ResiduatedSemigroup) -> ValidationReport {
    rs.validate(DEFAULT_WITNESS_CAP)
}

/// Residual tables as maxima: `a\c = max{b : a;b <= c}`, `c/b = max{a : a;b <= c}`.
pub fn derive_residuals(compose: &Table, leq: &FinitePoset) -> Result<(Table, Table)> {
    let n = compose.size();
    if leq.size() != n {
        return Err(Error::MalformedInput("composition and order sizes differ".into()));
    }
    let mut lres = Table::from_fn(n, |_, _| 0);
    let mut rres = Table::from_fn(n, |_, _| 0);
    for a in 0..n {
        for c in 0..n {
            let below = (0..n).filter(|&b| leq.leq(compose.get(a, b), c)).collect();
            let m = leq.maximum(below).ok_or(Error::NotResiduated { side: ResidualSide::Left, first: a, second: c })?;
            lres.set(a, c, m);
        }
    }
    for c in 0..n {
        for b in 0..n {
            let below = (0..n).filter(|&a| leq.leq(compose.get(a, b), c)).collect();
            let m =
                leq.maximum(below).ok_or(Error::NotResiduated { side: ResidualSide::Right, first: c, second: b })?;
            rres.set(c, b, m);
        }
    }
    Ok((lres, rres))
}
