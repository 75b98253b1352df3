use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use super::jsl::JoinSemilatticeSemigroup;
use super::ElementId;
use crate::error::{Error, Result};

/// Terms over variables `v0, v1, ..` built with `+` and `;`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(u32),
    Plus(Box<Term>, Box<Term>),
    Semi(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(i: u32) -> Term {
        Term::Var(i)
    }

    pub fn plus(a: Term, b: Term) -> Term {
        Term::Plus(Box::new(a), Box::new(b))
    }

    pub fn semi(a: Term, b: Term) -> Term {
        Term::Semi(Box::new(a), Box::new(b))
    }

    pub fn vars(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<u32>) {
        match self {
            Term::Var(i) => {
                out.insert(*i);
            }
            Term::Plus(a, b) | Term::Semi(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn max_var(&self) -> Option<u32> {
        self.vars().last().copied()
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::Plus(a, b) | Term::Semi(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Evaluates against a lookup that may leave variables unbound.
    pub fn eval_with(&self, alg: &JoinSemilatticeSemigroup, lookup: &impl Fn(u32) -> Option<usize>) -> Result<usize> {
        Ok(match self {
            Term::Var(i) => lookup(*i).ok_or(Error::UnboundVariable(*i))?,
            Term::Plus(a, b) => alg.join(a.eval_with(alg, lookup)?, b.eval_with(alg, lookup)?),
            Term::Semi(a, b) => alg.compose(a.eval_with(alg, lookup)?, b.eval_with(alg, lookup)?),
        })
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "v{i}"),
            Term::Plus(a, b) => write!(f, "({a} + {b})"),
            Term::Semi(a, b) => write!(f, "({a} ; {b})"),
        }
    }
}

/// Assignment of elements to variables, indexed by variable number.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Valuation(Vec<Option<ElementId>>);

impl Valuation {
    pub fn new() -> Self {
        Valuation(Vec::new())
    }

    pub fn bind(&mut self, var: u32, value: ElementId) {
        let i = var as usize;
        if self.0.len() <= i {
            self.0.resize(i + 1, None);
        }
        self.0[i] = Some(value);
    }

    pub fn unbind(&mut self, var: u32) {
        if let Some(slot) = self.0.get_mut(var as usize) {
            *slot = None;
        }
    }

    pub fn get(&self, var: u32) -> Option<ElementId> {
        self.0.get(var as usize).copied().flatten()
    }
}

impl FromIterator<(u32, ElementId)> for Valuation {
    fn from_iter<I: IntoIterator<Item = (u32, ElementId)>>(iter: I) -> Self {
        let mut v = Valuation::new();
        for (k, e) in iter {
            v.bind(k, e);
        }
        v
    }
}

pub fn eval_term(t: &Term, v: &Valuation, alg: &JoinSemilatticeSemigroup) -> Result<ElementId> {
    t.eval_with(alg, &|i| v.get(i).map(ElementId::index)).map(ElementId)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn variable_and_idempotence() {
        let alg = fixtures::two_chain_max_jsl();
        let v: Valuation = [(0, ElementId(1))].into_iter().collect();
        assert_eq!(eval_term(&Term::var(0), &v, &alg), Ok(ElementId(1)));
        assert_eq!(eval_term(&Term::plus(Term::var(0), Term::var(0)), &v, &alg), Ok(ElementId(1)));
    }

    #[test]
    fn mixed_term_on_max_algebra() {
        let alg = fixtures::two_chain_max_jsl();
        let v: Valuation = [(0, ElementId(0)), (1, ElementId(1))].into_iter().collect();
        let t = Term::plus(Term::semi(Term::var(0), Term::var(1)), Term::var(0));
        assert_eq!(eval_term(&t, &v, &alg), Ok(ElementId(1)));
    }

    #[test]
    fn unbound_variable() {
        let alg = fixtures::one_element_jsl();
        assert_eq!(eval_term(&Term::var(3), &Valuation::new(), &alg), Err(Error::UnboundVariable(3)));
    }

    fn arb_term(vars: u32) -> impl Strategy<Value = Term> {
        let leaf = (0..vars).prop_map(Term::Var);
        leaf.prop_recursive(4, 16, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::plus(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Term::semi(a, b)),
            ]
        })
    }

    /// Rewrites every `+` node with a commuted / reassociated equivalent.
    fn ac_rewrite(t: &Term) -> Term {
        match t {
            Term::Var(_) => t.clone(),
            Term::Semi(a, b) => Term::semi(ac_rewrite(a), ac_rewrite(b)),
            Term::Plus(a, b) => match (ac_rewrite(a), ac_rewrite(b)) {
                (Term::Plus(x, y), c) => Term::plus(*x, Term::plus(*y, c)),
                (a, b) => Term::plus(b, a),
            },
        }
    }

    proptest! {
        #[test]
        fn plus_is_ac_invariant(t in arb_term(3), vals in proptest::collection::vec(0usize..3, 3), which in 0usize..3) {
            let algs = [fixtures::two_chain_max_jsl(), fixtures::three_chain_max_min_jsl(), fixtures::one_element_jsl()];
            let alg = &algs[which];
            let v: Valuation = vals.iter().enumerate().map(|(i, &e)| (i as u32, ElementId(e % alg.size()))).collect();
            prop_assert_eq!(eval_term(&t, &v, alg), eval_term(&ac_rewrite(&t), &v, alg));
        }
    }
}
