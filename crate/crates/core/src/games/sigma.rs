use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::formula::Formula;
use crate::algebra::Term;

/// A finite network whose labels are lists of terms. Node `0` and node `1`
/// play the roles of `x0` and `x1`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TermNetwork {
    nodes: usize,
    labels: BTreeMap<(usize, usize), Vec<Term>>,
}

impl TermNetwork {
    pub fn new(nodes: usize) -> TermNetwork {
        TermNetwork { nodes, labels: BTreeMap::new() }
    }

    /// Two nodes with `l(x0, x1) = {t}`.
    pub fn initial(t: Term) -> TermNetwork {
        let mut n = TermNetwork::new(2);
        n.add(0, 1, t);
        n
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn label(&self, x: usize, y: usize) -> &[Term] {
        self.labels.get(&(x, y)).map_or(&[], Vec::as_slice)
    }

    /// Adds `t` to `l(x, y)`, creating nodes as needed.
    pub fn add(&mut self, x: usize, y: usize, t: Term) {
        self.nodes = self.nodes.max(x + 1).max(y + 1);
        self.labels.entry((x, y)).or_default().push(t);
    }

    fn with(&self, additions: &[(usize, usize, &Term)]) -> TermNetwork {
        let mut n = self.clone();
        for (x, y, t) in additions {
            n.add(*x, *y, (*t).clone());
        }
        n
    }

    fn max_var(&self) -> Option<u32> {
        self.labels.values().flatten().filter_map(Term::max_var).max()
    }

    fn edges(&self) -> Vec<((usize, usize), Vec<Term>)> {
        self.labels.iter().filter(|(_, ts)| !ts.is_empty()).map(|(k, ts)| (*k, ts.clone())).collect()
    }
}

/// The sentence stating that the existential player survives `n` more rounds
/// from `network` when the goal element is the value of `v{goal_var}`.
pub fn emit_sigma(n: usize, network: &TermNetwork, goal_var: u32) -> Formula {
    let next = network.max_var().map_or(0, |m| m + 1).max(goal_var + 1);
    let mut fresh = next;
    sigma(n, network, &Term::var(goal_var), &mut fresh)
}

fn sigma(n: usize, net: &TermNetwork, goal: &Term, fresh: &mut u32) -> Formula {
    if n == 0 {
        return Formula::and(
            net.label(0, 1).iter().map(|t| Formula::not(Formula::le(t.clone(), goal.clone()))).collect(),
        );
    }
    let mut clauses = Vec::new();
    let v = net.nodes();
    for x in 0..v {
        for y in 0..v {
            for z in 0..v {
                for t1 in net.label(x, y) {
                    for t2 in net.label(y, z) {
                        let product = Term::semi(t1.clone(), t2.clone());
                        clauses.push(sigma(n - 1, &net.with(&[(x, z, &product)]), goal, fresh));
                    }
                }
            }
        }
    }
    for ((x, y), terms) in net.edges() {
        for t in &terms {
            let (u1, u2) = (*fresh, *fresh + 1);
            *fresh += 2;
            let (a, b) = (Term::var(u1), Term::var(u2));
            let options = (0..=v).map(|w| sigma(n - 1, &net.with(&[(x, w, &a), (w, y, &b)]), goal, fresh)).collect();
            clauses.push(Formula::forall(
                u1,
                Formula::forall(
                    u2,
                    Formula::implies(Formula::le(t.clone(), Term::semi(a.clone(), b.clone())), Formula::or(options)),
                ),
            ));
        }
    }
    for ((x, y), terms) in net.edges() {
        for t in &terms {
            let (u1, u2) = (*fresh, *fresh + 1);
            *fresh += 2;
            let (a, b) = (Term::var(u1), Term::var(u2));
            let options = vec![
                sigma(n - 1, &net.with(&[(x, y, &a)]), goal, fresh),
                sigma(n - 1, &net.with(&[(x, y, &b)]), goal, fresh),
            ];
            clauses.push(Formula::forall(
                u1,
                Formula::forall(
                    u2,
                    Formula::implies(Formula::le(t.clone(), Term::plus(a.clone(), b.clone())), Formula::or(options)),
                ),
            ));
        }
    }
    Formula::and(clauses)
}

/// `forall v0. forall v1. ~(v0 <= v1) -> sigma_n(N_v0, v1)`.
pub fn emit_rho(n: usize) -> Formula {
    let body = emit_sigma(n, &TermNetwork::initial(Term::var(0)), 1);
    Formula::forall(
        0,
        Formula::forall(1, Formula::implies(Formula::not(Formula::le(Term::var(0), Term::var(1))), body)),
    )
}
