use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{ElementId, JoinSemilatticeSemigroup, ValidationReport};
use crate::bits::ElementSet;
use crate::error::{Error, Result};

/// A finite directed graph whose edges carry upward-closed element sets.
///
/// Labels are stored for every ordered node pair; an edge is a pair with a
/// non-empty label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prenetwork {
    nodes: usize,
    labels: Vec<ElementSet>,
}

impl Prenetwork {
    pub fn empty() -> Prenetwork {
        Prenetwork { nodes: 0, labels: Vec::new() }
    }

    pub fn with_nodes(nodes: usize) -> Prenetwork {
        Prenetwork { nodes, labels: vec![ElementSet::EMPTY; nodes * nodes] }
    }

    /// Builds a prenetwork from explicit labels, checking indices and upward closure.
    pub fn from_labels(
        alg: &JoinSemilatticeSemigroup,
        nodes: usize,
        labels: impl IntoIterator<Item = ((usize, usize), ElementSet)>,
    ) -> Result<Prenetwork> {
        let mut p = Prenetwork::with_nodes(nodes);
        let up = alg.up_sets();
        let carrier = ElementSet::full(alg.size());
        for ((x, y), s) in labels {
            if x >= nodes || y >= nodes {
                return Err(Error::MalformedPrenetwork(format!("edge ({x}, {y}) outside {nodes} nodes")));
            }
            if !s.is_subset(carrier) {
                return Err(Error::MalformedPrenetwork(format!("label of ({x}, {y}) names unknown elements")));
            }
            if up_close_with(&up, s) != s {
                return Err(Error::MalformedPrenetwork(format!("label of ({x}, {y}) is not upward closed")));
            }
            let slot = x * nodes + y;
            p.labels[slot] = p.labels[slot].union(s);
        }
        Ok(p)
    }

    #[inline]
    pub fn nodes(&self) -> usize {
        self.nodes
    }

    #[inline]
    pub fn label(&self, x: usize, y: usize) -> ElementSet {
        self.labels[x * self.nodes + y]
    }

    /// Ordered pairs with a non-empty label.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.nodes;
        (0..n * n).filter(move |&k| !self.labels[k].is_empty()).map(move |k| (k / n, k % n))
    }

    /// Appends an isolated node and returns its index.
    pub fn add_node(&mut self) -> usize {
        let n = self.nodes;
        let mut labels = vec![ElementSet::EMPTY; (n + 1) * (n + 1)];
        for x in 0..n {
            labels[x * (n + 1)..x * (n + 1) + n].copy_from_slice(&self.labels[x * n..x * n + n]);
        }
        self.nodes = n + 1;
        self.labels = labels;
        n
    }

    /// Unions an already upward-closed set into a label.
    pub(crate) fn extend_closed(&mut self, x: usize, y: usize, s: ElementSet) {
        let k = x * self.nodes + y;
        self.labels[k] = self.labels[k].union(s);
    }

    /// Unions the upward closure of `s` into `l(x, y)`.
    pub fn extend(&mut self, alg: &JoinSemilatticeSemigroup, x: usize, y: usize, s: ElementSet) {
        let up = alg.up_sets();
        self.extend_closed(x, y, up_close_with(&up, s));
    }

    /// The same prenetwork with nodes renamed by `perm` (old -> new).
    pub fn relabel(&self, perm: &[usize]) -> Prenetwork {
        let n = self.nodes;
        let mut labels = vec![ElementSet::EMPTY; n * n];
        for x in 0..n {
            for y in 0..n {
                labels[perm[x] * n + perm[y]] = self.labels[x * n + y];
            }
        }
        Prenetwork { nodes: n, labels }
    }
}

pub(crate) fn up_close_with(up: &[ElementSet], s: ElementSet) -> ElementSet {
    s.iter().fold(ElementSet::EMPTY, |acc, a| acc.union(up[a]))
}

/// A pair `a`, `b` with `a` not below `b`, attacked by the game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GoalPair {
    pub a: ElementId,
    pub b: ElementId,
}

impl GoalPair {
    pub fn new(a: usize, b: usize) -> GoalPair {
        GoalPair { a: ElementId(a), b: ElementId(b) }
    }

    pub fn check(self, alg: &JoinSemilatticeSemigroup) -> Result<GoalPair> {
        let (a, b) = (self.a.0, self.b.0);
        if a >= alg.size() || b >= alg.size() || alg.leq(a, b) {
            return Err(Error::InvalidGoal { a, b });
        }
        Ok(self)
    }
}

/// Every goal of `alg` in lexicographic order.
pub fn all_goals(alg: &JoinSemilatticeSemigroup) -> Vec<GoalPair> {
    let n = alg.size();
    (0..n).flat_map(|a| (0..n).map(move |b| GoalPair::new(a, b))).filter(|g| !alg.leq(g.a.0, g.b.0)).collect()
}

/// Nodes `x0 = 0`, `x1 = 1` and the single edge `(x0, x1)` labelled `↑a`.
pub fn initial_network(alg: &JoinSemilatticeSemigroup, goal: GoalPair) -> Result<Prenetwork> {
    let goal = goal.check(alg)?;
    let mut p = Prenetwork::with_nodes(2);
    p.extend(alg, 0, 1, ElementSet::singleton(goal.a.0));
    Ok(p)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkCheck {
    pub saturated: bool,
    pub coherent: bool,
    pub join_prime: bool,
    pub witnesses: ValidationReport,
}

impl NetworkCheck {
    pub fn is_network(&self) -> bool {
        self.saturated && self.coherent && self.join_prime
    }
}

/// Scans the three network conditions directly from their definitions.
pub fn check_network(p: &Prenetwork, alg: &JoinSemilatticeSemigroup) -> Result<NetworkCheck> {
    let n = alg.size();
    let up = alg.up_sets();
    let carrier = ElementSet::full(n);
    for (x, y) in p.edges() {
        let l = p.label(x, y);
        if !l.is_subset(carrier) || up_close_with(&up, l) != l {
            return Err(Error::MalformedPrenetwork(format!("label of ({x}, {y}) is not an upward-closed element set")));
        }
    }
    let v = p.nodes();
    let mut witnesses = ValidationReport::new();
    let (mut saturated, mut coherent, mut join_prime) = (true, true, true);
    for s in 0..v {
        for t in 0..v {
            let l = p.label(s, t);
            for a in 0..n {
                for b in 0..n {
                    if l.contains(alg.compose(a, b)) {
                        let found = (0..v).any(|w| p.label(s, w).contains(a) && p.label(w, t).contains(b));
                        saturated &= found;
                        witnesses.check(found, "saturation", &[s, t, a, b]);
                    }
                    if l.contains(alg.join(a, b)) {
                        let prime = l.contains(a) || l.contains(b);
                        join_prime &= prime;
                        witnesses.check(prime, "join-prime", &[s, t, a, b]);
                    }
                }
            }
            for w in 0..v {
                for a in l.iter() {
                    for b in p.label(t, w).iter() {
                        let ok = p.label(s, w).contains(alg.compose(a, b));
                        coherent &= ok;
                        witnesses.check(ok, "coherence", &[s, t, w, a, b]);
                    }
                }
            }
        }
    }
    Ok(NetworkCheck { saturated, coherent, join_prime, witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{fixtures, Table};

    #[test]
    fn empty_prenetwork_is_a_network() {
        let c = check_network(&Prenetwork::empty(), &fixtures::two_chain_max_jsl()).unwrap();
        assert!(c.saturated && c.coherent && c.join_prime);
    }

    #[test]
    fn one_element_self_loop() {
        // e;e = e: the loop itself witnesses saturation and coherence.
        let alg = fixtures::one_element_jsl();
        let p = Prenetwork::from_labels(&alg, 1, [((0, 0), ElementSet::singleton(0))]).unwrap();
        assert!(check_network(&p, &alg).unwrap().is_network());
        // A single edge between two distinct nodes has no path for e;e.
        let q = Prenetwork::from_labels(&alg, 2, [((0, 1), ElementSet::singleton(0))]).unwrap();
        let c = check_network(&q, &alg).unwrap();
        assert!(!c.saturated && c.join_prime);
        assert!(c.coherent);
    }

    #[test]
    fn join_prime_violation() {
        // Four-element Boolean lattice {0, p, q, 1} with ; = meet; label ↑1 = {1}
        // contains p + q but neither p nor q.
        let meet = |a: usize, b: usize| a & b;
        let alg = JoinSemilatticeSemigroup::new(Table::from_fn(4, meet), Table::from_fn(4, |a, b| a | b)).unwrap();
        let p = Prenetwork::from_labels(&alg, 2, [((0, 1), ElementSet::singleton(3))]).unwrap();
        let c = check_network(&p, &alg).unwrap();
        assert!(!c.join_prime);
        assert!(c.witnesses.violations.iter().any(|v| v.law == "join-prime" && v.witness == [0, 1, 1, 2]));
    }

    #[test]
    fn labels_must_be_up_closed() {
        let alg = fixtures::two_chain_max_jsl();
        let err = Prenetwork::from_labels(&alg, 2, [((0, 1), ElementSet::singleton(0))]).unwrap_err();
        assert!(matches!(err, Error::MalformedPrenetwork(_)));
    }

    #[test]
    fn initial_networks() {
        let alg = fixtures::two_chain_max_jsl();
        let p = initial_network(&alg, GoalPair::new(1, 0)).unwrap();
        assert_eq!(p.label(0, 1), ElementSet::singleton(1));
        assert_eq!(p.edges().count(), 1);
        assert_eq!(initial_network(&alg, GoalPair::new(0, 1)), Err(Error::InvalidGoal { a: 0, b: 1 }));
        assert!(all_goals(&fixtures::one_element_jsl()).is_empty());
    }

    #[test]
    fn add_node_keeps_labels() {
        let alg = fixtures::two_chain_max_jsl();
        let mut p = initial_network(&alg, GoalPair::new(1, 0)).unwrap();
        assert_eq!(p.add_node(), 2);
        assert_eq!(p.label(0, 1), ElementSet::singleton(1));
        assert_eq!(p.edges().collect::<Vec<_>>(), [(0, 1)]);
    }
}
