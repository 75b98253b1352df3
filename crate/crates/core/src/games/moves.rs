use alloc::format;
use alloc::vec::Vec;

use super::network::Prenetwork;
use crate::algebra::JoinSemilatticeSemigroup;
use crate::bits::ElementSet;
use crate::error::{Error, Result};

/// A move of the universal player.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Move {
    /// `b ∈ l(x, y)`, `c ∈ l(y, z)`: `b;c` joins `l(x, z)`.
    Composition { x: usize, y: usize, z: usize, b: usize, c: usize },
    /// `c ∈ l(x, y)`, `c <= d;e`: a node `z` with `d ∈ l(x, z)`, `e ∈ l(z, y)` is demanded.
    Witness { x: usize, y: usize, d: usize, e: usize, c: usize },
    /// `c + d ∈ l(x, y)`: one of `c`, `d` must join `l(x, y)`.
    Join { x: usize, y: usize, c: usize, d: usize },
}

/// Identifies one answer of the existential player to a move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Reply {
    /// The only answer to a composition move.
    Forced,
    /// Witness node; the index equal to the node count is the fresh node.
    At(usize),
    /// The element added by a join answer.
    Pick(usize),
}

/// How much of the definitional move list is kept.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pruning {
    /// Every move satisfying the side conditions, duplicates included.
    None,
    /// Duplicates and moves with an answer that leaves the position unchanged are dropped.
    #[default]
    Absorbed,
    /// As `Absorbed`, also dropping moves dominated by a move that adds smaller
    /// elements to the same labels.
    Dominance,
}

/// Precomputed order data for repeated move generation over one algebra.
#[derive(Debug, Clone)]
pub(crate) struct Arena<'a> {
    pub alg: &'a JoinSemilatticeSemigroup,
    pub up: Vec<ElementSet>,
    /// `factors[k]` lists the pairs `(d, e)` with `d;e = k`.
    pub factors: Vec<Vec<(usize, usize)>>,
    /// `summands[k]` lists the pairs `(c, d)` with `c <= d` by index and `c + d = k`.
    pub summands: Vec<Vec<(usize, usize)>>,
}

impl<'a> Arena<'a> {
    pub fn new(alg: &'a JoinSemilatticeSemigroup) -> Arena<'a> {
        let n = alg.size();
        let mut factors = alloc::vec![Vec::new(); n];
        let mut summands = alloc::vec![Vec::new(); n];
        for a in 0..n {
            for b in 0..n {
                factors[alg.compose(a, b)].push((a, b));
                if a <= b {
                    summands[alg.join(a, b)].push((a, b));
                }
            }
        }
        Arena { alg, up: alg.up_sets(), factors, summands }
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    #[cfg(test)]
    pub fn up_close(&self, s: ElementSet) -> ElementSet {
        super::network::up_close_with(&self.up, s)
    }

    pub fn moves(&self, p: &Prenetwork, pruning: Pruning) -> Vec<Move> {
        let mut out = Vec::new();
        self.composition_moves(p, pruning, &mut out);
        self.join_moves(p, pruning, &mut out);
        self.witness_moves(p, pruning, &mut out);
        out
    }

    fn composition_moves(&self, p: &Prenetwork, pruning: Pruning, out: &mut Vec<Move>) {
        let v = p.nodes();
        for x in 0..v {
            for z in 0..v {
                let target = p.label(x, z);
                let start = out.len();
                let mut seen = ElementSet::EMPTY;
                for y in 0..v {
                    let (l1, l2) = (p.label(x, y), p.label(y, z));
                    if l1.is_empty() || l2.is_empty() {
                        continue;
                    }
                    for b in l1.iter() {
                        for c in l2.iter() {
                            let k = self.alg.compose(b, c);
                            if pruning != Pruning::None && (target.contains(k) || seen.contains(k)) {
                                continue;
                            }
                            seen.insert(k);
                            out.push(Move::Composition { x, y, z, b, c });
                        }
                    }
                }
                if pruning == Pruning::Dominance {
                    // Keep one move per product that is minimal among the new products.
                    let minimal: ElementSet =
                        seen.iter().filter(|&k| !seen.iter().any(|j| j != k && self.leq(j, k))).collect();
                    let mut kept = 0;
                    for i in start..out.len() {
                        if let Move::Composition { b, c, .. } = out[i] {
                            if minimal.contains(self.alg.compose(b, c)) {
                                out[start + kept] = out[i];
                                kept += 1;
                            }
                        }
                    }
                    out.truncate(start + kept);
                }
            }
        }
    }

    fn join_moves(&self, p: &Prenetwork, pruning: Pruning, out: &mut Vec<Move>) {
        let n = self.alg.size();
        for (x, y) in p.edges() {
            let l = p.label(x, y);
            let start = out.len();
            if pruning == Pruning::None {
                for c in 0..n {
                    for d in 0..n {
                        if l.contains(self.alg.join(c, d)) {
                            out.push(Move::Join { x, y, c, d });
                        }
                    }
                }
                continue;
            }
            for k in l.iter() {
                for &(c, d) in &self.summands[k] {
                    if !l.contains(c) && !l.contains(d) {
                        out.push(Move::Join { x, y, c, d });
                    }
                }
            }
            if pruning == Pruning::Dominance {
                let pairs: Vec<(usize, usize)> = out[start..]
                    .iter()
                    .map(|m| match *m {
                        Move::Join { c, d, .. } => (c, d),
                        _ => unreachable!(),
                    })
                    .collect();
                let below = |(c1, d1): (usize, usize), (c, d): (usize, usize)| {
                    (self.leq(c1, c) && self.leq(d1, d)) || (self.leq(c1, d) && self.leq(d1, c))
                };
                out.truncate(start);
                for &q in &pairs {
                    if !pairs.iter().any(|&r| r != q && below(r, q) && !below(q, r)) {
                        out.push(Move::Join { x, y, c: q.0, d: q.1 });
                    }
                }
            }
        }
    }

    fn witness_moves(&self, p: &Prenetwork, pruning: Pruning, out: &mut Vec<Move>) {
        let n = self.alg.size();
        let v = p.nodes();
        for (x, y) in p.edges() {
            let l = p.label(x, y);
            if pruning == Pruning::None {
                for c in l.iter() {
                    for d in 0..n {
                        for e in 0..n {
                            if self.leq(c, self.alg.compose(d, e)) {
                                out.push(Move::Witness { x, y, d, e, c });
                            }
                        }
                    }
                }
                continue;
            }
            // `l` is upward closed, so `c <= d;e` for some `c ∈ l` iff `d;e ∈ l`.
            let start = out.len();
            for k in l.iter() {
                for &(d, e) in &self.factors[k] {
                    if (0..v).any(|z| p.label(x, z).contains(d) && p.label(z, y).contains(e)) {
                        continue;
                    }
                    out.push(Move::Witness { x, y, d, e, c: k });
                }
            }
            if pruning == Pruning::Dominance {
                let pairs: Vec<(usize, usize, usize)> = out[start..]
                    .iter()
                    .map(|m| match *m {
                        Move::Witness { d, e, c, .. } => (d, e, c),
                        _ => unreachable!(),
                    })
                    .collect();
                out.truncate(start);
                for &(d, e, c) in &pairs {
                    let dominated =
                        pairs.iter().any(|&(d1, e1, _)| (d1, e1) != (d, e) && self.leq(d1, d) && self.leq(e1, e));
                    if !dominated {
                        out.push(Move::Witness { x, y, d, e, c });
                    }
                }
            }
        }
    }

    /// Whether `m` satisfies the side conditions of its kind in `p`.
    pub fn is_legal(&self, p: &Prenetwork, m: &Move) -> bool {
        let v = p.nodes();
        let n = self.alg.size();
        match *m {
            Move::Composition { x, y, z, b, c } => {
                x < v && y < v && z < v && b < n && c < n && p.label(x, y).contains(b) && p.label(y, z).contains(c)
            }
            Move::Witness { x, y, d, e, c } => {
                x < v
                    && y < v
                    && d < n
                    && e < n
                    && c < n
                    && p.label(x, y).contains(c)
                    && self.leq(c, self.alg.compose(d, e))
            }
            Move::Join { x, y, c, d } => {
                x < v && y < v && c < n && d < n && p.label(x, y).contains(self.alg.join(c, d))
            }
        }
    }

    /// Every answer to a legal move, tagged. Witness answers list the old
    /// nodes in order, then the fresh node.
    pub fn replies(&self, p: &Prenetwork, m: &Move) -> Vec<(Reply, Prenetwork)> {
        match *m {
            Move::Composition { x, z, b, c, .. } => {
                let mut q = p.clone();
                q.extend_closed(x, z, self.up[self.alg.compose(b, c)]);
                alloc::vec![(Reply::Forced, q)]
            }
            Move::Witness { x, y, d, e, .. } => {
                let v = p.nodes();
                let mut out = Vec::with_capacity(v + 1);
                for z in 0..=v {
                    let mut q = p.clone();
                    if z == v {
                        q.add_node();
                    }
                    q.extend_closed(x, z, self.up[d]);
                    q.extend_closed(z, y, self.up[e]);
                    out.push((Reply::At(z), q));
                }
                out
            }
            Move::Join { x, y, c, d } => {
                let mut out = Vec::with_capacity(2);
                let picks = [c, d];
                for &k in &picks[..if c == d { 1 } else { 2 }] {
                    let mut q = p.clone();
                    q.extend_closed(x, y, self.up[k]);
                    out.push((Reply::Pick(k), q));
                }
                out
            }
        }
    }
}

/// The universal player's moves in `p` with duplicates and absorbed moves removed.
pub fn legal_forall_moves(p: &Prenetwork, alg: &JoinSemilatticeSemigroup) -> Vec<Move> {
    Arena::new(alg).moves(p, Pruning::Absorbed)
}

pub fn forall_moves(p: &Prenetwork, alg: &JoinSemilatticeSemigroup, pruning: Pruning) -> Vec<Move> {
    Arena::new(alg).moves(p, pruning)
}

/// The positions the existential player may answer `m` with.
pub fn exists_responses(p: &Prenetwork, m: &Move, alg: &JoinSemilatticeSemigroup) -> Result<Vec<Prenetwork>> {
    Ok(tagged_responses(p, m, alg)?.into_iter().map(|(_, q)| q).collect())
}

pub fn tagged_responses(p: &Prenetwork, m: &Move, alg: &JoinSemilatticeSemigroup) -> Result<Vec<(Reply, Prenetwork)>> {
    let arena = Arena::new(alg);
    if !arena.is_legal(p, m) {
        return Err(Error::IllegalMove(format!("{m:?}")));
    }
    Ok(arena.replies(p, m))
}
