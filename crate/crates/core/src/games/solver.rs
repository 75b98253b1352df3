use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::moves::{Arena, Move, Pruning, Reply};
use super::network::{all_goals, initial_network, GoalPair, Prenetwork};
use crate::algebra::{permutations, JoinSemilatticeSemigroup, DEFAULT_WITNESS_CAP};
use crate::error::{Error, Result};

pub const DEFAULT_DEPTH_CAP: usize = 6;

/// Memo keys are minimised over relabellings of the non-goal nodes up to this many of them.
const CANONICAL_FREE_NODES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GameConfig {
    pub depth_cap: usize,
    pub pruning: Pruning,
    pub memo: bool,
    /// Refuse algebras that fail the axioms. When off, only the join table
    /// has to be a semilattice, so the rules can be replayed on arbitrary
    /// composition tables.
    pub check_algebra: bool,
}

impl Default for GameConfig {
    fn default() -> Self {
        GameConfig { depth_cap: DEFAULT_DEPTH_CAP, pruning: Pruning::Dominance, memo: true, check_algebra: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Winner {
    Exists,
    Forall,
}

/// A strategy of the universal player: a move for every position reached,
/// with one subtree per answer of the existential player.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Certificate {
    /// The goal element already labels `(x0, x1)`.
    Won,
    Play {
        mv: Move,
        replies: Vec<(Reply, Certificate)>,
    },
}

impl Certificate {
    /// Number of `Play` nodes.
    pub fn moves(&self) -> usize {
        match self {
            Certificate::Won => 0,
            Certificate::Play { replies, .. } => 1 + replies.iter().map(|(_, c)| c.moves()).sum::<usize>(),
        }
    }

    pub fn height(&self) -> usize {
        match self {
            Certificate::Won => 0,
            Certificate::Play { replies, .. } => 1 + replies.iter().map(|(_, c)| c.height()).max().unwrap_or(0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub goal: GoalPair,
    pub depth: usize,
    pub winner: Winner,
    /// Present exactly when the universal player wins.
    pub certificate: Option<Certificate>,
}

#[derive(Debug, Clone, Copy, Default)]
struct MemoEntry {
    /// Largest number of rounds the existential player is known to survive.
    exists: Option<usize>,
    /// Smallest number of rounds known to suffice for the universal player.
    forall: Option<usize>,
}

/// Bounded minimax for one goal of one algebra.
#[derive(Debug)]
pub struct GameSolver<'a> {
    arena: Arena<'a>,
    config: GameConfig,
    goal: GoalPair,
    memo: BTreeMap<Vec<u64>, MemoEntry>,
    perms: Vec<Vec<Vec<usize>>>,
    positions: u64,
}

impl<'a> GameSolver<'a> {
    pub fn new(alg: &'a JoinSemilatticeSemigroup, goal: GoalPair, config: GameConfig) -> Result<GameSolver<'a>> {
        check_algebra(alg, config)?;
        let goal = goal.check(alg)?;
        let perms = (0..=CANONICAL_FREE_NODES).map(permutations).collect();
        Ok(GameSolver { arena: Arena::new(alg), config, goal, memo: BTreeMap::new(), perms, positions: 0 })
    }

    /// Positions expanded so far, across calls.
    pub fn positions(&self) -> u64 {
        self.positions
    }

    pub fn solve(&mut self, depth: usize) -> Result<Verdict> {
        if depth > self.config.depth_cap {
            return Err(Error::DepthCapExceeded { depth, cap: self.config.depth_cap });
        }
        let start = initial_network(self.arena.alg, self.goal)?;
        let (winner, certificate) = if self.forall_wins(&start, depth) {
            (Winner::Forall, Some(self.certificate(&start, depth)?))
        } else {
            (Winner::Exists, None)
        };
        Ok(Verdict { goal: self.goal, depth, winner, certificate })
    }

    /// Whether the universal player can force the goal element into
    /// `l(x0, x1)` from `p` within `rounds` further rounds.
    pub fn forall_wins(&mut self, p: &Prenetwork, rounds: usize) -> bool {
        let b = self.goal.b.0;
        if p.label(0, 1).contains(b) {
            return true;
        }
        if rounds == 0 {
            return false;
        }
        if rounds == 1 && self.config.memo {
            return self.one_round(p);
        }
        let key = if self.config.memo { Some(self.key(p)) } else { None };
        if let Some(e) = key.as_ref().and_then(|k| self.memo.get(k)) {
            if e.exists.is_some_and(|d| d >= rounds) {
                return false;
            }
            if e.forall.is_some_and(|d| d <= rounds) {
                return true;
            }
        }
        self.positions += 1;
        let moves = self.arena.moves(p, self.config.pruning);
        let mut won = false;
        for m in &moves {
            let replies = self.arena.replies(p, m);
            if replies.iter().all(|(_, q)| self.forall_wins(q, rounds - 1)) {
                won = true;
                break;
            }
        }
        if let Some(k) = key {
            let e = self.memo.entry(k).or_default();
            if won {
                e.forall = Some(e.forall.map_or(rounds, |d| d.min(rounds)));
            } else {
                e.exists = Some(e.exists.map_or(rounds, |d| d.max(rounds)));
            }
        }
        won
    }

    /// With one round left only a composition into `(x0, x1)` can win: a
    /// witness move has a fresh-node answer that leaves `l(x0, x1)` alone,
    /// and a join `c + d` with both `c, d <= b` would put `b` in the label already.
    fn one_round(&self, p: &Prenetwork) -> bool {
        let b = self.goal.b.0;
        let alg = self.arena.alg;
        (0..p.nodes()).any(|y| {
            let l2 = p.label(y, 1);
            !l2.is_empty() && p.label(0, y).iter().any(|s| l2.iter().any(|t| self.arena.leq(alg.compose(s, t), b)))
        })
    }

    fn key(&self, p: &Prenetwork) -> Vec<u64> {
        let v = p.nodes();
        let encode = |perm: &[usize]| -> Vec<u64> {
            // perm maps new free position -> old node.
            let old = |i: usize| if i < 2 { i } else { perm[i - 2] + 2 };
            let mut out = Vec::with_capacity(v * v + 1);
            out.push(v as u64);
            for x in 0..v {
                for y in 0..v {
                    out.push(p.label(old(x), old(y)).bits());
                }
            }
            out
        };
        let free = v - 2;
        if free <= CANONICAL_FREE_NODES {
            self.perms[free].iter().map(|perm| encode(perm)).min().expect("at least one permutation")
        } else {
            let id: Vec<usize> = (0..free).collect();
            encode(&id)
        }
    }

    fn certificate(&mut self, p: &Prenetwork, rounds: usize) -> Result<Certificate> {
        if p.label(0, 1).contains(self.goal.b.0) {
            return Ok(Certificate::Won);
        }
        if rounds > 0 {
            for m in self.arena.moves(p, self.config.pruning) {
                let answers = self.arena.replies(p, &m);
                if answers.iter().all(|(_, q)| self.forall_wins(q, rounds - 1)) {
                    let mut replies = Vec::with_capacity(answers.len());
                    for (tag, q) in answers {
                        replies.push((tag, self.certificate(&q, rounds - 1)?));
                    }
                    return Ok(Certificate::Play { mv: m, replies });
                }
            }
        }
        Err(Error::Internal(format!("no winning move found with {rounds} rounds left")))
    }
}

fn check_algebra(alg: &JoinSemilatticeSemigroup, config: GameConfig) -> Result<()> {
    if alg.order().is_none() {
        return Err(Error::InvalidSemilattice);
    }
    if config.check_algebra {
        let report = alg.validate(DEFAULT_WITNESS_CAP);
        if !report.ok() {
            return Err(Error::InvalidAlgebra(report));
        }
    }
    Ok(())
}

/// Solves one goal at the given depth with the default configuration.
pub fn solve_goal(alg: &JoinSemilatticeSemigroup, depth: usize, goal: GoalPair) -> Result<Verdict> {
    GameSolver::new(alg, goal, GameConfig::default())?.solve(depth)
}

/// Solves every goal of `alg` at the given depth.
pub fn solve_game(alg: &JoinSemilatticeSemigroup, depth: usize) -> Result<BTreeMap<GoalPair, Verdict>> {
    solve_game_with(alg, depth, GameConfig::default())
}

pub fn solve_game_with(
    alg: &JoinSemilatticeSemigroup,
    depth: usize,
    config: GameConfig,
) -> Result<BTreeMap<GoalPair, Verdict>> {
    if depth > config.depth_cap {
        return Err(Error::DepthCapExceeded { depth, cap: config.depth_cap });
    }
    check_algebra(alg, config)?;
    all_goals(alg).into_iter().map(|g| Ok((g, GameSolver::new(alg, g, config)?.solve(depth)?))).collect()
}

/// Replays `cert` from the initial network of `goal` against every answer of
/// the existential player, allowing at most `depth` rounds.
pub fn verify_certificate(
    alg: &JoinSemilatticeSemigroup,
    goal: GoalPair,
    depth: usize,
    cert: &Certificate,
) -> Result<bool> {
    let arena = Arena::new(alg);
    let start = initial_network(alg, goal)?;
    replay(&arena, goal.b.0, &start, depth, cert)
}

fn replay(arena: &Arena<'_>, b: usize, p: &Prenetwork, rounds: usize, cert: &Certificate) -> Result<bool> {
    let (mv, replies) = match cert {
        Certificate::Won => return Ok(p.label(0, 1).contains(b)),
        Certificate::Play { mv, replies } => (mv, replies),
    };
    if rounds == 0 || !arena.is_legal(p, mv) {
        return Ok(false);
    }
    let answers = arena.replies(p, mv);
    for (i, (tag, _)) in replies.iter().enumerate() {
        if replies[..i].iter().any(|(t, _)| t == tag) {
            return Err(Error::MalformedCertificate(format!("reply {tag:?} appears twice")));
        }
        if !answers.iter().any(|(t, _)| t == tag) {
            return Err(Error::MalformedCertificate(format!("reply {tag:?} is not an answer to {mv:?}")));
        }
    }
    for (tag, q) in &answers {
        let Some((_, child)) = replies.iter().find(|(t, _)| t == tag) else {
            return Ok(false);
        };
        if !replay(arena, b, q, rounds - 1, child)? {
            return Ok(false);
        }
    }
    Ok(true)
}
