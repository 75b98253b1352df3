use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use super::moves::{Arena, Move, Pruning, Reply};
use super::network::{all_goals, initial_network, GoalPair, Prenetwork};
use super::solver::{solve_game_with, GameConfig, GameSolver, Winner};
use crate::algebra::{JoinSemilatticeSemigroup, ValidationReport, DEFAULT_WITNESS_CAP};
use crate::bits::BitMatrix;
use crate::error::{Error, Result};
use crate::relational::{rel_compose, FiniteBase, Rel, Representation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtractConfig {
    /// Largest number of nodes in any one goal network.
    pub node_budget: usize,
    /// Largest number of scheduled moves per goal network.
    pub round_budget: usize,
    /// Depth at which every goal must be an existential win before extraction starts.
    pub check_depth: usize,
    /// Rounds the solver looks ahead when the existential player picks an answer.
    pub lookahead: usize,
    /// Refuse algebras that fail the axioms before playing.
    pub check_algebra: bool,
}

impl ExtractConfig {
    pub fn new(node_budget: usize, round_budget: usize) -> ExtractConfig {
        ExtractConfig { node_budget, round_budget, check_depth: 2, lookahead: 1, check_algebra: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtractionStatus {
    /// The candidate satisfies every checked equation.
    Verified,
    /// Some equation fails on the finite approximation; the budgets may be too small.
    BudgetInconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extraction {
    pub representation: Representation,
    pub report: ValidationReport,
    pub status: ExtractionStatus,
    /// The final network for each goal, in goal order.
    pub networks: Vec<(GoalPair, Prenetwork)>,
    /// Every goal network ran out of obligations before the budgets did.
    pub saturated: bool,
}

/// Plays the existential strategy against a fair schedule of every
/// obligation, for each goal, and reads a relation for each element off the
/// disjoint union of the resulting networks.
pub fn saturate_and_extract_rep(alg: &JoinSemilatticeSemigroup, config: ExtractConfig) -> Result<Extraction> {
    if config.check_algebra {
        let report = alg.validate(DEFAULT_WITNESS_CAP);
        if !report.ok() {
            return Err(Error::InvalidAlgebra(report));
        }
    }
    if config.node_budget < 2 {
        return Err(Error::BudgetExhausted(format!("a goal network needs 2 nodes, budget is {}", config.node_budget)));
    }
    let game = GameConfig {
        depth_cap: config.check_depth.max(config.lookahead),
        check_algebra: config.check_algebra,
        ..GameConfig::default()
    };
    for (g, v) in solve_game_with(alg, config.check_depth, game)? {
        if v.winner == Winner::Forall {
            return Err(Error::NotKnownExistsWin { a: g.a.0, b: g.b.0, depth: config.check_depth });
        }
    }

    let goals = all_goals(alg);
    let mut networks = Vec::with_capacity(goals.len());
    let mut saturated = true;
    if goals.is_empty() {
        // Only the one-element algebra has no goals: a single reflexive point.
        let mut p = Prenetwork::with_nodes(1);
        p.extend(alg, 0, 0, crate::bits::ElementSet::full(alg.size()));
        networks.push((None, p));
    }
    for g in goals {
        let (p, done) = play_goal(alg, g, config, game)?;
        saturated &= done;
        networks.push((Some(g), p));
    }

    let labels = networks
        .iter()
        .flat_map(|(g, p)| {
            let tag = g.map_or_else(|| "e".into(), |g| format!("{}/{}", g.a.0, g.b.0));
            (0..p.nodes()).map(move |x| format!("{tag}:{x}"))
        })
        .collect();
    let base = FiniteBase::new(labels)?;
    let n = alg.size();
    let mut matrices = alloc::vec![BitMatrix::zeros(base.size()); n];
    let mut offset = 0;
    for (_, p) in &networks {
        for x in 0..p.nodes() {
            for y in 0..p.nodes() {
                for a in p.label(x, y).iter() {
                    matrices[a].set(offset + x, offset + y, true);
                }
            }
        }
        offset += p.nodes();
    }
    let map = matrices.into_iter().map(|m| Rel::from_matrix(&base, m)).collect::<Result<Vec<_>>>()?;
    let representation = Representation::new(base, map)?;
    let report = check_candidate(alg, &representation)?;
    let status = if report.ok() { ExtractionStatus::Verified } else { ExtractionStatus::BudgetInconclusive };
    Ok(Extraction {
        representation,
        report,
        status,
        networks: networks.into_iter().filter_map(|(g, p)| g.map(|g| (g, p))).collect(),
        saturated,
    })
}

fn play_goal(
    alg: &JoinSemilatticeSemigroup,
    goal: GoalPair,
    config: ExtractConfig,
    game: GameConfig,
) -> Result<(Prenetwork, bool)> {
    let arena = Arena::new(alg);
    let mut solver = GameSolver::new(alg, goal, game)?;
    let mut p = initial_network(alg, goal)?;
    let mut skipped: BTreeSet<Move> = BTreeSet::new();
    for round in 0..config.round_budget {
        let pending: Vec<Move> =
            arena.moves(&p, Pruning::Absorbed).into_iter().filter(|m| !skipped.contains(m)).collect();
        if pending.is_empty() {
            break;
        }
        let kind = |m: &Move| match m {
            Move::Composition { .. } => 0,
            Move::Witness { .. } => 1,
            Move::Join { .. } => 2,
        };
        let m = (0..3)
            .find_map(|k| pending.iter().find(|m| kind(m) == (round + k) % 3))
            .copied()
            .expect("pending is non-empty");
        let fresh = p.nodes();
        let choice = arena
            .replies(&p, &m)
            .into_iter()
            .filter(|(r, _)| *r != Reply::At(fresh) || fresh < config.node_budget)
            .map(|(_, q)| q)
            .find(|q| !solver.forall_wins(q, config.lookahead));
        match choice {
            Some(q) => p = q,
            None => {
                skipped.insert(m);
            }
        }
    }
    let done = skipped.is_empty() && arena.moves(&p, Pruning::Absorbed).is_empty();
    Ok((p, done))
}

/// Checks `(a + b)^R = a^R ∪ b^R`, `(a ; b)^R = a^R ; b^R` and injectivity.
fn check_candidate(alg: &JoinSemilatticeSemigroup, rep: &Representation) -> Result<ValidationReport> {
    let mut report = ValidationReport::new();
    let n = alg.size();
    let r = |a: usize| &rep.relations()[a];
    for a in 0..n {
        for b in 0..n {
            report.check(*r(alg.join(a, b)) == r(a).union(r(b))?, "join", &[a, b]);
            report.check(*r(alg.compose(a, b)) == rel_compose(r(a), r(b))?, "compose", &[a, b]);
            if a < b {
                report.check(r(a) != r(b), "injective", &[a, b]);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{fixtures, Table};
    use crate::games::check_network;

    #[test]
    fn one_element_is_a_reflexive_point() {
        let e = saturate_and_extract_rep(&fixtures::one_element_jsl(), ExtractConfig::new(4, 4)).unwrap();
        assert_eq!(e.representation.base().size(), 1);
        assert_eq!(e.representation.relations()[0].pairs(), [(0, 0)]);
        assert_eq!(e.status, ExtractionStatus::Verified);
    }

    #[test]
    fn budget_below_two_nodes() {
        let err = saturate_and_extract_rep(&fixtures::two_chain_max_jsl(), ExtractConfig::new(1, 4)).unwrap_err();
        assert!(matches!(err, Error::BudgetExhausted(_)));
    }

    #[test]
    fn two_chain_max() {
        // 0 is the identity on {x0, x1}; 1 adds (x0, x1).
        let alg = fixtures::two_chain_max_jsl();
        let e = saturate_and_extract_rep(&alg, ExtractConfig::new(8, 16)).unwrap();
        assert!(e.saturated);
        assert_eq!(e.status, ExtractionStatus::Verified);
        let [(g, p)] = &e.networks[..] else { panic!("one goal expected") };
        assert_eq!(*g, GoalPair::new(1, 0));
        assert!(check_network(p, &alg).unwrap().is_network());
        let rels = e.representation.relations();
        assert_eq!(rels[0].pairs(), [(0, 0), (1, 1)]);
        assert_eq!(rels[1].pairs(), [(0, 0), (0, 1), (1, 1)]);
    }

    #[test]
    fn saturated_networks_give_representations() {
        // Chains with + = max and ; = min: subidentity-like, saturate quickly.
        let alg = fixtures::three_chain_max_min_jsl();
        let e = saturate_and_extract_rep(&alg, ExtractConfig::new(8, 64)).unwrap();
        assert!(e.saturated, "{:?}", e.networks);
        assert_eq!(e.status, ExtractionStatus::Verified, "{:?}", e.report);
    }

    #[test]
    fn refuses_a_universal_win() {
        // Two-chain under max with 0;0 = 1 and every other product 0.
        let alg = JoinSemilatticeSemigroup::new(
            Table::from_fn(2, |a, b| usize::from(a == 0 && b == 0)),
            Table::from_fn(2, |a, b| a.max(b)),
        )
        .unwrap();
        let config = ExtractConfig { check_algebra: false, ..ExtractConfig::new(8, 16) };
        let err = saturate_and_extract_rep(&alg, config).unwrap_err();
        assert_eq!(err, Error::NotKnownExistsWin { a: 1, b: 0, depth: 2 });
        assert!(matches!(saturate_and_extract_rep(&alg, ExtractConfig::new(8, 16)), Err(Error::InvalidAlgebra(_))));
    }
}
