//! Representability games for join semilattice-ordered semigroups:
//! prenetworks, moves, a bounded solver with replayable certificates,
//! representation extraction from the existential strategy, and the
//! first-order sentences describing that strategy.

mod extract;
mod formula;
mod moves;
mod network;
mod sigma;
mod solver;

pub use extract::{saturate_and_extract_rep, ExtractConfig, Extraction, ExtractionStatus};
pub use formula::{eval_formula, parse_formula, Formula};
pub use moves::{exists_responses, forall_moves, legal_forall_moves, tagged_responses, Move, Pruning, Reply};
pub use network::{all_goals, check_network, initial_network, GoalPair, NetworkCheck, Prenetwork};
pub use sigma::{emit_rho, emit_sigma, TermNetwork};
pub use solver::{
    solve_game, solve_game_with, solve_goal, verify_certificate, Certificate, GameConfig, GameSolver, Verdict, Winner,
    DEFAULT_DEPTH_CAP,
};
