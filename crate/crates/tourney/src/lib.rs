//! Exact-arithmetic engine for round-robin tournament rules and their
//! manipulability.
//!
//! The crate evaluates randomized tournament rules (a linear-programming
//! rule, random single-elimination brackets, randomized king-of-the-hill,
//! and Condorcet-or-uniform plus an augmented convex combination), audits
//! how much coalitions can gain by fixing their internal matches, checks
//! structural fairness properties (Condorcet- and cover-consistency, Banks
//! sets, monotonicity), and derives non-existence parameters for highly
//! non-manipulable rules from small searched counterexamples. All rule
//! evaluation is exact rational arithmetic; Monte Carlo estimators exist
//! for sizes where exact evaluation is out of reach.

pub mod tournament;

pub use tournament::{
    enumerate_tournaments, gen_balanced, gen_kryptonite, gen_random, gen_rseb_cover_example,
    three_cycle, Coalition, TeamSet, Tournament, TournamentError,
};
