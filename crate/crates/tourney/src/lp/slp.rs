//! The tournament linear program and its certificates.
//!
//! For a tournament `T` on `n` teams, `SLP(T)` minimizes the total mass
//! `sum p_i` subject to, for every team `i`, the mass of the teams beating
//! `i` plus half of `i`'s own mass being at least one half. Its optimum
//! always has value one and is unique; the unique optimum is the
//! distribution played by the LP tournament rule. `solve_slp` verifies both
//! facts at runtime instead of assuming them: the optimal value must be
//! exactly one, every supported team's constraint must be tight, and the
//! sign matrix restricted to the support must have a one-dimensional
//! nullspace.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::{simplex_solve, Distribution, LinearProgram, LpOutcome, Rational, Relation, Sense};
use crate::lp::rat;
use crate::tournament::{TeamSet, Tournament};

/// `minimize sum p_i` subject to
/// `sum_{j beats i} p_j + p_i / 2 >= 1/2` and `p >= 0`.
pub fn build_slp(t: &Tournament) -> LinearProgram {
    let n = t.team_count();
    let mut lp = LinearProgram::new(vec![Rational::one(); n], Sense::Minimize);
    for i in 0..n {
        let beaters = t.in_mask(i);
        let row: Vec<Rational> = (0..n)
            .map(|j| {
                if j == i {
                    rat(1, 2)
                } else if beaters >> j & 1 == 1 {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        lp.push_row(row, Relation::Ge, rat(1, 2));
    }
    lp
}

/// The dual: `maximize sum q_i` subject to
/// `sum_{i beats j} q_j + q_i / 2 <= 1/2` and `q >= 0`.
pub fn build_slp_dual(t: &Tournament) -> LinearProgram {
    let n = t.team_count();
    let mut lp = LinearProgram::new(vec![Rational::one(); n], Sense::Maximize);
    for i in 0..n {
        let beaten = t.out_mask(i);
        let row: Vec<Rational> = (0..n)
            .map(|j| {
                if j == i {
                    rat(1, 2)
                } else if beaten >> j & 1 == 1 {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        lp.push_row(row, Relation::Le, rat(1, 2));
    }
    lp
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("solver returned {0} instead of an optimum")]
    SolverOutcome(String),
    #[error("optimal value is {0}, expected exactly 1")]
    ValueNotOne(String),
    #[error("supported team {} has a slack constraint", .0 + 1)]
    SupportConstraintSlack(usize),
    #[error("support sign matrix has rank {rank} on {support_size} teams (nullspace dimension {})",
            support_size - rank)]
    NullspaceDimension { rank: usize, support_size: usize },
}

/// The unique optimum together with the evidence that it is the unique
/// optimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlpCertificate {
    pub solution: Distribution,
    /// Teams whose constraint holds with equality at the optimum.
    pub tight_constraints: TeamSet,
    /// Teams with positive probability.
    pub support: TeamSet,
    /// Exact rank of the sign matrix restricted to the support.
    pub support_rank: usize,
}

/// Solves `SLP(T)` and verifies the optimality and uniqueness certificate.
pub fn solve_slp(t: &Tournament) -> Result<SlpCertificate, CertificateError> {
    let lp = build_slp(t);
    let (solution, value) = match simplex_solve(&lp) {
        LpOutcome::Optimal { solution, value } => (solution, value),
        other => return Err(CertificateError::SolverOutcome(format!("{other:?}"))),
    };
    if !value.is_one() {
        return Err(CertificateError::ValueNotOne(super::format_rational(&value)));
    }
    let n = t.team_count();
    let mut tight = TeamSet::empty();
    for i in 0..n {
        let lhs: Rational = lp.matrix[i]
            .iter()
            .zip(&solution)
            .map(|(a, x)| a * x)
            .sum();
        if lhs == rat(1, 2) {
            tight.insert(i);
        }
    }
    let support: TeamSet = solution
        .iter()
        .enumerate()
        .filter(|(_, p)| p.is_positive())
        .map(|(i, _)| i)
        .collect();
    if let Some(bad) = support.iter().find(|&i| !tight.contains(i)) {
        return Err(CertificateError::SupportConstraintSlack(bad));
    }
    let rank = skew_support_rank(t, support);
    if support.len() - rank != 1 {
        return Err(CertificateError::NullspaceDimension { rank, support_size: support.len() });
    }
    let solution =
        Distribution::new(solution).map_err(|e| CertificateError::ValueNotOne(e.to_string()))?;
    Ok(SlpCertificate { solution, tight_constraints: tight, support, support_rank: rank })
}

/// Exact rank over the rationals of the sign matrix (`+1` iff `i` beats
/// `j`, `-1` otherwise, `0` on the diagonal) restricted to `support`.
pub fn skew_support_rank(t: &Tournament, support: TeamSet) -> usize {
    assert!(!support.is_empty(), "support must be nonempty");
    let members: Vec<usize> = support.iter().collect();
    let m = members.len();
    let mut mat: Vec<Vec<Rational>> = (0..m)
        .map(|a| {
            (0..m)
                .map(|b| {
                    if a == b {
                        Rational::zero()
                    } else if t.beats(members[a], members[b]) {
                        Rational::one()
                    } else {
                        -Rational::one()
                    }
                })
                .collect()
        })
        .collect();
    rational_rank(&mut mat)
}

/// Gaussian elimination rank of an arbitrary rational matrix.
pub(crate) fn rational_rank(mat: &mut [Vec<Rational>]) -> usize {
    let rows = mat.len();
    if rows == 0 {
        return 0;
    }
    let cols = mat[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let pivot = (rank..rows).find(|&r| !mat[r][c].is_zero());
        let r = match pivot {
            Some(r) => r,
            None => continue,
        };
        mat.swap(rank, r);
        let piv = mat[rank][c].clone();
        for r2 in 0..rows {
            if r2 == rank || mat[r2][c].is_zero() {
                continue;
            }
            let factor = &mat[r2][c] / &piv;
            for c2 in c..cols {
                let delta = &factor * &mat[rank][c2];
                mat[r2][c2] -= delta;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Result of checking a distribution against one of the feasibility
/// programs; failing is a result, not an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpCheck {
    pub pass: bool,
    /// Teams whose row is violated (the simplex conditions, when violated,
    /// are reported separately).
    pub violated_rows: Vec<usize>,
    pub simplex_ok: bool,
}

impl LpCheck {
    fn from_rows(violated_rows: Vec<usize>, simplex_ok: bool) -> Self {
        LpCheck { pass: violated_rows.is_empty() && simplex_ok, violated_rows, simplex_ok }
    }
}

/// Feasibility check for the Condorcet-creation program: for every team `i`
/// with at most `k - 1` beaters, `p_i + sum_{j beats i} p_j >= 1 - alpha`,
/// together with the simplex conditions. `k = None` means no cap.
pub fn check_lp0(
    t: &Tournament,
    dist: &Distribution,
    alpha: &Rational,
    k: Option<usize>,
) -> LpCheck {
    let n = t.team_count();
    assert_eq!(dist.len(), n, "distribution size must match the tournament");
    let threshold = Rational::one() - alpha;
    let mut violated = Vec::new();
    for i in 0..n {
        let beaters = TeamSet(t.in_mask(i));
        if let Some(k) = k {
            if beaters.len() > k.saturating_sub(1) {
                continue;
            }
        }
        let lhs = dist.prob(i) + dist.mass(beaters);
        if lhs < threshold {
            violated.push(i);
        }
    }
    // Distribution invariants already guarantee the simplex conditions.
    LpCheck::from_rows(violated, true)
}

/// Feasibility check with the sharpened multiplier: for every team,
/// `sum_{j beats i} p_j + z/(2z-1) * p_i >= 1 - alpha`.
pub fn check_lp1(t: &Tournament, dist: &Distribution, alpha: &Rational, z: usize) -> LpCheck {
    assert!(z >= 1, "z must be a positive integer");
    let n = t.team_count();
    assert_eq!(dist.len(), n, "distribution size must match the tournament");
    let mult = rat(z as i64, 2 * z as i64 - 1);
    let threshold = Rational::one() - alpha;
    let mut violated = Vec::new();
    for i in 0..n {
        let beaters = TeamSet(t.in_mask(i));
        let lhs = dist.mass(beaters) + &mult * dist.prob(i);
        if lhs < threshold {
            violated.push(i);
        }
    }
    LpCheck::from_rows(violated, true)
}
