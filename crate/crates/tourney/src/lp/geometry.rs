//! Polytope vertex enumeration and the perturbation-radius estimate.
//!
//! `estimate_epsilon` answers: how far can the tournament LP's right-hand
//! side be relaxed before some point of the relaxed polytope drifts more
//! than `delta` away (in l1 distance) from the unrelaxed one? The true
//! radius is defined non-constructively, so we pin down a reproducible
//! deterministic procedure: binary search over a dyadic grid, exact vertex
//! enumeration of the relaxed polytope, and one exact distance LP per
//! vertex. Restricting to vertices is sound because distance-to-a-convex-set
//! is convex, so its maximum over a polytope is attained at a vertex.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::{simplex_solve, LinearProgram, LpOutcome, Rational, Relation, Sense};
use crate::tournament::{caps, Tournament, TournamentError};

/// Dyadic resolution of the binary-search grid: steps of `2^-20`.
pub const EPSILON_GRID_BITS: u32 = 20;

const EPSILON_MAX_N: usize = 6;

/// Solves a square rational system; `None` when singular.
fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let d = a.len();
    for c in 0..d {
        let pivot = (c..d).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, pivot);
        b.swap(c, pivot);
        let piv = a[c][c].clone();
        for r in 0..d {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let factor = &a[r][c] / &piv;
            for c2 in c..d {
                let delta = &factor * &a[c][c2];
                a[r][c2] -= delta;
            }
            let delta = &factor * &b[c];
            b[r] -= delta;
        }
    }
    Some((0..d).map(|i| &b[i] / &a[i][i]).collect())
}

/// All vertices of `{x : A x >= b}` (which must be bounded), found by
/// enumerating square subsystems and filtering for feasibility.
pub fn polytope_vertices(matrix: &[Vec<Rational>], rhs: &[Rational]) -> Vec<Vec<Rational>> {
    let m = matrix.len();
    if m == 0 {
        return Vec::new();
    }
    let d = matrix[0].len();
    if m < d {
        return Vec::new();
    }
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    let mut pick = vec![0usize; d];
    // Iterative d-combinations of 0..m.
    fn combos(m: usize, d: usize, start: usize, pick: &mut Vec<usize>, depth: usize, out: &mut Vec<Vec<usize>>) {
        if depth == d {
            out.push(pick.clone());
            return;
        }
        for i in start..m {
            pick[depth] = i;
            combos(m, d, i + 1, pick, depth + 1, out);
        }
    }
    combos(m, d, 0, &mut pick, 0, &mut subsets);

    let candidates: Vec<Vec<Rational>> = subsets
        .par_iter()
        .filter_map(|rows| {
            let a: Vec<Vec<Rational>> = rows.iter().map(|&r| matrix[r].clone()).collect();
            let b: Vec<Rational> = rows.iter().map(|&r| rhs[r].clone()).collect();
            let x = solve_square(a, b)?;
            let feasible = matrix.iter().zip(rhs).all(|(row, bound)| {
                let lhs: Rational = row.iter().zip(&x).map(|(c, v)| c * v).sum();
                lhs >= *bound
            });
            feasible.then_some(x)
        })
        .collect();

    let mut seen = HashSet::new();
    let mut vertices = Vec::new();
    for v in candidates {
        if seen.insert(v.clone()) {
            vertices.push(v);
        }
    }
    vertices
}

/// Rows of the relaxed polytope `P_eps = {x in [0,1]^n : A(T) x >= b - eps}`
/// as a single `>=` system.
fn relaxed_rows(t: &Tournament, eps: &Rational) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    let n = t.team_count();
    let slp = super::build_slp(t);
    let mut matrix = slp.matrix;
    let mut rhs: Vec<Rational> = slp.rhs.into_iter().map(|b| b - eps).collect();
    for i in 0..n {
        let mut row = vec![Rational::zero(); n];
        row[i] = Rational::one();
        matrix.push(row);
        rhs.push(Rational::zero());
    }
    for i in 0..n {
        let mut row = vec![Rational::zero(); n];
        row[i] = -Rational::one();
        matrix.push(row);
        rhs.push(-Rational::one());
    }
    (matrix, rhs)
}

/// Exact l1 distance from `y` to the unrelaxed polytope, via one LP with
/// per-coordinate slack variables bounding `|x - y|`.
fn l1_distance_to_base(t: &Tournament, y: &[Rational]) -> Rational {
    let n = t.team_count();
    let mut obj = vec![Rational::zero(); n];
    obj.extend(vec![Rational::one(); n]);
    let mut lp = LinearProgram::new(obj, Sense::Minimize);
    let slp = super::build_slp(t);
    for (row, b) in slp.matrix.into_iter().zip(slp.rhs) {
        let mut coeffs = row;
        coeffs.extend(vec![Rational::zero(); n]);
        lp.push_row(coeffs, Relation::Ge, b);
    }
    for i in 0..n {
        let mut upper = vec![Rational::zero(); 2 * n];
        upper[i] = Rational::one();
        lp.push_row(upper, Relation::Le, Rational::one());
        // t_i - x_i >= -y_i and t_i + x_i >= y_i.
        let mut lo = vec![Rational::zero(); 2 * n];
        lo[i] = -Rational::one();
        lo[n + i] = Rational::one();
        lp.push_row(lo, Relation::Ge, -y[i].clone());
        let mut hi = vec![Rational::zero(); 2 * n];
        hi[i] = Rational::one();
        hi[n + i] = Rational::one();
        lp.push_row(hi, Relation::Ge, y[i].clone());
    }
    match simplex_solve(&lp) {
        LpOutcome::Optimal { value, .. } => value,
        other => unreachable!("distance LP is feasible and bounded, got {other:?}"),
    }
}

/// True iff every vertex of the relaxed polytope stays within `delta` of
/// the unrelaxed one.
fn within_delta(t: &Tournament, eps: &Rational, delta: &Rational) -> bool {
    let (matrix, rhs) = relaxed_rows(t, eps);
    let vertices = polytope_vertices(&matrix, &rhs);
    vertices
        .par_iter()
        .all(|v| l1_distance_to_base(t, v) <= *delta)
}

/// Largest `eps` on the dyadic grid `{u / 2^20 : 0 <= u <= 2^20}` such that
/// every vertex of the relaxed polytope is within l1 distance `delta` of
/// the unrelaxed polytope.
pub fn estimate_epsilon(t: &Tournament, delta: &Rational) -> Result<Rational, TournamentError> {
    let cap = caps::effective(EPSILON_MAX_N);
    let n = t.team_count();
    if n > cap {
        return Err(TournamentError::SizeOutOfRange { n, min: 2, max: cap });
    }
    assert!(delta.is_positive(), "delta must be positive");
    let grid = |u: u64| {
        Rational::new(BigInt::from(u), BigInt::one() << EPSILON_GRID_BITS as usize)
    };
    let top = 1u64 << EPSILON_GRID_BITS;
    if within_delta(t, &grid(top), delta) {
        return Ok(grid(top));
    }
    debug_assert!(within_delta(t, &grid(0), delta));
    let (mut lo, mut hi) = (0u64, top);
    // Invariant: grid(lo) passes, grid(hi) fails.
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if within_delta(t, &grid(mid), delta) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(grid(lo))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{rat, rat_int};
    use crate::tournament::three_cycle;

    #[test]
    fn unit_square_vertices() {
        // {x >= 0, y >= 0, -x >= -1, -y >= -1} is the unit square.
        let matrix = vec![
            vec![rat_int(1), rat_int(0)],
            vec![rat_int(0), rat_int(1)],
            vec![rat_int(-1), rat_int(0)],
            vec![rat_int(0), rat_int(-1)],
        ];
        let rhs = vec![rat_int(0), rat_int(0), rat_int(-1), rat_int(-1)];
        let mut vs = polytope_vertices(&matrix, &rhs);
        vs.sort();
        assert_eq!(vs.len(), 4);
        assert_eq!(vs[0], vec![rat_int(0), rat_int(0)]);
        assert_eq!(vs[3], vec![rat_int(1), rat_int(1)]);
    }

    #[test]
    fn distance_lp_is_zero_inside() {
        let t = three_cycle();
        let inside = vec![rat(1, 3); 3];
        assert_eq!(l1_distance_to_base(&t, &inside), rat_int(0));
        // A point below the polytope has positive distance.
        let outside = vec![rat_int(0), rat_int(0), rat_int(0)];
        assert!(l1_distance_to_base(&t, &outside).is_positive());
    }

    #[test]
    fn epsilon_positive_for_loose_delta() {
        let t = three_cycle();
        let eps = estimate_epsilon(&t, &rat(1, 2)).unwrap();
        assert!(eps.is_positive());
    }

    #[test]
    fn epsilon_hits_grid_maximum_for_huge_delta() {
        // l1 distances inside the unit cube never exceed n, so any
        // delta >= n accepts the whole grid.
        let t = three_cycle();
        let eps = estimate_epsilon(&t, &rat_int(3)).unwrap();
        assert_eq!(eps, rat_int(1));
    }
}
