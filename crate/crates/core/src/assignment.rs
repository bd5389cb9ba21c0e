//! Exact-rational assignment solver.
//!
//! Maximization is run as minimization on negated weights, using the O(n³)
//! shortest-augmenting-path form of the Hungarian algorithm. The algorithm
//! only adds, subtracts and compares, so it is exact over rationals. Ties
//! between optimal permutations are broken toward the lexicographically
//! smallest one by a second pass over the tight-edge graph left behind by
//! the final dual potentials.

use num_traits::Zero;

use crate::rational::Rational;

pub(crate) struct Assignment {
    pub total: Rational,
    /// perm[i] = column assigned to row i (0-based).
    pub perm: Vec<usize>,
}

/// Maximum-total-weight perfect assignment on a square matrix, returning the
/// lexicographically smallest optimal permutation.
pub(crate) fn max_assignment_lex(weights: &[Vec<Rational>]) -> Assignment {
    let n = weights.len();
    debug_assert!(weights.iter().all(|row| row.len() == n));
    if n == 0 {
        return Assignment { total: Rational::zero(), perm: Vec::new() };
    }
    let cost: Vec<Vec<Rational>> =
        weights.iter().map(|row| row.iter().map(|w| -w).collect()).collect();
    let (u, v) = min_assignment_potentials(&cost);

    // Optimal assignments are exactly the perfect matchings of the
    // tight-edge graph (complementary slackness), so the lexicographic
    // refinement is purely combinatorial.
    let tight: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| cost[i][j] == &u[i] + &v[j]).collect())
        .collect();
    let perm = lex_smallest_perfect_matching(&tight);
    let total = (0..n).map(|i| weights[i][perm[i]].clone()).sum();
    Assignment { total, perm }
}

/// Runs the shortest-augmenting-path Hungarian algorithm on a cost matrix
/// and returns the final dual potentials (u over rows, v over columns),
/// feasible for every pair: u[i] + v[j] ≤ cost[i][j].
fn min_assignment_potentials(cost: &[Vec<Rational>]) -> (Vec<Rational>, Vec<Rational>) {
    let n = cost.len();
    // 1-based bookkeeping with a virtual column 0, as usual for this scheme.
    let mut u = vec![Rational::zero(); n + 1];
    let mut v = vec![Rational::zero(); n + 1];
    let mut matched_row = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];

    for i in 1..=n {
        matched_row[0] = i;
        let mut j0 = 0usize;
        let mut minv: Vec<Option<Rational>> = vec![None; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = matched_row[j0];
            let mut delta: Option<Rational> = None;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = &cost[i0 - 1][j - 1] - &u[i0] - &v[j];
                if minv[j].as_ref().is_none_or(|m| cur < *m) {
                    minv[j] = Some(cur);
                    way[j] = j0;
                }
                if delta.is_none() || minv[j] < delta {
                    delta = minv[j].clone();
                    j1 = j;
                }
            }
            let delta = delta.expect("bipartite graph is complete");
            for j in 0..=n {
                if used[j] {
                    u[matched_row[j]] += &delta;
                    v[j] -= &delta;
                } else if let Some(m) = minv[j].as_mut() {
                    *m -= &delta;
                }
            }
            j0 = j1;
            if matched_row[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            matched_row[j0] = matched_row[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    #[cfg(debug_assertions)]
    for i in 0..n {
        for j in 0..n {
            debug_assert!(&u[i + 1] + &v[j + 1] <= cost[i][j], "infeasible dual");
        }
    }
    (u[1..].to_vec(), v[1..].to_vec())
}

/// Lexicographically smallest perfect matching of a bipartite graph given as
/// ascending adjacency lists. The graph must admit a perfect matching.
fn lex_smallest_perfect_matching(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut fixed: Vec<usize> = Vec::with_capacity(n);
    let mut col_taken = vec![false; n];
    for i in 0..n {
        let mut chosen = None;
        for &j in &adj[i] {
            if col_taken[j] {
                continue;
            }
            col_taken[j] = true;
            if rows_matchable(adj, i + 1, &col_taken) {
                chosen = Some(j);
                break;
            }
            col_taken[j] = false;
        }
        fixed.push(chosen.expect("tight graph admits a perfect matching"));
    }
    fixed
}

/// Can rows `from..n` all be matched into columns not yet taken?
fn rows_matchable(adj: &[Vec<usize>], from: usize, col_taken: &[bool]) -> bool {
    let n = adj.len();
    let mut matched_col: Vec<Option<usize>> = vec![None; n];
    for row in from..n {
        let mut visited = vec![false; n];
        if !augment(adj, row, col_taken, &mut matched_col, &mut visited) {
            return false;
        }
    }
    true
}

fn augment(
    adj: &[Vec<usize>],
    row: usize,
    col_taken: &[bool],
    matched_col: &mut Vec<Option<usize>>,
    visited: &mut Vec<bool>,
) -> bool {
    for &j in &adj[row] {
        if col_taken[j] || visited[j] {
            continue;
        }
        visited[j] = true;
        let free = match matched_col[j] {
            None => true,
            Some(other) => augment(adj, other, col_taken, matched_col, visited),
        };
        if free {
            matched_col[j] = Some(row);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn brute_force(weights: &[Vec<Rational>]) -> Assignment {
        let n = weights.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Assignment> = None;
        loop {
            let total: Rational = (0..n).map(|i| weights[i][perm[i]].clone()).sum();
            let replace = match &best {
                None => true,
                Some(b) => total > b.total || (total == b.total && perm < b.perm),
            };
            if replace {
                best = Some(Assignment { total, perm: perm.clone() });
            }
            // next permutation
            let mut advanced = false;
            for i in (0..n.saturating_sub(1)).rev() {
                if perm[i] < perm[i + 1] {
                    let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
                    perm.swap(i, j);
                    perm[i + 1..].reverse();
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
        best.unwrap()
    }

    #[test]
    fn unique_optimum() {
        let w = vec![
            vec![int(0), int(2), int(1)],
            vec![int(1), int(0), int(2)],
            vec![int(2), int(1), int(0)],
        ];
        let sol = max_assignment_lex(&w);
        assert_eq!(sol.total, int(6));
        assert_eq!(sol.perm, vec![1, 2, 0]);
    }

    #[test]
    fn tie_breaks_to_lex_smallest() {
        // Two optimal 3-cycles; (1,2,0) beats (2,0,1) lexicographically.
        let a = rat(1, 3);
        let w = vec![
            vec![int(0), a.clone(), a.clone()],
            vec![a.clone(), int(0), a.clone()],
            vec![a.clone(), a.clone(), int(0)],
        ];
        let sol = max_assignment_lex(&w);
        assert_eq!(sol.total, int(1));
        assert_eq!(sol.perm, vec![1, 2, 0]);

        // All-equal weights: everything is optimal, identity wins.
        let z = vec![vec![int(0); 3]; 3];
        assert_eq!(max_assignment_lex(&z).perm, vec![0, 1, 2]);
    }

    #[test]
    fn matches_brute_force_on_seeded_matrices() {
        let mut state = 0x1234_5678_9abc_def0u64;
        let mut next = move || {
            state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
            z ^ (z >> 31)
        };
        for trial in 0..200 {
            let n = 1 + (next() % 5) as usize;
            let w: Vec<Vec<Rational>> = (0..n)
                .map(|_| (0..n).map(|_| rat((next() % 7) as i64, 4)).collect())
                .collect();
            let fast = max_assignment_lex(&w);
            let slow = brute_force(&w);
            assert_eq!(fast.total, slow.total, "trial {trial}: value mismatch");
            assert_eq!(fast.perm, slow.perm, "trial {trial}: tie-break mismatch");
        }
    }
}
