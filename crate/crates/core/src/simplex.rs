//! Textbook primal simplex over exact rationals, with Bland's rule.
//!
//! Solves  max c·x  subject to  Ax ≤ b, x ≥ 0  where every b ≥ 0, so the
//! slack basis at the origin is feasible and no phase-1 is needed. Bland's
//! rule guarantees termination; exact arithmetic removes every tolerance.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub(crate) struct LpSolution {
    pub value: Rational,
    pub x: Vec<Rational>,
}

pub(crate) fn simplex_max(
    c: &[Rational],
    a: &[Vec<Rational>],
    b: &[Rational],
) -> Result<LpSolution> {
    let n = c.len();
    let m = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    debug_assert!(b.iter().all(|rhs| !rhs.is_negative()), "origin must be feasible");

    // Condensed tableau: row r expresses basic[r] over the nonbasic columns,
    // with the RHS in the last slot. Structural variables are 0..n, slacks
    // n..n+m.
    let mut nonbasic: Vec<usize> = (0..n).collect();
    let mut basic: Vec<usize> = (n..n + m).collect();
    let mut rows: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r: Vec<Rational> = row.to_vec();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut obj: Vec<Rational> = c.to_vec();
    obj.push(Rational::zero());

    loop {
        // Bland: entering variable = smallest label with positive reduced cost.
        let entering = (0..n)
            .filter(|&col| obj[col].is_positive())
            .min_by_key(|&col| nonbasic[col]);
        let Some(col) = entering else {
            break;
        };

        // Ratio test; ties again resolved by smallest label.
        let mut pivot_row: Option<usize> = None;
        let mut best_ratio: Option<Rational> = None;
        for r in 0..m {
            if !rows[r][col].is_positive() {
                continue;
            }
            let ratio = &rows[r][n] / &rows[r][col];
            let better = match &best_ratio {
                None => true,
                Some(best) => {
                    ratio < *best
                        || (ratio == *best && basic[r] < basic[pivot_row.unwrap()])
                }
            };
            if better {
                best_ratio = Some(ratio);
                pivot_row = Some(r);
            }
        }
        let Some(r) = pivot_row else {
            return Err(Error::InvalidParameter {
                what: "linear program",
                reason: "objective is unbounded".to_string(),
            });
        };

        pivot(&mut rows, &mut obj, r, col);
        std::mem::swap(&mut basic[r], &mut nonbasic[col]);
    }

    let mut x = vec![Rational::zero(); n];
    for (r, &label) in basic.iter().enumerate() {
        if label < n {
            x[label] = rows[r][n].clone();
        }
    }
    Ok(LpSolution { value: obj[n].clone(), x })
}

fn pivot(rows: &mut [Vec<Rational>], obj: &mut [Rational], r: usize, col: usize) {
    let width = rows[r].len();
    let pv = rows[r][col].clone();

    let pivot_row = &mut rows[r];
    for (j, entry) in pivot_row.iter_mut().enumerate() {
        if j == col {
            *entry = Rational::zero() + 1 / &pv;
        } else {
            *entry = &*entry / &pv;
        }
    }
    let pivot_row = rows[r].clone();

    for (i, row) in rows.iter_mut().enumerate() {
        if i == r || row[col].is_zero() {
            continue;
        }
        let factor = row[col].clone();
        for j in 0..width {
            if j == col {
                row[j] = -&factor * &pivot_row[col];
            } else {
                let delta = &factor * &pivot_row[j];
                row[j] -= delta;
            }
        }
    }
    if !obj[col].is_zero() {
        let factor = obj[col].clone();
        for j in 0..width {
            if j == col {
                obj[j] = -&factor * &pivot_row[col];
            } else {
                let delta = &factor * &pivot_row[j];
                obj[j] -= delta;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn solves_a_small_bounded_lp() {
        // max x1 + x2  s.t.  x1 ≤ 1, x2 ≤ 2, x1 + x2 ≤ 5/2.
        let c = vec![int(1), int(1)];
        let a = vec![
            vec![int(1), int(0)],
            vec![int(0), int(1)],
            vec![int(1), int(1)],
        ];
        let b = vec![int(1), int(2), rat(5, 2)];
        let sol = simplex_max(&c, &a, &b).unwrap();
        assert_eq!(sol.value, rat(5, 2));
        assert_eq!(&sol.x[0] + &sol.x[1], rat(5, 2));
    }

    #[test]
    fn prefers_the_heavier_variable() {
        // max 2x1 + x2  s.t.  x1 + x2 ≤ 1.
        let c = vec![int(2), int(1)];
        let a = vec![vec![int(1), int(1)]];
        let b = vec![int(1)];
        let sol = simplex_max(&c, &a, &b).unwrap();
        assert_eq!(sol.value, int(2));
        assert_eq!(sol.x, vec![int(1), int(0)]);
    }

    #[test]
    fn handles_degenerate_constraints() {
        // Redundant and zero-slack rows must not cycle under Bland's rule.
        let c = vec![int(1), int(1), int(1)];
        let a = vec![
            vec![int(1), int(1), int(0)],
            vec![int(1), int(1), int(0)],
            vec![int(0), int(0), int(1)],
            vec![int(1), int(1), int(1)],
        ];
        let b = vec![int(1), int(1), int(0), int(1)];
        let sol = simplex_max(&c, &a, &b).unwrap();
        assert_eq!(sol.value, int(1));
    }

    #[test]
    fn reports_unbounded() {
        let c = vec![int(1)];
        let a = vec![vec![int(-1)]];
        let b = vec![int(0)];
        assert!(simplex_max(&c, &a, &b).is_err());
    }

    #[test]
    fn zero_objective_is_immediate() {
        let c = vec![int(0), int(0)];
        let a = vec![vec![int(1), int(1)]];
        let b = vec![int(3)];
        let sol = simplex_max(&c, &a, &b).unwrap();
        assert_eq!(sol.value, int(0));
        assert_eq!(sol.x, vec![int(0), int(0)]);
    }
}
