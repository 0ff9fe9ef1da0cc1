//! Minimal exact-rational simplex (Bland's rule) for the tiny corner LPs:
//! maximize c.x subject to Ax <= b, x >= 0, with b >= 0 so the slack basis
//! is feasible from the start.

use num_traits::{One, Signed, Zero};

use crate::algebra::Rat;

pub struct SimplexResult {
    pub value: Rat,
    pub solution: Vec<Rat>,
}

/// Solve max c.x s.t. Ax <= b, x >= 0. Requires b >= 0. Returns `None` when
/// the objective is unbounded.
pub fn simplex_max(a: &[Vec<Rat>], b: &[Rat], c: &[Rat]) -> Option<SimplexResult> {
    let m = a.len();
    let n = c.len();
    debug_assert!(b.iter().all(|x| !x.is_negative()));
    // Tableau: rows 0..m constraints over n structural + m slack columns,
    // final row = objective (reduced costs), final column = rhs.
    let cols = n + m + 1;
    let mut t = vec![vec![Rat::zero(); cols]; m + 1];
    for i in 0..m {
        for j in 0..n {
            t[i][j] = a[i][j].clone();
        }
        t[i][n + i] = Rat::one();
        t[i][cols - 1] = b[i].clone();
    }
    for j in 0..n {
        t[m][j] = -c[j].clone();
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        // Bland: entering variable = smallest index with negative reduced cost.
        let enter = (0..n + m).find(|&j| t[m][j].is_negative());
        let Some(enter) = enter else {
            break;
        };
        // Ratio test; Bland tie-break on smallest basis variable.
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][cols - 1] / &t[i][enter];
                let better = match &best {
                    None => true,
                    Some(b) => {
                        ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(leave) = leave else {
            return None; // unbounded
        };
        // Pivot.
        let piv = t[leave][enter].clone();
        for j in 0..cols {
            t[leave][j] = &t[leave][j] / &piv;
        }
        for i in 0..=m {
            if i != leave && !t[i][enter].is_zero() {
                let f = t[i][enter].clone();
                for j in 0..cols {
                    let delta = &f * &t[leave][j];
                    t[i][j] -= delta;
                }
            }
        }
        basis[leave] = enter;
    }

    let mut solution = vec![Rat::zero(); n];
    for i in 0..m {
        if basis[i] < n {
            solution[basis[i]] = t[i][cols - 1].clone();
        }
    }
    Some(SimplexResult {
        value: t[m][cols - 1].clone(),
        solution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat_from_int;

    #[test]
    fn small_lp() {
        // max x + y s.t. x + 2y <= 4, 3x + y <= 6 -> optimum at (8/5, 6/5), value 14/5
        let a = vec![
            vec![rat_from_int(1), rat_from_int(2)],
            vec![rat_from_int(3), rat_from_int(1)],
        ];
        let b = vec![rat_from_int(4), rat_from_int(6)];
        let c = vec![rat_from_int(1), rat_from_int(1)];
        let r = simplex_max(&a, &b, &c).unwrap();
        assert_eq!(r.value, crate::algebra::rat(14, 5));
        assert_eq!(r.solution, vec![crate::algebra::rat(8, 5), crate::algebra::rat(6, 5)]);
    }

    #[test]
    fn degenerate_zero_rhs() {
        // max y s.t. y - x <= 0, x <= 1: optimum 1 at x = y = 1.
        let a = vec![
            vec![rat_from_int(-1), rat_from_int(1)],
            vec![rat_from_int(1), rat_from_int(0)],
        ];
        let b = vec![rat_from_int(0), rat_from_int(1)];
        let c = vec![rat_from_int(0), rat_from_int(1)];
        let r = simplex_max(&a, &b, &c).unwrap();
        assert_eq!(r.value, rat_from_int(1));
    }
}
