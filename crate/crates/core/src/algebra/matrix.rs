use num_traits::{One, Zero};

use super::{Int, Rat};

/// Determinant of a square integer matrix by fraction-free (Bareiss)
/// elimination.
pub fn bareiss_det(mut m: Vec<Vec<Int>>) -> Int {
    let n = m.len();
    if n == 0 {
        return Int::one();
    }
    let mut sign = 1i32;
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = Int::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Row-reduce a rational matrix in place; returns the rank.
pub fn rat_gauss_rank(m: &mut Vec<Vec<Rat>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..rows).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else { continue };
        m.swap(rank, p);
        let inv = Rat::one() / m[rank][col].clone();
        for c in col..cols {
            let v = m[rank][c].clone() * &inv;
            m[rank][c] = v;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..cols {
                    let delta = &factor * &m[rank][c];
                    m[r][c] -= delta;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Null-space generator of a rational matrix whose kernel is exactly
/// one-dimensional; `None` when the kernel dimension differs from 1.
/// Rows are linear forms; columns are the `n` variables.
pub fn nullspace_dim1(rows: &[Vec<Rat>], n: usize) -> Option<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let rank = rat_gauss_rank(&mut m);
    if rank + 1 != n {
        return None;
    }
    // Identify pivot columns of the reduced matrix.
    let mut pivots = Vec::with_capacity(rank);
    let mut col = 0;
    for r in 0..rank {
        while col < n && m[r][col].is_zero() {
            col += 1;
        }
        pivots.push(col);
        col += 1;
    }
    let free_col = (0..n).find(|c| !pivots.contains(c))?;
    let mut v = vec![Rat::zero(); n];
    v[free_col] = Rat::one();
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = -m[r][free_col].clone();
    }
    Some(v)
}

/// Characteristic polynomial coefficients of a square rational matrix by the
/// Faddeev–LeVerrier recurrence; returns `c` with
/// `det(sI - M) = s^n + c[n-1] s^{n-1} + ... + c[0]`.
pub fn charpoly(m: &[Vec<Rat>]) -> Vec<Rat> {
    let n = m.len();
    let mut coeffs = vec![Rat::zero(); n];
    let mut aux: Vec<Vec<Rat>> = m.to_vec();
    for k in 1..=n {
        let trace: Rat = (0..n).map(|i| aux[i][i].clone()).fold(Rat::zero(), |a, b| a + b);
        let c = -trace / Rat::from_integer(Int::from(k as i64));
        coeffs[n - k] = c.clone();
        if k == n {
            break;
        }
        for i in 0..n {
            aux[i][i] += &c;
        }
        // aux = M * aux
        let mut next = vec![vec![Rat::zero(); n]; n];
        for i in 0..n {
            for l in 0..n {
                if m[i][l].is_zero() {
                    continue;
                }
                for j in 0..n {
                    let delta = &m[i][l] * &aux[l][j];
                    next[i][j] += delta;
                }
            }
        }
        aux = next;
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat_from_int;

    #[test]
    fn det_small() {
        let m = vec![
            vec![Int::from(1), Int::from(2)],
            vec![Int::from(3), Int::from(4)],
        ];
        assert_eq!(bareiss_det(m), Int::from(-2));
        let id3 = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| if i == j { Int::from(1) } else { Int::from(0) })
                    .collect()
            })
            .collect::<Vec<_>>();
        assert_eq!(bareiss_det(id3), Int::from(1));
    }

    #[test]
    fn nullspace() {
        // x + y + z = 0, x - y = 0 -> kernel spanned by (1, 1, -2)
        let rows = vec![
            vec![rat_from_int(1), rat_from_int(1), rat_from_int(1)],
            vec![rat_from_int(1), rat_from_int(-1), rat_from_int(0)],
        ];
        let v = nullspace_dim1(&rows, 3).unwrap();
        // Verify orthogonality rather than a specific scaling.
        for row in &rows {
            let dot: Rat = row
                .iter()
                .zip(&v)
                .map(|(a, b)| a * b)
                .fold(Rat::zero(), |a, b| a + b);
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn charpoly_2x2() {
        // [[2, 1], [0, 3]]: char poly s^2 - 5s + 6
        let m = vec![
            vec![rat_from_int(2), rat_from_int(1)],
            vec![rat_from_int(0), rat_from_int(3)],
        ];
        let c = charpoly(&m);
        assert_eq!(c, vec![rat_from_int(6), rat_from_int(-5)]);
    }
}
