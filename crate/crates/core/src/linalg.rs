//! Exact dense linear algebra over any coefficient field: reduced row
//! echelon form, null spaces, and linear solves. Pivoting is deterministic
//! (first nonzero entry in column order), so results are reproducible.

use crate::field::CoeffField;

/// Bring `rows` into reduced row echelon form in place; returns the pivot
/// columns in order.
pub fn rref<C: CoeffField>(rows: &mut [Vec<C>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(pivot_row) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = rows[rank][col].inv().expect("pivot is nonzero");
        for entry in rows[rank].iter_mut() {
            *entry = entry.mul(&inv);
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in 0..ncols {
                    let delta = rows[rank][c].mul(&factor);
                    rows[r][c] = rows[r][c].sub(&delta);
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    pivots
}

/// Basis of the null space of the matrix, one vector per free column,
/// ordered by free column index.
pub fn nullspace<C: CoeffField>(rows: &[Vec<C>], ncols: usize) -> Vec<Vec<C>> {
    let mut work: Vec<Vec<C>> = rows.to_vec();
    let pivots = rref(&mut work, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in 0..ncols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![C::zero(); ncols];
        v[free] = C::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = work[row][free].neg();
        }
        basis.push(v);
    }
    basis
}

/// Solve `sum_i x_i col_i = target` for the columns of `cols`; `None` when
/// the system is inconsistent.
pub fn solve_columns<C: CoeffField>(cols: &[Vec<C>], target: &[C]) -> Option<Vec<C>> {
    let nrows = target.len();
    let n = cols.len();
    let mut rows: Vec<Vec<C>> = Vec::with_capacity(nrows);
    for r in 0..nrows {
        let mut row: Vec<C> = Vec::with_capacity(n + 1);
        for col in cols {
            row.push(col[r].clone());
        }
        row.push(target[r].clone());
        rows.push(row);
    }
    let pivots = rref(&mut rows, n + 1);
    if pivots.contains(&n) {
        return None; // pivot in the augmented column
    }
    let mut x = vec![C::zero(); n];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = rows[row][n].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn s(n: i64) -> Scalar {
        Scalar::int(n)
    }

    #[test]
    fn nullspace_of_rank_one() {
        // x + y = 0 over Q(q, alpha)
        let rows = vec![vec![s(1), s(1)]];
        let ns = nullspace(&rows, 2);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![s(-1), s(1)]);
    }

    #[test]
    fn nullspace_symbolic_entries() {
        // q x - y = 0: y free gives (q^{-1}, 1)
        let rows = vec![vec![Scalar::q_pow(1), s(-1)]];
        let ns = nullspace(&rows, 2);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![Scalar::q_pow(-1), Scalar::one()]);
    }

    #[test]
    fn solve_and_inconsistency() {
        let cols = vec![vec![s(1), s(0)], vec![s(1), s(1)]];
        let x = solve_columns(&cols, &[s(3), s(2)]).unwrap();
        assert_eq!(x, vec![s(1), s(2)]);
        let cols = vec![vec![s(1), s(2)]];
        assert!(solve_columns(&cols, &[s(1), s(3)]).is_none());
    }

    #[test]
    fn full_rank_has_trivial_nullspace() {
        let rows = vec![vec![s(1), s(2)], vec![s(3), s(4)]];
        assert!(nullspace(&rows, 2).is_empty());
    }
}
