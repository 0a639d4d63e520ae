//! Exact Gaussian elimination over a [`BaseField`].

use crate::field::{BaseField, Scalar};

/// Dense row-major matrix of scalars.
pub type Matrix = Vec<Vec<Scalar>>;

/// Reduce `rows` to row echelon form in place and return the pivot columns.
fn echelon(rows: &mut Matrix, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        for entry in rows[r].iter_mut() {
            *entry = entry.mul(&inv);
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let factor = rows[i][c].clone();
            for j in c..ncols {
                let t = rows[r][j].mul(&factor);
                rows[i][j] = rows[i][j].sub(&t);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(field: BaseField, matrix: &Matrix) -> usize {
    let Some(ncols) = matrix.first().map(Vec::len) else {
        return 0;
    };
    debug_assert!(matrix.iter().flatten().all(|s| s.field() == field));
    let mut rows = matrix.clone();
    echelon(&mut rows, ncols).len()
}

/// Find some `y` with `matrix · y = rhs`, free variables set to zero.
/// Returns `None` when the system is inconsistent.
pub fn solve(field: BaseField, matrix: &Matrix, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(matrix.len(), rhs.len(), "row count must match right-hand side");
    let ncols = matrix.first().map_or(0, Vec::len);
    let mut rows: Matrix = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut row = row.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let pivots = echelon(&mut rows, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut y = vec![field.zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        y[c] = rows[r][ncols].clone();
    }
    Some(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&v| BaseField::Rationals.from_i64(v)).collect())
            .collect()
    }

    #[test]
    fn rank_of_singular_matrix() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank(BaseField::Rationals, &m), 2);
        assert_eq!(rank(BaseField::Rationals, &q(&[&[0, 0], &[0, 0]])), 0);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = BaseField::Rationals;
        let m = q(&[&[2, 1], &[1, 3]]);
        let y = solve(f, &m, &[f.from_i64(3), f.from_i64(4)]).unwrap();
        assert_eq!(y, vec![f.from_i64(1), f.from_i64(1)]);

        let singular = q(&[&[1, 1], &[1, 1]]);
        assert!(solve(f, &singular, &[f.from_i64(1), f.from_i64(2)]).is_none());
        let y = solve(f, &singular, &[f.from_i64(2), f.from_i64(2)]).unwrap();
        assert_eq!(y, vec![f.from_i64(2), f.zero()]);
    }

    #[test]
    fn solve_over_prime_field() {
        let f = BaseField::Prime(7);
        let m: Matrix = vec![vec![f.from_i64(3), f.from_i64(1)], vec![f.from_i64(1), f.from_i64(4)]];
        let rhs = [f.from_i64(1), f.from_i64(0)];
        let y = solve(f, &m, &rhs).unwrap();
        for (row, b) in m.iter().zip(&rhs) {
            let lhs = row.iter().zip(&y).fold(f.zero(), |acc, (a, x)| acc.add(&a.mul(x)));
            assert_eq!(&lhs, b);
        }
    }
}
