//! Dense exact Gaussian elimination.

use crate::scalar::ExactField;

/// Rank of a dense matrix given as rows, by exact row reduction.
///
/// Rows may be empty (zero columns); an empty row list has rank 0.
pub fn rank<T: ExactField>(rows: &[Vec<T>]) -> usize {
    let mut mat: Vec<Vec<T>> = rows.to_vec();
    let n_rows = mat.len();
    let n_cols = mat.first().map_or(0, Vec::len);
    debug_assert!(mat.iter().all(|r| r.len() == n_cols));

    let mut pivot_row = 0;
    for col in 0..n_cols {
        if pivot_row == n_rows {
            break;
        }
        let Some(found) = (pivot_row..n_rows).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(pivot_row, found);
        let (top, rest) = mat.split_at_mut(pivot_row + 1);
        let pivot = &top[pivot_row];
        for row in rest.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone() / pivot[col].clone();
            for (x, p) in row.iter_mut().zip(pivot.iter()).skip(col) {
                *x = x.clone() - factor.clone() * p.clone();
            }
        }
        pivot_row += 1;
    }
    pivot_row
}

/// Exact determinant of a square matrix.
pub fn determinant<T: ExactField>(rows: &[Vec<T>]) -> T {
    let n = rows.len();
    let mut mat = rows.to_vec();
    let mut det = T::one();
    for col in 0..n {
        let Some(found) = (col..n).find(|&r| !mat[r][col].is_zero()) else {
            return T::zero();
        };
        if found != col {
            mat.swap(col, found);
            det = -det;
        }
        det = det * mat[col][col].clone();
        let (top, rest) = mat.split_at_mut(col + 1);
        let pivot = &top[col];
        for row in rest.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone() / pivot[col].clone();
            for (x, p) in row.iter_mut().zip(pivot.iter()).skip(col) {
                *x = x.clone() - factor.clone() * p.clone();
            }
        }
    }
    det
}

/// Converts an integer matrix into one over `T`.
pub fn lift<T: ExactField>(rows: &[Vec<i64>]) -> Vec<Vec<T>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| T::from_int(x)).collect())
        .collect()
}
