//! Exact row reduction over the rationals.

use num_traits::{One, Zero};

use crate::scalar::Rational;

/// Reduced row echelon form of `rows` (all rows must share a length).
/// Returns the nonzero rows and the pivot column of each.
pub fn rref(rows: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut mat: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = mat.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        let Some(found) = (top..mat.len()).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(top, found);
        let inv = Rational::one() / &mat[top][col];
        for v in mat[top].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = mat[top].clone();
        for (r, row) in mat.iter_mut().enumerate() {
            if r == top || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                *v -= &factor * p;
            }
        }
        pivots.push(col);
        top += 1;
        if top == mat.len() {
            break;
        }
    }
    mat.truncate(top);
    (mat, pivots)
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    rref(rows).1.len()
}

/// Basis of `{x : A x = 0}` where `A` has the given rows and `ncols` columns.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (reduced, pivots) = rref(rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// `dim(U ∩ W) = dim U + dim W - dim(U + W)` for subspaces given by
/// spanning rows.
pub fn intersection_dim(u: &[Vec<Rational>], w: &[Vec<Rational>]) -> usize {
    let stacked: Vec<Vec<Rational>> = u.iter().chain(w).cloned().collect();
    rank(u) + rank(w) - rank(&stacked)
}
