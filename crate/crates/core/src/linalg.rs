//! Dense exact linear algebra over the rationals.
//!
//! Sizes here are desk scale (a few hundred columns at most), so plain
//! Gaussian elimination with first-nonzero pivoting is enough and keeps the
//! results deterministic.

use num_traits::Zero;

use crate::rat::Rat;

/// Reduces `mat` to row echelon form in place; returns the pivot columns.
pub(crate) fn row_reduce(mat: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].clone().recip();
        for x in &mut mat[r][c..] {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in c..cols {
                    let t = &mat[r][j] * &f;
                    mat[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Basis of the right nullspace of `mat` (rows are equations).
pub(crate) fn nullspace(mat: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let mut work: Vec<Vec<Rat>> = mat.to_vec();
    let pivots = row_reduce(&mut work);
    let mut basis = Vec::new();
    let pivot_of_col: Vec<Option<usize>> = {
        let mut v = vec![None; cols];
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = Some(r);
        }
        v
    };
    for free in 0..cols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut vec = vec![Rat::zero(); cols];
        vec[free] = Rat::from_integer(1.into());
        for (&c, r) in pivots.iter().zip(0..) {
            vec[c] = -work[r][free].clone();
        }
        basis.push(vec);
    }
    basis
}

/// Solves `A x = b` exactly. Returns `None` when inconsistent; free unknowns
/// are set to zero.
pub(crate) fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.contains(&cols) {
        return None; // pivot in the augmented column
    }
    let mut x = vec![Rat::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    Some(x)
}
