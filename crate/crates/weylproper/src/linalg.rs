//! Minimal exact linear algebra over the rationals: reduced row echelon
//! form, rank, and kernel bases. Deterministic — pivots are always the first
//! nonzero entry in column order — so downstream certificates are stable.

use num_traits::{One, Zero};

use crate::exact::Rational;

pub(crate) type Matrix = Vec<Vec<Rational>>;

/// Reduce `m` in place to reduced row echelon form; returns the pivot
/// columns in order.
pub(crate) fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pivot_row) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pivot_row);
        let inv = m[r][c].recip();
        for x in &mut m[r] {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub(crate) fn rank(mut m: Matrix) -> usize {
    rref(&mut m).len()
}

/// A basis of the kernel of the linear map given by the rows of `m` acting
/// on column vectors of length `cols` (one vector per free column, with a 1
/// in the free coordinate).
pub(crate) fn kernel_basis(m: &Matrix, cols: usize) -> Matrix {
    let mut reduced = m.clone();
    let pivots = rref(&mut reduced);
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -reduced[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// A basis of the row space of `m`: the nonzero rows of its RREF.
pub(crate) fn row_space_basis(mut m: Matrix) -> Matrix {
    let pivots = rref(&mut m);
    m.truncate(pivots.len());
    m
}
