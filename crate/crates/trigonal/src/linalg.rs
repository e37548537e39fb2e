//! Exact right-kernel computation via fraction-free Gaussian elimination.
//!
//! The elimination is Bareiss-style: each update is
//! `(pivot·a − col·b) / previous_pivot` with the division exact, which keeps
//! intermediate growth polynomial when the entries are integers (rational
//! rows are pre-scaled to integers first). Pivoting always picks the first
//! nonzero candidate, so the result is deterministic — a requirement for
//! canonical, bit-stable output downstream.

use crate::field::{FieldElement, FieldSpec};

/// Basis of the right kernel `{v : M·v = 0}` of a `rows × cols` matrix,
/// one vector per free column, in ascending free-column order.
///
/// The basis vectors are normalized so each has `1` at its free column; any
/// further normalization is up to the caller.
pub fn kernel_basis<K: FieldElement>(spec: FieldSpec, cols: usize, mat: &[Vec<K>]) -> Vec<Vec<K>> {
    let mut m: Vec<Vec<K>> = mat
        .iter()
        .map(|row| {
            debug_assert_eq!(row.len(), cols);
            clear_denominators(row)
        })
        .collect();
    let rows = m.len();

    // Fraction-free forward elimination, recording pivot positions.
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut prev = K::one(&spec);
    let mut r = 0usize;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        for i in (r + 1)..rows {
            for j in (c + 1)..cols {
                let num = m[r][c].mul(&m[i][j]).sub(&m[i][c].mul(&m[r][j]));
                m[i][j] = num
                    .checked_div(&prev)
                    .expect("Bareiss pivot is nonzero");
            }
            m[i][c] = K::zero(&spec);
        }
        prev = m[r][c].clone();
        pivots.push((r, c));
        r += 1;
        if r == rows {
            break;
        }
    }

    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();

    // Back-substitute one kernel vector per free column.
    let mut basis = Vec::with_capacity(free_cols.len());
    for &fc in &free_cols {
        let mut v = vec![K::zero(&spec); cols];
        v[fc] = K::one(&spec);
        for &(pr, pc) in pivots.iter().rev() {
            let mut acc = K::zero(&spec);
            for j in (pc + 1)..cols {
                if !v[j].is_zero() {
                    acc = acc.add(&m[pr][j].mul(&v[j]));
                }
            }
            v[pc] = acc.neg().checked_div(&m[pr][pc]).expect("pivot nonzero");
        }
        basis.push(v);
    }
    basis
}

/// Rank of the matrix (computed by the same deterministic elimination).
pub fn rank<K: FieldElement>(spec: FieldSpec, cols: usize, mat: &[Vec<K>]) -> usize {
    cols - kernel_basis(spec, cols, mat).len()
}

/// Scales a row by its least common denominator (identity over prime
/// fields); row scaling preserves the kernel.
fn clear_denominators<K: FieldElement>(row: &[K]) -> Vec<K> {
    if row.is_empty() {
        return Vec::new();
    }
    let spec = row[0].spec();
    let scale = K::integral_row_scale(&spec, row);
    if scale.is_one() {
        return row.to_vec();
    }
    row.iter().map(|e| e.mul(&scale)).collect()
}
