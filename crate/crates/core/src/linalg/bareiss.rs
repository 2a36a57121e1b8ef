//! Fraction-free (Bareiss) elimination for the exact backend.
//!
//! Rows are first cleared of denominators, so every intermediate value is an
//! integer minor of the scaled matrix and each division below is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Matrix;
use crate::field::{denominator_lcm, Rational};

/// Integer matrix with each row scaled by the lcm of its denominators.
/// Returns the scaled rows and the product of the scale factors.
fn integerize(m: &Matrix<Rational>) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut scale = BigInt::one();
    let rows = (0..m.rows())
        .map(|i| {
            let row = m.row_slice(i);
            let l = denominator_lcm(row);
            scale *= &l;
            row.iter().map(|v| v.numer() * (&l / v.denom())).collect()
        })
        .collect();
    (rows, scale)
}

/// Runs Bareiss elimination in place. Pivots are the first nonzero entry in
/// column order. Returns (rank, number of row swaps).
fn eliminate(a: &mut [Vec<BigInt>], cols: usize) -> (usize, usize) {
    let rows = a.len();
    let mut r = 0;
    let mut swaps = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            swaps += 1;
        }
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..cols {
                let v = &pivot_row[c] * &row[j] - &factor * &pivot_row[j];
                let (q, rem) = v.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                row[j] = q;
            }
            row[c] = BigInt::zero();
        }
        prev = top[r][c].clone();
        r += 1;
    }
    (r, swaps)
}

pub fn rank(m: &Matrix<Rational>) -> usize {
    let (mut a, _) = integerize(m);
    eliminate(&mut a, m.cols()).0
}

/// Determinant of a square matrix. The caller checks squareness.
pub fn det(m: &Matrix<Rational>) -> Rational {
    let n = m.rows();
    if n == 0 {
        return Rational::one();
    }
    let (mut a, scale) = integerize(m);
    let (r, swaps) = eliminate(&mut a, n);
    if r < n {
        return Rational::zero();
    }
    let mut d = a[n - 1][n - 1].clone();
    if swaps % 2 == 1 {
        d = -d;
    }
    Rational::new(d, scale)
}
