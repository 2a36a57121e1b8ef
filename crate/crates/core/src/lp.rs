//! Phase-one simplex for `{x ≥ 0 : A x = b}`.
//!
//! Bland's rule (lowest-index entering column, lowest-index leaving basic
//! variable among ratio ties) guarantees termination. Over the exact backend
//! the verdict is exact: infeasibility means the artificial objective stays
//! strictly positive at the optimum.

use crate::field::Field;
use crate::linalg::{Matrix, Vector};

#[derive(Clone, Debug, PartialEq)]
pub enum Feasibility<T> {
    Feasible(Vector<T>),
    /// Optimal phase-one objective (sum of artificial variables), strictly positive.
    Infeasible(T),
}

impl<T> Feasibility<T> {
    pub fn solution(self) -> Option<Vector<T>> {
        match self {
            Feasibility::Feasible(x) => Some(x),
            Feasibility::Infeasible(_) => None,
        }
    }
}

pub fn find_nonnegative<T: Field>(a: &Matrix<T>, b: &Vector<T>) -> Feasibility<T> {
    find_nonnegative_with(a, b, T::default_tol())
}

pub fn find_nonnegative_with<T: Field>(a: &Matrix<T>, b: &Vector<T>, tol: f64) -> Feasibility<T> {
    let m = a.rows();
    let n = a.cols();
    assert_eq!(m, b.dim(), "constraint rows must match right-hand side");
    let width = n + m;

    // Tableau rows: [A | I | b] with rows negated where b < 0.
    let mut t: Vec<Vec<T>> = (0..m)
        .map(|i| {
            let flip = b[i].sign(tol) < 0;
            let mut row: Vec<T> = a.row_slice(i).to_vec();
            row.extend((0..m).map(|k| if k == i { T::one() } else { T::zero() }));
            row.push(b[i].clone());
            if flip {
                for v in row.iter_mut().take(n) {
                    *v = -v.clone();
                }
                row[width] = -row[width].clone();
            }
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..width).collect();

    // Reduced costs of the phase-one objective (sum of artificials).
    let mut cost: Vec<T> = vec![T::zero(); width + 1];
    for row in &t {
        for j in 0..n {
            cost[j] = cost[j].clone() - row[j].clone();
        }
        cost[width] = cost[width].clone() - row[width].clone();
    }

    while let Some(enter) = (0..width).find(|&j| cost[j].sign(tol) < 0) {
        let mut leave: Option<(usize, T)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter].sign(tol) <= 0 {
                continue;
            }
            let ratio = row[width].clone() / row[enter].clone();
            leave = match leave {
                None => Some((i, ratio)),
                Some((li, lr)) => {
                    let diff = ratio.clone() - lr.clone();
                    match diff.sign(tol) {
                        d if d < 0 => Some((i, ratio)),
                        0 if basis[i] < basis[li] => Some((i, ratio)),
                        _ => Some((li, lr)),
                    }
                }
            };
        }
        // The phase-one objective is bounded below by zero, so a pivot row exists.
        let (r, _) = leave.expect("phase-one problem is bounded");
        pivot(&mut t, &mut cost, r, enter);
        basis[r] = enter;
    }

    let objective = -cost[width].clone();
    if !objective.is_negligible(tol) {
        return Feasibility::Infeasible(objective);
    }
    let mut x = vec![T::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width].clone();
        }
    }
    Feasibility::Feasible(Vector::new(x))
}

fn pivot<T: Field>(t: &mut [Vec<T>], cost: &mut [T], r: usize, c: usize) {
    let inv = T::one() / t[r][c].clone();
    for v in t[r].iter_mut() {
        *v = v.clone() * inv.clone();
    }
    let pivot_row = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == r {
            continue;
        }
        let f = row[c].clone();
        if f.is_negligible(0.0) {
            continue;
        }
        for (v, p) in row.iter_mut().zip(&pivot_row) {
            *v = v.clone() - f.clone() * p.clone();
        }
    }
    let f = cost[c].clone();
    if !f.is_negligible(0.0) {
        for (v, p) in cost.iter_mut().zip(&pivot_row) {
            *v = v.clone() - f.clone() * p.clone();
        }
    }
}
