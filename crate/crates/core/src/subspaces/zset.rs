//! Randomized probe for nonzero members of the rank-two variety
//! `{Q = Qᵀ : rank Q ≤ 2, Tr(P_j Q) = 0}`.
//!
//! Each trial starts from `Q = xxᵀ − yyᵀ` and alternates the orthogonal
//! projection onto the linear constraints with rank-two truncation, keeping
//! `‖Q‖_F = 1`. Candidates below [`NEAR_TOL`] are snapped to exact matrices
//! and re-verified with [`z_membership`]:
//!
//! 1. entrywise rounding to small rationals;
//! 2. rank-two completion `b₁b₂ᵀ + b₂b₁ᵀ`, where `b₁` is the rounded dominant
//!    eigenvector and `b₂ ⊥ P_j b₁` for every `j` (an exact member whenever
//!    such `b₂` exists and is independent of `b₁`).

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rayon::prelude::*;

use super::falsifier::{gaussian_unit, rational_candidates, restart_rng};
use super::{z_membership, Arrangement, ZMember, ROUNDING_MAX_DEN};
use crate::field::Field;
use crate::linalg::{self, Matrix, Vector};

/// Residual below which a unit-norm rank-two `Q` is treated as a near-member.
pub const NEAR_TOL: f64 = 1e-8;
const ITERATIONS: usize = 1000;

#[derive(Clone, Debug, PartialEq)]
pub struct ZProbeReport<T> {
    pub trials: usize,
    pub seed: u64,
    /// Smallest distance `‖Q − Π_L Q‖_F` reached by a unit-norm rank-two `Q`.
    pub min_residual: f64,
    pub near_members: usize,
    pub exact_members: usize,
    /// First exactly verified nonzero member (lowest trial index).
    pub example: Option<ZMember<T>>,
    pub near_tol: f64,
}

struct Trial<T> {
    residual: f64,
    exact: Option<ZMember<T>>,
}

struct Constraints {
    mats: Vec<DMatrix<f64>>,
    gram_pinv: DMatrix<f64>,
}

impl Constraints {
    fn new(mats: Vec<DMatrix<f64>>) -> Self {
        let m = mats.len();
        let gram = DMatrix::from_fn(m, m, |i, j| mats[i].dot(&mats[j]));
        let gram_pinv = gram.pseudo_inverse(1e-12).expect("pseudo-inverse of a Gram matrix");
        Constraints { mats, gram_pinv }
    }

    fn project(&self, q: &DMatrix<f64>) -> DMatrix<f64> {
        let ell = DVector::from_iterator(self.mats.len(), self.mats.iter().map(|a| a.dot(q)));
        let alpha = &self.gram_pinv * ell;
        let mut out = q.clone();
        for (a, c) in self.mats.iter().zip(alpha.iter()) {
            out -= a * *c;
        }
        out
    }
}

fn truncate_rank2(q: &DMatrix<f64>) -> (DMatrix<f64>, DVector<f64>) {
    let d = q.nrows();
    let sym = (q + q.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].abs().total_cmp(&eig.eigenvalues[a].abs()));
    let mut out = DMatrix::zeros(d, d);
    for &i in order.iter().take(2) {
        let v = eig.eigenvectors.column(i);
        out += v * v.transpose() * eig.eigenvalues[i];
    }
    (out, eig.eigenvectors.column(order[0]).into_owned())
}

fn snap_entries<T: Field>(arrangement: &Arrangement<T>, q: &DMatrix<f64>) -> Option<ZMember<T>> {
    let d = q.nrows();
    let flat: Vec<f64> = (0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .map(|(i, j)| 0.5 * (q[(i, j)] + q[(j, i)]))
        .collect();
    rational_candidates(&flat, ROUNDING_MAX_DEN)
        .into_iter()
        .map(|c| {
            let rows = c.chunks(d).map(|r| r.iter().map(T::from_rational).collect()).collect();
            Matrix::from_rows(rows).expect("square")
        })
        .filter(|m: &Matrix<T>| !m.is_zero(T::default_tol()))
        .find_map(|m| z_membership(arrangement, &m).ok().filter(|z| z.member))
}

fn snap_completion<T: Field>(arrangement: &Arrangement<T>, dominant: &DVector<f64>) -> Option<ZMember<T>> {
    let d = dominant.len();
    let tol = T::default_tol();
    rational_candidates(dominant.as_slice(), ROUNDING_MAX_DEN)
        .into_iter()
        .map(|c| Vector::new(c.iter().map(T::from_rational).collect::<Vec<T>>()))
        .find_map(|b1| {
            let rows: Vec<Vector<T>> = arrangement
                .subspaces()
                .iter()
                .map(|w| w.project(&b1).expect("dimension"))
                .collect();
            let ns = linalg::nullspace(&Matrix::from_row_vectors(&rows).ok()?);
            ns.columns().into_iter().find_map(|b2| {
                let pair = Matrix::from_columns(d, &[b1.clone(), b2.clone()]).ok()?;
                if linalg::rank(&pair) < 2 {
                    return None;
                }
                let q = b1.outer_with(&b2).add(&b2.outer_with(&b1)).ok()?;
                if q.is_zero(tol) {
                    return None;
                }
                z_membership(arrangement, &q).ok().filter(|z| z.member)
            })
        })
}

fn run_trial<T: Field>(arrangement: &Arrangement<T>, constraints: &Constraints, seed: u64, index: usize) -> Trial<T> {
    let d = arrangement.dim();
    let mut rng = restart_rng(seed, index);
    let x = gaussian_unit(&mut rng, d);
    let y = gaussian_unit(&mut rng, d);
    let mut q = &x * x.transpose() - &y * y.transpose();
    let mut dominant = x.clone();
    let mut residual = f64::INFINITY;
    let mut checkpoint = f64::INFINITY;
    for it in 0..ITERATIONS {
        let n = q.norm();
        if n < 1e-300 {
            break;
        }
        q /= n;
        let projected = constraints.project(&q);
        residual = (&q - &projected).norm();
        if residual < 1e-14 {
            break;
        }
        if it % 100 == 99 {
            // stalled away from the variety
            if residual > NEAR_TOL && checkpoint - residual < 1e-3 * checkpoint {
                break;
            }
            checkpoint = residual;
        }
        let (t, dom) = truncate_rank2(&projected);
        q = t;
        dominant = dom;
    }
    let exact = if residual < NEAR_TOL {
        snap_entries(arrangement, &q).or_else(|| snap_completion(arrangement, &dominant))
    } else {
        None
    };
    Trial { residual, exact }
}

pub fn z_random_probe<T: Field>(arrangement: &Arrangement<T>, trials: usize, seed: u64) -> ZProbeReport<T> {
    let d = arrangement.dim();
    let mats: Vec<DMatrix<f64>> = arrangement
        .subspaces()
        .iter()
        .map(|w| DMatrix::from_row_slice(d, d, w.projector().to_f64().data()))
        .collect();
    let constraints = Constraints::new(mats);
    let results: Vec<Trial<T>> = (0..trials)
        .into_par_iter()
        .map(|i| run_trial(arrangement, &constraints, seed, i))
        .collect();
    let min_residual = results.iter().map(|t| t.residual).fold(f64::INFINITY, f64::min);
    let near_members = results.iter().filter(|t| t.residual < NEAR_TOL).count();
    let exact_members = results.iter().filter(|t| t.exact.is_some()).count();
    let example = results.into_iter().find_map(|t| t.exact);
    ZProbeReport {
        trials,
        seed,
        min_residual,
        near_members,
        exact_members,
        example,
        near_tol: NEAR_TOL,
    }
}
