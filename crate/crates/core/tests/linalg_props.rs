mod common;

use common::{det_cofactor, q, rank_gauss, to_q};
use num_traits::Zero;
use phaselab::field::Rational;
use phaselab::linalg::{self, Matrix, Vector};
use phaselab::lp::{self, Feasibility};
use proptest::prelude::*;

fn mat(rows: &[Vec<i64>]) -> Matrix<Rational> {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    Matrix::from_i64_rows(&refs)
}

/// Integer matrices with entries in [-10, 10]; half of them are built as a
/// product through a thin inner dimension so low rank is common.
fn int_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max, 1..=max, any::<bool>()).prop_flat_map(|(r, c, k, thin)| {
        let dense = prop::collection::vec(prop::collection::vec(-10i64..=10, c), r);
        let left = prop::collection::vec(prop::collection::vec(-3i64..=3, k), r);
        let right = prop::collection::vec(prop::collection::vec(-3i64..=3, c), k);
        (dense, left, right).prop_map(move |(d, l, rt)| {
            if !thin {
                return d;
            }
            (0..r)
                .map(|i| (0..c).map(|j| (0..k).map(|t| l[i][t] * rt[t][j]).sum()).collect())
                .collect()
        })
    })
}

fn square(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-10i64..=10, n), n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rank_matches_oracle_and_float(rows in int_matrix(6)) {
        let m = mat(&rows);
        let r = linalg::rank(&m);
        prop_assert_eq!(r, rank_gauss(&to_q(&rows)));
        prop_assert_eq!(r, linalg::rank(&m.to_f64()));
        prop_assert_eq!(r, linalg::rank(&m.transpose()));
        prop_assert!(r <= m.rows().min(m.cols()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn det_matches_cofactor(rows in square(5)) {
        prop_assert_eq!(linalg::det(&mat(&rows)).unwrap(), det_cofactor(&to_q(&rows)));
    }

    #[test]
    fn det_with_repeated_row_is_zero(rows in square(5), i in 0usize..5, j in 0usize..5) {
        let n = rows.len();
        prop_assume!(n >= 2);
        let (i, j) = (i % n, j % n);
        prop_assume!(i != j);
        let mut rows = rows;
        rows[j] = rows[i].clone();
        prop_assert!(linalg::det(&mat(&rows)).unwrap().is_zero());
    }

    #[test]
    fn nullspace_is_annihilated_and_complete(rows in int_matrix(5)) {
        let m = mat(&rows);
        let ns = linalg::nullspace(&m);
        prop_assert_eq!(ns.cols(), m.cols() - linalg::rank(&m));
        prop_assert!(m.mul(&ns).unwrap().is_zero(0.0));
        prop_assert_eq!(linalg::rank(&ns), ns.cols());
    }

    #[test]
    fn rref_is_idempotent(rows in int_matrix(5)) {
        let (r, pivots) = mat(&rows).rref(0.0);
        prop_assert_eq!(pivots.len(), linalg::rank(&mat(&rows)));
        prop_assert_eq!(r.rref(0.0).0, r);
    }

    #[test]
    fn projector_identities(rows in int_matrix(5)) {
        // Columns of a random matrix, reduced to an independent set.
        let m = mat(&rows);
        let d = m.rows();
        let (_, pivots) = m.rref(0.0);
        prop_assume!(!pivots.is_empty());
        let basis = Matrix::from_columns(d, &pivots.iter().map(|&j| m.column(j)).collect::<Vec<_>>()).unwrap();
        let p = linalg::projector_span(&basis).unwrap();
        let i = Matrix::identity(d);
        prop_assert_eq!(p.mul(&p).unwrap(), p.clone());
        prop_assert_eq!(p.transpose(), p.clone());
        let comp = i.sub(&p).unwrap();
        prop_assert_eq!(linalg::rank(&p) + linalg::rank(&comp), d);
        prop_assert_eq!(linalg::rank(&p), pivots.len());
        // P fixes every basis column.
        prop_assert_eq!(p.mul(&basis).unwrap(), basis);
    }

    #[test]
    fn hyperplane_projector_kills_normal(v in prop::collection::vec(-10i64..=10, 2..=6)) {
        prop_assume!(v.iter().any(|&c| c != 0));
        let n = Vector::<Rational>::from_i64(&v);
        let p = linalg::projector_hyperplane(&n).unwrap();
        prop_assert!(p.mul_vec(&n).unwrap().is_zero(0.0));
        prop_assert_eq!(p.trace(), q(v.len() as i64 - 1));
    }

    #[test]
    fn solve_by_substitution(rows in int_matrix(5), x in prop::collection::vec(-5i64..=5, 5)) {
        let m = mat(&rows);
        let x = Vector::from_i64(&x[..m.cols()]);
        let b = m.mul_vec(&x).unwrap();
        let y = linalg::solve(&m, &b).unwrap().expect("b is in the range");
        prop_assert_eq!(m.mul_vec(&y).unwrap(), b);
    }

    #[test]
    fn lp_solutions_are_feasible(rows in int_matrix(4), x in prop::collection::vec(0i64..=4, 4)) {
        let m = mat(&rows);
        let b = m.mul_vec(&Vector::from_i64(&x[..m.cols()])).unwrap();
        match lp::find_nonnegative(&m, &b) {
            Feasibility::Feasible(y) => {
                prop_assert!(y.iter().all(|c| *c >= Rational::zero()));
                prop_assert_eq!(m.mul_vec(&y).unwrap(), b);
            }
            other => prop_assert!(false, "feasible system reported {:?}", other),
        }
    }
}

#[test]
fn family_rows_determinant() {
    let rows = vec![vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1]];
    assert_eq!(det_cofactor(&to_q(&rows)), q(-1));
    assert_eq!(linalg::det(&mat(&rows)).unwrap(), q(-1));
}

#[test]
fn underdetermined_system() {
    let m = mat(&[vec![1, 0, 1], vec![0, 1, 1]]);
    let b = Vector::from_i64(&[1, 1]);
    let x = linalg::solve(&m, &b).unwrap().unwrap();
    assert_eq!(m.mul_vec(&x).unwrap(), b);
}
