#![allow(clippy::needless_range_loop)]

mod common;

use common::{cp_oracle, q, to_q, Q};
use num_traits::{Signed, Zero};
use phaselab::field::Rational;
use phaselab::frames::{self, Frame};
use phaselab::linalg::Vector;
use phaselab::reconstruct::{cp_ambiguous_pair, measure, reconstruct_brute, MeasurementSet};
use proptest::prelude::*;

fn frame(d: usize, rows: &[Vec<i64>]) -> Frame<Rational> {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    Frame::from_i64(d, &refs).unwrap()
}

fn canonical(mut x: Vec<Q>) -> Vec<Q> {
    if x.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        x.iter_mut().for_each(|c| *c = -c.clone());
    }
    x
}

/// Solves `A x = b` for a full-column-rank `A`, or `None` if inconsistent.
fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = a[0].len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| r.iter().cloned().chain([v.clone()]).collect())
        .collect();
    let mut row = 0;
    for c in 0..n {
        let p = (row..m.len()).find(|&i| !m[i][c].is_zero())?;
        m.swap(row, p);
        let piv = m[row][c].clone();
        m[row].iter_mut().for_each(|v| *v /= piv.clone());
        for i in 0..m.len() {
            if i != row && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..=n {
                    let t = m[row][k].clone() * f.clone();
                    m[i][k] -= t;
                }
            }
        }
        row += 1;
    }
    if m[row..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    Some((0..n).map(|i| m[i][n].clone()).collect())
}

/// Every sign pattern on all `n` measurements, first sign pinned.
fn reconstruct_oracle(rows: &[Vec<Q>], b: &[Q]) -> Vec<Vec<Q>> {
    let n = rows.len();
    let mut out: Vec<Vec<Q>> = Vec::new();
    for mask in 0u32..1 << (n - 1) {
        let rhs: Vec<Q> = b
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if i > 0 && mask >> (i - 1) & 1 == 1 {
                    -v.clone()
                } else {
                    v.clone()
                }
            })
            .collect();
        if let Some(x) = solve(rows, &rhs) {
            let x = canonical(x);
            if !out.contains(&x) {
                out.push(x);
            }
        }
    }
    out.sort();
    out
}

fn sorted(classes: Vec<Vector<Rational>>) -> Vec<Vec<Q>> {
    let mut v: Vec<Vec<Q>> = classes.into_iter().map(|c| c.entries().to_vec()).collect();
    v.sort();
    v
}

fn nonzero_rows(d: usize, n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(
        prop::collection::vec(-2i64..=2, d).prop_filter("nonzero", |v| v.iter().any(|&c| c != 0)),
        n,
    )
}

fn spanning_frame() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (2usize..=3)
        .prop_flat_map(|d| (Just(d), nonzero_rows(d, d..=2 * d)))
        .prop_filter("spans", |(d, rows)| common::rank_gauss(&to_q(rows)) == *d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn matches_full_enumeration((d, rows) in spanning_frame(), x in prop::collection::vec(-5i64..=5, 3)) {
        let f = frame(d, &rows);
        let x = Vector::from_i64(&x[..d]);
        let b = measure(&f, &x).unwrap();
        let classes = reconstruct_brute(&f, &b).unwrap();
        prop_assert!(classes.contains(&Vector::new(canonical(x.entries().to_vec()))));
        prop_assert_eq!(sorted(classes), reconstruct_oracle(&to_q(&rows), &b.magnitudes));
    }

    #[test]
    fn permutation_invariant((d, rows) in spanning_frame(), x in prop::collection::vec(-5i64..=5, 3), shift in 0usize..8) {
        let f = frame(d, &rows);
        let n = f.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.rotate_left(shift % n);
        let g = f.permuted(&order).unwrap();
        let x = Vector::from_i64(&x[..d]);
        let a = reconstruct_brute(&f, &measure(&f, &x).unwrap()).unwrap();
        let b = reconstruct_brute(&g, &measure(&g, &x).unwrap()).unwrap();
        prop_assert_eq!(sorted(a), sorted(b));
    }
}

/// Complement property against the reconstruction oracle on 50 random
/// frames: when it holds, random signals reconstruct uniquely; when it
/// fails, the witness gives two inequivalent signals with equal measurements.
#[test]
fn complement_property_agrees_with_reconstruction() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let (mut holds, mut fails) = (0, 0);
    for trial in 0..50 {
        let d = 2 + trial % 2;
        let n = rng.gen_range(d..=2 * d);
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| loop {
                let v: Vec<i64> = (0..d).map(|_| rng.gen_range(-2..=2)).collect();
                if v.iter().any(|&c| c != 0) {
                    break v;
                }
            })
            .collect();
        if common::rank_gauss(&to_q(&rows)) < d {
            continue;
        }
        let f = frame(d, &rows);
        let cp = frames::complement_property(&f).unwrap();
        assert_eq!(cp.holds, cp_oracle(&to_q(&rows)));
        if cp.holds {
            holds += 1;
            for _ in 0..10 {
                let x: Vec<i64> = (0..d).map(|_| rng.gen_range(-9..=9)).collect();
                let classes = reconstruct_brute(&f, &measure(&f, &Vector::from_i64(&x)).unwrap()).unwrap();
                assert_eq!(classes.len(), 1, "frame {rows:?} signal {x:?}");
            }
        } else {
            fails += 1;
            let w = cp.witness.unwrap();
            let (u, v) = cp_ambiguous_pair(&f, &w).unwrap().expect("neither side spans");
            assert_eq!(measure(&f, &u).unwrap(), measure(&f, &v).unwrap());
            let (cu, cv) = (canonical(u.entries().to_vec()), canonical(v.entries().to_vec()));
            assert_ne!(cu, cv, "the pair must be inequivalent");
            let classes = sorted(reconstruct_brute(&f, &measure(&f, &u).unwrap()).unwrap());
            assert!(classes.contains(&cu) && classes.contains(&cv));
        }
    }
    assert!(holds > 0 && fails > 0, "sample covers both verdicts ({holds}, {fails})");
}

#[test]
fn unique_class_example() {
    let f = frame(2, &[vec![1, 0], vec![0, 1], vec![1, 1]]);
    let b = MeasurementSet {
        magnitudes: vec![q(1), q(2), q(3)],
    };
    assert_eq!(sorted(reconstruct_brute(&f, &b).unwrap()), vec![vec![q(1), q(2)]]);
    assert_eq!(
        reconstruct_oracle(&to_q(&[vec![1, 0], vec![0, 1], vec![1, 1]]), &b.magnitudes),
        vec![vec![q(1), q(2)]]
    );
}
