//! Brute-force phaseless reconstruction, used as an operational oracle for
//! the complement property.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::frames::Frame;
use crate::linalg::{self, Matrix, Vector};

/// Largest frame size accepted by [`reconstruct_brute`].
pub const RECONSTRUCT_GUARD: usize = 24;
/// Entries of random signals in [`pr_empirical`] are integers in `[-R, R]`.
pub const SIGNAL_RANGE: i64 = 20;

#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementSet<T> {
    pub magnitudes: Vec<T>,
}

pub fn measure<T: Field>(frame: &Frame<T>, x: &Vector<T>) -> Result<MeasurementSet<T>> {
    if x.dim() != frame.dim() {
        return Err(Error::Dimension(format!(
            "signal has dimension {}, frame lives in R^{}",
            x.dim(),
            frame.dim()
        )));
    }
    Ok(MeasurementSet {
        magnitudes: frame.vectors().iter().map(|v| v.dot(x).abs_val()).collect(),
    })
}

/// Representative of `±x` whose first nonzero entry is positive.
fn canonical<T: Field>(x: Vector<T>) -> Vector<T> {
    let tol = T::default_tol();
    match x.iter().find(|c| !c.is_negligible(tol)) {
        Some(c) if c.sign(tol) < 0 => x.scale(&-T::one()),
        _ => x,
    }
}

/// First `d` linearly independent frame indices, scanning in order.
fn basis_rows<T: Field>(frame: &Frame<T>) -> Option<Vec<usize>> {
    let d = frame.dim();
    let mut chosen: Vec<usize> = Vec::with_capacity(d);
    let mut rows: Vec<Vector<T>> = Vec::with_capacity(d);
    for (i, v) in frame.vectors().iter().enumerate() {
        rows.push(v.clone());
        let m = Matrix::from_row_vectors(&rows).expect("shared dimension");
        if linalg::rank(&m) == rows.len() {
            chosen.push(i);
            if chosen.len() == d {
                return Some(chosen);
            }
        } else {
            rows.pop();
        }
    }
    None
}

/// Every class `±x` with `|⟨x, φ_i⟩| = b_i` for all `i`.
///
/// A solution is determined by its signs on any basis of rows, so only the
/// `2^(d−1)` sign patterns on the first independent `d` rows are solved; the
/// remaining rows are checked exactly. This returns the same classes as
/// solving all `2^(n−1)` patterns.
pub fn reconstruct_brute<T: Field>(frame: &Frame<T>, b: &MeasurementSet<T>) -> Result<Vec<Vector<T>>> {
    let n = frame.len();
    if n > RECONSTRUCT_GUARD {
        return Err(Error::Guard(format!(
            "sign enumeration over {n} measurements exceeds the limit of {RECONSTRUCT_GUARD}"
        )));
    }
    if b.magnitudes.len() != n {
        return Err(Error::Dimension(format!(
            "{} magnitudes for {n} frame vectors",
            b.magnitudes.len()
        )));
    }
    let tol = T::default_tol();
    if let Some(i) = b.magnitudes.iter().position(|v| v.sign(tol) < 0) {
        return Err(Error::InvalidInput(format!("magnitude {} is negative", i + 1)));
    }
    let rows = basis_rows(frame).ok_or_else(|| Error::InvalidInput("frame vectors do not span the space".into()))?;
    let basis = Matrix::from_row_vectors(&rows.iter().map(|&i| frame.vector(i).clone()).collect::<Vec<_>>())?;
    let inv = linalg::inverse(&basis)?.expect("independent rows");
    // Sign choices only matter where the magnitude is nonzero; the first
    // such row is pinned to `+` to quotient out the global sign.
    let free: Vec<usize> = rows
        .iter()
        .enumerate()
        .filter(|(_, &i)| !b.magnitudes[i].is_negligible(tol))
        .map(|(k, _)| k)
        .skip(1)
        .collect();

    let candidates: Vec<Option<Vector<T>>> = (0..1u64 << free.len())
        .into_par_iter()
        .map(|mask| {
            let mut rhs: Vec<T> = rows.iter().map(|&i| b.magnitudes[i].clone()).collect();
            for (bit, &k) in free.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    rhs[k] = -rhs[k].clone();
                }
            }
            let x = inv.mul_vec(&Vector::new(rhs)).expect("square inverse");
            let consistent = frame
                .vectors()
                .iter()
                .zip(&b.magnitudes)
                .all(|(v, m)| v.dot(&x).abs_val().approx_eq(m, tol));
            consistent.then(|| canonical(x))
        })
        .collect();

    let mut classes: Vec<Vector<T>> = Vec::new();
    for x in candidates.into_iter().flatten() {
        if !classes.iter().any(|c| c.approx_eq(&x, tol)) {
            classes.push(x);
        }
    }
    Ok(classes)
}

/// Random integer signal with entries in `[-SIGNAL_RANGE, SIGNAL_RANGE]`, not all zero.
pub fn random_signal<T: Field>(rng: &mut ChaCha8Rng, d: usize) -> Vector<T> {
    loop {
        let v: Vec<i64> = (0..d).map(|_| rng.gen_range(-SIGNAL_RANGE..=SIGNAL_RANGE)).collect();
        if v.iter().any(|&c| c != 0) {
            return Vector::from_i64(&v);
        }
    }
}

/// Operational phase retrieval test: `false` as soon as one random signal
/// has an ambiguous reconstruction. `true` is probabilistic.
pub fn pr_empirical<T: Field>(frame: &Frame<T>, trials: usize, seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let x = random_signal(&mut rng, frame.dim());
        let classes = reconstruct_brute(frame, &measure(frame, &x)?)?;
        if classes.len() > 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Two signals `u + v` and `u − v` with equal measurements, built from a
/// complement-property witness `I`: `u ⊥ φ_i` for `i ∈ I`, `v ⊥ φ_i` for `i ∉ I`.
/// Returns `None` if either side spans.
pub fn cp_ambiguous_pair<T: Field>(frame: &Frame<T>, witness: &[usize]) -> Result<Option<(Vector<T>, Vector<T>)>> {
    let (n, d) = (frame.len(), frame.dim());
    if let Some(&i) = witness.iter().find(|&&i| i >= n) {
        return Err(Error::InvalidInput(format!(
            "witness index {i} out of range for {n} vectors"
        )));
    }
    let orth = |idx: &[usize]| -> Option<Vector<T>> {
        if idx.is_empty() {
            return Some(Vector::unit(d, 0));
        }
        let rows: Vec<Vector<T>> = idx.iter().map(|&i| frame.vector(i).clone()).collect();
        let ns = linalg::nullspace(&Matrix::from_row_vectors(&rows).expect("shared dimension"));
        (ns.cols() > 0).then(|| ns.column(0))
    };
    let complement: Vec<usize> = (0..n).filter(|i| !witness.contains(i)).collect();
    let (Some(u), Some(v)) = (orth(witness), orth(&complement)) else {
        return Ok(None);
    };
    Ok(Some((u.add(&v), u.sub(&v))))
}
