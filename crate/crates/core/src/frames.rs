//! Vector frames and their checkers: frame property, tightness, scalability,
//! full spark, complement property and phase retrieval.
//!
//! Indices in reports are zero-based; the CLI prints them one-based.
//! Phase retrieval and phaseless reconstruction are the same predicate for
//! real frames, so only one checker exists.

use std::sync::OnceLock;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Matrix, Vector};
use crate::lp;

/// Largest frame size the complement property enumeration accepts by default.
pub const CP_GUARD: usize = 30;

#[derive(Clone, Debug)]
pub struct Frame<T> {
    dim: usize,
    vectors: Vec<Vector<T>>,
    operator: OnceLock<Matrix<T>>,
}

impl<T: Field> PartialEq for Frame<T> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vectors == other.vectors
    }
}

impl<T: Field> Frame<T> {
    /// Builds a frame. Rejects empty families, zero vectors and mixed dimensions.
    pub fn new(dim: usize, vectors: Vec<Vector<T>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        if vectors.is_empty() {
            return Err(Error::InvalidInput("a frame needs at least one vector".into()));
        }
        for (i, v) in vectors.iter().enumerate() {
            if v.dim() != dim {
                return Err(Error::Dimension(format!(
                    "vector {} has dimension {}, expected {dim}",
                    i + 1,
                    v.dim()
                )));
            }
            if v.is_zero(T::default_tol()) {
                return Err(Error::ZeroVector(format!("frame vector {}", i + 1)));
            }
        }
        Ok(Frame {
            dim,
            vectors,
            operator: OnceLock::new(),
        })
    }

    pub fn from_i64(dim: usize, vectors: &[&[i64]]) -> Result<Self> {
        Self::new(dim, vectors.iter().map(|v| Vector::from_i64(v)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vector<T>] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &Vector<T> {
        &self.vectors[i]
    }

    /// `d × n` synthesis matrix (vectors as columns).
    pub fn synthesis(&self) -> Matrix<T> {
        Matrix::from_columns(self.dim, &self.vectors).expect("dimensions validated")
    }

    fn subset_matrix(&self, idx: &[usize]) -> Matrix<T> {
        let vs: Vec<Vector<T>> = idx.iter().map(|&i| self.vectors[i].clone()).collect();
        Matrix::from_columns(self.dim, &vs).expect("dimensions validated")
    }

    fn spans(&self, idx: &[usize]) -> bool {
        idx.len() >= self.dim && linalg::rank(&self.subset_matrix(idx)) == self.dim
    }

    /// The vectors in a new order: `order[k]` is the old index of new vector `k`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        Frame::new(self.dim, order.iter().map(|&i| self.vectors[i].clone()).collect())
    }

    pub fn to_f64(&self) -> Frame<f64> {
        Frame::new(self.dim, self.vectors.iter().map(Vector::to_f64).collect()).expect("converted frame stays valid")
    }
}

impl Frame<crate::field::Rational> {
    pub fn convert<U: Field>(&self) -> Result<Frame<U>> {
        Frame::new(self.dim, self.vectors.iter().map(Vector::convert).collect())
    }
}

/// A finite family spans `R^d` iff it is a frame.
pub fn is_frame<T: Field>(frame: &Frame<T>) -> bool {
    linalg::rank(&frame.synthesis()) == frame.dim()
}

/// `S = Σ φ_i φ_iᵀ`, cached on the frame.
pub fn frame_operator<T: Field>(frame: &Frame<T>) -> &Matrix<T> {
    frame.operator.get_or_init(|| {
        frame
            .vectors
            .iter()
            .fold(Matrix::zeros(frame.dim, frame.dim), |acc, v| {
                acc.add(&v.outer()).expect("square of same size")
            })
    })
}

/// Returns the tight bound `A = Σ‖φ_i‖² / d` when `S = A·I`.
pub fn is_tight<T: Field>(frame: &Frame<T>) -> Option<T> {
    frame_operator(frame).scalar_multiple_of_identity(T::default_tol())?;
    let total = frame.vectors.iter().fold(T::zero(), |acc, v| acc + v.norm_sq());
    Some(total / T::from_i64(frame.dim as i64))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SparkReport {
    pub full_spark: bool,
    /// Lexicographically first linearly dependent `d`-subset, when not full spark.
    pub dependent: Option<Vec<usize>>,
}

/// Checks that every `d`-subset is a basis by evaluating all `C(n, d)` minors.
pub fn full_spark<T: Field>(frame: &Frame<T>) -> Result<SparkReport> {
    let (n, d) = (frame.len(), frame.dim());
    if n < d {
        return Err(Error::InvalidInput(format!(
            "full spark needs at least d = {d} vectors, got {n}"
        )));
    }
    let dependent = (0..n).combinations(d).find(|idx| {
        let minor = linalg::det(&frame.subset_matrix(idx)).expect("square minor");
        minor.is_negligible(T::default_tol())
    });
    Ok(SparkReport {
        full_spark: dependent.is_none(),
        dependent,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CpReport {
    pub holds: bool,
    /// Failing subset `I` (contains index 0): neither `I` nor its complement spans.
    pub witness: Option<Vec<usize>>,
    /// True when the verdict came from the `n ≥ 2d − 1` count alone.
    pub short_circuit: bool,
    pub subsets_checked: u64,
}

impl CpReport {
    /// The complement `Iᶜ` of the witness within `0..n`.
    pub fn witness_complement(&self, n: usize) -> Option<Vec<usize>> {
        self.witness
            .as_ref()
            .map(|w| (0..n).filter(|i| !w.contains(i)).collect())
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CpOptions {
    /// Allows enumeration beyond [`CP_GUARD`] vectors.
    pub allow_large: bool,
}

/// Complement property by enumeration of complementary pairs `(I, Iᶜ)`.
///
/// Only subsets containing the first vector are visited, so each pair is seen
/// once. They are visited by decreasing `|I|`, ties in lexicographic order,
/// and the first failing subset is the witness.
pub fn complement_property<T: Field>(frame: &Frame<T>) -> Result<CpReport> {
    complement_property_with(frame, CpOptions::default())
}

pub fn complement_property_with<T: Field>(frame: &Frame<T>, opts: CpOptions) -> Result<CpReport> {
    let (n, d) = (frame.len(), frame.dim());
    guard(n, opts)?;
    let mut checked = 0u64;
    for size in (1..=n).rev() {
        for rest in (1..n).combinations(size - 1) {
            checked += 1;
            let mut side: Vec<usize> = Vec::with_capacity(size);
            side.push(0);
            side.extend(rest);
            if !pair_spans(frame, &side, d) {
                return Ok(CpReport {
                    holds: false,
                    witness: Some(side),
                    short_circuit: false,
                    subsets_checked: checked,
                });
            }
        }
    }
    Ok(CpReport {
        holds: true,
        witness: None,
        short_circuit: false,
        subsets_checked: checked,
    })
}

fn guard(n: usize, opts: CpOptions) -> Result<()> {
    if n > CP_GUARD && !opts.allow_large {
        return Err(Error::Guard(format!(
            "complement property enumeration over {n} vectors exceeds the limit of {CP_GUARD}"
        )));
    }
    Ok(())
}

/// True if `side` or its complement spans `R^d`. Sides with fewer than `d`
/// vectors are never rank-tested.
fn pair_spans<T: Field>(frame: &Frame<T>, side: &[usize], d: usize) -> bool {
    let n = frame.len();
    if side.len() >= d && frame.spans(side) {
        return true;
    }
    if n - side.len() >= d {
        let other: Vec<usize> = (0..n).filter(|i| !side.contains(i)).collect();
        return frame.spans(&other);
    }
    false
}

/// Phase retrieval for real frames, decided through the complement property.
/// Frames with fewer than `2d − 1` vectors are rejected without enumeration.
pub fn does_phase_retrieval<T: Field>(frame: &Frame<T>) -> Result<CpReport> {
    does_phase_retrieval_with(frame, CpOptions::default())
}

pub fn does_phase_retrieval_with<T: Field>(frame: &Frame<T>, opts: CpOptions) -> Result<CpReport> {
    let (n, d) = (frame.len(), frame.dim());
    if n < 2 * d - 1 {
        // Any (d−1)-subset and its complement are both too small to span.
        return Ok(CpReport {
            holds: false,
            witness: Some((0..d - 1).collect()),
            short_circuit: true,
            subsets_checked: 0,
        });
    }
    complement_property_with(frame, opts)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalabilityCertificate<T> {
    /// `c_i ≥ 0`, not all zero, with `Σ c_i φ_i φ_iᵀ = A·I`.
    pub weights: Vec<T>,
    pub multiple: T,
}

impl<T: Field> ScalabilityCertificate<T> {
    /// `Σ c_i φ_i φ_iᵀ − A·I` is zero (exactly, for the exact backend).
    pub fn verify(&self, frame: &Frame<T>) -> bool {
        if self.weights.len() != frame.len() {
            return false;
        }
        let tol = T::default_tol();
        if self.weights.iter().any(|c| c.sign(tol) < 0) || self.weights.iter().all(|c| c.is_negligible(tol)) {
            return false;
        }
        let sum = weighted_outer_sum(frame, &self.weights);
        let target = Matrix::identity(frame.dim()).scale(&self.multiple);
        sum.approx_eq(&target, tol)
    }
}

pub fn weighted_outer_sum<T: Field>(frame: &Frame<T>, weights: &[T]) -> Matrix<T> {
    frame
        .vectors()
        .iter()
        .zip(weights)
        .fold(Matrix::zeros(frame.dim(), frame.dim()), |acc, (v, c)| {
            acc.add(&v.outer().scale(c)).expect("same shape")
        })
}

/// Decides whether nonnegative weights with `Σ c_i φ_i φ_iᵀ = I` exist.
///
/// One equation per upper-triangular entry `(j, k)`, `j ≤ k`.
pub fn scalability<T: Field>(frame: &Frame<T>) -> Result<Option<ScalabilityCertificate<T>>> {
    if !is_frame(frame) {
        return Err(Error::InvalidInput("scalability requires a spanning frame".into()));
    }
    let d = frame.dim();
    let rows: Vec<Vec<T>> = upper_pairs(d)
        .map(|(j, k)| frame.vectors().iter().map(|v| v[j].clone() * v[k].clone()).collect())
        .collect();
    let rhs: Vec<T> = upper_pairs(d)
        .map(|(j, k)| if j == k { T::one() } else { T::zero() })
        .collect();
    let a = Matrix::from_rows(rows)?;
    let cert = lp::find_nonnegative(&a, &Vector::new(rhs))
        .solution()
        .map(|x| ScalabilityCertificate {
            weights: x.into_entries(),
            multiple: T::one(),
        });
    if let Some(c) = &cert {
        debug_assert!(c.verify(frame));
    }
    Ok(cert)
}

pub(crate) fn upper_pairs(d: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..d).flat_map(move |j| (j..d).map(move |k| (j, k)))
}

/// Frame `{c_i φ_i}`. All scales must be nonzero.
pub fn rescale<T: Field>(frame: &Frame<T>, scales: &[T]) -> Result<Frame<T>> {
    if scales.len() != frame.len() {
        return Err(Error::Dimension(format!(
            "{} scales for {} vectors",
            scales.len(),
            frame.len()
        )));
    }
    if let Some(i) = scales.iter().position(|c| c.is_negligible(T::default_tol())) {
        return Err(Error::InvalidInput(format!("scale {} is zero", i + 1)));
    }
    Frame::new(
        frame.dim(),
        frame.vectors().iter().zip(scales).map(|(v, c)| v.scale(c)).collect(),
    )
}
