//! Subspace arrangements: projectors, perp duality, the Edidin span test
//! with exact witnesses, weighted tightness, fusion scalability and the
//! rank-two variety membership test.

mod falsifier;
mod zset;

pub use falsifier::{edidin_numeric_falsify, FalsifierReport, FALSIFIER_TAU, ROUNDING_MAX_DEN};
pub use zset::{z_random_probe, ZProbeReport};

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::frames::{self, upper_pairs, Frame};
use crate::linalg::{self, Matrix, Vector};
use crate::lp;

#[derive(Clone, Debug, PartialEq)]
pub enum Representation<T> {
    /// Hyperplane `φ⊥`, stored by its normal.
    Normal(Vector<T>),
    /// Column span of a `d × k` matrix with independent columns.
    Basis(Matrix<T>),
}

#[derive(Clone, Debug)]
pub struct Subspace<T> {
    dim: usize,
    repr: Representation<T>,
    projector: OnceLock<Matrix<T>>,
}

impl<T: Field> PartialEq for Subspace<T> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.repr == other.repr
    }
}

impl<T: Field> Subspace<T> {
    pub fn hyperplane(normal: Vector<T>) -> Result<Self> {
        if normal.dim() < 2 {
            return Err(Error::InvalidInput(
                "hyperplanes need ambient dimension at least 2".into(),
            ));
        }
        if normal.is_zero(T::default_tol()) {
            return Err(Error::ZeroVector("hyperplane normal".into()));
        }
        Ok(Subspace {
            dim: normal.dim(),
            repr: Representation::Normal(normal),
            projector: OnceLock::new(),
        })
    }

    /// Span of the columns of `basis` (`d × k`, `1 ≤ k ≤ d − 1`, independent).
    pub fn span(basis: Matrix<T>) -> Result<Self> {
        let (d, k) = (basis.rows(), basis.cols());
        if k == 0 || k >= d {
            return Err(Error::InvalidInput(format!(
                "a proper nonzero subspace of R^{d} needs 1..={} basis vectors, got {k}",
                d.saturating_sub(1)
            )));
        }
        let p = linalg::projector_span(&basis)?;
        let cell = OnceLock::new();
        let _ = cell.set(p);
        Ok(Subspace {
            dim: d,
            repr: Representation::Basis(basis),
            projector: cell,
        })
    }

    pub fn span_of(dim: usize, vectors: &[Vector<T>]) -> Result<Self> {
        Self::span(Matrix::from_columns(dim, vectors)?)
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Dimension `k` of the subspace itself.
    pub fn subspace_dim(&self) -> usize {
        match &self.repr {
            Representation::Normal(_) => self.dim - 1,
            Representation::Basis(b) => b.cols(),
        }
    }

    pub fn representation(&self) -> &Representation<T> {
        &self.repr
    }

    pub fn is_hyperplane(&self) -> bool {
        self.subspace_dim() + 1 == self.dim
    }

    /// The normal vector for hyperplanes given by a normal.
    pub fn normal(&self) -> Option<&Vector<T>> {
        match &self.repr {
            Representation::Normal(n) => Some(n),
            Representation::Basis(_) => None,
        }
    }

    /// A normal vector for any hyperplane, computed from the basis if needed.
    pub fn hyperplane_normal(&self) -> Option<Vector<T>> {
        match &self.repr {
            Representation::Normal(n) => Some(n.clone()),
            Representation::Basis(b) if b.cols() + 1 == self.dim => {
                Some(leading_positive(linalg::nullspace(&b.transpose()).column(0)))
            }
            Representation::Basis(_) => None,
        }
    }

    pub fn projector(&self) -> &Matrix<T> {
        self.projector.get_or_init(|| match &self.repr {
            Representation::Normal(n) => linalg::projector_hyperplane(n).expect("normal validated at construction"),
            Representation::Basis(b) => linalg::projector_span(b).expect("basis validated at construction"),
        })
    }

    pub fn project(&self, x: &Vector<T>) -> Result<Vector<T>> {
        self.projector().mul_vec(x)
    }

    pub fn to_f64(&self) -> Subspace<f64> {
        match &self.repr {
            Representation::Normal(n) => Subspace::hyperplane(n.to_f64()),
            Representation::Basis(b) => Subspace::span(b.to_f64()),
        }
        .expect("converted subspace stays valid")
    }
}

impl Subspace<Rational> {
    pub fn convert<U: Field>(&self) -> Result<Subspace<U>> {
        match &self.repr {
            Representation::Normal(n) => Subspace::hyperplane(n.convert()),
            Representation::Basis(b) => Subspace::span(b.convert()),
        }
    }
}

/// Flips `v` so its first nonzero entry is positive.
fn leading_positive<T: Field>(v: Vector<T>) -> Vector<T> {
    let tol = T::default_tol();
    match v.iter().find(|c| !c.is_negligible(tol)) {
        Some(c) if c.sign(tol) < 0 => v.scale(&-T::one()),
        _ => v,
    }
}

/// Orthogonal complement. A hyperplane's perp is the line through its normal;
/// a line's perp is the hyperplane with that normal.
pub fn perp<T: Field>(w: &Subspace<T>) -> Subspace<T> {
    let d = w.ambient_dim();
    match w.representation() {
        Representation::Normal(n) => {
            Subspace::span_of(d, std::slice::from_ref(n)).expect("nonzero normal spans a line")
        }
        Representation::Basis(b) if b.cols() == 1 => {
            Subspace::hyperplane(b.column(0)).expect("basis column is nonzero")
        }
        Representation::Basis(b) => {
            let cols: Vec<Vector<T>> = linalg::nullspace(&b.transpose())
                .columns()
                .into_iter()
                .map(leading_positive)
                .collect();
            Subspace::span(Matrix::from_columns(d, &cols).expect("columns share dimension"))
                .expect("complement is proper")
        }
    }
}

#[derive(Clone, Debug)]
pub struct Arrangement<T> {
    dim: usize,
    subspaces: Vec<Subspace<T>>,
}

impl<T: Field> PartialEq for Arrangement<T> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.subspaces == other.subspaces
    }
}

impl<T: Field> Arrangement<T> {
    pub fn new(dim: usize, subspaces: Vec<Subspace<T>>) -> Result<Self> {
        if subspaces.is_empty() {
            return Err(Error::InvalidInput("an arrangement needs at least one subspace".into()));
        }
        if let Some(i) = subspaces.iter().position(|w| w.ambient_dim() != dim) {
            return Err(Error::Dimension(format!(
                "subspace {} lives in R^{}, expected R^{dim}",
                i + 1,
                subspaces[i].ambient_dim()
            )));
        }
        Ok(Arrangement { dim, subspaces })
    }

    pub fn hyperplanes(dim: usize, normals: Vec<Vector<T>>) -> Result<Self> {
        let ws = normals
            .into_iter()
            .map(Subspace::hyperplane)
            .collect::<Result<Vec<_>>>()?;
        Self::new(dim, ws)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    pub fn subspaces(&self) -> &[Subspace<T>] {
        &self.subspaces
    }

    pub fn all_hyperplanes(&self) -> bool {
        self.subspaces.iter().all(Subspace::is_hyperplane)
    }

    /// Normals of all members, or an error naming the first non-hyperplane.
    pub fn normals(&self) -> Result<Vec<Vector<T>>> {
        self.subspaces
            .iter()
            .enumerate()
            .map(|(i, w)| {
                w.hyperplane_normal()
                    .ok_or_else(|| Error::InvalidInput(format!("subspace {} is not a hyperplane", i + 1)))
            })
            .collect()
    }

    pub fn perps(&self) -> Self {
        Arrangement {
            dim: self.dim,
            subspaces: self.subspaces.iter().map(perp).collect(),
        }
    }

    /// Rows `(P_i x)ᵀ`.
    pub fn projected(&self, x: &Vector<T>) -> Result<Matrix<T>> {
        let rows = self
            .subspaces
            .iter()
            .map(|w| w.project(x))
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_row_vectors(&rows)
    }

    pub fn to_f64(&self) -> Arrangement<f64> {
        Arrangement {
            dim: self.dim,
            subspaces: self.subspaces.iter().map(Subspace::to_f64).collect(),
        }
    }
}

impl Arrangement<Rational> {
    pub fn convert<U: Field>(&self) -> Result<Arrangement<U>> {
        Arrangement::new(
            self.dim,
            self.subspaces
                .iter()
                .map(Subspace::convert)
                .collect::<Result<Vec<_>>>()?,
        )
    }
}

/// The hyperplanes `φ_i⊥` of a frame.
pub fn arrangement_from_perps<T: Field>(frame: &Frame<T>) -> Result<Arrangement<T>> {
    Arrangement::hyperplanes(frame.dim(), frame.vectors().to_vec())
}

#[derive(Clone, Debug, PartialEq)]
pub struct EdidinWitness<T> {
    pub x: Vector<T>,
    pub rank: usize,
    /// `rank == d`. A deficient witness proves the arrangement fails phase retrieval.
    pub spans: bool,
}

impl<T: Field> EdidinWitness<T> {
    pub fn deficient(&self) -> bool {
        !self.spans
    }

    /// Recomputes the rank from `x`.
    pub fn recheck(&self, arrangement: &Arrangement<T>) -> bool {
        edidin_verify_witness(arrangement, &self.x)
            .map(|w| w.rank == self.rank && w.spans == self.spans)
            .unwrap_or(false)
    }
}

/// Rank of `{P_i x}` for a concrete `x ≠ 0`.
pub fn edidin_verify_witness<T: Field>(arrangement: &Arrangement<T>, x: &Vector<T>) -> Result<EdidinWitness<T>> {
    if x.dim() != arrangement.dim() {
        return Err(Error::Dimension(format!(
            "witness has dimension {}, arrangement lives in R^{}",
            x.dim(),
            arrangement.dim()
        )));
    }
    if x.is_zero(T::default_tol()) {
        return Err(Error::ZeroVector("Edidin witness".into()));
    }
    let rank = linalg::rank(&arrangement.projected(x)?);
    Ok(EdidinWitness {
        x: x.clone(),
        rank,
        spans: rank == arrangement.dim(),
    })
}

fn require_hyperplanes<T: Field>(arrangement: &Arrangement<T>) -> Result<Vec<Vector<T>>> {
    arrangement.normals()
}

fn first_common_vector<T: Field>(d: usize, normals: &[Vector<T>]) -> Vector<T> {
    let stacked = Matrix::from_row_vectors(normals).expect("normals share dimension");
    let ns = linalg::nullspace(&stacked);
    debug_assert!(ns.cols() > 0, "fewer than d normals always leave a common vector");
    if ns.cols() == 0 {
        return Vector::zeros(d);
    }
    ns.column(0)
}

/// For `n ≤ 2d − 3` hyperplanes: a nonzero `x` in the intersection of the
/// first `min(d − 1, n)` of them. At most `d − 1` distinct projections remain,
/// so the witness is always deficient.
pub fn edidin_small_n_witness<T: Field>(arrangement: &Arrangement<T>) -> Result<EdidinWitness<T>> {
    let (n, d) = (arrangement.len(), arrangement.dim());
    if d < 2 || n > 2 * d - 3 {
        return Err(Error::InvalidInput(format!(
            "small-count witness needs n <= 2d - 3 = {} (got n = {n}, d = {d})",
            (2 * d).saturating_sub(3)
        )));
    }
    let normals = require_hyperplanes(arrangement)?;
    let m = n.min(d - 1);
    let x = first_common_vector(d, &normals[..m]);
    edidin_verify_witness(arrangement, &x)
}

/// For exactly `2d − 2` hyperplanes: `None` when the normals are full spark,
/// otherwise a deficient witness orthogonal to a dependent `d`-subset.
pub fn minimal_fullspark_necessity<T: Field>(arrangement: &Arrangement<T>) -> Result<Option<EdidinWitness<T>>> {
    let (n, d) = (arrangement.len(), arrangement.dim());
    if d < 2 || n != 2 * d - 2 {
        return Err(Error::InvalidInput(format!(
            "expected exactly 2d - 2 = {} hyperplanes, got {n}",
            2 * d - 2
        )));
    }
    let normals = require_hyperplanes(arrangement)?;
    let frame = Frame::new(d, normals.clone())?;
    let spark = frames::full_spark(&frame)?;
    let Some(dependent) = spark.dependent else {
        return Ok(None);
    };
    let subset: Vec<Vector<T>> = dependent.iter().map(|&i| normals[i].clone()).collect();
    let x = first_common_vector(d, &subset);
    edidin_verify_witness(arrangement, &x).map(Some)
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightedTight<T> {
    /// `A` with `Σ a_i² P_i = A·I`.
    pub multiple: T,
    /// `Σ a_i² − A`, the constant of `Σ a_i² (I − P_i)`.
    pub complement_multiple: T,
    /// `Σ a_i² (I − P_i) = (Σ a_i² − A)·I` held.
    pub complement_verified: bool,
}

/// Checks `Σ a_i² P_i = A·I` with `A > 0`, together with the complementary
/// identity and positivity of `Σ a_i² − A`.
pub fn weighted_tight_check<T: Field>(arrangement: &Arrangement<T>, a: &[T]) -> Result<Option<WeightedTight<T>>> {
    if a.len() != arrangement.len() {
        return Err(Error::Dimension(format!(
            "{} weights for {} subspaces",
            a.len(),
            arrangement.len()
        )));
    }
    let tol = T::default_tol();
    let d = arrangement.dim();
    let squares: Vec<T> = a.iter().map(|v| v.clone() * v.clone()).collect();
    let sum = weighted_projector_sum(arrangement, &squares);
    let Some(multiple) = sum.scalar_multiple_of_identity(tol) else {
        return Ok(None);
    };
    if multiple.sign(tol) <= 0 {
        return Ok(None);
    }
    let total = squares.iter().fold(T::zero(), |acc, v| acc + v.clone());
    let complement_multiple = total - multiple.clone();
    let identity = Matrix::<T>::identity(d);
    let complement_sum = arrangement
        .subspaces()
        .iter()
        .zip(&squares)
        .fold(Matrix::zeros(d, d), |acc, (w, s)| {
            acc.add(&identity.sub(w.projector()).expect("square").scale(s))
                .expect("square")
        });
    let complement_verified =
        complement_multiple.sign(tol) > 0 && complement_sum.approx_eq(&identity.scale(&complement_multiple), tol);
    Ok(Some(WeightedTight {
        multiple,
        complement_multiple,
        complement_verified,
    }))
}

pub fn weighted_projector_sum<T: Field>(arrangement: &Arrangement<T>, weights: &[T]) -> Matrix<T> {
    let d = arrangement.dim();
    arrangement
        .subspaces()
        .iter()
        .zip(weights)
        .fold(Matrix::zeros(d, d), |acc, (w, c)| {
            acc.add(&w.projector().scale(c)).expect("square")
        })
}

#[derive(Clone, Debug, PartialEq)]
pub struct FusionCertificate<T> {
    /// `c_i ≥ 0` with `Σ c_i P_i = I`.
    pub weights: Vec<T>,
}

impl<T: Field> FusionCertificate<T> {
    pub fn verify(&self, arrangement: &Arrangement<T>) -> bool {
        let tol = T::default_tol();
        self.weights.len() == arrangement.len()
            && self.weights.iter().all(|c| c.sign(tol) >= 0)
            && weighted_projector_sum(arrangement, &self.weights).approx_eq(&Matrix::identity(arrangement.dim()), tol)
    }
}

/// Nonnegative weights with `Σ c_i P_i = I`, if any. Such weights make both
/// the arrangement and its perps do norm retrieval.
pub fn fusion_scalability<T: Field>(arrangement: &Arrangement<T>) -> Result<Option<FusionCertificate<T>>> {
    let d = arrangement.dim();
    let rows: Vec<Vec<T>> = upper_pairs(d)
        .map(|(j, k)| {
            arrangement
                .subspaces()
                .iter()
                .map(|w| w.projector().get(j, k).clone())
                .collect()
        })
        .collect();
    let rhs: Vec<T> = upper_pairs(d)
        .map(|(j, k)| if j == k { T::one() } else { T::zero() })
        .collect();
    let cert = lp::find_nonnegative(&Matrix::from_rows(rows)?, &Vector::new(rhs))
        .solution()
        .map(|x| FusionCertificate {
            weights: x.into_entries(),
        });
    Ok(cert)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZMember<T> {
    pub q: Matrix<T>,
    /// `ℓ_j = Tr(Q) − φ_jᵀQφ_j / ‖φ_j‖²`, i.e. `Tr(P_j Q)`.
    pub residuals: Vec<T>,
    pub rank: usize,
    pub member: bool,
}

/// Membership of a symmetric `Q` in `{Q : rank Q ≤ 2, Tr(P_j Q) = 0 ∀ j}`.
/// Hyperplanes use the normal directly, so integer normals keep everything rational.
pub fn z_membership<T: Field>(arrangement: &Arrangement<T>, q: &Matrix<T>) -> Result<ZMember<T>> {
    let d = arrangement.dim();
    if q.rows() != d || q.cols() != d {
        return Err(Error::Dimension(format!(
            "Q is {}x{}, expected {d}x{d}",
            q.rows(),
            q.cols()
        )));
    }
    let tol = T::default_tol();
    if !q.is_symmetric(tol) {
        return Err(Error::NotSymmetric);
    }
    let trace = q.trace();
    let residuals: Vec<T> = arrangement
        .subspaces()
        .iter()
        .map(|w| match w.normal() {
            Some(phi) => {
                let qphi = q.mul_vec(phi).expect("square");
                trace.clone() - phi.dot(&qphi) / phi.norm_sq()
            }
            None => w.projector().mul(q).expect("square").trace(),
        })
        .collect();
    let rank = linalg::rank(q);
    let member = rank <= 2 && residuals.iter().all(|l| l.is_negligible(tol));
    Ok(ZMember {
        q: q.clone(),
        residuals,
        rank,
        member,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type Q = Rational;

    fn q(p: i64, d: i64) -> Q {
        Q::new(BigInt::from(p), BigInt::from(d))
    }

    fn coordinate_hyperplanes() -> Arrangement<Q> {
        Arrangement::hyperplanes(3, (0..3).map(|i| Vector::unit(3, i)).collect()).unwrap()
    }

    fn plane_quintet() -> Arrangement<Q> {
        let e = |i| Vector::<Q>::unit(3, i);
        let v = |a: &[i64]| Vector::<Q>::from_i64(a);
        let spans = [
            vec![e(1), e(2)],
            vec![e(0), e(2)],
            vec![v(&[1, 1, 0]), e(2)],
            vec![e(0), v(&[0, 1, 1])],
            vec![e(1), v(&[1, 0, 1])],
        ];
        Arrangement::new(3, spans.iter().map(|b| Subspace::span_of(3, b).unwrap()).collect()).unwrap()
    }

    #[test]
    fn perp_examples() {
        let w = Subspace::<Q>::span_of(3, &[Vector::unit(3, 1), Vector::unit(3, 2)]).unwrap();
        let p = perp(&w);
        assert_eq!(p.subspace_dim(), 1);
        assert_eq!(
            p.representation(),
            &Representation::Basis(Matrix::from_columns(3, &[Vector::unit(3, 0)]).unwrap())
        );

        let w3 = Subspace::<Q>::span_of(3, &[Vector::from_i64(&[1, 1, 0]), Vector::unit(3, 2)]).unwrap();
        let Representation::Basis(b) = perp(&w3).representation().clone() else {
            panic!("perp of a plane in R^3 is a line");
        };
        let n = b.column(0);
        assert_eq!(n.dot(&Vector::from_i64(&[1, 1, 0])), q(0, 1));
        assert_eq!(n.dot(&Vector::unit(3, 2)), q(0, 1));
        let line = perp(&w3);
        assert_eq!(
            line.project(&Vector::from_i64(&[1, -1, 0])).unwrap(),
            Vector::from_i64(&[1, -1, 0])
        );

        let phi = Vector::<Q>::from_i64(&[2, -1, 3]);
        let h = Subspace::hyperplane(phi.clone()).unwrap();
        let l = perp(&h);
        assert_eq!(
            l.representation(),
            &Representation::Basis(Matrix::from_columns(3, &[phi]).unwrap())
        );
    }

    #[test]
    fn perp_projectors_are_complementary() {
        let subspaces = [
            Subspace::<Q>::hyperplane(Vector::from_i64(&[1, 2, -3, 4])).unwrap(),
            Subspace::span_of(4, &[Vector::from_i64(&[1, 0, 2, 0]), Vector::from_i64(&[0, 1, 1, 1])]).unwrap(),
            Subspace::span_of(4, &[Vector::from_i64(&[1, 1, 1, 1])]).unwrap(),
        ];
        for w in &subspaces {
            let pp = perp(w);
            let sum = w.projector().add(pp.projector()).unwrap();
            assert_eq!(sum, Matrix::identity(4));
            assert_eq!(perp(&pp).projector(), w.projector());
        }
    }

    #[test]
    fn subspace_validation() {
        assert!(Subspace::<Q>::span(Matrix::identity(3)).is_err());
        assert!(Subspace::<Q>::hyperplane(Vector::zeros(3)).is_err());
        assert!(Subspace::<Q>::span_of(3, &[Vector::unit(3, 0), Vector::from_i64(&[2, 0, 0])]).is_err());
        assert!(Arrangement::<Q>::new(3, vec![]).is_err());
    }

    #[test]
    fn plane_quintet_projections() {
        let a = plane_quintet();
        let x = Vector::from_i64(&[1, 2, 3]);
        let p4 = a.subspaces()[3].project(&x).unwrap();
        assert_eq!(p4, Vector::new(vec![q(1, 1), q(5, 2), q(5, 2)]));
        let w = edidin_verify_witness(&a, &x).unwrap();
        assert_eq!(w.rank, 3);
        assert!(w.spans);
    }

    #[test]
    fn verify_witness_examples() {
        let a = coordinate_hyperplanes();
        let w = edidin_verify_witness(&a, &Vector::unit(3, 0)).unwrap();
        assert_eq!(w.rank, 1);
        assert!(w.deficient());
        assert!(w.recheck(&a));
        assert!(matches!(
            edidin_verify_witness(&a, &Vector::zeros(3)),
            Err(Error::ZeroVector(_))
        ));
        assert!(edidin_verify_witness(&a, &Vector::zeros(2)).is_err());
    }

    #[test]
    fn small_n_witness_examples() {
        let a = coordinate_hyperplanes();
        let w = edidin_small_n_witness(&a).unwrap();
        assert!(w.deficient());
        assert_eq!(w.x, Vector::unit(3, 2));
        let too_many = Arrangement::<Q>::hyperplanes(
            3,
            vec![
                Vector::unit(3, 0),
                Vector::unit(3, 1),
                Vector::unit(3, 2),
                Vector::from_i64(&[1, 1, 1]),
            ],
        )
        .unwrap();
        assert!(edidin_small_n_witness(&too_many).is_err());
    }

    #[test]
    fn minimal_fullspark_examples() {
        let a = Arrangement::<Q>::hyperplanes(
            3,
            vec![
                Vector::unit(3, 0),
                Vector::unit(3, 1),
                Vector::unit(3, 2),
                Vector::unit(3, 0),
            ],
        )
        .unwrap();
        let w = minimal_fullspark_necessity(&a).unwrap().unwrap();
        assert_eq!(w.x, Vector::unit(3, 2));
        assert!(w.deficient());

        let spark = Arrangement::<Q>::hyperplanes(
            3,
            vec![
                Vector::unit(3, 0),
                Vector::unit(3, 1),
                Vector::unit(3, 2),
                Vector::from_i64(&[1, 1, 1]),
            ],
        )
        .unwrap();
        assert_eq!(minimal_fullspark_necessity(&spark).unwrap(), None);
        assert!(minimal_fullspark_necessity(&coordinate_hyperplanes()).is_err());
    }

    #[test]
    fn weighted_tight_examples() {
        let a = coordinate_hyperplanes();
        let ones = vec![Q::from_i64(1); 3];
        let t = weighted_tight_check(&a, &ones).unwrap().unwrap();
        assert_eq!(t.multiple, Q::from_i64(2));
        assert_eq!(t.complement_multiple, Q::from_i64(1));
        assert!(t.complement_verified);
        let uneven = [1, 1, 2].map(Q::from_i64);
        assert_eq!(weighted_tight_check(&a, &uneven).unwrap(), None);
        let lines = a.perps();
        let t = weighted_tight_check(&lines, &ones).unwrap().unwrap();
        assert_eq!(t.multiple, Q::from_i64(1));
        assert_eq!(t.complement_multiple, Q::from_i64(2));
        assert!(weighted_tight_check(&a, &ones[..2]).is_err());
    }

    #[test]
    fn fusion_examples() {
        let a = coordinate_hyperplanes();
        let c = fusion_scalability(&a).unwrap().unwrap();
        assert_eq!(c.weights, vec![q(1, 2); 3]);
        assert!(c.verify(&a));
        let single = Arrangement::<Q>::hyperplanes(3, vec![Vector::unit(3, 0)]).unwrap();
        assert_eq!(fusion_scalability(&single).unwrap(), None);
    }

    #[test]
    fn z_membership_examples() {
        let six = Arrangement::<Q>::hyperplanes(
            4,
            [
                [2, -1, 2, 2],
                [2, 5, 4, 1],
                [0, 4, -1, -1],
                [5, 4, -2, -4],
                [4, 1, 5, 3],
                [3, -4, -4, -3],
            ]
            .iter()
            .map(|v| Vector::from_i64(v))
            .collect(),
        )
        .unwrap();
        let zero = z_membership(&six, &Matrix::zeros(4, 4)).unwrap();
        assert!(zero.member);
        let e1 = Vector::<Q>::unit(4, 0).outer();
        let m = z_membership(&six, &e1).unwrap();
        assert!(!m.member);
        assert_eq!(m.residuals[0], q(9, 13));

        let single = Arrangement::<Q>::hyperplanes(3, vec![Vector::unit(3, 2)]).unwrap();
        let x = Vector::<Q>::from_i64(&[1, 1, 0]);
        let y = Vector::<Q>::from_i64(&[1, -1, 0]);
        let qm = x.outer().sub(&y.outer()).unwrap();
        let m = z_membership(&single, &qm).unwrap();
        assert_eq!(m.rank, 2);
        assert!(m.residuals.iter().all(|l| l == &q(0, 1)));
        assert!(m.member);

        let asym = Matrix::<Q>::from_i64_rows(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        assert_eq!(z_membership(&single, &asym), Err(Error::NotSymmetric));
    }
}
