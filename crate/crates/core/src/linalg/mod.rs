//! Backend-generic vectors and matrices.
//!
//! Rank and determinant dispatch to the backend (Bareiss for rationals,
//! partial pivoting for floats). Nullspace, solve and inverse share one
//! Gauss-Jordan routine whose pivot rule depends on the backend: the exact
//! backend takes the first nonzero entry of the column, the float backend the
//! largest entry above tolerance.

pub mod bareiss;
pub mod float_elim;

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct Vector<T> {
    entries: Vec<T>,
}

impl<T: Field> Vector<T> {
    pub fn new(entries: Vec<T>) -> Self {
        Vector { entries }
    }

    pub fn zeros(dim: usize) -> Self {
        Vector::new(vec![T::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.entries[i] = T::one();
        v
    }

    pub fn from_i64(values: &[i64]) -> Self {
        Vector::new(values.iter().map(|&v| T::from_i64(v)).collect())
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<T> {
        self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.entries.iter()
    }

    pub fn get(&self, i: usize) -> &T {
        &self.entries[i]
    }

    pub fn dot(&self, other: &Self) -> T {
        debug_assert_eq!(self.dim(), other.dim());
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn norm_sq(&self) -> T {
        self.dot(self)
    }

    pub fn scale(&self, c: &T) -> Self {
        Vector::new(self.entries.iter().map(|v| v.clone() * c.clone()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Vector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Vector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.entries.iter().all(|v| v.is_negligible(tol))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim() == other.dim()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.approx_eq(b, tol))
    }

    pub fn to_f64(&self) -> Vector<f64> {
        Vector::new(self.entries.iter().map(Field::to_f64).collect())
    }

    /// Rank-one matrix `v vᵀ`.
    pub fn outer(&self) -> Matrix<T> {
        self.outer_with(self)
    }

    pub fn outer_with(&self, other: &Self) -> Matrix<T> {
        let mut m = Matrix::zeros(self.dim(), other.dim());
        for i in 0..self.dim() {
            for j in 0..other.dim() {
                m.set(i, j, self.entries[i].clone() * other.entries[j].clone());
            }
        }
        m
    }
}

impl Vector<Rational> {
    pub fn convert<U: Field>(&self) -> Vector<U> {
        Vector::new(self.entries.iter().map(U::from_rational).collect())
    }
}

impl<T: Field> fmt::Display for Vector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(Field::render).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl<T> std::ops::Index<usize> for Vector<T> {
    type Output = T;

    fn index(&self, i: usize) -> &T {
        &self.entries[i]
    }
}

/// Dense row-major matrix. Zero-column matrices are allowed (empty nullspace).
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Field> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|row| row.len() != c) {
            return Err(Error::Dimension(format!(
                "row {bad} has {} entries, expected {c}",
                rows[bad].len()
            )));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| T::from_i64(v)).collect())
                .collect(),
        )
        .expect("rows of equal length")
    }

    /// Matrix whose rows are the given vectors.
    pub fn from_row_vectors(vs: &[Vector<T>]) -> Result<Self> {
        Self::from_rows(vs.iter().map(|v| v.entries().to_vec()).collect())
    }

    /// Matrix whose columns are the given vectors (`dim` rows, even when empty).
    pub fn from_columns(dim: usize, vs: &[Vector<T>]) -> Result<Self> {
        if let Some(bad) = vs.iter().position(|v| v.dim() != dim) {
            return Err(Error::Dimension(format!(
                "column {bad} has dimension {}, expected {dim}",
                vs[bad].dim()
            )));
        }
        let mut m = Self::zeros(dim, vs.len());
        for (j, v) in vs.iter().enumerate() {
            for i in 0..dim {
                m.set(i, j, v[i].clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row_slice(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row(&self, i: usize) -> Vector<T> {
        Vector::new(self.row_slice(i).to_vec())
    }

    pub fn column(&self, j: usize) -> Vector<T> {
        Vector::new((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn columns(&self) -> Vec<Vector<T>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_negligible(0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).clone() + a.clone() * other.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &Vector<T>) -> Result<Vector<T>> {
        if self.cols != v.dim() {
            return Err(Error::Dimension(format!(
                "cannot apply {}x{} matrix to vector of dimension {}",
                self.rows,
                self.cols,
                v.dim()
            )));
        }
        Ok(Vector::new((0..self.rows).map(|i| self.row(i).dot(v)).collect()))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(T, T) -> T) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "shape {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a.clone(), b.clone()))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &T) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v.clone() * c.clone()).collect(),
        }
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j).approx_eq(self.get(j, i), tol)))
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.data.iter().all(|v| v.is_negligible(tol))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| a.approx_eq(b, tol))
    }

    /// If `self = c·I` for some scalar `c`, returns `c`.
    pub fn scalar_multiple_of_identity(&self, tol: f64) -> Option<T> {
        if !self.is_square() || self.rows == 0 {
            return None;
        }
        let c = self.get(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let ok = if i == j {
                    self.get(i, j).approx_eq(&c, tol)
                } else {
                    self.get(i, j).is_negligible(tol)
                };
                if !ok {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Field::to_f64).collect(),
        }
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, tol: f64) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let pick = if T::is_exact() {
                (r..a.rows).find(|&i| !a.get(i, c).is_negligible(tol))
            } else {
                (r..a.rows)
                    .filter(|&i| !a.get(i, c).is_negligible(tol))
                    .max_by(|&x, &y| {
                        a.get(x, c)
                            .magnitude()
                            .partial_cmp(&a.get(y, c).magnitude())
                            .unwrap_or(std::cmp::Ordering::Equal)
                            .then(y.cmp(&x))
                    })
            };
            let Some(p) = pick else {
                if !T::is_exact() {
                    for i in r..a.rows {
                        a.set(i, c, T::zero());
                    }
                }
                continue;
            };
            a.swap_rows(p, r);
            let inv = T::one() / a.get(r, c).clone();
            for j in c..a.cols {
                let v = a.get(r, j).clone() * inv.clone();
                a.set(r, j, v);
            }
            for i in 0..a.rows {
                if i == r {
                    continue;
                }
                let f = a.get(i, c).clone();
                if f.is_negligible(0.0) {
                    continue;
                }
                for j in c..a.cols {
                    let v = a.get(i, j).clone() - f.clone() * a.get(r, j).clone();
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T: Field> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{}", self.row(i))?;
        }
        Ok(())
    }
}

impl Matrix<Rational> {
    pub fn convert<U: Field>(&self) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(U::from_rational).collect(),
        }
    }
}

pub fn rank<T: Field>(m: &Matrix<T>) -> usize {
    rank_with(m, T::default_tol())
}

pub fn rank_with<T: Field>(m: &Matrix<T>, tol: f64) -> usize {
    T::rank_of(m, tol)
}

pub fn det<T: Field>(m: &Matrix<T>) -> Result<T> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(T::det_of(m, T::default_tol()))
}

/// Canonical free-variable basis of `{v : M v = 0}`, returned as columns of a
/// `cols × (cols − rank)` matrix.
pub fn nullspace<T: Field>(m: &Matrix<T>) -> Matrix<T> {
    nullspace_with(m, T::default_tol())
}

pub fn nullspace_with<T: Field>(m: &Matrix<T>, tol: f64) -> Matrix<T> {
    let n = m.cols();
    let (r, pivots) = m.rref(tol);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let basis: Vec<Vector<T>> = free
        .iter()
        .map(|&f| {
            let mut v = Vector::<T>::zeros(n);
            v.entries[f] = T::one();
            for (row, &p) in pivots.iter().enumerate() {
                v.entries[p] = -r.get(row, f).clone();
            }
            v
        })
        .collect();
    Matrix::from_columns(n, &basis).expect("basis vectors share dimension")
}

/// One solution of `M x = b`, or `None` if the system is inconsistent.
pub fn solve<T: Field>(m: &Matrix<T>, b: &Vector<T>) -> Result<Option<Vector<T>>> {
    solve_with(m, b, T::default_tol())
}

pub fn solve_with<T: Field>(m: &Matrix<T>, b: &Vector<T>, tol: f64) -> Result<Option<Vector<T>>> {
    if m.rows() != b.dim() {
        return Err(Error::Dimension(format!(
            "{} equations but right-hand side of dimension {}",
            m.rows(),
            b.dim()
        )));
    }
    let n = m.cols();
    let mut aug = Matrix::zeros(m.rows(), n + 1);
    for i in 0..m.rows() {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n, b[i].clone());
    }
    let (r, pivots) = aug.rref(tol);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = Vector::<T>::zeros(n);
    for (row, &p) in pivots.iter().enumerate() {
        x.entries[p] = r.get(row, n).clone();
    }
    Ok(Some(x))
}

pub fn inverse<T: Field>(m: &Matrix<T>) -> Result<Option<Matrix<T>>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut aug = Matrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n + i, T::one());
    }
    let (r, pivots) = aug.rref(T::default_tol());
    if pivots.len() < n || pivots[n - 1] >= n {
        return Ok(None);
    }
    let mut inv = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, r.get(i, n + j).clone());
        }
    }
    Ok(Some(inv))
}

/// Orthogonal projector onto the column span of `basis`: `B (BᵀB)⁻¹ Bᵀ`.
pub fn projector_span<T: Field>(basis: &Matrix<T>) -> Result<Matrix<T>> {
    let k = basis.cols();
    let r = rank(basis);
    if r < k || k == 0 {
        return Err(Error::DependentColumns { rank: r, cols: k });
    }
    let bt = basis.transpose();
    let gram = bt.mul(basis)?;
    let ginv = inverse(&gram)?.ok_or(Error::DependentColumns { rank: r, cols: k })?;
    basis.mul(&ginv)?.mul(&bt)
}

/// Projector onto the hyperplane `φ⊥`: `I − φφᵀ/‖φ‖²`.
pub fn projector_hyperplane<T: Field>(normal: &Vector<T>) -> Result<Matrix<T>> {
    if normal.is_zero(T::default_tol()) {
        return Err(Error::ZeroVector("hyperplane normal".into()));
    }
    let d = normal.dim();
    let nsq = normal.norm_sq();
    let outer = normal.outer().scale(&(T::one() / nsq));
    Matrix::identity(d).sub(&outer)
}

/// Projector onto the line spanned by `v`: `vvᵀ/‖v‖²`.
pub fn projector_line<T: Field>(v: &Vector<T>) -> Result<Matrix<T>> {
    if v.is_zero(T::default_tol()) {
        return Err(Error::ZeroVector("line direction".into()));
    }
    let nsq = v.norm_sq();
    Ok(v.outer().scale(&(T::one() / nsq)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type Q = Rational;

    fn q(p: i64, d: i64) -> Q {
        Q::new(BigInt::from(p), BigInt::from(d))
    }

    fn qi(p: i64) -> Q {
        Q::from_i64(p)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::<Q>::identity(3)), 3);
        assert_eq!(rank(&Matrix::<Q>::zeros(4, 4)), 0);
        assert_eq!(rank(&Matrix::<f64>::identity(3)), 3);
        let m = Matrix::<Q>::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&m.transpose()), 2);
    }

    #[test]
    fn det_examples() {
        assert_eq!(det(&Matrix::<Q>::identity(4)).unwrap(), qi(1));
        let m = Matrix::<Q>::from_i64_rows(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 1]]);
        assert_eq!(det(&m).unwrap(), qi(-1));
        let s = Matrix::<Q>::from_i64_rows(&[&[1, 1], &[1, 1]]);
        assert_eq!(det(&s).unwrap(), qi(0));
        let f = Matrix::<f64>::from_i64_rows(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 1]]);
        assert!((det(&f).unwrap() + 1.0).abs() < 1e-12);
        assert!(matches!(
            det(&Matrix::<Q>::zeros(2, 3)),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn det_with_fractions_and_swaps() {
        let m = Matrix::from_rows(vec![
            vec![qi(0), q(1, 2), qi(1)],
            vec![q(1, 3), qi(0), qi(2)],
            vec![qi(1), qi(1), q(-1, 4)],
        ])
        .unwrap();
        // cofactor expansion along the first row
        let expected = -q(1, 2) * (q(1, 3) * q(-1, 4) - qi(2)) + qi(1) * (q(1, 3) - qi(0));
        assert_eq!(det(&m).unwrap(), expected);
    }

    #[test]
    fn nullspace_examples() {
        let m = Matrix::<Q>::from_i64_rows(&[&[1, 1, 1]]);
        let ns = nullspace(&m);
        assert_eq!(ns.cols(), 2);
        for v in ns.columns() {
            assert!(m.mul_vec(&v).unwrap().is_zero(0.0));
        }
        assert_eq!(nullspace(&Matrix::<Q>::identity(3)).cols(), 0);
        let normals = Matrix::<Q>::from_i64_rows(&[&[1, 0, 0], &[0, 1, 0]]);
        let ns = nullspace(&normals);
        assert_eq!(ns.columns(), vec![Vector::from_i64(&[0, 0, 1])]);
    }

    #[test]
    fn solve_examples() {
        let b = Vector::<Q>::from_i64(&[3, -1]);
        assert_eq!(solve(&Matrix::identity(2), &b).unwrap(), Some(b.clone()));
        let m = Matrix::<Q>::from_i64_rows(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve(&m, &Vector::from_i64(&[1, 3])).unwrap(), None);
        let m = Matrix::<Q>::from_i64_rows(&[&[1, 0, 1], &[0, 1, 1]]);
        let rhs = Vector::from_i64(&[1, 1]);
        let x = solve(&m, &rhs).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), rhs);
        assert!(solve(&m, &Vector::from_i64(&[1])).is_err());
    }

    #[test]
    fn projector_span_examples() {
        let e1 = Matrix::<Q>::from_columns(3, &[Vector::unit(3, 0)]).unwrap();
        let p = projector_span(&e1).unwrap();
        assert_eq!(p, Matrix::from_i64_rows(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]));

        let b = Matrix::<Q>::from_columns(3, &[Vector::from_i64(&[1, 1, 0]), Vector::unit(3, 2)]).unwrap();
        let p = projector_span(&b).unwrap();
        let x = Vector::from_i64(&[1, 2, 3]);
        assert_eq!(p.mul_vec(&x).unwrap(), Vector::new(vec![q(3, 2), q(3, 2), qi(3)]));

        let b = Matrix::<Q>::from_columns(3, &[Vector::unit(3, 1), Vector::from_i64(&[1, 0, 1])]).unwrap();
        let p = projector_span(&b).unwrap();
        assert_eq!(
            p.mul_vec(&Vector::from_i64(&[4, 5, 7])).unwrap(),
            Vector::new(vec![q(11, 2), qi(5), q(11, 2)])
        );

        let dep = Matrix::<Q>::from_columns(3, &[Vector::unit(3, 0), Vector::from_i64(&[2, 0, 0])]).unwrap();
        assert_eq!(projector_span(&dep), Err(Error::DependentColumns { rank: 1, cols: 2 }));
    }

    #[test]
    fn projector_hyperplane_examples() {
        let p = projector_hyperplane(&Vector::<Q>::from_i64(&[0, 0, 1])).unwrap();
        assert_eq!(p, Matrix::from_i64_rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]));
        let ones = Vector::from_i64(&[1, 1, 1]);
        assert_eq!(p.mul_vec(&ones).unwrap(), Vector::from_i64(&[1, 1, 0]));
        let p2 = projector_hyperplane(&Vector::<Q>::from_i64(&[1, 0, 1])).unwrap();
        assert_eq!(p2.mul_vec(&ones).unwrap(), Vector::from_i64(&[0, 1, 0]));
        let p3 = projector_hyperplane(&Vector::<Q>::from_i64(&[1, 0])).unwrap();
        assert_eq!(p3, Matrix::from_i64_rows(&[&[0, 0], &[0, 1]]));
        assert!(matches!(
            projector_hyperplane(&Vector::<Q>::zeros(3)),
            Err(Error::ZeroVector(_))
        ));
    }
}
