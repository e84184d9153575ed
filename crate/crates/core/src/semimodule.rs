//! Free finite-dimensional semimodules K^n: vectors under the pointwise
//! order, matrices acting as sup-preserving linear maps, the dual
//! functional of an Archimedean vector, and matrix residuation.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::semifield::{inf_set, sup_set, Semifield};

/// Dense element of K^n, n ≥ 1. The order is pointwise; the zero vector
/// is all-bottom.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector<K> {
    entries: Vec<K>,
}

impl<K: Semifield> Vector<K> {
    pub fn from_entries(entries: Vec<K>) -> Self {
        assert!(!entries.is_empty(), "vectors have dimension at least 1");
        Vector { entries }
    }

    /// The zero vector: all entries bottom.
    pub fn zeros(n: usize) -> Self {
        Self::from_entries(vec![K::zero(); n])
    }

    pub fn constant(n: usize, k: K) -> Self {
        Self::from_entries(vec![k; n])
    }

    /// Indicator of coordinate `i`: the identity there, bottom elsewhere.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut entries = vec![K::zero(); n];
        entries[i] = K::one();
        Self::from_entries(entries)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[K] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> K {
        self.entries[i]
    }

    fn check_dim(&self, other: &Self) -> Result<(), Error> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }

    /// Pointwise join.
    pub fn oplus(&self, other: &Self) -> Result<Self, Error> {
        self.check_dim(other)?;
        Ok(Self::from_entries(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a.oplus(b))
                .collect(),
        ))
    }

    /// Pointwise meet.
    pub fn wedge(&self, other: &Self) -> Result<Self, Error> {
        self.check_dim(other)?;
        Ok(Self::from_entries(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a.wedge(b))
                .collect(),
        ))
    }

    /// Scalar action, pointwise; the zero scalar sends everything to the
    /// zero vector.
    pub fn scale(&self, k: K) -> Self {
        Self::from_entries(self.entries.iter().map(|&e| k.otimes(e)).collect())
    }

    /// Pointwise order: true iff `self ⪯ other` in every coordinate,
    /// equivalently `self ⊕ other = other`.
    pub fn leq(&self, other: &Self) -> Result<bool, Error> {
        self.check_dim(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .all(|(&a, &b)| a.leq(b)))
    }

    /// Pointwise order up to the scalar tolerance; for comparisons whose
    /// operands went through `otimes`.
    pub fn leq_approx(&self, other: &Self) -> Result<bool, Error> {
        self.check_dim(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .all(|(&a, &b)| a.leq_approx(b)))
    }

    /// Coordinatewise tolerant equality; false on a dimension mismatch.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.len() == other.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(&a, &b)| a.approx_eq(b))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// True iff every entry is nonzero. In K^n this is equivalent to the
    /// order-theoretic Archimedean property: every y is dominated by some
    /// scalar multiple of the vector.
    pub fn is_archimedean(&self) -> bool {
        self.entries.iter().all(|e| !e.is_zero())
    }

    /// Index of the first entry without a nonzero value, if any.
    pub fn first_bottom(&self) -> Option<usize> {
        self.entries.iter().position(|e| e.is_zero())
    }

    /// Least upper bound of the entries.
    pub fn sup(&self) -> K {
        sup_set(self.entries.iter().copied())
    }

    /// Indices carrying a nonzero entry.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.get(i).is_zero()).collect()
    }
}

/// Dense m×n grid of scalars, acting on vectors by
/// `(A ⊙ x)_i = sup_j a_ij ⊙ x_j`.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<K> {
    rows: usize,
    cols: usize,
    data: Vec<K>,
}

impl<K: Semifield> Matrix<K> {
    /// Builds a matrix from rows; ragged input is rejected.
    pub fn from_rows(rows: Vec<Vec<K>>) -> Result<Self, Error> {
        if rows.is_empty() {
            return Err(Error::Parse("matrix needs at least one row".into()));
        }
        let cols = rows[0].len();
        if cols == 0 {
            return Err(Error::Parse("matrix needs at least one column".into()));
        }
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in &rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> K) -> Self {
        assert!(rows > 0 && cols > 0);
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// All-bottom matrix (the zero map).
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| K::zero())
    }

    /// Identity on the diagonal, bottom elsewhere.
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { K::one() } else { K::zero() })
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

    pub fn require_square(&self) -> Result<usize, Error> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rows)
    }

    pub fn get(&self, i: usize, j: usize) -> K {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: K) {
        self.data[i * self.cols + j] = v;
    }

    pub fn col(&self, j: usize) -> Vector<K> {
        Vector::from_entries((0..self.rows).map(|i| self.get(i, j)).collect())
    }

    pub fn row_vectors(&self) -> Vec<Vec<K>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// Applies the map: `(A ⊙ x)_i = sup_j a_ij ⊙ x_j`.
    pub fn apply(&self, x: &Vector<K>) -> Result<Vector<K>, Error> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok(Vector::from_entries(
            (0..self.rows)
                .map(|i| sup_set((0..self.cols).map(|j| self.get(i, j).otimes(x.get(j)))))
                .collect(),
        ))
    }

    /// Composition: `(A ⊙ B)_ik = sup_j a_ij ⊙ b_jk`.
    pub fn matmul(&self, other: &Self) -> Result<Self, Error> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, k| {
            sup_set((0..self.cols).map(|j| self.get(i, j).otimes(other.get(j, k))))
        }))
    }

    /// Entrywise join of two maps.
    pub fn oplus(&self, other: &Self) -> Result<Self, Error> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).oplus(other.get(i, j))
        }))
    }

    /// Entrywise scalar action.
    pub fn scale(&self, k: K) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| k.otimes(self.get(i, j)))
    }

    /// Entrywise tolerant equality.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(&a, &b)| a.approx_eq(b))
    }

    /// The restriction A[S,S] for an index subset S (strictly increasing).
    pub fn principal_submatrix(&self, subset: &[usize]) -> Self {
        Self::from_fn(subset.len(), subset.len(), |i, j| {
            self.get(subset[i], subset[j])
        })
    }
}

/// The dual functional of an Archimedean vector x:
/// `x*(y) = ∧{ k ∈ K : k ⊙ x ⪰ y }`.
///
/// Over a totally ordered semifield the admissible coefficients form an
/// up-set, so the infimum is the largest lower bound of the constraints:
/// `x*(y) = sup_i y_i ⊙ x_i^{-1}`. Entries of y at bottom contribute the
/// neutral element of the sup, which also settles `x*(0) = 0`.
#[derive(Clone, Debug)]
pub struct DualFunctional<K> {
    base: Vector<K>,
    inv_base: Vec<K>,
}

impl<K: Semifield> DualFunctional<K> {
    pub fn new(base: Vector<K>) -> Result<Self, Error> {
        if let Some(i) = base.first_bottom() {
            return Err(Error::NotArchimedean(i));
        }
        let inv_base = base
            .entries()
            .iter()
            .map(|&e| e.inv().expect("entries checked nonzero"))
            .collect();
        Ok(DualFunctional { base, inv_base })
    }

    pub fn base(&self) -> &Vector<K> {
        &self.base
    }

    /// Evaluates the functional; the result is the least coefficient k
    /// with `k ⊙ base ⪰ y`.
    pub fn apply(&self, y: &Vector<K>) -> Result<K, Error> {
        if y.len() != self.base.len() {
            return Err(Error::DimensionMismatch {
                expected: self.base.len(),
                found: y.len(),
            });
        }
        Ok(sup_set(
            y.entries()
                .iter()
                .zip(&self.inv_base)
                .map(|(&yi, &xi_inv)| yi.otimes(xi_inv)),
        ))
    }
}

/// One-shot evaluation of the dual functional of `x` at `y`.
pub fn dual_apply<K: Semifield>(x: &Vector<K>, y: &Vector<K>) -> Result<K, Error> {
    DualFunctional::new(x.clone())?.apply(y)
}

/// Greatest solution of `A ⊙ x ⪯ b`:
/// `x_j = ∧_{i : a_ij ≠ 0} b_i ⊙ a_ij^{-1}`.
///
/// A column without nonzero entries puts no bound on its coordinate, so
/// no greatest solution exists and the call fails.
pub fn residuate<K: Semifield>(a: &Matrix<K>, b: &Vector<K>) -> Result<Vector<K>, Error> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let mut entries = Vec::with_capacity(a.cols());
    for j in 0..a.cols() {
        let constraints = (0..a.rows()).filter_map(|i| {
            let aij = a.get(i, j);
            if aij.is_zero() {
                None
            } else {
                Some(b.get(i).otimes(aij.inv().expect("nonzero entry")))
            }
        });
        match inf_set(constraints) {
            Ok(v) => entries.push(v),
            Err(_) => return Err(Error::UnboundedCoordinate(j)),
        }
    }
    Ok(Vector::from_entries(entries))
}
