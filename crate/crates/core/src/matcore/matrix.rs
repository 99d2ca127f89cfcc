//! Dense complex matrices and vectors.
//!
//! Storage is row-major. Both types serialize to the JSON layout used by the
//! command-line tool:
//!
//! ```text
//! {"size": N, "data": [[[re, im], ...], ...]}   // matrix, N rows of N entries
//! {"size": N, "data": [[re, im], ...]}          // vector, N entries
//! ```

use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Square N×N complex matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct ComplexMatrix {
    size: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(size: usize, data: Vec<Complex64>) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidArgument("matrix size must be at least 1".into()));
        }
        if data.len() != size * size {
            return Err(Error::DimensionMismatch {
                expected: size * size,
                found: data.len(),
            });
        }
        Ok(Self { size, data })
    }

    /// Builds a matrix from nested rows; every row must have `rows.len()` entries.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let size = rows.len();
        let mut data = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size {
                return Err(Error::DimensionMismatch {
                    expected: size,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Self::new(size, data)
    }

    /// Convenience constructor for real-valued rows.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn zeros(size: usize) -> Self {
        assert!(size > 0, "matrix size must be at least 1");
        Self {
            size,
            data: vec![ZERO; size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    /// Row-major entries.
    #[inline]
    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.size..(i + 1) * self.size]
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.size).map(|i| self[(i, i)]).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.size;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        self.check_same_size(rhs)?;
        Ok(self.matmul_unchecked(rhs))
    }

    pub(crate) fn matmul_unchecked(&self, rhs: &Self) -> Self {
        let n = self.size;
        let mut out = Self::zeros(n);
        for i in 0..n {
            let out_row = &mut out.data[i * n..(i + 1) * n];
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(rhs.row(k)) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// `A† · B` without materializing `A†`.
    pub(crate) fn adjoint_matmul_unchecked(&self, rhs: &Self) -> Self {
        let n = self.size;
        let mut out = Self::zeros(n);
        for k in 0..n {
            let a_row = self.row(k);
            let b_row = rhs.row(k);
            for (i, &a) in a_row.iter().enumerate() {
                let a = a.conj();
                if a == ZERO {
                    continue;
                }
                let out_row = &mut out.data[i * n..(i + 1) * n];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// `A · B†` without materializing `B†`.
    pub(crate) fn matmul_adjoint_unchecked(&self, rhs: &Self) -> Self {
        let n = self.size;
        let mut out = Self::zeros(n);
        for i in 0..n {
            let a_row = self.row(i);
            for j in 0..n {
                out.data[i * n + j] = a_row.iter().zip(rhs.row(j)).map(|(&a, &b)| a * b.conj()).sum();
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &ComplexVector) -> Result<ComplexVector> {
        if v.size() != self.size {
            return Err(Error::DimensionMismatch {
                expected: self.size,
                found: v.size(),
            });
        }
        let data = (0..self.size)
            .map(|i| self.row(i).iter().zip(v.data()).map(|(&a, &b)| a * b).sum())
            .collect();
        Ok(ComplexVector { data })
    }

    /// Element-wise `self + rhs`.
    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_same_size(rhs)?;
        Ok(self.zip_map(rhs, |a, b| a + b))
    }

    /// Element-wise `self - rhs`.
    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_same_size(rhs)?;
        Ok(self.zip_map(rhs, |a, b| a - b))
    }

    pub fn scale(&self, alpha: Complex64) -> Self {
        Self {
            size: self.size,
            data: self.data.iter().map(|&x| alpha * x).collect(),
        }
    }

    fn zip_map(&self, rhs: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        Self {
            size: self.size,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.size).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    /// Largest entry-wise modulus of `self - rhs`.
    pub fn max_abs_diff(&self, rhs: &Self) -> Result<f64> {
        self.check_same_size(rhs)?;
        Ok(self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// `max |m_ij - conj(m_ji)|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.size;
        let mut dev: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// True when `max |m_ij - conj(m_ji)| <= tol`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    fn check_same_size(&self, rhs: &Self) -> Result<()> {
        if self.size != rhs.size {
            return Err(Error::DimensionMismatch {
                expected: self.size,
                found: rhs.size,
            });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.size + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.size + j]
    }
}

/// Complex column vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "VectorRepr", into = "VectorRepr")]
pub struct ComplexVector {
    data: Vec<Complex64>,
}

impl ComplexVector {
    pub fn new(data: Vec<Complex64>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::InvalidArgument("vector size must be at least 1".into()));
        }
        Ok(Self { data })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Unit vector `e_index` of dimension `size`.
    pub fn basis(size: usize, index: usize) -> Self {
        assert!(index < size, "basis index {index} out of range for size {size}");
        let mut data = vec![ZERO; size];
        data[index] = ONE;
        Self { data }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Copy scaled to unit norm. Returns an error for the zero vector.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::InvalidArgument(format!("cannot normalize vector with norm {n}")));
        }
        Ok(Self {
            data: self.data.iter().map(|&x| x / n).collect(),
        })
    }

    /// `⟨self|rhs⟩`, conjugating `self`.
    pub fn inner(&self, rhs: &Self) -> Complex64 {
        self.data.iter().zip(&rhs.data).map(|(a, &b)| a.conj() * b).sum()
    }

    /// Projector `|v⟩⟨v|`.
    pub fn outer_self(&self) -> ComplexMatrix {
        let n = self.size();
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.data[i] * self.data[j].conj();
            }
        }
        m
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixRepr {
    size: usize,
    data: Vec<Vec<Complex64>>,
}

impl TryFrom<MatrixRepr> for ComplexMatrix {
    type Error = String;

    fn try_from(repr: MatrixRepr) -> std::result::Result<Self, String> {
        if repr.size == 0 {
            return Err("field `size`: must be at least 1".into());
        }
        if repr.data.len() != repr.size {
            return Err(format!(
                "field `data`: has {} rows but `size` is {}",
                repr.data.len(),
                repr.size
            ));
        }
        if let Some((i, row)) = repr.data.iter().enumerate().find(|(_, row)| row.len() != repr.size) {
            return Err(format!(
                "field `data[{i}]`: has {} entries but `size` is {}",
                row.len(),
                repr.size
            ));
        }
        Self::from_rows(repr.data).map_err(|e| e.to_string())
    }
}

impl From<ComplexMatrix> for MatrixRepr {
    fn from(m: ComplexMatrix) -> Self {
        let size = m.size;
        Self {
            size,
            data: m.data.chunks(size).map(<[_]>::to_vec).collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VectorRepr {
    size: usize,
    data: Vec<Complex64>,
}

impl TryFrom<VectorRepr> for ComplexVector {
    type Error = String;

    fn try_from(repr: VectorRepr) -> std::result::Result<Self, String> {
        if repr.size == 0 {
            return Err("field `size`: must be at least 1".into());
        }
        if repr.data.len() != repr.size {
            return Err(format!(
                "field `data`: has {} entries but `size` is {}",
                repr.data.len(),
                repr.size
            ));
        }
        Ok(Self { data: repr.data })
    }
}

impl From<ComplexVector> for VectorRepr {
    fn from(v: ComplexVector) -> Self {
        Self {
            size: v.data.len(),
            data: v.data,
        }
    }
}
