//! Hermitian eigendecomposition by the cyclic complex Jacobi method.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary, then applies the classical real Jacobi rotation. The product of
//! the two is applied as one 2×2 unitary on columns and rows `p`, `q`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::matrix::{ComplexMatrix, ComplexVector};
use crate::error::{Error, Result};

/// Hermiticity tolerance relative to the Frobenius norm of the input.
pub const HERMITIAN_RTOL: f64 = 1e-10;

/// Sweep cap for the Jacobi iteration.
pub const MAX_SWEEPS: usize = 64;

/// Eigenvalues (ascending) and unitary eigenvectors of a Hermitian matrix,
/// together with the ħ used to convert energies into angular frequencies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "EigenRepr", into = "EigenRepr")]
pub struct EigenDecomposition {
    eigenvalues: Vec<f64>,
    vectors: ComplexMatrix,
    hbar: f64,
}

impl EigenDecomposition {
    /// Assembles a decomposition from parts, checking sizes, ascending order
    /// and `‖V†V - I‖_max <= 1e-10`. Useful for supplying a different
    /// eigenvector choice within degenerate subspaces.
    pub fn new(eigenvalues: Vec<f64>, vectors: ComplexMatrix, hbar: f64) -> Result<Self> {
        let repr = EigenRepr {
            hbar,
            eigenvalues,
            vectors,
        };
        let eig = Self::try_from(repr).map_err(Error::InvalidArgument)?;
        let n = eig.size();
        let gram = eig.vectors.adjoint_matmul_unchecked(&eig.vectors);
        let dev = gram.max_abs_diff(&ComplexMatrix::identity(n))?;
        if dev > 1e-10 {
            return Err(Error::InvalidArgument(format!(
                "eigenvector matrix is not unitary (max |V†V - I| = {dev:e})"
            )));
        }
        Ok(eig)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Eigenvalues in non-decreasing order.
    #[inline]
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Column `j` is the eigenvector for `eigenvalues()[j]`.
    #[inline]
    pub fn vectors(&self) -> &ComplexMatrix {
        &self.vectors
    }

    #[inline]
    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// `V† m V`.
    pub fn to_eigenbasis(&self, m: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_size(m.size())?;
        let mv = m.matmul_unchecked(&self.vectors);
        Ok(self.vectors.adjoint_matmul_unchecked(&mv))
    }

    /// `V m V†`.
    pub fn from_eigenbasis(&self, m: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_size(m.size())?;
        let vm = self.vectors.matmul_unchecked(m);
        Ok(vm.matmul_adjoint_unchecked(&self.vectors))
    }

    /// Eigenbasis components `V† ψ`.
    pub fn vector_to_eigenbasis(&self, v: &ComplexVector) -> Result<ComplexVector> {
        self.check_size(v.size())?;
        let n = self.size();
        let data = (0..n)
            .map(|j| (0..n).map(|k| self.vectors[(k, j)].conj() * v.data()[k]).sum())
            .collect();
        ComplexVector::new(data)
    }

    /// `V diag(λ) V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let diag = ComplexMatrix::from_real_diagonal(&self.eigenvalues);
        self.from_eigenbasis(&diag).expect("sizes agree by construction")
    }

    pub(crate) fn check_size(&self, found: usize) -> Result<()> {
        if found != self.size() {
            return Err(Error::DimensionMismatch {
                expected: self.size(),
                found,
            });
        }
        Ok(())
    }
}

/// Diagonalizes a Hermitian matrix.
///
/// The input is checked for Hermiticity against `1e-10 · ‖h‖_F` and is not
/// symmetrized. Eigenvalues are returned ascending; equal eigenvalues keep the
/// order in which the Jacobi iteration leaves them on the diagonal (a stable
/// sort), so the output is deterministic for a given input.
pub fn eigendecompose(h: &ComplexMatrix, hbar: f64) -> Result<EigenDecomposition> {
    if !(hbar.is_finite() && hbar > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "hbar must be positive and finite, got {hbar}"
        )));
    }
    let norm = h.frobenius_norm();
    if !norm.is_finite() {
        return Err(Error::InvalidArgument("matrix has non-finite entries".into()));
    }
    let tolerance = HERMITIAN_RTOL * norm;
    let max_deviation = h.hermitian_deviation();
    if max_deviation > tolerance {
        return Err(Error::NonHermitianInput {
            max_deviation,
            tolerance,
        });
    }

    let n = h.size();
    let mut a = h.clone();
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
    }
    let mut v = ComplexMatrix::identity(n);

    let threshold = f64::EPSILON * norm;
    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= threshold {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::ConvergenceFailure { sweeps, off_norm: off });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = v[(row, src)];
        }
    }
    Ok(EigenDecomposition {
        eigenvalues,
        vectors,
        hbar,
    })
}

/// `V† m V`; see [`EigenDecomposition::to_eigenbasis`].
pub fn to_eigenbasis(m: &ComplexMatrix, eig: &EigenDecomposition) -> Result<ComplexMatrix> {
    eig.to_eigenbasis(m)
}

/// `V m V†`; see [`EigenDecomposition::from_eigenbasis`].
pub fn from_eigenbasis(m: &ComplexMatrix, eig: &EigenDecomposition) -> Result<ComplexMatrix> {
    eig.from_eigenbasis(m)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.size();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let b = apq.norm();
    if b == 0.0 {
        return;
    }
    let phase = apq / b; // e^{iφ}
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    let theta = (aqq - app) / (2.0 * b);
    let t = if theta.is_finite() {
        theta.signum() / (theta.abs() + theta.hypot(1.0))
    } else {
        0.0
    };
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;

    // G = diag(1, e^{-iφ}) · [[c, s], [-s, c]] on the (p, q) plane.
    let gpp = Complex64::new(c, 0.0);
    let gpq = Complex64::new(s, 0.0);
    let gqp = -s * phase.conj();
    let gqq = c * phase.conj();

    let n = a.size();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * gpp + akq * gqp;
        a[(k, q)] = akp * gpq + akq * gqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = gpp.conj() * apk + gqp.conj() * aqk;
        a[(q, k)] = gpq.conj() * apk + gqq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(app - t * b, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * b, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * gpp + vkq * gqp;
        v[(k, q)] = vkp * gpq + vkq * gqq;
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EigenRepr {
    hbar: f64,
    eigenvalues: Vec<f64>,
    vectors: ComplexMatrix,
}

impl TryFrom<EigenRepr> for EigenDecomposition {
    type Error = String;

    fn try_from(r: EigenRepr) -> std::result::Result<Self, String> {
        if !(r.hbar.is_finite() && r.hbar > 0.0) {
            return Err(format!("field `hbar`: must be positive, got {}", r.hbar));
        }
        if r.eigenvalues.len() != r.vectors.size() {
            return Err(format!(
                "field `eigenvalues`: has {} entries but `vectors` is {}x{}",
                r.eigenvalues.len(),
                r.vectors.size(),
                r.vectors.size()
            ));
        }
        if r.eigenvalues.windows(2).any(|w| !(w[0] <= w[1])) {
            return Err("field `eigenvalues`: must be sorted ascending".into());
        }
        Ok(Self {
            eigenvalues: r.eigenvalues,
            vectors: r.vectors,
            hbar: r.hbar,
        })
    }
}

impl From<EigenDecomposition> for EigenRepr {
    fn from(e: EigenDecomposition) -> Self {
        Self {
            hbar: e.hbar,
            eigenvalues: e.eigenvalues,
            vectors: e.vectors,
        }
    }
}
