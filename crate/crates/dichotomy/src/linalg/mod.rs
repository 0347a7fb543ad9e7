//! Dense complex linear algebra kernel.
//!
//! Everything downstream works with plain row-major [`ComplexMatrix`] values
//! and the Hermitian wrapper [`HermitianMatrix`]. The trace norm
//! `‖A‖₁ = tr √(A†A)` of a Hermitian matrix is computed as the sum of
//! absolute eigenvalues via the Jacobi eigensolver in [`eig`].

mod eig;

pub use eig::{eig_hermitian, eig_hermitian_with, Spectrum};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol::Tolerances;

/// Which tensor factor of a bipartite space an operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    /// The left (first) factor of `d1 ⊗ d2`.
    First,
    /// The right (second) factor of `d1 ⊗ d2`.
    Second,
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries. Rejects shape mismatches and
    /// non-finite entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(
                "matrix dimensions must be positive".into(),
            ));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFiniteEntries);
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Builds a square matrix from nested rows of `[re, im]` data.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::DimensionMismatch("no rows".into()));
        }
        let c = rows[0].len();
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.iter().flatten().copied().collect())
    }

    /// Square diagonal matrix with the given real diagonal.
    pub fn from_real_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, Complex64::new(d, 0.0));
        }
        m
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    fn check_bipartite(&self, dims: (usize, usize)) -> Result<()> {
        let (d1, d2) = dims;
        if !self.is_square() || self.rows != d1 * d2 {
            return Err(Error::DimensionMismatch(format!(
                "expected a {n}x{n} matrix for dims ({d1}, {d2})",
                n = d1 * d2
            )));
        }
        Ok(())
    }

    /// Copies the given rows and columns, in order. Index lists must be
    /// nonempty.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self {
            rows: rows.len(),
            cols: cols.len(),
            entries: rows
                .iter()
                .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j)))
                .collect(),
        }
    }

    /// Partial trace over the factor NOT kept. `keep = First` returns a
    /// `d1 x d1` matrix, `keep = Second` a `d2 x d2` one.
    pub fn partial_trace(&self, dims: (usize, usize), keep: Subsystem) -> Result<Self> {
        self.check_bipartite(dims)?;
        let (d1, d2) = dims;
        match keep {
            Subsystem::First => {
                let mut out = Self::zeros(d1, d1);
                for i in 0..d1 {
                    for j in 0..d1 {
                        let mut s = Complex64::new(0.0, 0.0);
                        for k in 0..d2 {
                            s += self.get(i * d2 + k, j * d2 + k);
                        }
                        out.set(i, j, s);
                    }
                }
                Ok(out)
            }
            Subsystem::Second => {
                let mut out = Self::zeros(d2, d2);
                for k in 0..d2 {
                    for l in 0..d2 {
                        let mut s = Complex64::new(0.0, 0.0);
                        for i in 0..d1 {
                            s += self.get(i * d2 + k, i * d2 + l);
                        }
                        out.set(k, l, s);
                    }
                }
                Ok(out)
            }
        }
    }

    /// Transpose applied to one tensor factor; an involution.
    pub fn partial_transpose(&self, dims: (usize, usize), which: Subsystem) -> Result<Self> {
        self.check_bipartite(dims)?;
        let (d1, d2) = dims;
        let mut out = Self::zeros(self.rows, self.cols);
        for i in 0..d1 {
            for k in 0..d2 {
                for j in 0..d1 {
                    for l in 0..d2 {
                        let v = match which {
                            Subsystem::First => self.get(j * d2 + k, i * d2 + l),
                            Subsystem::Second => self.get(i * d2 + l, j * d2 + k),
                        };
                        out.set(i * d2 + k, j * d2 + l, v);
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Square complex matrix with Hermitian symmetry enforced at construction.
///
/// Inputs whose anti-Hermitian part exceeds the tolerance are rejected; the
/// accepted matrix is stored exactly symmetrized as `(A + A†)/2` with a real
/// diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    matrix: ComplexMatrix,
}

impl HermitianMatrix {
    /// Symmetrizes and validates with the default tolerance policy.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::new_with(matrix, &Tolerances::default())
    }

    /// Symmetrizes and validates with an explicit tolerance policy.
    pub fn new_with(matrix: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "Hermitian matrix must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let n = matrix.rows();
        let mut max_asym = 0.0f64;
        let mut sym = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let a = matrix.get(i, j);
                let b = matrix.get(j, i).conj();
                max_asym = max_asym.max(0.5 * (a - b).norm());
                let mut h = 0.5 * (a + b);
                if i == j {
                    h = Complex64::new(h.re, 0.0);
                }
                sym.set(i, j, h);
            }
        }
        if max_asym > tol.hermitian_input {
            return Err(Error::NotHermitian { max_asymmetry: max_asym });
        }
        Ok(Self { dim: n, matrix: sym })
    }

    /// Symmetrizes unconditionally: `(A + A†)/2` with a real diagonal.
    ///
    /// For matrices that are Hermitian up to floating-point roundoff but
    /// whose absolute asymmetry may exceed the input tolerance because the
    /// entries are large.
    pub fn symmetrized(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "Hermitian matrix must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let n = matrix.rows();
        let mut sym = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let h = 0.5 * (matrix.get(i, j) + matrix.get(j, i).conj());
                sym.set(i, j, if i == j { Complex64::new(h.re, 0.0) } else { h });
            }
        }
        Ok(Self { dim: n, matrix: sym })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            matrix: ComplexMatrix::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            matrix: ComplexMatrix::identity(dim),
        }
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        Self {
            dim: diag.len(),
            matrix: ComplexMatrix::from_real_diag(diag),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.matrix.get(i, j)
    }

    /// Real trace (the imaginary part is identically zero by construction).
    pub fn trace_re(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            dim: self.dim,
            matrix: self.matrix.add(&other.matrix)?,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            dim: self.dim,
            matrix: self.matrix.sub(&other.matrix)?,
        })
    }

    /// Real scaling keeps hermiticity.
    pub fn scale(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            matrix: self.matrix.scale_re(s),
        }
    }

    /// Applies `f` to the eigenvalues: `V diag(f(λ)) V†`.
    pub fn map_eigenvalues(&self, tol: &Tolerances, f: impl Fn(f64) -> f64) -> Result<Self> {
        let spec = eig_hermitian_with(self, tol)?;
        Ok(spec.assemble(&f))
    }
}

/// `‖A‖₁ = Σ |λᵢ(A)|` with the default tolerance policy.
pub fn trace_norm(a: &HermitianMatrix) -> Result<f64> {
    trace_norm_with(a, &Tolerances::default())
}

/// `‖A‖₁ = Σ |λᵢ(A)|` with an explicit tolerance policy.
pub fn trace_norm_with(a: &HermitianMatrix, tol: &Tolerances) -> Result<f64> {
    let spec = eig_hermitian_with(a, tol)?;
    Ok(spec.eigenvalues().iter().map(|l| l.abs()).sum())
}

/// True iff the least eigenvalue is at least `-tol`.
pub fn is_psd(a: &HermitianMatrix, tol: f64) -> Result<bool> {
    let spec = eig_hermitian(a)?;
    Ok(spec.eigenvalues().first().map_or(true, |&l| l >= -tol))
}
