//! Real-coordinate machinery for the alternating-projection solver.
//!
//! Hermitian matrices are flattened onto an orthonormal real basis (diagonal
//! entries, then `√2·Re` and `√2·Im` of each upper off-diagonal), so Frobenius
//! geometry becomes Euclidean geometry and the affine projection is a plain
//! least-squares step `x ← x − Lᵀ(LLᵀ)⁺(Lx − b)`.

use num_complex::Complex64;

use crate::error::Result;
use crate::linalg::{eig_hermitian_with, ComplexMatrix, HermitianMatrix};
use crate::tol::Tolerances;

/// Number of real coordinates of `Herm(dim)`.
pub(super) fn coord_len(dim: usize) -> usize {
    dim * dim
}

pub(super) fn herm_to_coords(m: &HermitianMatrix) -> Vec<f64> {
    let n = m.dim();
    let mut x = Vec::with_capacity(n * n);
    for i in 0..n {
        x.push(m.get(i, i).re);
    }
    let s = std::f64::consts::SQRT_2;
    for i in 0..n {
        for j in (i + 1)..n {
            let z = m.get(i, j);
            x.push(s * z.re);
            x.push(s * z.im);
        }
    }
    x
}

pub(super) fn coords_to_herm(x: &[f64], dim: usize) -> HermitianMatrix {
    let mut m = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        m.set(i, i, Complex64::new(x[i], 0.0));
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut k = dim;
    for i in 0..dim {
        for j in (i + 1)..dim {
            let z = Complex64::new(s * x[k], s * x[k + 1]);
            m.set(i, j, z);
            m.set(j, i, z.conj());
            k += 2;
        }
    }
    HermitianMatrix::symmetrized(m).expect("square by construction")
}

/// Projection of a Hermitian matrix onto the PSD cone: clip negative
/// eigenvalues to zero.
pub(super) fn psd_project(m: &HermitianMatrix, tol: &Tolerances) -> Result<HermitianMatrix> {
    let spec = eig_hermitian_with(m, tol)?;
    Ok(spec.assemble(|l| l.max(0.0)))
}

/// Orthogonal projector onto the affine subspace `{x : L·x = b}` (in the
/// least-squares sense when the rows are redundant).
pub(super) struct AffineProjector {
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    gram_pinv: Vec<Vec<f64>>,
}

impl AffineProjector {
    pub(super) fn new(rows: Vec<Vec<f64>>, rhs: Vec<f64>, tol: &Tolerances) -> Result<Self> {
        let r = rows.len();
        // Gram matrix L·Lᵀ, pseudo-inverted through its eigendecomposition.
        let mut gram = ComplexMatrix::zeros(r, r);
        for i in 0..r {
            for j in i..r {
                let v: f64 = rows[i].iter().zip(&rows[j]).map(|(a, b)| a * b).sum();
                gram.set(i, j, Complex64::new(v, 0.0));
                gram.set(j, i, Complex64::new(v, 0.0));
            }
        }
        let spec = eig_hermitian_with(&HermitianMatrix::symmetrized(gram)?, tol)?;
        let cutoff = spec.max_eigenvalue().max(0.0) * 1e-12;
        let inv = spec.assemble(|l| if l > cutoff { 1.0 / l } else { 0.0 });
        let gram_pinv = (0..r)
            .map(|i| (0..r).map(|j| inv.get(i, j).re).collect())
            .collect();
        Ok(Self { rows, rhs, gram_pinv })
    }

    /// Signed constraint violations `L·x − b`.
    pub(super) fn violation(&self, x: &[f64]) -> Vec<f64> {
        self.rows
            .iter()
            .zip(&self.rhs)
            .map(|(row, &b)| row.iter().zip(x).map(|(a, v)| a * v).sum::<f64>() - b)
            .collect()
    }

    pub(super) fn project(&self, x: &[f64]) -> Vec<f64> {
        let v = self.violation(x);
        let r = v.len();
        let mut multipliers = vec![0.0; r];
        for i in 0..r {
            multipliers[i] = (0..r).map(|j| self.gram_pinv[i][j] * v[j]).sum();
        }
        let mut out = x.to_vec();
        for (row, &m) in self.rows.iter().zip(&multipliers) {
            if m != 0.0 {
                for (o, &a) in out.iter_mut().zip(row) {
                    *o -= m * a;
                }
            }
        }
        out
    }
}
