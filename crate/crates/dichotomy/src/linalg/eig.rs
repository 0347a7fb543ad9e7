//! Cyclic Jacobi eigensolver for Hermitian matrices.
//!
//! Each rotation zeroes one off-diagonal pair with a phased Givens rotation;
//! sweeps repeat until the off-diagonal Frobenius norm falls below the
//! threshold. Quadratic convergence makes the sweep cap generous for the
//! dimensions this crate targets (a few tens).

use num_complex::Complex64;

use super::{ComplexMatrix, HermitianMatrix};
use crate::error::{Error, Result};
use crate::tol::Tolerances;

/// Full spectral decomposition `A = V diag(λ) V†` with `λ` ascending and the
/// columns of `V` orthonormal.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: ComplexMatrix,
}

impl Spectrum {
    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Unitary matrix whose columns are the eigenvectors, ordered to match
    /// [`Spectrum::eigenvalues`].
    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("nonempty spectrum")
    }

    /// Column `k` of the eigenvector matrix.
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        let n = self.eigenvalues.len();
        (0..n).map(|i| self.eigenvectors.get(i, k)).collect()
    }

    /// Assembles `V diag(f(λ)) V†`.
    pub fn assemble(&self, f: impl Fn(f64) -> f64) -> HermitianMatrix {
        let n = self.eigenvalues.len();
        let mut out = ComplexMatrix::zeros(n, n);
        for k in 0..n {
            let w = f(self.eigenvalues[k]);
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = self.eigenvectors.get(i, k);
                if vik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + vik * self.eigenvectors.get(j, k).conj() * w;
                    out.set(i, j, v);
                }
            }
        }
        // The assembled matrix is Hermitian by construction; pin the diagonal.
        for i in 0..n {
            let d = out.get(i, i);
            out.set(i, i, Complex64::new(d.re, 0.0));
        }
        HermitianMatrix { dim: n, matrix: out }
    }

    /// `V diag(λ) V†`, which reproduces the input up to solver precision.
    pub fn reconstruct(&self) -> HermitianMatrix {
        self.assemble(|l| l)
    }
}

fn offdiag_frobenius(m: &ComplexMatrix) -> f64 {
    let n = m.rows();
    let mut s = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            s += 2.0 * m.get(p, q).norm_sqr();
        }
    }
    s.sqrt()
}

/// Spectral decomposition with the default tolerance policy.
pub fn eig_hermitian(a: &HermitianMatrix) -> Result<Spectrum> {
    eig_hermitian_with(a, &Tolerances::default())
}

/// Spectral decomposition with an explicit tolerance policy.
pub fn eig_hermitian_with(a: &HermitianMatrix, tol: &Tolerances) -> Result<Spectrum> {
    let n = a.dim();
    let mut m = a.matrix().clone();
    let mut v = ComplexMatrix::identity(n);

    let scale = m.frobenius_norm().max(1.0);
    let threshold = tol.jacobi_off_threshold * scale;
    // Rotating on entries this small cannot push the off-diagonal norm
    // above the convergence threshold.
    let rot_eps = threshold / n as f64;

    let mut converged = n < 2;
    for _ in 0..tol.jacobi_max_sweeps {
        if offdiag_frobenius(&m) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let beta = m.get(p, q);
                let b = beta.norm();
                if b <= rot_eps {
                    continue;
                }
                let phi = beta / b;
                let app = m.get(p, p).re;
                let aqq = m.get(q, q).re;
                let tau = (aqq - app) / (2.0 * b);
                let t = if tau == 0.0 {
                    1.0
                } else {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let cphi = phi * c;
                let sphi = phi * s;

                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = m.get(k, p);
                    let akq = m.get(k, q);
                    let new_kp = cphi * akp - s * akq;
                    let new_kq = sphi * akp + c * akq;
                    m.set(k, p, new_kp);
                    m.set(k, q, new_kq);
                    m.set(p, k, new_kp.conj());
                    m.set(q, k, new_kq.conj());
                }
                m.set(p, p, Complex64::new(app - t * b, 0.0));
                m.set(q, q, Complex64::new(aqq + t * b, 0.0));
                m.set(p, q, Complex64::new(0.0, 0.0));
                m.set(q, p, Complex64::new(0.0, 0.0));

                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, cphi * vkp - s * vkq);
                    v.set(k, q, sphi * vkp + c * vkq);
                }
            }
        }
    }
    if !converged && offdiag_frobenius(&m) > threshold {
        return Err(Error::EigNonConvergence {
            residual: offdiag_frobenius(&m),
            sweeps: tol.jacobi_max_sweeps,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m.get(i, i).re.partial_cmp(&m.get(j, j).re).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| m.get(i, i).re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            vectors.set(row, new_col, v.get(row, old_col));
        }
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors: vectors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_spectrum() {
        let spec = eig_hermitian(&HermitianMatrix::identity(3)).unwrap();
        for &l in spec.eigenvalues() {
            assert!((l - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn diagonal_is_sorted_ascending() {
        let d = HermitianMatrix::from_real_diag(&[0.6, -0.6, 0.0]);
        let spec = eig_hermitian(&d).unwrap();
        assert_eq!(spec.eigenvalues(), &[-0.6, 0.0, 0.6]);
    }

    #[test]
    fn pauli_x_eigenvalues() {
        let x = ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        let spec = eig_hermitian(&HermitianMatrix::new(x).unwrap()).unwrap();
        assert!((spec.eigenvalues()[0] + 1.0).abs() < 1e-13);
        assert!((spec.eigenvalues()[1] - 1.0).abs() < 1e-13);
    }

    #[test]
    fn complex_entries_reconstruct() {
        let m = ComplexMatrix::new(
            3,
            3,
            vec![
                c(0.5, 0.0),
                c(0.1, 0.3),
                c(-0.2, 0.1),
                c(0.1, -0.3),
                c(-0.4, 0.0),
                c(0.0, 0.6),
                c(-0.2, -0.1),
                c(0.0, -0.6),
                c(1.1, 0.0),
            ],
        )
        .unwrap();
        let h = HermitianMatrix::new(m).unwrap();
        let spec = eig_hermitian(&h).unwrap();
        let rec = spec.reconstruct();
        assert!(rec.matrix().sub(h.matrix()).unwrap().max_abs_entry() < 1e-12);

        // V†V = I
        let v = spec.eigenvectors();
        let vtv = v.adjoint().matmul(v).unwrap();
        assert!(vtv.sub(&ComplexMatrix::identity(3)).unwrap().max_abs_entry() < 1e-12);
    }

    #[test]
    fn one_dimensional_input() {
        let h = HermitianMatrix::from_real_diag(&[2.5]);
        let spec = eig_hermitian(&h).unwrap();
        assert_eq!(spec.eigenvalues(), &[2.5]);
    }
}
