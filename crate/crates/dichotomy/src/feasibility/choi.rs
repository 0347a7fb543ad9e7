//! Choi-matrix representation of linear maps between operator spaces.
//!
//! Convention, fixed once: `J = Σ_{ij} E_ij ⊗ Γ(E_ij)` with the INPUT factor
//! first, so the block at input position `(i, j)` is `Γ(E_ij)` and the
//! represented map acts as `Γ(X) = Tr_in[(Xᵀ ⊗ I)·J]`. The map is completely
//! positive iff `J ⪰ 0` and trace preserving iff the partial trace over the
//! output factor equals the input identity.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HermitianMatrix, Subsystem};
use crate::tol::Tolerances;

/// Matrix representation of a hermiticity-preserving linear map from
/// `din`-dimensional to `dout`-dimensional operators.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiMatrix {
    din: usize,
    dout: usize,
    matrix: HermitianMatrix,
}

impl ChoiMatrix {
    pub fn new(din: usize, dout: usize, matrix: HermitianMatrix) -> Result<Self> {
        if matrix.dim() != din * dout {
            return Err(Error::DimensionMismatch(format!(
                "Choi matrix for a {din}→{dout} map must have dimension {}, got {}",
                din * dout,
                matrix.dim()
            )));
        }
        Ok(Self { din, dout, matrix })
    }

    /// Builds `Σ_ij E_ij ⊗ Γ(E_ij)` from the map's action on basis matrices.
    /// `action(i, j)` must return the `dout × dout` matrix `Γ(E_ij)`.
    pub fn of_map(
        din: usize,
        dout: usize,
        action: impl Fn(usize, usize) -> ComplexMatrix,
    ) -> Result<Self> {
        let n = din * dout;
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..din {
            for j in 0..din {
                let block = action(i, j);
                if block.rows() != dout || block.cols() != dout {
                    return Err(Error::DimensionMismatch(format!(
                        "map must produce {dout}x{dout} blocks, got {}x{}",
                        block.rows(),
                        block.cols()
                    )));
                }
                for k in 0..dout {
                    for l in 0..dout {
                        m.set(i * dout + k, j * dout + l, block.get(k, l));
                    }
                }
            }
        }
        Ok(Self {
            din,
            dout,
            matrix: HermitianMatrix::symmetrized(m)?,
        })
    }

    /// Choi matrix of the identity channel: the unnormalized maximally
    /// entangled projector.
    pub fn identity_channel(dim: usize) -> Self {
        Self::of_map(dim, dim, |i, j| {
            let mut e = ComplexMatrix::zeros(dim, dim);
            e.set(i, j, Complex64::new(1.0, 0.0));
            e
        })
        .expect("dimension bookkeeping is internal")
    }

    /// Choi matrix of the constant map `X ↦ tr(X)·σ`.
    pub fn replacer(din: usize, sigma: &HermitianMatrix) -> Self {
        let dout = sigma.dim();
        Self::of_map(din, dout, |i, j| {
            if i == j {
                sigma.matrix().clone()
            } else {
                ComplexMatrix::zeros(dout, dout)
            }
        })
        .expect("dimension bookkeeping is internal")
    }

    /// Choi matrix of the transpose map, positive but not completely positive.
    pub fn transpose_map(dim: usize) -> Self {
        Self::of_map(dim, dim, |i, j| {
            let mut e = ComplexMatrix::zeros(dim, dim);
            e.set(j, i, Complex64::new(1.0, 0.0));
            e
        })
        .expect("dimension bookkeeping is internal")
    }

    pub fn din(&self) -> usize {
        self.din
    }

    pub fn dout(&self) -> usize {
        self.dout
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    /// The represented map's trace-preservation defect: the partial trace of
    /// `J` over the output factor minus the input identity.
    pub fn tp_defect(&self) -> Result<HermitianMatrix> {
        let marginal = self
            .matrix
            .matrix()
            .partial_trace((self.din, self.dout), Subsystem::First)?;
        HermitianMatrix::symmetrized(marginal.sub(&ComplexMatrix::identity(self.din))?)
    }

    /// True iff the represented map is trace preserving within the tolerance.
    pub fn is_trace_preserving(&self, tol: &Tolerances) -> Result<bool> {
        Ok(self.tp_defect()?.matrix().max_abs_entry() <= tol.map_feasibility)
    }
}

/// Applies the represented map: `Γ(X)_{kl} = Σ_ij X_ij · J[(i,k),(j,l)]`.
pub fn apply_choi(j: &ChoiMatrix, x: &HermitianMatrix) -> Result<HermitianMatrix> {
    if x.dim() != j.din() {
        return Err(Error::DimensionMismatch(format!(
            "map expects {}-dimensional input, got {}",
            j.din(),
            x.dim()
        )));
    }
    let dout = j.dout();
    let mut out = ComplexMatrix::zeros(dout, dout);
    for i in 0..j.din() {
        for jj in 0..j.din() {
            let xij = x.get(i, jj);
            if xij == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..dout {
                for l in 0..dout {
                    let v = out.get(k, l) + xij * j.matrix().get(i * dout + k, jj * dout + l);
                    out.set(k, l, v);
                }
            }
        }
    }
    HermitianMatrix::symmetrized(out)
}
