//! Density-matrix dichotomies and the measurements that compare them.
//!
//! A POVM `M = {M_x}` turns the quantum pair `{ρ₀, ρ₁}` into the classical
//! model `q_θ(x) = tr ρ_θ M_x`. No measurement can increase the ℓ₁ score:
//! `‖q₀ − t·q₁‖₁ ≤ ‖ρ₀ − t·ρ₁‖₁` for every `t ≥ 0`, and the two-outcome
//! projective measurement onto the sign eigenspaces of `ρ₀ − t·ρ₁` attains
//! equality. That attainment is what makes the trace-norm criterion in
//! [`criterion`] decide the quantum-to-classical ordering for commuting
//! left-hand pairs.

mod criterion;

pub use criterion::{lemma1_cle_ordering, t_criterion, OrderingVerdict};

use num_complex::Complex64;

use crate::classical::Dichotomy;
use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian_with, trace_norm_with, ComplexMatrix, HermitianMatrix};
use crate::tol::Tolerances;

/// PSD, unit-trace Hermitian operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: HermitianMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: HermitianMatrix) -> Result<Self> {
        Self::new_with(matrix, &Tolerances::default())
    }

    pub fn new_with(matrix: HermitianMatrix, tol: &Tolerances) -> Result<Self> {
        let spec = eig_hermitian_with(&matrix, tol)?;
        if spec.min_eigenvalue() < -tol.psd {
            return Err(Error::InvalidState(format!(
                "least eigenvalue {:.3e} is negative",
                spec.min_eigenvalue()
            )));
        }
        let trace = matrix.trace_re();
        if (trace - 1.0).abs() > tol.unit_trace {
            return Err(Error::InvalidState(format!("trace is {trace}, not 1")));
        }
        Ok(Self { matrix })
    }

    /// Normalized rank-1 projector `|v⟩⟨v| / ⟨v|v⟩`.
    pub fn pure(v: &[Complex64]) -> Result<Self> {
        let n = v.len();
        let norm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if n == 0 || norm_sq <= 0.0 || !norm_sq.is_finite() {
            return Err(Error::InvalidState("cannot normalize the zero vector".into()));
        }
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, v[i] * v[j].conj() / norm_sq);
            }
        }
        Self::new(HermitianMatrix::new(m)?)
    }

    pub fn from_real_diag(diag: &[f64]) -> Result<Self> {
        Self::new(HermitianMatrix::from_real_diag(diag))
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }
}

/// Finite collection of PSD operators summing to the identity.
#[derive(Debug, Clone)]
pub struct Povm {
    dim: usize,
    elements: Vec<HermitianMatrix>,
}

impl Povm {
    pub fn new(elements: Vec<HermitianMatrix>) -> Result<Self> {
        Self::new_with(elements, &Tolerances::default())
    }

    pub fn new_with(elements: Vec<HermitianMatrix>, tol: &Tolerances) -> Result<Self> {
        let Some(first) = elements.first() else {
            return Err(Error::InvalidPovm("no elements".into()));
        };
        let dim = first.dim();
        let mut sum = HermitianMatrix::zeros(dim);
        for (i, e) in elements.iter().enumerate() {
            if e.dim() != dim {
                return Err(Error::InvalidPovm(format!(
                    "element {i} has dimension {}, expected {dim}",
                    e.dim()
                )));
            }
            let spec = eig_hermitian_with(e, tol)?;
            if spec.min_eigenvalue() < -tol.psd {
                return Err(Error::InvalidPovm(format!(
                    "element {i} has negative eigenvalue {:.3e}",
                    spec.min_eigenvalue()
                )));
            }
            sum = sum.add(e)?;
        }
        let defect = sum
            .matrix()
            .sub(&ComplexMatrix::identity(dim))?
            .max_abs_entry();
        if defect > tol.povm_completeness {
            return Err(Error::InvalidPovm(format!(
                "elements sum to identity only within {defect:.3e}"
            )));
        }
        Ok(Self { dim, elements })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[HermitianMatrix] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The measurement that reads off the computational basis.
    pub fn computational_basis(dim: usize) -> Self {
        let elements = (0..dim)
            .map(|i| {
                let mut d = vec![0.0; dim];
                d[i] = 1.0;
                HermitianMatrix::from_real_diag(&d)
            })
            .collect();
        Self { dim, elements }
    }
}

/// A pair of density matrices on one Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumDichotomy {
    rho0: DensityMatrix,
    rho1: DensityMatrix,
}

impl QuantumDichotomy {
    pub fn new(rho0: DensityMatrix, rho1: DensityMatrix) -> Result<Self> {
        if rho0.dim() != rho1.dim() {
            return Err(Error::DimensionMismatch(format!(
                "state dimensions differ: {} vs {}",
                rho0.dim(),
                rho1.dim()
            )));
        }
        Ok(Self { rho0, rho1 })
    }

    pub fn dim(&self) -> usize {
        self.rho0.dim()
    }

    pub fn rho0(&self) -> &DensityMatrix {
        &self.rho0
    }

    pub fn rho1(&self) -> &DensityMatrix {
        &self.rho1
    }

    /// The dichotomy with the two hypotheses exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            rho0: self.rho1.clone(),
            rho1: self.rho0.clone(),
        }
    }

    /// `ρ₀ − t·ρ₁`.
    pub fn difference(&self, t: f64) -> HermitianMatrix {
        self.rho0
            .matrix()
            .sub(&self.rho1.matrix().scale(t))
            .expect("matching dimensions by construction")
    }
}

/// Real trace of a product of Hermitian matrices.
fn trace_product(a: &HermitianMatrix, b: &HermitianMatrix) -> f64 {
    let n = a.dim();
    let mut s = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            s += a.get(i, j) * b.get(j, i);
        }
    }
    s.re
}

/// The classical model induced by measuring both states: `q_θ(x) = tr ρ_θ M_x`.
pub fn induced_model(q: &QuantumDichotomy, m: &Povm, tol: &Tolerances) -> Result<Dichotomy> {
    if q.dim() != m.dim() {
        return Err(Error::DimensionMismatch(format!(
            "states have dimension {}, POVM has {}",
            q.dim(),
            m.dim()
        )));
    }
    let mut rows = [Vec::with_capacity(m.len()), Vec::with_capacity(m.len())];
    for (slot, rho) in [(0, q.rho0()), (1, q.rho1())] {
        for e in m.elements() {
            // Traces of state·PSD products are nonnegative up to solver noise;
            // clamp so the result is a valid distribution.
            rows[slot].push(trace_product(rho.matrix(), e).max(0.0));
        }
        let total: f64 = rows[slot].iter().sum();
        for v in rows[slot].iter_mut() {
            *v /= total;
        }
    }
    let [q0, q1] = rows;
    Dichotomy::new_with(q0, q1, tol)
}

/// `‖ρ₀ − t·ρ₁‖₁` for `t ≥ 0`.
pub fn quantum_l1_t(q: &QuantumDichotomy, t: f64, tol: &Tolerances) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "t must be nonnegative, got {t}"
        )));
    }
    trace_norm_with(&q.difference(t), tol)
}

/// Two-outcome projective measurement onto the nonnegative and negative
/// eigenspaces of `ρ₀ − t·ρ₁`; its induced model attains `‖ρ₀ − t·ρ₁‖₁`.
pub fn helstrom_measurement(q: &QuantumDichotomy, t: f64, tol: &Tolerances) -> Result<Povm> {
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "t must be nonnegative, got {t}"
        )));
    }
    let spec = eig_hermitian_with(&q.difference(t), tol)?;
    let plus = spec.assemble(|l| if l >= 0.0 { 1.0 } else { 0.0 });
    let minus = HermitianMatrix::identity(q.dim()).sub(&plus)?;
    Povm::new_with(vec![plus, minus], tol)
}

/// True iff `‖ρ₀ρ₁ − ρ₁ρ₀‖_max ≤ tol`.
pub fn commutes(q: &QuantumDichotomy, tol: f64) -> bool {
    let a = q.rho0().matrix().matrix();
    let b = q.rho1().matrix().matrix();
    let ab = a.matmul(b).expect("square, equal dims");
    let ba = b.matmul(a).expect("square, equal dims");
    ab.sub(&ba).expect("equal dims").max_abs_entry() <= tol
}
