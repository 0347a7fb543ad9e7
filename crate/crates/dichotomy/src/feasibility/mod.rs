//! Existence of structured trace-preserving maps carrying one finite state
//! family onto another.
//!
//! Two map classes are decided over Choi matrices:
//!
//! - **CPTP**: `J ⪰ 0` with the trace-preservation marginal — exact at every
//!   dimension.
//! - **Decomposable positive TP**: `J = A + T_in(B)` with `A, B ⪰ 0`, where
//!   `T_in` transposes the input factor. Between dimensions (2,2), (2,3) and
//!   (3,2) every positive map is decomposable, so the answer is exact there;
//!   elsewhere feasibility is sufficient for a positive map to exist while
//!   infeasibility only rules out the decomposable ones.
//!
//! Both problems are convex feasibility over the PSD cone intersected with an
//! affine subspace, solved by Dykstra-corrected alternating projections.
//! The projection method cannot emit a finite infeasibility certificate, so a
//! residual that stalls well above tolerance is reported as infeasible (a
//! labeled heuristic); [`support_obstruction`] supplies a rigorous
//! impossibility certificate independently of the solver.

mod choi;
mod solver;

pub use choi::{apply_choi, ChoiMatrix};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    eig_hermitian_with, trace_norm_with, HermitianMatrix, Subsystem,
};
use crate::quantum::{DensityMatrix, QuantumDichotomy};
use crate::tol::Tolerances;
use crate::Verdict;
use solver::{coord_len, coords_to_herm, herm_to_coords, psd_project, AffineProjector};

/// Which class of trace-preserving maps to search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapClass {
    Cptp,
    PtpDecomposable,
}

/// Whether the verdict is exact for the problem's dimensions or only a
/// sufficient condition (see the module docs).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exactness {
    ExactForDims,
    SufficientOnly,
}

/// The constraint system `Γ(ρ_θ) = σ_θ` over a finite family of pairs.
#[derive(Debug, Clone)]
pub struct MapFamilyProblem {
    pairs: Vec<(DensityMatrix, DensityMatrix)>,
    class: MapClass,
}

impl MapFamilyProblem {
    pub fn new(pairs: Vec<(DensityMatrix, DensityMatrix)>, class: MapClass) -> Result<Self> {
        let Some((r0, s0)) = pairs.first() else {
            return Err(Error::InvalidParameter("pair list must be nonempty".into()));
        };
        let (din, dout) = (r0.dim(), s0.dim());
        for (i, (r, s)) in pairs.iter().enumerate() {
            if r.dim() != din || s.dim() != dout {
                return Err(Error::DimensionMismatch(format!(
                    "pair {i} has dimensions {}→{}, expected {din}→{dout}",
                    r.dim(),
                    s.dim()
                )));
            }
        }
        Ok(Self { pairs, class })
    }

    pub fn pairs(&self) -> &[(DensityMatrix, DensityMatrix)] {
        &self.pairs
    }

    pub fn class(&self) -> MapClass {
        self.class
    }

    pub fn din(&self) -> usize {
        self.pairs[0].0.dim()
    }

    pub fn dout(&self) -> usize {
        self.pairs[0].1.dim()
    }
}

/// A map produced by the solver, in the class that was searched.
#[derive(Debug, Clone)]
pub enum MapWitness {
    /// A completely positive TP map: one PSD Choi matrix.
    Cp { choi: ChoiMatrix },
    /// A decomposable positive TP map `A + T_in(B)` with both parts PSD.
    Decomposable {
        choi: ChoiMatrix,
        cp_part: HermitianMatrix,
        co_part: HermitianMatrix,
    },
}

impl MapWitness {
    pub fn choi(&self) -> &ChoiMatrix {
        match self {
            MapWitness::Cp { choi } => choi,
            MapWitness::Decomposable { choi, .. } => choi,
        }
    }
}

/// A vector in the support of both left-hand states while the targets cannot
/// share it: a rigorous certificate that no positive TP map exists.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SupportObstruction {
    /// Unit vector in `supp ρ₀ ∩ supp ρ₁`.
    pub vector: Vec<Complex64>,
    /// `⟨ψ|P₀|ψ⟩`, 1 up to tolerance.
    pub rho0_weight: f64,
    /// `⟨ψ|P₁|ψ⟩`, 1 up to tolerance.
    pub rho1_weight: f64,
}

/// Outcome of a map-feasibility search.
#[derive(Debug, Clone)]
pub struct FeasibilityReport {
    pub verdict: Verdict,
    /// Max constraint violation (trace norm) of the best PSD iterate: at most
    /// the feasibility tolerance for feasible verdicts, the stalled floor for
    /// infeasible ones.
    pub residual: f64,
    pub witness: Option<MapWitness>,
    /// Filled by callers that run [`support_obstruction`]; the solver itself
    /// never consults it, keeping the two impossibility arguments independent.
    pub obstruction: Option<SupportObstruction>,
    pub iterations: usize,
    pub exactness: Exactness,
}

/// Projector onto the span of eigenvectors with eigenvalue above `rank_tol`.
pub fn support_projector(
    rho: &DensityMatrix,
    rank_tol: f64,
    tol: &Tolerances,
) -> Result<HermitianMatrix> {
    let spec = eig_hermitian_with(rho.matrix(), tol)?;
    Ok(spec.assemble(|l| if l > rank_tol { 1.0 } else { 0.0 }))
}

fn expectation(m: &HermitianMatrix, v: &[Complex64]) -> f64 {
    let n = m.dim();
    let mut s = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            s += v[i].conj() * m.get(i, j) * v[j];
        }
    }
    s.re
}

fn rank_at_most_one(rho: &DensityMatrix, tol: &Tolerances) -> Result<bool> {
    let spec = eig_hermitian_with(rho.matrix(), tol)?;
    let n = spec.eigenvalues().len();
    Ok(n < 2 || spec.eigenvalues()[n - 2] <= tol.rank)
}

/// Looks for a unit vector lying in the support of both left-hand states.
///
/// Such a vector `ψ` obstructs every positive TP map `Γ` with
/// `Γ(ρ_θ) = σ_θ` provided the targets cannot absorb it: either both targets
/// are pure and distinct (any positive TP image of `|ψ⟩⟨ψ|` would have to
/// equal both), or the target supports intersect trivially (the image's
/// support would have to lie in both).
///
/// Detection: `ψ` exists iff the top eigenvalue of `P₀ + P₁` reaches 2.
pub fn support_obstruction(
    a: &QuantumDichotomy,
    b: &QuantumDichotomy,
    tol: &Tolerances,
) -> Result<Option<SupportObstruction>> {
    let p0 = support_projector(a.rho0(), tol.rank, tol)?;
    let p1 = support_projector(a.rho1(), tol.rank, tol)?;
    let spec = eig_hermitian_with(&p0.add(&p1)?, tol)?;
    if spec.max_eigenvalue() < 2.0 - tol.support_overlap {
        return Ok(None);
    }
    let psi = spec.eigenvector(a.dim() - 1);

    let distinct = 0.5
        * trace_norm_with(&b.rho0().matrix().sub(b.rho1().matrix())?, tol)?;
    if distinct <= tol.state_distinct {
        return Ok(None);
    }
    let both_pure = rank_at_most_one(b.rho0(), tol)? && rank_at_most_one(b.rho1(), tol)?;
    let disjoint_targets = {
        let q0 = support_projector(b.rho0(), tol.rank, tol)?;
        let q1 = support_projector(b.rho1(), tol.rank, tol)?;
        eig_hermitian_with(&q0.add(&q1)?, tol)?.max_eigenvalue() < 2.0 - tol.support_overlap
    };
    if !(both_pure || disjoint_targets) {
        return Ok(None);
    }

    Ok(Some(SupportObstruction {
        rho0_weight: expectation(&p0, &psi),
        rho1_weight: expectation(&p1, &psi),
        vector: psi,
    }))
}

/// Decides existence of a CPTP map with `Γ(ρ_θ) = σ_θ` for all pairs.
pub fn cptp_feasible(problem: &MapFamilyProblem, tol: &Tolerances) -> Result<FeasibilityReport> {
    if problem.class() != MapClass::Cptp {
        return Err(Error::Precondition(
            "problem is not flagged for the CPTP class".into(),
        ));
    }
    solve(problem, tol)
}

/// Decides existence of a decomposable positive TP map with `Γ(ρ_θ) = σ_θ`.
pub fn ptp_decomposable_feasible(
    problem: &MapFamilyProblem,
    tol: &Tolerances,
) -> Result<FeasibilityReport> {
    if problem.class() != MapClass::PtpDecomposable {
        return Err(Error::Precondition(
            "problem is not flagged for the decomposable positive class".into(),
        ));
    }
    solve(problem, tol)
}

/// Dispatches on the problem's map class.
pub fn solve_map_family(problem: &MapFamilyProblem, tol: &Tolerances) -> Result<FeasibilityReport> {
    solve(problem, tol)
}

fn exactness_for(problem: &MapFamilyProblem) -> Exactness {
    match problem.class() {
        MapClass::Cptp => Exactness::ExactForDims,
        MapClass::PtpDecomposable => {
            if matches!((problem.din(), problem.dout()), (2, 2) | (2, 3) | (3, 2)) {
                Exactness::ExactForDims
            } else {
                Exactness::SufficientOnly
            }
        }
    }
}

/// Assembles the full Choi matrix from the variable blocks: `J` itself for
/// CPTP, `A + T_in(B)` for the decomposable class.
fn assemble_choi(x: &[f64], problem: &MapFamilyProblem) -> Result<HermitianMatrix> {
    let n = problem.din() * problem.dout();
    let nc = coord_len(n);
    match problem.class() {
        MapClass::Cptp => Ok(coords_to_herm(&x[..nc], n)),
        MapClass::PtpDecomposable => {
            let a = coords_to_herm(&x[..nc], n);
            let b = coords_to_herm(&x[nc..], n);
            let b_pt = b
                .matrix()
                .partial_transpose((problem.din(), problem.dout()), Subsystem::First)?;
            HermitianMatrix::symmetrized(a.matrix().add(&b_pt)?)
        }
    }
}

/// Per-constraint trace-norm violations `(tp_defect, channel_defects...)` of
/// the map represented by `x`.
fn violations(x: &[f64], problem: &MapFamilyProblem, tol: &Tolerances) -> Result<(f64, f64)> {
    let j = ChoiMatrix::new(problem.din(), problem.dout(), assemble_choi(x, problem)?)?;
    let tp = trace_norm_with(&j.tp_defect()?, tol)?;
    let mut channel = 0.0f64;
    for (rho, sigma) in problem.pairs() {
        let image = apply_choi(&j, rho.matrix())?;
        channel = channel.max(trace_norm_with(&image.sub(sigma.matrix())?, tol)?);
    }
    Ok((tp, channel))
}

fn solve(problem: &MapFamilyProblem, tol: &Tolerances) -> Result<FeasibilityReport> {
    let din = problem.din();
    let dout = problem.dout();
    let n = din * dout;
    let nc = coord_len(n);
    let nvars = match problem.class() {
        MapClass::Cptp => nc,
        MapClass::PtpDecomposable => 2 * nc,
    };
    let exactness = exactness_for(problem);

    // Affine constraints, built column by column on the orthonormal basis:
    // TP marginal rows first, then one block of channel rows per pair.
    let nrows = coord_len(din) + problem.pairs().len() * coord_len(dout);
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(nvars);
    for k in 0..nvars {
        let mut unit = vec![0.0; nvars];
        unit[k] = 1.0;
        let j = ChoiMatrix::new(din, dout, assemble_choi(&unit, problem)?)?;
        let mut col = Vec::with_capacity(nrows);
        col.extend(herm_to_coords(&HermitianMatrix::symmetrized(
            j.matrix()
                .matrix()
                .partial_trace((din, dout), Subsystem::First)?,
        )?));
        for (rho, _) in problem.pairs() {
            col.extend(herm_to_coords(&apply_choi(&j, rho.matrix())?));
        }
        columns.push(col);
    }
    let mut rows = vec![vec![0.0; nvars]; nrows];
    for (k, col) in columns.iter().enumerate() {
        for (r, &v) in col.iter().enumerate() {
            rows[r][k] = v;
        }
    }
    let mut rhs = Vec::with_capacity(nrows);
    rhs.extend(herm_to_coords(&HermitianMatrix::identity(din)));
    for (_, sigma) in problem.pairs() {
        rhs.extend(herm_to_coords(sigma.matrix()));
    }
    let affine = AffineProjector::new(rows, rhs, tol)?;

    // Start at the maximally mixed channel J = I/dout (TP and PSD), split
    // evenly between the two blocks for the decomposable class.
    let mut x = match problem.class() {
        MapClass::Cptp => herm_to_coords(&HermitianMatrix::identity(n).scale(1.0 / dout as f64)),
        MapClass::PtpDecomposable => {
            let half = herm_to_coords(&HermitianMatrix::identity(n).scale(0.5 / dout as f64));
            let mut v = half.clone();
            v.extend(half);
            v
        }
    };
    let mut correction = vec![0.0; nvars];

    let mut best = f64::INFINITY;
    let mut stalled = 0usize;
    for iter in 1..=tol.map_max_iterations {
        // PSD projection of x + correction, blockwise.
        let shifted: Vec<f64> = x.iter().zip(&correction).map(|(a, b)| a + b).collect();
        let mut y = Vec::with_capacity(nvars);
        for block in shifted.chunks(nc) {
            y.extend(herm_to_coords(&psd_project(&coords_to_herm(block, n), tol)?));
        }
        for ((c, &s), &yv) in correction.iter_mut().zip(&shifted).zip(&y) {
            *c = s - yv;
        }

        let (tp, channel) = violations(&y, problem, tol)?;
        let residual = tp.max(channel);
        if channel <= tol.map_feasibility && tp <= 0.1 * tol.map_feasibility {
            let choi = ChoiMatrix::new(din, dout, assemble_choi(&y, problem)?)?;
            let witness = match problem.class() {
                MapClass::Cptp => MapWitness::Cp { choi },
                MapClass::PtpDecomposable => MapWitness::Decomposable {
                    choi,
                    cp_part: coords_to_herm(&y[..nc], n),
                    co_part: coords_to_herm(&y[nc..], n),
                },
            };
            return Ok(FeasibilityReport {
                verdict: Verdict::Feasible,
                residual,
                witness: Some(witness),
                obstruction: None,
                iterations: iter,
                exactness,
            });
        }

        if residual < best - tol.stall_improvement {
            best = residual;
            stalled = 0;
        } else {
            stalled += 1;
        }
        if stalled >= tol.stall_window {
            let verdict = if best > tol.infeasibility_factor * tol.map_feasibility {
                Verdict::Infeasible
            } else {
                Verdict::Undecided
            };
            return Ok(FeasibilityReport {
                verdict,
                residual: best,
                witness: None,
                obstruction: None,
                iterations: iter,
                exactness,
            });
        }

        x = affine.project(&y);
    }

    Ok(FeasibilityReport {
        verdict: Verdict::Undecided,
        residual: best,
        witness: None,
        obstruction: None,
        iterations: tol.map_max_iterations,
        exactness,
    })
}
