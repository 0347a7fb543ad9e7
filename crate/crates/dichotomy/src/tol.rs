//! The single tolerance policy shared by every numerical routine in the crate.
//!
//! All comparisons against "exact" statements (Hermitian symmetry, unit trace,
//! nonnegativity of a gap curve, ...) go through one [`Tolerances`] record so
//! that a run can be tightened or loosened in one place.

use serde::{Deserialize, Serialize};

/// Numerical tolerances and iteration limits.
///
/// Every field has a default chosen for desk-scale problems (dimensions up to
/// a few tens). Construct with [`Tolerances::default`] and override fields as
/// needed; the record deserializes from a partial document, so a config file
/// may set any subset.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Max-entry norm of the anti-Hermitian part accepted at construction.
    pub hermitian_input: f64,
    /// Off-diagonal Frobenius threshold (relative to matrix scale) at which
    /// the Jacobi eigensolver declares convergence.
    pub jacobi_off_threshold: f64,
    /// Sweep cap for the Jacobi eigensolver.
    pub jacobi_max_sweeps: usize,
    /// PSD slack: a matrix counts as positive semidefinite when its least
    /// eigenvalue is at least `-psd`.
    pub psd: f64,
    /// Allowed deviation of a density matrix trace from 1.
    pub unit_trace: f64,
    /// Allowed deviation of a POVM element sum from the identity (max entry).
    pub povm_completeness: f64,
    /// Allowed deviation of a probability vector sum from 1.
    pub prob_sum: f64,
    /// Allowed deviation of a transition-matrix column sum from 1.
    pub column_stochastic: f64,
    /// Slack for ordering decisions: `a >= b` is accepted when `a >= b - ordering_slack`.
    pub ordering_slack: f64,
    /// Simplex pivot tolerance.
    pub lp_pivot: f64,
    /// Phase-1 objective value below which an LP counts as feasible.
    pub lp_feasibility: f64,
    /// Simplex pivot cap.
    pub lp_max_iterations: usize,
    /// Max-entry norm below which a commutator counts as zero.
    pub commutator: f64,
    /// Certification slack for the t-criterion: an interval certifies when the
    /// sound lower bound on the gap stays above `-certification_margin`.
    pub certification_margin: f64,
    /// Step used for the midpoint secant slope in interval certification.
    pub derivative_step: f64,
    /// Default grid points per unit t-interval for the t-criterion.
    pub t_resolution: usize,
    /// Bisection depth cap per interval in the t-criterion.
    pub refinement_depth: usize,
    /// Constraint-residual threshold for map-feasibility witnesses.
    pub map_feasibility: f64,
    /// Iteration cap for the alternating-projection map solver.
    pub map_max_iterations: usize,
    /// Number of consecutive stalled iterations before declaring a stall.
    pub stall_window: usize,
    /// Residual improvement below which an iteration counts as stalled.
    pub stall_improvement: f64,
    /// A stalled residual above `infeasibility_factor * map_feasibility`
    /// is reported as infeasible.
    pub infeasibility_factor: f64,
    /// Eigenvalue cutoff defining the support of a state.
    pub rank: f64,
    /// Slack on the top eigenvalue of a projector sum when detecting a
    /// common support vector (fires at `>= 2 - support_overlap`).
    pub support_overlap: f64,
    /// Trace-distance threshold below which two states count as equal.
    pub state_distinct: f64,
    /// Agreement tolerance between closed-form and eigenvalue trace norms.
    pub closed_form: f64,
    /// Slack for the piecewise lower-bound checks on the gap function.
    pub bound_slack: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian_input: 1e-9,
            jacobi_off_threshold: 1e-13,
            jacobi_max_sweeps: 100,
            psd: 1e-10,
            unit_trace: 1e-10,
            povm_completeness: 1e-9,
            prob_sum: 1e-12,
            column_stochastic: 1e-9,
            ordering_slack: 1e-9,
            lp_pivot: 1e-10,
            lp_feasibility: 1e-8,
            lp_max_iterations: 10_000,
            commutator: 1e-9,
            certification_margin: 1e-8,
            derivative_step: 1e-6,
            t_resolution: 1024,
            refinement_depth: 20,
            map_feasibility: 1e-7,
            map_max_iterations: 50_000,
            stall_window: 500,
            stall_improvement: 1e-12,
            infeasibility_factor: 10.0,
            rank: 1e-9,
            support_overlap: 1e-8,
            state_distinct: 1e-9,
            closed_form: 1e-10,
            bound_slack: 1e-9,
        }
    }
}
