//! A two-parameter pair of state families for which the classical ordering
//! holds while no trace-preserving positive map carries one onto the other.
//!
//! The source family lives on a 3-dimensional space,
//! `ρ₀ = diag(α, 0, 1−α)` and `ρ₁ = diag(0, α, 1−α)`, and the target family
//! on a 2-dimensional one, `σ₀ = |0⟩⟨0|` and `σ₁` the pure state with
//! `⟨0|σ₁|0⟩ = 1−β²`. For `α ≥ β` the trace-norm curves obey
//! `‖ρ₀ − t·ρ₁‖₁ ≥ ‖σ₀ − t·σ₁‖₁` for every `t ≥ 0`, yet for `0 < β` and
//! `α < 1` the basis vector `(0,0,1)` lies in the support of both source
//! states while the targets are distinct pure states, so no positive TP map
//! can exist. [`reproduce`] runs the whole argument end to end.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feasibility::{
    cptp_feasible, ptp_decomposable_feasible, support_obstruction, Exactness, MapClass,
    MapFamilyProblem,
};
use crate::linalg::{ComplexMatrix, HermitianMatrix};
use crate::quantum::{
    commutes, lemma1_cle_ordering, quantum_l1_t, t_criterion, DensityMatrix, OrderingVerdict,
    QuantumDichotomy,
};
use crate::tol::Tolerances;
use crate::Verdict;
use num_complex::Complex64;

/// The two family parameters, each in `[0, 1]`.
///
/// The canonical regime is `α ≥ β` (with `β > 0` for the map-nonexistence
/// half); parameters outside it construct fine for negative tests and are
/// reported by [`CounterexampleParams::in_hypothesis`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleParams {
    alpha: f64,
    beta: f64,
}

impl CounterexampleParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("beta", beta)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must lie in [0, 1], got {v}"
                )));
            }
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// True iff `α ≥ β` and `β > 0`, the regime in which every stage of the
    /// reproduction is expected to pass.
    pub fn in_hypothesis(&self) -> bool {
        self.alpha >= self.beta && self.beta > 0.0
    }
}

/// The four states exactly as displayed: the 3-dim source pair and the 2-dim
/// target pair.
pub fn build_states(
    p: &CounterexampleParams,
) -> Result<(QuantumDichotomy, QuantumDichotomy)> {
    let (alpha, beta) = (p.alpha, p.beta);
    let rho0 = DensityMatrix::from_real_diag(&[alpha, 0.0, 1.0 - alpha])?;
    let rho1 = DensityMatrix::from_real_diag(&[0.0, alpha, 1.0 - alpha])?;

    let cross = (1.0 - beta * beta).sqrt() * beta;
    let mut s1 = ComplexMatrix::zeros(2, 2);
    s1.set(0, 0, Complex64::new(1.0 - beta * beta, 0.0));
    s1.set(0, 1, Complex64::new(cross, 0.0));
    s1.set(1, 0, Complex64::new(cross, 0.0));
    s1.set(1, 1, Complex64::new(beta * beta, 0.0));
    let sigma0 = DensityMatrix::from_real_diag(&[1.0, 0.0])?;
    let sigma1 = DensityMatrix::new(HermitianMatrix::new(s1)?)?;

    Ok((
        QuantumDichotomy::new(rho0, rho1)?,
        QuantumDichotomy::new(sigma0, sigma1)?,
    ))
}

/// Closed form `‖ρ₀ − t·ρ₁‖₁ = α(1+t) + (1−α)|1−t|`.
pub fn rho_norm_closed(alpha: f64, t: f64) -> f64 {
    alpha * (1.0 + t) + (1.0 - alpha) * (1.0 - t).abs()
}

/// Closed form `‖σ₀ − t·σ₁‖₁ = √((1−t)² + 4tβ²)`.
pub fn sigma_norm_closed(beta: f64, t: f64) -> f64 {
    ((1.0 - t) * (1.0 - t) + 4.0 * t * beta * beta).sqrt()
}

/// The gap `f(t) = ‖ρ₀ − t·ρ₁‖₁² − ‖σ₀ − t·σ₁‖₁²` from the closed forms.
pub fn f_gap(p: &CounterexampleParams, t: f64) -> f64 {
    let r = rho_norm_closed(p.alpha, t);
    let s = sigma_norm_closed(p.beta, t);
    r * r - s * s
}

/// A grid point where a claimed lower bound failed.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct BoundViolation {
    pub t: f64,
    pub f: f64,
    pub bound: f64,
}

/// Outcome of checking the piecewise lower bounds on the gap.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PiecewiseBoundReport {
    pub points_checked: usize,
    /// Points where `f(t)` fell below `4α(1−α)(t−t²)` on `[0,1]` or
    /// `4α(1−α)(t−1)` past 1.
    pub bound_violations: Vec<BoundViolation>,
    /// Points where the σ-norm with parameter β exceeded the one with α.
    pub domination_violations: Vec<BoundViolation>,
    pub passed: bool,
}

/// Verifies, on the given grid, the two piecewise lower bounds
/// `f(t) ≥ 4α(1−α)(t−t²)` on `[0,1]` and `f(t) ≥ 4α(1−α)(t−1)` past 1,
/// together with the domination `√((1−t)²+4tβ²) ≤ √((1−t)²+4tα²)`.
/// Requires `α ≥ β`.
pub fn piecewise_bound_check(
    p: &CounterexampleParams,
    grid: &[f64],
    tol: &Tolerances,
) -> Result<PiecewiseBoundReport> {
    if p.alpha < p.beta {
        return Err(Error::Precondition(format!(
            "the piecewise bounds assume alpha >= beta, got alpha={} beta={}",
            p.alpha, p.beta
        )));
    }
    let coeff = 4.0 * p.alpha * (1.0 - p.alpha);
    let mut bound_violations = Vec::new();
    let mut domination_violations = Vec::new();
    for &t in grid {
        let f = f_gap(p, t);
        let bound = if t <= 1.0 {
            coeff * (t - t * t)
        } else {
            coeff * (t - 1.0)
        };
        if f - bound < -tol.bound_slack {
            bound_violations.push(BoundViolation { t, f, bound });
        }
        let s_beta = sigma_norm_closed(p.beta, t);
        let s_alpha = sigma_norm_closed(p.alpha, t);
        if s_beta > s_alpha + tol.bound_slack {
            domination_violations.push(BoundViolation {
                t,
                f: s_beta,
                bound: s_alpha,
            });
        }
    }
    Ok(PiecewiseBoundReport {
        points_checked: grid.len(),
        passed: bound_violations.is_empty() && domination_violations.is_empty(),
        bound_violations,
        domination_violations,
    })
}

/// One row of the emitted curve. `f` is computed from the stored norms.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GapSample {
    pub t: f64,
    pub rho_norm: f64,
    pub sigma_norm: f64,
    pub f: f64,
}

/// The gap curve over `[0, t_max]`, from the closed forms.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GapCurve {
    pub samples: Vec<GapSample>,
}

impl GapCurve {
    pub fn evaluate(p: &CounterexampleParams, t_max: f64, resolution: usize) -> Self {
        let grid = unit_grid(t_max, resolution);
        let samples = grid
            .into_iter()
            .map(|t| {
                let rho_norm = rho_norm_closed(p.alpha, t);
                let sigma_norm = sigma_norm_closed(p.beta, t);
                GapSample {
                    t,
                    rho_norm,
                    sigma_norm,
                    f: rho_norm * rho_norm - sigma_norm * sigma_norm,
                }
            })
            .collect();
        Self { samples }
    }
}

/// Grid with `resolution` points per unit interval, covering `[0, t_max]`.
pub fn unit_grid(t_max: f64, resolution: usize) -> Vec<f64> {
    let n = (t_max * resolution as f64).ceil() as usize;
    (0..=n).map(|k| k as f64 / resolution as f64).collect()
}

/// One stage of the reproduction pipeline.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StageResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Aggregated outcome of [`reproduce`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReproductionReport {
    pub alpha: f64,
    pub beta: f64,
    pub hypothesis_satisfied: bool,
    pub stages: Vec<StageResult>,
    pub overall_success: bool,
    pub gap_curve: GapCurve,
}

/// Knobs for the reproduction run.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ReproduceConfig {
    /// Upper end of the emitted curve (certification itself does not depend
    /// on it).
    pub t_max: f64,
    /// Grid points per unit interval, for both the curve and certification.
    pub resolution: usize,
    /// Run the pipeline even when `α < β` or `β = 0`, recording honest stage
    /// failures instead of rejecting the parameters.
    pub allow_out_of_hypothesis: bool,
}

impl Default for ReproduceConfig {
    fn default() -> Self {
        Self {
            t_max: 10.0,
            resolution: 1024,
            allow_out_of_hypothesis: false,
        }
    }
}

fn stage(name: &str, run: impl FnOnce() -> Result<(bool, String)>) -> StageResult {
    match run() {
        Ok((passed, detail)) => StageResult {
            name: name.into(),
            passed,
            detail,
        },
        Err(e) => StageResult {
            name: name.into(),
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

fn describe_verdict(v: &OrderingVerdict) -> String {
    match v {
        OrderingVerdict::HoldsCertified => "holds-certified".into(),
        OrderingVerdict::Fails { witness_t, gap } => {
            format!("fails at t={witness_t:.6} with gap {gap:.3e}")
        }
        OrderingVerdict::Undecided { intervals } => {
            format!("undecided on {} interval(s)", intervals.len())
        }
    }
}

/// Runs the full argument and aggregates the stages:
/// commutation of the source pair, certified trace-norm ordering, the
/// classical-ordering reading of it, the support obstruction, infeasibility
/// of decomposable positive and of CPTP maps, the piecewise bounds, and the
/// closed-form/eigenvalue agreement. Emits the gap curve alongside.
pub fn reproduce(
    p: &CounterexampleParams,
    config: &ReproduceConfig,
    tol: &Tolerances,
) -> Result<ReproductionReport> {
    if !p.in_hypothesis() && !config.allow_out_of_hypothesis {
        return Err(Error::Precondition(format!(
            "parameters alpha={} beta={} are outside the hypothesis (need beta <= alpha and beta > 0); \
             enable allow_out_of_hypothesis to run anyway",
            p.alpha, p.beta
        )));
    }
    let (rho, sigma) = build_states(p)?;
    let mut stages = Vec::with_capacity(8);

    stages.push(stage("rho-pair-commutes", || {
        let ok = commutes(&rho, tol.commutator);
        Ok((ok, format!("commutator tolerance {:.1e}", tol.commutator)))
    }));

    stages.push(stage("t-criterion-certified", || {
        let v = t_criterion(&rho, &sigma, config.resolution, tol)?;
        Ok((v.holds(), describe_verdict(&v)))
    }));

    stages.push(stage("classical-ordering-holds", || {
        let v = lemma1_cle_ordering(&rho, &sigma, tol)?;
        Ok((v.holds(), describe_verdict(&v)))
    }));

    stages.push(stage("support-obstruction-found", || {
        match support_obstruction(&rho, &sigma, tol)? {
            Some(ob) => {
                let overlap = ob.vector[2].norm();
                Ok((
                    overlap >= 1.0 - tol.support_overlap,
                    format!("|<psi|e2>| = {overlap:.12}"),
                ))
            }
            None => Ok((false, "no common support vector usable as certificate".into())),
        }
    }));

    stages.push(stage("ptp-decomposable-infeasible", || {
        let problem = MapFamilyProblem::new(
            vec![
                (rho.rho0().clone(), sigma.rho0().clone()),
                (rho.rho1().clone(), sigma.rho1().clone()),
            ],
            MapClass::PtpDecomposable,
        )?;
        let r = ptp_decomposable_feasible(&problem, tol)?;
        Ok((
            r.verdict == Verdict::Infeasible && r.exactness == Exactness::ExactForDims,
            format!(
                "verdict {:?}, residual floor {:.3e}, {} iterations",
                r.verdict, r.residual, r.iterations
            ),
        ))
    }));

    stages.push(stage("cptp-infeasible", || {
        let problem = MapFamilyProblem::new(
            vec![
                (rho.rho0().clone(), sigma.rho0().clone()),
                (rho.rho1().clone(), sigma.rho1().clone()),
            ],
            MapClass::Cptp,
        )?;
        let r = cptp_feasible(&problem, tol)?;
        Ok((
            r.verdict == Verdict::Infeasible,
            format!(
                "verdict {:?}, residual floor {:.3e}, {} iterations",
                r.verdict, r.residual, r.iterations
            ),
        ))
    }));

    let grid = unit_grid(config.t_max, config.resolution);

    stages.push(stage("piecewise-bounds-hold", || {
        let r = piecewise_bound_check(p, &grid, tol)?;
        Ok((
            r.passed,
            format!(
                "{} points, {} bound violations, {} domination violations",
                r.points_checked,
                r.bound_violations.len(),
                r.domination_violations.len()
            ),
        ))
    }));

    stages.push(stage("closed-forms-match-eigenvalues", || {
        let mut worst = 0.0f64;
        for &t in &grid {
            let rho_eig = quantum_l1_t(&rho, t, tol)?;
            let sigma_eig = quantum_l1_t(&sigma, t, tol)?;
            worst = worst
                .max((rho_eig - rho_norm_closed(p.alpha, t)).abs())
                .max((sigma_eig - sigma_norm_closed(p.beta, t)).abs());
        }
        Ok((
            worst <= tol.closed_form,
            format!("max deviation {worst:.3e} over {} points", grid.len()),
        ))
    }));

    let overall_success = stages.iter().all(|s| s.passed);
    Ok(ReproductionReport {
        alpha: p.alpha,
        beta: p.beta,
        hypothesis_satisfied: p.in_hypothesis(),
        stages,
        overall_success,
        gap_curve: GapCurve::evaluate(p, config.t_max, config.resolution),
    })
}
