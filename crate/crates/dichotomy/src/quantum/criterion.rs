//! Certified decision of `‖ρ₀ − t·ρ₁‖₁ ≥ ‖σ₀ − t·σ₁‖₁` for every `t ≥ 0`.
//!
//! The half-line is folded onto two compact passes over `t ∈ [0, 1]` through
//! the scaling identity `‖ρ₀ − t·ρ₁‖₁ = t·‖ρ₁ − (1/t)·ρ₀‖₁`: the original
//! order covers `t ∈ [0, 1]`, the swapped order covers `t ∈ [1, ∞)`.
//!
//! Both curves are convex in `t` and smooth except where an eigenvalue of the
//! pencil crosses zero, so the grid is enriched with the real roots of
//! `det(ρ₀ − t·ρ₁)`. On each subinterval the minuend is bounded below by a
//! secant line through two interior points (sound for any convex function,
//! with a computable correction for the short span between them) and the
//! subtrahend is bounded above by its chord. An interval certifies when the
//! lower bound stays above the chord up to the certification margin, and is
//! bisected otherwise.

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian_with, trace_norm_with, ComplexMatrix, HermitianMatrix};
use crate::tol::Tolerances;

use super::{commutes, DensityMatrix, QuantumDichotomy};

/// Decision for "`‖ρ₀ − t·ρ₁‖₁ ≥ ‖σ₀ − t·σ₁‖₁` for all `t ≥ 0`".
#[derive(Debug, Clone, PartialEq)]
pub enum OrderingVerdict {
    /// Every interval certified: the inequality holds up to the
    /// certification margin.
    HoldsCertified,
    /// A point where the inequality is violated beyond the ordering slack.
    Fails {
        /// Location of the most negative sampled gap.
        witness_t: f64,
        /// The gap `‖ρ₀ − t·ρ₁‖₁ − ‖σ₀ − t·σ₁‖₁` at the witness.
        gap: f64,
    },
    /// Certification ran out of refinement depth on the listed t-intervals
    /// without finding a violation.
    Undecided { intervals: Vec<(f64, f64)> },
}

impl OrderingVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, OrderingVerdict::HoldsCertified)
    }
}

/// One trace-norm curve `t ↦ ‖m₀ − t·m₁‖₁`.
struct Curve<'a> {
    m0: &'a HermitianMatrix,
    m1: &'a HermitianMatrix,
    tol: &'a Tolerances,
}

impl Curve<'_> {
    fn eval(&self, t: f64) -> Result<f64> {
        trace_norm_with(&self.m0.sub(&self.m1.scale(t))?, self.tol)
    }
}

/// Shared state for one branch (one orientation of both pairs).
struct BranchState<'a> {
    f: Curve<'a>,
    g: Curve<'a>,
    tol: &'a Tolerances,
    /// Maps branch-local t to original coordinates: identity for the original
    /// branch, `t ↦ 1/t` with gap amplification `1/t` for the swapped one.
    swap: bool,
    worst_gap: f64,
    worst_t: f64,
    failed: bool,
    uncertified: Vec<(f64, f64)>,
}

impl BranchState<'_> {
    /// Records the branch-local gap at a branch-local point; returns true if
    /// the failure threshold is crossed.
    ///
    /// On the swapped branch the true gap at `t = 1/u` is `g̃(u)/u`; the
    /// amplification also amplifies eigensolver noise, so tiny branch-local
    /// values are ignored rather than amplified.
    fn record(&mut self, t_local: f64, gap_local: f64) -> bool {
        let noise_floor = 1e-12;
        let (t, gap) = if self.swap {
            if t_local <= 0.0 {
                return false; // u = 0 corresponds to t = ∞ where the gap vanishes
            }
            (1.0 / t_local, gap_local / t_local)
        } else {
            (t_local, gap_local)
        };
        if gap < self.worst_gap && gap_local.abs() > noise_floor {
            self.worst_gap = gap;
            self.worst_t = t;
        }
        // True gap below the slack means g̃(u) < -slack·u on the swapped branch.
        let threshold = if self.swap {
            (self.tol.ordering_slack * t_local).max(noise_floor)
        } else {
            self.tol.ordering_slack
        };
        if gap_local < -threshold {
            self.failed = true;
            true
        } else {
            false
        }
    }

    /// Certifies `F − G ≥ -margin` on `[a, b]` given endpoint values, or
    /// bisects up to the depth cap.
    fn certify(&mut self, a: f64, b: f64, fa: f64, fb: f64, ga: f64, gb: f64, depth: usize) -> Result<()> {
        if self.failed {
            return Ok(());
        }
        let w = b - a;
        if w <= 1e-15 {
            return Ok(());
        }
        let h = self.tol.derivative_step.min(w / 8.0);
        let m = 0.5 * (a + b);
        let f_lo = self.f.eval(m - h)?;
        let f_hi = self.f.eval(m + h)?;
        let s = (f_hi - f_lo) / (2.0 * h);

        // Chord slopes on either side bracket the derivative of the convex
        // minuend across [m-h, m+h]; their spread bounds how far the secant
        // line can overshoot the function on that short span.
        let slope_left = (f_lo - fa) / ((m - h) - a);
        let slope_right = (fb - f_hi) / (b - (m + h));
        let overshoot = 0.5 * h * (slope_right - slope_left).max(0.0);

        // Secant line through (m±h, F(m±h)): a lower bound for F outside the
        // span, and within `overshoot` of one inside it.
        let line = |t: f64| f_lo + s * (t - (m - h));
        let delta_a = line(a) - overshoot - ga;
        let delta_b = line(b) - overshoot - gb;
        if delta_a.min(delta_b) >= -self.tol.certification_margin {
            return Ok(());
        }
        if depth >= self.tol.refinement_depth {
            self.uncertified.push((a, b));
            return Ok(());
        }
        let fm = self.f.eval(m)?;
        let gm = self.g.eval(m)?;
        if self.record(m, fm - gm) {
            return Ok(());
        }
        self.certify(a, m, fa, fm, ga, gm, depth + 1)?;
        self.certify(m, b, fm, fb, gm, gb, depth + 1)
    }
}

/// Real roots of `det(ρ₀ − t·ρ₁)` strictly inside `(0, 1)`: the only points
/// where `t ↦ ‖ρ₀ − t·ρ₁‖₁` can kink.
///
/// Computed as eigenvalues of `D^{-1/2} S D^{-1/2}` where `D` carries the
/// positive eigenvalues of `ρ₁` and `S` is `ρ₀` compressed onto that support
/// by a Schur complement. Directions in the common kernel of both states make
/// the determinant vanish identically and contribute no kink.
fn pencil_unit_roots(
    rho0: &DensityMatrix,
    rho1: &DensityMatrix,
    tol: &Tolerances,
) -> Result<Vec<f64>> {
    let spec1 = eig_hermitian_with(rho1.matrix(), tol)?;
    let mut support = Vec::new();
    let mut kernel = Vec::new();
    for (i, &mu) in spec1.eigenvalues().iter().enumerate() {
        if mu > tol.rank {
            support.push(i);
        } else {
            kernel.push(i);
        }
    }
    if support.is_empty() {
        return Ok(Vec::new());
    }
    let w = spec1.eigenvectors();
    let a_prime = w.adjoint().matmul(rho0.matrix().matrix())?.matmul(w)?;

    let mut effective = a_prime.submatrix(&support, &support);
    if !kernel.is_empty() {
        let a_kk = HermitianMatrix::symmetrized(a_prime.submatrix(&kernel, &kernel))?;
        let kspec = eig_hermitian_with(&a_kk, tol)?;
        let plus: Vec<usize> = kspec
            .eigenvalues()
            .iter()
            .enumerate()
            .filter(|&(_, &l)| l > tol.rank)
            .map(|(i, _)| i)
            .collect();
        if !plus.is_empty() {
            let all_k: Vec<usize> = (0..kernel.len()).collect();
            let u_plus = kspec.eigenvectors().submatrix(&all_k, &plus);
            let b = a_prime.submatrix(&support, &kernel).matmul(&u_plus)?;
            // B C⁻¹ B† with C the positive eigenvalues of the kernel block.
            let mut correction = ComplexMatrix::zeros(support.len(), support.len());
            for (col, &k) in plus.iter().enumerate() {
                let lambda = kspec.eigenvalues()[k];
                for i in 0..support.len() {
                    for j in 0..support.len() {
                        let v = correction.get(i, j)
                            + b.get(i, col) * b.get(j, col).conj() / lambda;
                        correction.set(i, j, v);
                    }
                }
            }
            effective = effective.sub(&correction)?;
        }
    }

    let inv_sqrt: Vec<f64> = support
        .iter()
        .map(|&i| 1.0 / spec1.eigenvalues()[i].sqrt())
        .collect();
    let mut scaled = ComplexMatrix::zeros(support.len(), support.len());
    for i in 0..support.len() {
        for j in 0..support.len() {
            scaled.set(i, j, effective.get(i, j) * inv_sqrt[i] * inv_sqrt[j]);
        }
    }
    let m = HermitianMatrix::symmetrized(scaled)?;
    let roots = eig_hermitian_with(&m, tol)?;
    Ok(roots
        .eigenvalues()
        .iter()
        .copied()
        .filter(|&r| r > 1e-12 && r < 1.0 - 1e-12)
        .collect())
}

/// Decides whether `‖ρ₀ − t·ρ₁‖₁ ≥ ‖σ₀ − t·σ₁‖₁` holds for every `t ≥ 0`,
/// where the left-hand pair is `a` and the right-hand pair is `b` (their
/// dimensions may differ).
///
/// `t_resolution` is the number of grid intervals per unit; the grid is
/// enriched with the pencil kinks of both pairs before certification.
pub fn t_criterion(
    a: &QuantumDichotomy,
    b: &QuantumDichotomy,
    t_resolution: usize,
    tol: &Tolerances,
) -> Result<OrderingVerdict> {
    if t_resolution < 2 {
        return Err(Error::InvalidParameter(format!(
            "t_resolution must be at least 2, got {t_resolution}"
        )));
    }

    let mut worst_gap = f64::INFINITY;
    let mut worst_t = 0.0;
    let mut failed = false;
    let mut uncertified: Vec<(f64, f64)> = Vec::new();

    // Evaluate both branches fully before certification so a failure witness
    // is the global grid minimum rather than the first dip encountered.
    let mut branches = Vec::new();
    for swap in [false, true] {
        let (a0, a1) = if swap {
            (a.rho1(), a.rho0())
        } else {
            (a.rho0(), a.rho1())
        };
        let (b0, b1) = if swap {
            (b.rho1(), b.rho0())
        } else {
            (b.rho0(), b.rho1())
        };

        let mut pts: Vec<f64> = (0..=t_resolution)
            .map(|k| k as f64 / t_resolution as f64)
            .collect();
        pts.extend(pencil_unit_roots(a0, a1, tol)?);
        pts.extend(pencil_unit_roots(b0, b1, tol)?);
        pts.sort_by(f64::total_cmp);
        pts.dedup_by(|next, prev| (*next - *prev).abs() <= 1e-12);

        let mut state = BranchState {
            f: Curve {
                m0: a0.matrix(),
                m1: a1.matrix(),
                tol,
            },
            g: Curve {
                m0: b0.matrix(),
                m1: b1.matrix(),
                tol,
            },
            tol,
            swap,
            worst_gap: f64::INFINITY,
            worst_t: 0.0,
            failed: false,
            uncertified: Vec::new(),
        };
        let fv: Vec<f64> = pts.iter().map(|&t| state.f.eval(t)).collect::<Result<_>>()?;
        let gv: Vec<f64> = pts.iter().map(|&t| state.g.eval(t)).collect::<Result<_>>()?;
        for (i, &t) in pts.iter().enumerate() {
            state.record(t, fv[i] - gv[i]);
        }
        branches.push((pts, fv, gv, state));
    }

    for (_, _, _, state) in &branches {
        if state.worst_gap < worst_gap {
            worst_gap = state.worst_gap;
            worst_t = state.worst_t;
        }
        failed |= state.failed;
    }
    if failed {
        return Ok(OrderingVerdict::Fails {
            witness_t: worst_t,
            gap: worst_gap,
        });
    }

    for (pts, fv, gv, mut state) in branches {
        for i in 0..pts.len() - 1 {
            state.certify(pts[i], pts[i + 1], fv[i], fv[i + 1], gv[i], gv[i + 1], 0)?;
            if state.failed {
                break;
            }
        }
        if state.failed {
            return Ok(OrderingVerdict::Fails {
                witness_t: state.worst_t,
                gap: state.worst_gap,
            });
        }
        for (lo, hi) in state.uncertified {
            if state.swap {
                let upper = if lo > 0.0 { 1.0 / lo } else { f64::INFINITY };
                uncertified.push((1.0 / hi, upper));
            } else {
                uncertified.push((lo, hi));
            }
        }
    }

    if uncertified.is_empty() {
        Ok(OrderingVerdict::HoldsCertified)
    } else {
        uncertified.sort_by(|x, y| x.0.total_cmp(&y.0));
        Ok(OrderingVerdict::Undecided {
            intervals: uncertified,
        })
    }
}

/// The quantum-to-classical ordering `{ρ_θ} ≥ᶜ {σ_θ}` for a commuting
/// left-hand pair, decided through [`t_criterion`].
///
/// The equivalence between the ordering and the trace-norm criterion is only
/// available when `[ρ₀, ρ₁] = 0`; non-commuting left-hand pairs are rejected.
/// For those, the criterion is still necessary, and [`t_criterion`] may be
/// called directly.
pub fn lemma1_cle_ordering(
    a: &QuantumDichotomy,
    b: &QuantumDichotomy,
    tol: &Tolerances,
) -> Result<OrderingVerdict> {
    if !commutes(a, tol.commutator) {
        return Err(Error::Precondition(
            "the left-hand pair must commute for the trace-norm criterion to decide the ordering"
                .into(),
        ));
    }
    t_criterion(a, b, tol.t_resolution, tol)
}
