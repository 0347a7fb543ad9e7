//! Finite classical dichotomies and the two equivalent ways to compare them:
//! the `‖p₀ − t·p₁‖₁` criterion over all `t ≥ 0`, and the existence of a
//! column-stochastic matrix carrying one experiment onto the other.
//!
//! Both curves `t ↦ ‖p₀ − t·p₁‖₁` are piecewise linear with kinks at the
//! likelihood ratios `p₀(x)/p₁(x)` and slope 1 past the last kink, so the
//! ordering is decided exactly by evaluating at `t = 0` and at every kink.

mod simplex;

pub use simplex::{lp_feasibility, LpProblem, LpReport};

use crate::error::{Error, Result};
use crate::tol::Tolerances;
use crate::Verdict;

/// A two-hypothesis experiment over a finite outcome set: a pair of
/// probability vectors of equal length.
#[derive(Debug, Clone, PartialEq)]
pub struct Dichotomy {
    p0: Vec<f64>,
    p1: Vec<f64>,
}

impl Dichotomy {
    pub fn new(p0: Vec<f64>, p1: Vec<f64>) -> Result<Self> {
        Self::new_with(p0, p1, &Tolerances::default())
    }

    pub fn new_with(p0: Vec<f64>, p1: Vec<f64>, tol: &Tolerances) -> Result<Self> {
        if p0.is_empty() || p0.len() != p1.len() {
            return Err(Error::InvalidDistribution(format!(
                "outcome counts differ or are zero: {} vs {}",
                p0.len(),
                p1.len()
            )));
        }
        for p in [&p0, &p1] {
            if p.iter().any(|&v| !v.is_finite() || v < 0.0) {
                return Err(Error::InvalidDistribution(
                    "entries must be finite and nonnegative".into(),
                ));
            }
            let sum: f64 = p.iter().sum();
            if (sum - 1.0).abs() > tol.prob_sum {
                return Err(Error::InvalidDistribution(format!(
                    "probabilities sum to {sum}, not 1"
                )));
            }
        }
        Ok(Self { p0, p1 })
    }

    pub fn outcomes(&self) -> usize {
        self.p0.len()
    }

    pub fn p0(&self) -> &[f64] {
        &self.p0
    }

    pub fn p1(&self) -> &[f64] {
        &self.p1
    }

    /// Likelihood-ratio kinks of `t ↦ ‖p₀ − t·p₁‖₁`: every finite
    /// `p₀(x)/p₁(x)` with `p₁(x) > 0`.
    pub fn breakpoints(&self) -> Vec<f64> {
        self.p0
            .iter()
            .zip(&self.p1)
            .filter(|&(_, &q)| q > 0.0)
            .map(|(&p, &q)| p / q)
            .collect()
    }
}

/// `Σ_x |p₀(x) − t·p₁(x)|` for `t ≥ 0`.
pub fn l1_t_distance(d: &Dichotomy, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "t must be nonnegative, got {t}"
        )));
    }
    Ok(d.p0
        .iter()
        .zip(&d.p1)
        .map(|(&p, &q)| (p - t * q).abs())
        .sum())
}

/// True iff `‖p₀ − t·p₁‖₁ ≥ ‖q₀ − t·q₁‖₁` for every `t ≥ 0`, up to the
/// ordering slack.
///
/// The difference of the two curves is piecewise linear with kinks at the
/// union of both breakpoint sets and is constant past the largest one, so the
/// minimum over `[0, ∞)` is attained at `t = 0` or at a breakpoint; the check
/// is exact.
pub fn dichotomy_ordering(a: &Dichotomy, b: &Dichotomy, tol: &Tolerances) -> bool {
    let mut points = vec![0.0];
    points.extend(a.breakpoints());
    points.extend(b.breakpoints());
    points
        .into_iter()
        .all(|t| l1_t_distance(a, t).unwrap() >= l1_t_distance(b, t).unwrap() - tol.ordering_slack)
}

/// Column-stochastic matrix: column `x'` is the distribution `P(·|x')`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>, // row-major
}

impl TransitionMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self> {
        Self::new_with(rows, cols, entries, &Tolerances::default())
    }

    pub fn new_with(rows: usize, cols: usize, entries: Vec<f64>, tol: &Tolerances) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::InvalidTransitionMatrix("shape mismatch".into()));
        }
        if entries.iter().any(|&v| !(0.0..=1.0).contains(&v)) {
            return Err(Error::InvalidTransitionMatrix(
                "entries must lie in [0, 1]".into(),
            ));
        }
        let m = Self { rows, cols, entries };
        for j in 0..cols {
            let s: f64 = (0..rows).map(|i| m.get(i, j)).sum();
            if (s - 1.0).abs() > tol.column_stochastic {
                return Err(Error::InvalidTransitionMatrix(format!(
                    "column {j} sums to {s}, not 1"
                )));
            }
        }
        Ok(m)
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1.0;
        }
        Self {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.cols + j]
    }

    /// Matrix-vector product `T · p`.
    pub fn apply_vec(&self, p: &[f64]) -> Result<Vec<f64>> {
        if p.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "transition matrix has {} columns, vector has {}",
                self.cols,
                p.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * p[j]).sum())
            .collect())
    }

    /// Pushes a dichotomy through the channel.
    pub fn apply(&self, d: &Dichotomy, tol: &Tolerances) -> Result<Dichotomy> {
        Dichotomy::new_with(self.apply_vec(d.p0())?, self.apply_vec(d.p1())?, tol)
    }
}

/// Outcome of the randomization-criterion search.
#[derive(Debug, Clone)]
pub struct RandomizationReport {
    pub verdict: Verdict,
    /// Column-stochastic witness with `T·p_θ(source) = p_θ(target)`, present
    /// iff feasible.
    pub witness: Option<TransitionMatrix>,
    /// Phase-1 objective at termination; the infeasibility certificate when
    /// positive.
    pub phase1_value: f64,
    /// Max ℓ₁ error of the witness equations (0 when no witness).
    pub residual: f64,
    pub iterations: usize,
}

/// Decides whether a column-stochastic `T` carries `source` onto `target`:
/// `T·p₀ = q₀` and `T·p₁ = q₁` simultaneously.
pub fn randomization_feasible(
    source: &Dichotomy,
    target: &Dichotomy,
    tol: &Tolerances,
) -> Result<RandomizationReport> {
    let n = source.outcomes();
    let m = target.outcomes();
    let nv = m * n; // T[x][x'] at index x * n + x'

    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n + 2 * m);
    let mut rhs: Vec<f64> = Vec::with_capacity(n + 2 * m);

    // Column sums: Σ_x T[x][x'] = 1.
    for xp in 0..n {
        let mut row = vec![0.0; nv];
        for x in 0..m {
            row[x * n + xp] = 1.0;
        }
        rows.push(row);
        rhs.push(1.0);
    }
    // Image equations for both hypotheses.
    for (p_src, p_tgt) in [(source.p0(), target.p0()), (source.p1(), target.p1())] {
        for x in 0..m {
            let mut row = vec![0.0; nv];
            for xp in 0..n {
                row[x * n + xp] = p_src[xp];
            }
            rows.push(row);
            rhs.push(p_tgt[x]);
        }
    }

    let lp = lp_feasibility(&LpProblem::new(nv, rows, rhs), tol)?;
    match lp.verdict {
        Verdict::Feasible => {
            let x = lp.solution.expect("feasible LP carries a solution");
            let entries: Vec<f64> = x.iter().map(|&v| v.clamp(0.0, 1.0)).collect();
            let witness = TransitionMatrix::new_with(m, n, entries, tol)?;
            let mut residual = 0.0f64;
            for (p_src, p_tgt) in [(source.p0(), target.p0()), (source.p1(), target.p1())] {
                let image = witness.apply_vec(p_src)?;
                let err: f64 = image
                    .iter()
                    .zip(p_tgt)
                    .map(|(a, b)| (a - b).abs())
                    .sum();
                residual = residual.max(err);
            }
            Ok(RandomizationReport {
                verdict: Verdict::Feasible,
                witness: Some(witness),
                phase1_value: lp.phase1_value,
                residual,
                iterations: lp.iterations,
            })
        }
        v => Ok(RandomizationReport {
            verdict: v,
            witness: None,
            phase1_value: lp.phase1_value,
            residual: lp.phase1_value,
            iterations: lp.iterations,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dich(p0: &[f64], p1: &[f64]) -> Dichotomy {
        Dichotomy::new(p0.to_vec(), p1.to_vec()).unwrap()
    }

    #[test]
    fn l1_distance_basics() {
        let d = dich(&[0.3, 0.7], &[0.6, 0.4]);
        assert!((l1_t_distance(&d, 0.0).unwrap() - 1.0).abs() < 1e-15);

        let disjoint = dich(&[1.0, 0.0], &[0.0, 1.0]);
        assert!((l1_t_distance(&disjoint, 1.0).unwrap() - 2.0).abs() < 1e-15);

        let same = dich(&[0.25, 0.75], &[0.25, 0.75]);
        for t in [0.0, 0.3, 1.0, 2.5] {
            assert!((l1_t_distance(&same, t).unwrap() - (1.0 - t).abs()).abs() < 1e-12);
        }

        assert!(l1_t_distance(&d, -0.5).is_err());
    }

    #[test]
    fn ordering_examples() {
        let tol = Tolerances::default();
        let perfect = dich(&[1.0, 0.0], &[0.0, 1.0]);
        let blurry = dich(&[0.5, 0.5], &[0.5, 0.5]);
        let skew = dich(&[0.8, 0.2], &[0.1, 0.9]);

        assert!(dichotomy_ordering(&perfect, &skew, &tol));
        assert!(dichotomy_ordering(&perfect, &blurry, &tol));
        assert!(dichotomy_ordering(&skew, &skew, &tol));
        // At t = 1 the uninformative experiment scores 0 < 2.
        assert!(!dichotomy_ordering(&blurry, &perfect, &tol));
    }

    #[test]
    fn randomization_from_perfect_source() {
        let tol = Tolerances::default();
        let source = dich(&[1.0, 0.0], &[0.0, 1.0]);
        let target = dich(&[0.6, 0.4], &[0.25, 0.75]);
        let r = randomization_feasible(&source, &target, &tol).unwrap();
        assert_eq!(r.verdict, Verdict::Feasible);
        assert!(r.residual <= 1e-8);
        let w = r.witness.unwrap();
        // Column x' of the witness is exactly the target distribution for
        // hypothesis x'.
        assert!((w.get(0, 0) - 0.6).abs() < 1e-9);
        assert!((w.get(0, 1) - 0.25).abs() < 1e-9);
    }

    #[test]
    fn randomization_identity_when_equal() {
        let tol = Tolerances::default();
        let d = dich(&[0.3, 0.2, 0.5], &[0.1, 0.6, 0.3]);
        let r = randomization_feasible(&d, &d, &tol).unwrap();
        assert_eq!(r.verdict, Verdict::Feasible);
        assert!(r.residual <= 1e-8);
    }

    #[test]
    fn randomization_cannot_create_information() {
        let tol = Tolerances::default();
        let blurry = dich(&[0.5, 0.5], &[0.5, 0.5]);
        let perfect = dich(&[1.0, 0.0], &[0.0, 1.0]);
        let r = randomization_feasible(&blurry, &perfect, &tol).unwrap();
        assert_eq!(r.verdict, Verdict::Infeasible);
        assert!(r.phase1_value > 1e-6);
    }

    #[test]
    fn transition_matrix_validation() {
        assert!(TransitionMatrix::new(2, 2, vec![0.5, 0.0, 0.5, 1.0]).is_ok());
        // Column sums off by too much.
        assert!(TransitionMatrix::new(2, 2, vec![0.5, 0.0, 0.4, 1.0]).is_err());
        // Out-of-range entry.
        assert!(TransitionMatrix::new(1, 1, vec![1.5]).is_err());
    }
}
