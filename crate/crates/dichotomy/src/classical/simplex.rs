//! Phase-1 simplex for equality-constrained feasibility over nonnegative
//! variables.
//!
//! Dense tableau with Bland's anti-cycling rule. The instances this crate
//! generates are tiny (tens of variables), so determinism and exactness win
//! over sparse machinery.

use crate::error::Result;
use crate::tol::Tolerances;
use crate::Verdict;

/// Equality constraints `rows · x = rhs` over `x ≥ 0`.
#[derive(Debug, Clone)]
pub struct LpProblem {
    pub num_vars: usize,
    pub rows: Vec<Vec<f64>>,
    pub rhs: Vec<f64>,
}

impl LpProblem {
    pub fn new(num_vars: usize, rows: Vec<Vec<f64>>, rhs: Vec<f64>) -> Self {
        debug_assert_eq!(rows.len(), rhs.len());
        debug_assert!(rows.iter().all(|r| r.len() == num_vars));
        Self { num_vars, rows, rhs }
    }
}

/// Result of a phase-1 solve.
#[derive(Debug, Clone)]
pub struct LpReport {
    pub verdict: Verdict,
    /// Optimal (or last) value of the phase-1 objective: the total artificial
    /// mass. Zero up to tolerance means feasible; a positive floor is the
    /// infeasibility certificate.
    pub phase1_value: f64,
    /// Vertex solution when feasible.
    pub solution: Option<Vec<f64>>,
    pub iterations: usize,
}

/// Decides feasibility of `rows · x = rhs, x ≥ 0` by minimizing the sum of
/// artificial variables.
pub fn lp_feasibility(problem: &LpProblem, tol: &Tolerances) -> Result<LpReport> {
    let m = problem.rows.len();
    let n = problem.num_vars;

    // Tableau: m constraint rows over columns [x | artificials | rhs],
    // plus one reduced-cost row.
    let width = n + m + 1;
    let mut tab: Vec<Vec<f64>> = Vec::with_capacity(m);
    for (i, row) in problem.rows.iter().enumerate() {
        let flip = if problem.rhs[i] < 0.0 { -1.0 } else { 1.0 };
        let mut r = vec![0.0; width];
        for (j, &a) in row.iter().enumerate() {
            r[j] = flip * a;
        }
        r[n + i] = 1.0;
        r[width - 1] = flip * problem.rhs[i];
        tab.push(r);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Reduced costs for minimizing the artificial sum, priced out against the
    // initial artificial basis: cost[j] = c_j - Σ_i tab[i][j].
    let mut cost = vec![0.0; width];
    for j in 0..n {
        cost[j] = -tab.iter().map(|r| r[j]).sum::<f64>();
    }
    // Artificial columns start basic with zero reduced cost; cost[rhs] tracks
    // the negated objective.
    cost[width - 1] = -tab.iter().map(|r| r[width - 1]).sum::<f64>();

    let mut iterations = 0usize;
    loop {
        // Bland: entering column is the lowest index with a negative reduced cost.
        let entering = (0..n + m).find(|&j| cost[j] < -tol.lp_pivot);
        let Some(col) = entering else { break };

        // Ratio test; Bland tie-break on the smallest basic variable index.
        let mut leave: Option<usize> = None;
        let mut best_ratio = f64::INFINITY;
        for i in 0..m {
            let a = tab[i][col];
            if a > tol.lp_pivot {
                let ratio = tab[i][width - 1] / a;
                let better = match leave {
                    None => true,
                    Some(l) => {
                        ratio < best_ratio - 1e-12
                            || (ratio < best_ratio + 1e-12 && basis[i] < basis[l])
                    }
                };
                if better {
                    best_ratio = ratio;
                    leave = Some(i);
                }
            }
        }
        // Phase-1 objective is bounded below by zero, so an unbounded ray
        // cannot occur; treat a missing pivot row as termination.
        let Some(row) = leave else { break };

        // Pivot.
        let piv = tab[row][col];
        for v in tab[row].iter_mut() {
            *v /= piv;
        }
        for i in 0..m {
            if i == row {
                continue;
            }
            let factor = tab[i][col];
            if factor != 0.0 {
                for j in 0..width {
                    tab[i][j] -= factor * tab[row][j];
                }
            }
        }
        let factor = cost[col];
        if factor != 0.0 {
            for j in 0..width {
                cost[j] -= factor * tab[row][j];
            }
        }
        basis[row] = col;

        iterations += 1;
        if iterations >= tol.lp_max_iterations {
            let value = artificial_mass(&tab, &basis, n, width);
            return Ok(LpReport {
                verdict: Verdict::Undecided,
                phase1_value: value,
                solution: None,
                iterations,
            });
        }
    }

    let value = artificial_mass(&tab, &basis, n, width);
    if value <= tol.lp_feasibility {
        let mut x = vec![0.0; n];
        for (i, &b) in basis.iter().enumerate() {
            if b < n {
                x[b] = tab[i][width - 1].max(0.0);
            }
        }
        Ok(LpReport {
            verdict: Verdict::Feasible,
            phase1_value: value,
            solution: Some(x),
            iterations,
        })
    } else {
        Ok(LpReport {
            verdict: Verdict::Infeasible,
            phase1_value: value,
            solution: None,
            iterations,
        })
    }
}

fn artificial_mass(tab: &[Vec<f64>], basis: &[usize], n: usize, width: usize) -> f64 {
    basis
        .iter()
        .enumerate()
        .filter(|&(_, &b)| b >= n)
        .map(|(i, _)| tab[i][width - 1].max(0.0))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_feasible() {
        // x1 + x2 = 1, x >= 0
        let p = LpProblem::new(2, vec![vec![1.0, 1.0]], vec![1.0]);
        let r = lp_feasibility(&p, &Tolerances::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Feasible);
        let x = r.solution.unwrap();
        assert!((x[0] + x[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn obviously_infeasible() {
        // x1 = -1, x >= 0 → phase-1 value 1.
        let p = LpProblem::new(1, vec![vec![1.0]], vec![-1.0]);
        let r = lp_feasibility(&p, &Tolerances::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Infeasible);
        assert!((r.phase1_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn redundant_constraints_are_fine() {
        let p = LpProblem::new(
            2,
            vec![vec![1.0, 1.0], vec![2.0, 2.0], vec![1.0, -1.0]],
            vec![1.0, 2.0, 0.0],
        );
        let r = lp_feasibility(&p, &Tolerances::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Feasible);
        let x = r.solution.unwrap();
        assert!((x[0] - 0.5).abs() < 1e-10 && (x[1] - 0.5).abs() < 1e-10);
    }

    #[test]
    fn equality_system_with_unique_infeasible_sign() {
        // x1 - x2 = 2 and x1 + x2 = 1 forces x1 = 1.5, x2 = -0.5 < 0.
        let p = LpProblem::new(2, vec![vec![1.0, -1.0], vec![1.0, 1.0]], vec![2.0, 1.0]);
        let r = lp_feasibility(&p, &Tolerances::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Infeasible);
        assert!(r.phase1_value > 1e-8);
    }
}
