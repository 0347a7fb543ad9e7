//! Seeded random generators shared by the integration suites.

#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dichotomy::classical::{Dichotomy, TransitionMatrix};
use dichotomy::feasibility::ChoiMatrix;
use dichotomy::linalg::{ComplexMatrix, HermitianMatrix, Subsystem};
use dichotomy::quantum::{DensityMatrix, Povm, QuantumDichotomy};
use dichotomy::Tolerances;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard normal via Box–Muller.
pub fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

pub fn complex_gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(gaussian(rng), gaussian(rng))
}

pub fn random_prob_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n).map(|_| -rng.gen_range(f64::EPSILON..1.0f64).ln()).collect();
    let s: f64 = v.iter().sum();
    for x in v.iter_mut() {
        *x /= s;
    }
    v
}

pub fn random_dichotomy(rng: &mut ChaCha8Rng, n: usize) -> Dichotomy {
    Dichotomy::new(random_prob_vec(rng, n), random_prob_vec(rng, n)).unwrap()
}

pub fn random_transition(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> TransitionMatrix {
    let mut entries = vec![0.0; rows * cols];
    for j in 0..cols {
        let col = random_prob_vec(rng, rows);
        for i in 0..rows {
            entries[i * cols + j] = col[i];
        }
    }
    TransitionMatrix::new(rows, cols, entries).unwrap()
}

pub fn random_complex_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::new(
        rows,
        cols,
        (0..rows * cols).map(|_| complex_gaussian(rng)).collect(),
    )
    .unwrap()
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> HermitianMatrix {
    let g = random_complex_matrix(rng, dim, dim);
    HermitianMatrix::symmetrized(g).unwrap()
}

/// Random PSD matrix `G·G†`.
pub fn random_psd(rng: &mut ChaCha8Rng, dim: usize) -> HermitianMatrix {
    let g = random_complex_matrix(rng, dim, dim);
    HermitianMatrix::symmetrized(g.matmul(&g.adjoint()).unwrap()).unwrap()
}

pub fn random_density(rng: &mut ChaCha8Rng, dim: usize) -> DensityMatrix {
    let p = random_psd(rng, dim);
    DensityMatrix::new(p.scale(1.0 / p.trace_re())).unwrap()
}

pub fn random_quantum_dichotomy(rng: &mut ChaCha8Rng, dim: usize) -> QuantumDichotomy {
    QuantumDichotomy::new(random_density(rng, dim), random_density(rng, dim)).unwrap()
}

/// Haar-ish random unitary: the eigenvector matrix of a random Hermitian.
pub fn random_unitary(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    let h = random_hermitian(rng, dim);
    dichotomy::linalg::eig_hermitian(&h).unwrap().eigenvectors().clone()
}

/// A commuting pair: both states diagonal in one random basis. Also returns
/// the joint eigenvalue vectors, which form the equivalent classical model.
pub fn random_commuting_pair(
    rng: &mut ChaCha8Rng,
    dim: usize,
) -> (QuantumDichotomy, Vec<f64>, Vec<f64>) {
    let u = random_unitary(rng, dim);
    let p = random_prob_vec(rng, dim);
    let q = random_prob_vec(rng, dim);
    let conjugate = |d: &[f64]| {
        let m = u
            .matmul(&ComplexMatrix::from_real_diag(d))
            .unwrap()
            .matmul(&u.adjoint())
            .unwrap();
        DensityMatrix::new(HermitianMatrix::symmetrized(m).unwrap()).unwrap()
    };
    let dich = QuantumDichotomy::new(conjugate(&p), conjugate(&q)).unwrap();
    (dich, p, q)
}

/// Random POVM with `k` elements: random PSD pieces sandwiched by the inverse
/// square root of their sum.
pub fn random_povm(rng: &mut ChaCha8Rng, dim: usize, k: usize) -> Povm {
    let tol = Tolerances::default();
    let pieces: Vec<HermitianMatrix> = (0..k).map(|_| random_psd(rng, dim)).collect();
    let mut sum = HermitianMatrix::zeros(dim);
    for p in &pieces {
        sum = sum.add(p).unwrap();
    }
    let inv_sqrt = sum.map_eigenvalues(&tol, |l| 1.0 / l.sqrt()).unwrap();
    let elements = pieces
        .into_iter()
        .map(|p| {
            HermitianMatrix::symmetrized(
                inv_sqrt
                    .matrix()
                    .matmul(p.matrix())
                    .unwrap()
                    .matmul(inv_sqrt.matrix())
                    .unwrap(),
            )
            .unwrap()
        })
        .collect();
    Povm::new(elements).unwrap()
}

/// Random decomposable trace-preserving map `A + T_in(B)` with `A, B ⪰ 0`,
/// normalized to the TP marginal by the inverse square root sandwich.
pub fn random_decomposable_tp(rng: &mut ChaCha8Rng, din: usize, dout: usize) -> ChoiMatrix {
    let tol = Tolerances::default();
    let n = din * dout;
    let a = random_psd(rng, n);
    let b = random_psd(rng, n);
    let b_pt = b
        .matrix()
        .partial_transpose((din, dout), Subsystem::First)
        .unwrap();
    let j = HermitianMatrix::symmetrized(a.matrix().add(&b_pt).unwrap()).unwrap();
    let marginal = HermitianMatrix::symmetrized(
        j.matrix().partial_trace((din, dout), Subsystem::First).unwrap(),
    )
    .unwrap();
    let inv_sqrt = marginal.map_eigenvalues(&tol, |l| 1.0 / l.sqrt()).unwrap();
    let sandwich = inv_sqrt.matrix().kron(&ComplexMatrix::identity(dout));
    let normalized = HermitianMatrix::symmetrized(
        sandwich.matmul(j.matrix()).unwrap().matmul(&sandwich).unwrap(),
    )
    .unwrap();
    ChoiMatrix::new(din, dout, normalized).unwrap()
}
