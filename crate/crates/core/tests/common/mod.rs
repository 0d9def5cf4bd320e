//! Test-only oracles. Nothing here routes through the library's spectral
//! pseudo-inverse; pseudo-inverses come from nalgebra's SVD.
#![allow(dead_code)]

use antidual::matrix::{frobenius, CMat, Hermitian};
use antidual::psd::{make_psd, Psd};
use antidual::sample::{self, SampleRng};
use antidual::tolerance::TolerancePolicy;

pub fn pol() -> TolerancePolicy {
    TolerancePolicy::default()
}

pub fn psd(h: &Hermitian) -> Psd {
    make_psd(h, &pol()).expect("positive")
}

/// SVD pseudo-inverse with an absolute singular-value cutoff.
pub fn svd_pinv(m: &CMat, cutoff: f64) -> CMat {
    m.clone().pseudo_inverse(cutoff).expect("svd pseudo-inverse")
}

fn rel_cut(m: &CMat) -> f64 {
    1e-10 * frobenius(m).max(1.0)
}

/// Classical parallel sum `A (A+B)^+ B`.
pub fn classical_parallel_sum(a: &Hermitian, b: &Hermitian) -> Hermitian {
    let s = a.matrix() + b.matrix();
    let p = svd_pinv(&s, rel_cut(&s));
    Hermitian::new(a.matrix() * p * b.matrix()).unwrap()
}

/// Shorted operator of `A` onto `ran B`: in an orthonormal basis `[Q1 Q2]`
/// with `Q1` spanning `ran B`, returns `Q1 (A11 - A12 A22^+ A21) Q1*`.
pub fn shorted_onto_range(a: &Hermitian, b: &Hermitian) -> Hermitian {
    let n = a.dim();
    let eig = b.matrix().clone().symmetric_eigen();
    let u = eig.eigenvectors;
    let cut = 1e-10 * eig.eigenvalues.max().max(1.0);
    let mut range_cols = Vec::new();
    let mut kernel_cols = Vec::new();
    for i in 0..n {
        if eig.eigenvalues[i] > cut {
            range_cols.push(i);
        } else {
            kernel_cols.push(i);
        }
    }
    let q1 = CMat::from_fn(n, range_cols.len(), |i, j| u[(i, range_cols[j])]);
    let q2 = CMat::from_fn(n, kernel_cols.len(), |i, j| u[(i, kernel_cols[j])]);
    let am = a.matrix();
    let a11 = q1.adjoint() * am * &q1;
    if q2.ncols() == 0 {
        return a.clone();
    }
    let a12 = q1.adjoint() * am * &q2;
    let a22 = q2.adjoint() * am * &q2;
    let s = &a11 - &a12 * svd_pinv(&a22, rel_cut(&a22)) * a12.adjoint();
    Hermitian::new(&q1 * s * q1.adjoint()).unwrap()
}

/// Random `(A, B)` pair with independent random ranks in dimension `1..=max_dim`.
pub fn random_pair(max_dim: usize, rng: &mut SampleRng) -> (Hermitian, Hermitian) {
    let n = sample::dim(max_dim, rng);
    (sample::psd_any_rank(n, rng), sample::psd_any_rank(n, rng))
}

/// Random positive functional `a ↦ Σ_j <a v_j, v_j>` with a random number of
/// vectors (possibly zero, so degenerate states occur).
pub fn random_state(alg: &antidual::star::FiniteStarAlgebra, rng: &mut SampleRng) -> antidual::star::Functional {
    let d = alg.env_dim();
    let count = sample::index(d + 2, rng);
    let vectors: Vec<_> = (0..count).map(|_| sample::vector(d, rng)).collect();
    antidual::star::Functional::vector_state(alg, &vectors)
}

pub fn test_algebras() -> Vec<(&'static str, antidual::star::FiniteStarAlgebra)> {
    use antidual::star::FiniteStarAlgebra;
    vec![
        ("C", FiniteStarAlgebra::scalars()),
        ("C^2", FiniteStarAlgebra::diagonal(2)),
        ("diag3", FiniteStarAlgebra::diagonal(3)),
        ("M2", FiniteStarAlgebra::full_matrix(2)),
    ]
}
