//! Seeded random instances for cross-checks, the `verify` command and tests.
//!
//! Positive operators are drawn as `U diag(lambda) U*` with `U` Haar-like
//! unitary and nonzero eigenvalues log-uniform in `[0.05, 5]`, so condition
//! numbers on the range stay below 100 while ranks vary freely.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use rand_distr::StandardNormal;

use crate::matrix::{CMat, CVec, Hermitian, C64};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut SampleRng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn matrix(rows: usize, cols: usize, rng: &mut SampleRng) -> CMat {
    CMat::from_fn(rows, cols, |_, _| gaussian(rng))
}

pub fn vector(n: usize, rng: &mut SampleRng) -> CVec {
    CVec::from_fn(n, |_, _| gaussian(rng))
}

pub fn unitary(n: usize, rng: &mut SampleRng) -> CMat {
    if n == 0 {
        return CMat::zeros(0, 0);
    }
    let qr = matrix(n, n, rng).qr();
    let (q, r) = qr.unpack();
    // fix the phases so the distribution does not depend on the QR convention
    let phases: Vec<C64> = (0..n)
        .map(|i| {
            let d = r[(i, i)];
            if d.norm() > 0.0 {
                d / d.norm()
            } else {
                C64::new(1.0, 0.0)
            }
        })
        .collect();
    CMat::from_fn(n, n, |i, j| q[(i, j)] * phases[j])
}

pub fn eigenvalue(rng: &mut SampleRng) -> f64 {
    let lo = 0.05_f64.ln();
    let hi = 5.0_f64.ln();
    rng.random_range(lo..hi).exp()
}

/// Positive operator of dimension `n` and exact rank `rank`.
pub fn psd(n: usize, rank: usize, rng: &mut SampleRng) -> Hermitian {
    assert!(rank <= n);
    let u = unitary(n, rng);
    let lambda: Vec<f64> = (0..n).map(|i| if i < rank { eigenvalue(rng) } else { 0.0 }).collect();
    let weighted = CMat::from_fn(n, n, |i, j| u[(i, j)] * lambda[j]);
    Hermitian::new(weighted * u.adjoint()).expect("finite")
}

/// Positive operator with a uniformly random rank in `0..=n`.
pub fn psd_any_rank(n: usize, rng: &mut SampleRng) -> Hermitian {
    let rank = rng.random_range(0..=n);
    psd(n, rank, rng)
}

/// Positive operator whose range is spanned by the columns of `basis`.
pub fn psd_on_range(basis: &CMat, rng: &mut SampleRng) -> Hermitian {
    let k = basis.ncols();
    let inner = psd(k, k, rng);
    Hermitian::new(basis * inner.matrix() * basis.adjoint()).expect("finite")
}

pub fn dim(max: usize, rng: &mut SampleRng) -> usize {
    rng.random_range(1..=max)
}

pub fn index(upper: usize, rng: &mut SampleRng) -> usize {
    rng.random_range(0..upper)
}

pub fn uniform(lo: f64, hi: f64, rng: &mut SampleRng) -> f64 {
    rng.random_range(lo..hi)
}
