//! Positive semidefinite primitives: spectral decomposition with an explicit
//! rank cutoff, pseudo-inverse, square root, range projectors and the Loewner
//! order.

use nalgebra::SymmetricEigen;

use crate::error::{Error, Result};
use crate::matrix::{frobenius, CMat, Hermitian};
use crate::tolerance::TolerancePolicy;

/// A Hermitian operator certified positive semidefinite, stored with its
/// eigendecomposition (eigenvalues ascending).
#[derive(Debug, Clone)]
pub struct Psd {
    base: Hermitian,
    eigenvalues: Vec<f64>,
    eigenvectors: CMat,
    rank: usize,
    cutoff: f64,
}

/// Hermitian eigendecomposition with eigenvalues sorted ascending.
pub(crate) fn eigh(m: &Hermitian) -> (Vec<f64>, CMat) {
    let n = m.dim();
    if n == 0 {
        return (Vec::new(), CMat::zeros(0, 0));
    }
    let eig = SymmetricEigen::new(m.matrix().clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMat::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Relative spectral scale `max(1, lambda_max)`.
fn spectral_scale(values: &[f64]) -> f64 {
    values.last().copied().unwrap_or(0.0).max(1.0)
}

/// Decide positivity of `m` and return its decomposition.
///
/// Eigenvalues in `[-psd_tol * scale, 0)` are clamped to zero.
pub fn make_psd(m: &Hermitian, pol: &TolerancePolicy) -> Result<Psd> {
    make_psd_with_scale(m, 0.0, pol)
}

/// Like [`make_psd`], but judges positivity and rank against
/// `max(1, lambda_max(m), reference)`.
///
/// Used for operators obtained by subtraction, whose round-off is governed by
/// the operands' scale rather than the (possibly tiny) result's.
pub fn make_psd_with_scale(m: &Hermitian, reference: f64, pol: &TolerancePolicy) -> Result<Psd> {
    let (mut values, vectors) = eigh(m);
    let scale = spectral_scale(&values).max(reference);
    let threshold = pol.psd_tol * scale;
    if let Some(&min) = values.first() {
        if min < -threshold {
            return Err(Error::NotPositive {
                min_eigenvalue: min,
                threshold,
            });
        }
    }
    for v in values.iter_mut() {
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    let cutoff = pol.rank_tol_for(m.dim()) * scale;
    let rank = values.iter().filter(|&&v| v > cutoff).count();
    Ok(Psd {
        base: m.clone(),
        eigenvalues: values,
        eigenvectors: vectors,
        rank,
        cutoff,
    })
}

impl Psd {
    pub fn zero(n: usize) -> Self {
        make_psd(&Hermitian::zeros(n), &TolerancePolicy::default()).expect("zero is positive")
    }

    pub fn identity(n: usize) -> Self {
        make_psd(&Hermitian::identity(n), &TolerancePolicy::default())
            .expect("identity is positive")
    }

    pub fn base(&self) -> &Hermitian {
        &self.base
    }

    pub fn matrix(&self) -> &CMat {
        self.base.matrix()
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &CMat {
        &self.eigenvectors
    }

    /// Number of eigenvalues above the rank cutoff.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Absolute eigenvalue cutoff used for `rank`.
    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// Rank counted against a different relative cutoff `rel * max(1, lambda_max)`.
    pub fn rank_at(&self, rel: f64) -> usize {
        let cut = rel * spectral_scale(&self.eigenvalues);
        self.eigenvalues.iter().filter(|&&v| v > cut).count()
    }

    /// Orthonormal basis of the numerical range (columns).
    pub fn range_basis(&self) -> CMat {
        let n = self.dim();
        self.eigenvectors.columns(n - self.rank, self.rank).into_owned()
    }

    /// Orthonormal basis of the numerical kernel (columns).
    pub fn kernel_basis(&self) -> CMat {
        let n = self.dim();
        self.eigenvectors.columns(0, n - self.rank).into_owned()
    }

    /// Eigenvalues above the cutoff, paired with `range_basis` columns.
    pub fn range_eigenvalues(&self) -> &[f64] {
        &self.eigenvalues[self.dim() - self.rank..]
    }

    /// Orthogonal projector onto the numerical range.
    pub fn range_projector(&self) -> Hermitian {
        let q = self.range_basis();
        Hermitian::symmetrized(&q * q.adjoint())
    }

    /// `V f(diag) V*` over the range eigenpairs.
    fn spectral(&self, f: impl Fn(f64) -> f64) -> Hermitian {
        let q = self.range_basis();
        let weighted = CMat::from_fn(q.nrows(), q.ncols(), |i, j| {
            q[(i, j)] * f(self.range_eigenvalues()[j])
        });
        Hermitian::symmetrized(weighted * q.adjoint())
    }

    /// `x A^+ x*` for a rectangular `x` with `x.ncols() == dim`, computed as
    /// `sum_i (x v_i)(x v_i)* / lambda_i` over the range eigenpairs.
    pub(crate) fn sandwich_pinv(&self, x: &CMat) -> Hermitian {
        let y = x * self.range_basis();
        let scaled = CMat::from_fn(y.nrows(), y.ncols(), |i, j| {
            y[(i, j)] / self.range_eigenvalues()[j]
        });
        Hermitian::symmetrized(scaled * y.adjoint())
    }

    pub fn scaled(&self, s: f64, pol: &TolerancePolicy) -> Result<Psd> {
        make_psd(&self.base.scaled(s), pol)
    }
}

/// Moore-Penrose pseudo-inverse, inverting eigenvalues above the rank cutoff.
pub fn pseudo_inverse(a: &Psd) -> Hermitian {
    a.spectral(|v| 1.0 / v)
}

/// The positive square root; shares the eigenvectors of `a`.
pub fn sqrt_psd(a: &Psd) -> Psd {
    let n = a.dim();
    let kernel = n - a.rank;
    let values: Vec<f64> = a
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(i, v)| if i < kernel { 0.0 } else { v.sqrt() })
        .collect();
    let v = &a.eigenvectors;
    let weighted = CMat::from_fn(n, n, |i, j| v[(i, j)] * values[j]);
    let base = Hermitian::symmetrized(weighted * v.adjoint());
    let cutoff = a.cutoff.sqrt();
    Psd {
        base,
        eigenvalues: values,
        eigenvectors: a.eigenvectors.clone(),
        rank: a.rank,
        cutoff,
    }
}

/// Relative residual `||(I - P_ran(a)) x|| / max(1, ||x||)`.
pub fn range_residual(x: &CMat, a: &Psd) -> Result<f64> {
    if x.nrows() != a.dim() {
        return Err(Error::dims("range inclusion", a.dim(), x.nrows()));
    }
    let k = a.kernel_basis();
    let leak = k.adjoint() * x;
    Ok(frobenius(&leak) / frobenius(x).max(1.0))
}

/// `ran x ⊆ ran a` within `eq_tol`.
pub fn range_inclusion(x: &CMat, a: &Psd, pol: &TolerancePolicy) -> Result<bool> {
    Ok(range_residual(x, a)? <= pol.eq_tol)
}

/// `a ⪯ b` in the Loewner order: `b - a` is PSD within `psd_tol`.
pub fn loewner_leq(a: &Hermitian, b: &Hermitian, pol: &TolerancePolicy) -> Result<bool> {
    a.check_same_dim(b, "Loewner comparison")?;
    let diff = b - a;
    let (values, _) = eigh(&diff);
    let scale = values
        .iter()
        .fold(1.0_f64, |m, v| m.max(v.abs()))
        .max(a.frobenius())
        .max(b.frobenius());
    Ok(values.first().is_none_or(|&min| min >= -pol.psd_tol * scale))
}

/// Smallest eigenvalue of `b - a`; positive slack means `a ⪯ b` strictly.
pub fn loewner_gap(a: &Hermitian, b: &Hermitian) -> Result<f64> {
    a.check_same_dim(b, "Loewner comparison")?;
    let (values, _) = eigh(&(b - a));
    Ok(values.first().copied().unwrap_or(0.0))
}

/// Sum of two PSD operators (always PSD).
pub(crate) fn psd_add(a: &Psd, b: &Psd, pol: &TolerancePolicy) -> Result<Psd> {
    make_psd(&(a.base() + b.base()), pol)
}
