//! Parallel sum `A:B = A - (A+B)_A` and parallel difference
//! `B ÷ A = (A-B)_A - A` of positive operators on one space.

use crate::completion::{complement_congruent, complement_unchecked, IncompleteBlockSystem};
use crate::error::{Error, PardiffFailure, Result};
use crate::matrix::{CMat, Hermitian, C64};
use crate::psd::{make_psd, make_psd_with_scale, psd_add, range_inclusion, Psd};
use crate::tolerance::TolerancePolicy;

fn same_dim(a: &Psd, b: &Psd, context: &'static str) -> Result<()> {
    a.base().check_same_dim(b.base(), context)
}

/// Scale used to judge results obtained by subtracting from `a` and `b`.
fn operand_scale(a: &Psd, b: &Psd) -> f64 {
    a.max_eigenvalue().max(b.max_eigenvalue())
}

/// `A:B`, the Schur complement of `A` in `[[A+B, A], [A, A]]`.
pub fn parallel_sum(a: &Psd, b: &Psd, pol: &TolerancePolicy) -> Result<Psd> {
    same_dim(a, b, "parallel sum")?;
    let sum = psd_add(a, b, pol)?;
    // [[A+B, A], [A, A]] is positive, so (A+B, A) is always completable.
    let system = IncompleteBlockSystem::new(sum, a.matrix().clone())?;
    let scale = operand_scale(a, b);
    let shorted = complement_unchecked(&system, scale, pol)?;
    make_psd_with_scale(&(a.base() - shorted.base()), scale, pol)
}

/// Check both existence conditions of `B ÷ A`: `A - B ⪰ 0`, then
/// `ran A ⊆ ran (A - B)`.
pub fn pardiff_check(b: &Psd, a: &Psd, pol: &TolerancePolicy) -> Result<std::result::Result<Psd, PardiffFailure>> {
    pardiff_check_hermitian(b.base(), a, pol)
}

/// [`pardiff_check`] for a Hermitian, not necessarily positive, `B`.
pub fn pardiff_check_hermitian(
    b: &Hermitian,
    a: &Psd,
    pol: &TolerancePolicy,
) -> Result<std::result::Result<Psd, PardiffFailure>> {
    a.base().check_same_dim(b, "parallel difference")?;
    let scale = a.max_eigenvalue().max(b.frobenius());
    let diff = match make_psd_with_scale(&(a.base() - b), scale, pol) {
        Ok(d) => d,
        Err(Error::NotPositive { .. }) => return Ok(Err(PardiffFailure::NotDominated)),
        Err(e) => return Err(e),
    };
    if !range_inclusion(a.matrix(), &diff, pol)? {
        return Ok(Err(PardiffFailure::RangeNotIncluded));
    }
    Ok(Ok(diff))
}

pub fn pardiff_exists(b: &Psd, a: &Psd, pol: &TolerancePolicy) -> Result<bool> {
    Ok(pardiff_check(b, a, pol)?.is_ok())
}

/// `B ÷ A = (A - B)_A - A`.
pub fn parallel_difference(b: &Psd, a: &Psd, pol: &TolerancePolicy) -> Result<Psd> {
    let value = parallel_difference_hermitian(b.base(), a, pol)?;
    make_psd_with_scale(&value, a.max_eigenvalue(), pol)
}

/// `B ÷ A` for a Hermitian `B` with `B ⪯ A`; the result need not be positive.
///
/// For positive `B`, `B ⪯ A` forces `ran (A - B) ⊆ ran A` and the complement
/// is evaluated on `ran A` only; directions outside it carry nothing but
/// round-off.
pub fn parallel_difference_hermitian(b: &Hermitian, a: &Psd, pol: &TolerancePolicy) -> Result<Hermitian> {
    let diff = pardiff_check_hermitian(b, a, pol)?.map_err(Error::NotDefined)?;
    let scale = a.max_eigenvalue();
    let completed = if range_inclusion(diff.matrix(), a, pol)? {
        let q = a.range_basis();
        let top = Hermitian::symmetrized(q.adjoint() * diff.matrix() * &q);
        complement_congruent(&top, &(a.matrix() * &q), scale, pol)?
    } else {
        complement_congruent(diff.base(), a.matrix(), scale, pol)?
    };
    Ok(completed.base() - a.base())
}

/// `A:(nB)` for real `n > 0`.
///
/// For large `n` the sum `A + nB` cannot be formed without destroying the
/// information carried by `A` on `ker B`. The complement `(A + nB)_A` is
/// therefore evaluated in the congruent coordinates `x = Q D^{-1} x'`, where
/// `B = Q diag(beta) Q*` and `D = diag(sqrt(n beta_i))` on `ran B` (identity on
/// `ker B`). In those coordinates the `nB` term is exactly the identity on
/// `ran B`. `B` is replaced by its rank-truncated spectral form.
pub fn weighted_parallel_sum(a: &Psd, b: &Psd, n: f64, pol: &TolerancePolicy) -> Result<Psd> {
    same_dim(a, b, "weighted parallel sum")?;
    if !(n.is_finite() && n > 0.0) {
        return Err(Error::InvalidInput(format!("weight must be finite and positive, got {n}")));
    }
    let dim = a.dim();
    let range = b.rank();
    let kernel = dim - range;
    let mut scales = vec![1.0; dim];
    for (s, beta) in scales[kernel..].iter_mut().zip(b.range_eigenvalues()) {
        *s = 1.0 / (n * beta).sqrt();
    }
    let q = b.eigenvectors();
    let t = CMat::from_fn(dim, dim, |i, j| q[(i, j)] * scales[j]);
    let mut top = t.adjoint() * a.matrix() * &t;
    for j in kernel..dim {
        top[(j, j)] += C64::new(1.0, 0.0);
    }
    let top = Hermitian::symmetrized(top);
    let off = a.matrix() * &t;
    let scale = a.max_eigenvalue();
    let shorted = complement_congruent(&top, &off, scale, pol)?;
    make_psd_with_scale(&(a.base() - shorted.base()), scale, pol)
}

/// `n * B`.
pub fn scale_psd(b: &Psd, n: f64, pol: &TolerancePolicy) -> Result<Psd> {
    make_psd(&b.base().scaled(n), pol)
}
