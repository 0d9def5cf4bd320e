//! Lebesgue-type decomposition `A = A_r + A_s` with respect to `B`.
//!
//! The regular part is produced by three routes that must agree:
//!
//! 1. the limit of `A:(2^k B)` (production value),
//! 2. `(A:B) ÷ B`,
//! 3. `(B - B:A)_B - B`, i.e. `(B:A) ÷ B`.
//!
//! At finite dimension the predicates reduce to range statements:
//! `A ≪ B` iff `ker B ⊆ ker A` (equivalently `ran A ⊆ ran B`), and `A ⊥ B` iff
//! `ran A ∩ ran B = {0}`.

use crate::error::{Error, Result};
use crate::matrix::{CMat, Hermitian};
use crate::parallel::{parallel_difference, parallel_sum, weighted_parallel_sum};
use crate::psd::{eigh, make_psd_with_scale, range_inclusion, Psd};
use crate::tolerance::TolerancePolicy;

/// Hard cap on the number of doublings in the limit route.
pub const MAX_DOUBLINGS: usize = 60;

#[derive(Debug, Clone)]
pub struct RouteDiagnostics {
    /// Route 1: `lim A:(2^k B)`.
    pub limit: Hermitian,
    /// Route 2: `(A:B) ÷ B`.
    pub pardiff: Hermitian,
    /// Route 3: `(B - B:A)_B - B`.
    pub complement: Hermitian,
    pub limit_vs_pardiff: f64,
    pub limit_vs_complement: f64,
    pub pardiff_vs_complement: f64,
    pub threshold: f64,
    /// Doublings performed by route 1.
    pub iterations: usize,
    pub converged: bool,
}

impl RouteDiagnostics {
    pub fn max_deviation(&self) -> f64 {
        self.limit_vs_pardiff
            .max(self.limit_vs_complement)
            .max(self.pardiff_vs_complement)
    }
}

#[derive(Debug, Clone)]
pub struct LebesgueSplit {
    pub regular: Psd,
    pub singular: Psd,
    pub routes: RouteDiagnostics,
}

/// `A ≪ B`, tested as `ran A ⊆ ran B`.
pub fn absolutely_continuous(a: &Psd, b: &Psd, pol: &TolerancePolicy) -> Result<bool> {
    a.base().check_same_dim(b.base(), "absolute continuity")?;
    range_inclusion(a.matrix(), b, pol)
}

/// Orthonormal basis of the range of `a`, ignoring eigenvalues at or below
/// `eq_tol * max(1, lambda_max)`.
fn coarse_range(a: &Psd, pol: &TolerancePolicy) -> CMat {
    let n = a.dim();
    let r = a.rank_at(pol.eq_tol);
    a.eigenvectors().columns(n - r, r).into_owned()
}

/// `A ⊥ B`, tested as `rank [Q_A | Q_B] = rank A + rank B` where `Q_A`, `Q_B`
/// are orthonormal range bases.
///
/// Ranks here are taken at the equality tolerance, since the operands are
/// usually computed (e.g. `A - A_r`) and carry round-off at that level.
pub fn mutually_singular(a: &Psd, b: &Psd, pol: &TolerancePolicy) -> Result<bool> {
    a.base().check_same_dim(b.base(), "mutual singularity")?;
    let qa = coarse_range(a, pol);
    let qb = coarse_range(b, pol);
    let (ra, rb) = (qa.ncols(), qb.ncols());
    if ra == 0 || rb == 0 {
        return Ok(true);
    }
    if ra + rb > a.dim() {
        return Ok(false);
    }
    let mut joined = CMat::zeros(a.dim(), ra + rb);
    joined.view_mut((0, 0), (a.dim(), ra)).copy_from(&qa);
    joined.view_mut((0, ra), (a.dim(), rb)).copy_from(&qb);
    // Gram of the joined basis has eigenvalues 1 ± cos(principal angles)
    let gram = Hermitian::symmetrized(joined.adjoint() * joined);
    let (values, _) = eigh(&gram);
    Ok(values[0] > pol.eq_tol)
}

fn route_failure(e: Error) -> Error {
    match e {
        Error::NotDefined(_) | Error::NotPositive { .. } => Error::RouteDisagreement {
            deviation: f64::INFINITY,
            threshold: 0.0,
        },
        other => other,
    }
}

/// Route 1 only: iterate `A:(2^k B)` until successive iterates differ by at
/// most `lim_tol * max(1, ||A||_F)`. Returns the last iterate, the number of
/// doublings and whether the stop criterion fired.
pub fn regular_part_by_limit(a: &Psd, b: &Psd, pol: &TolerancePolicy) -> Result<(Psd, usize, bool)> {
    let stop = pol.lim_tol * a.base().frobenius().max(1.0);
    let mut prev = weighted_parallel_sum(a, b, 1.0, pol)?;
    for k in 1..=MAX_DOUBLINGS {
        let next = weighted_parallel_sum(a, b, (k as f64).exp2(), pol)?;
        let step = next.base().distance(prev.base());
        prev = next;
        if step <= stop {
            return Ok((prev, k, true));
        }
    }
    Ok((prev, MAX_DOUBLINGS, false))
}

pub fn lebesgue_decompose(a: &Psd, b: &Psd, pol: &TolerancePolicy) -> Result<LebesgueSplit> {
    a.base().check_same_dim(b.base(), "Lebesgue decomposition")?;
    let (limit, iterations, converged) = regular_part_by_limit(a, b, pol)?;

    let a_par_b = parallel_sum(a, b, pol)?;
    let route2 = parallel_difference(&a_par_b, b, pol).map_err(route_failure)?;
    let b_par_a = parallel_sum(b, a, pol)?;
    let route3 = parallel_difference(&b_par_a, b, pol).map_err(route_failure)?;

    let threshold = 100.0 * pol.lim_tol * a.base().frobenius().max(1.0);
    let routes = RouteDiagnostics {
        limit_vs_pardiff: limit.base().distance(route2.base()),
        limit_vs_complement: limit.base().distance(route3.base()),
        pardiff_vs_complement: route2.base().distance(route3.base()),
        limit: limit.base().clone(),
        pardiff: route2.base().clone(),
        complement: route3.base().clone(),
        threshold,
        iterations,
        converged,
    };
    let deviation = routes.max_deviation();
    if !converged || deviation > threshold {
        return Err(Error::RouteDisagreement {
            deviation,
            threshold,
        });
    }
    let scale = a.max_eigenvalue();
    let singular = make_psd_with_scale(&(a.base() - limit.base()), scale, pol)?;
    Ok(LebesgueSplit {
        regular: limit,
        singular,
        routes,
    })
}

/// Decomposition relative to the identity (the inclusion of the space into
/// its anti-dual).
///
/// At finite dimension the identity has full range, so every positive
/// operator is absolutely continuous with respect to it: the result is always
/// `(A, 0)` up to round-off. Kept so the identity-weighted case has an
/// explicit entry point.
pub fn identity_relative_decompose(a: &Psd, pol: &TolerancePolicy) -> Result<LebesgueSplit> {
    lebesgue_decompose(a, &Psd::identity(a.dim()), pol)
}
