//! Positive completion of the incomplete block system `[[A, B*], [B, *]]`.
//!
//! The system is completable iff `ran B* ⊆ ran A` (at finite dimension the
//! range of the embedding `H_A -> F` is `ran A^{1/2} = ran A`). The smallest
//! positive lower-right corner is the complement `A_B = B A^+ B*`, whose
//! quadratic form is
//!
//! ```text
//! <A_B y, y> = sup { |<Bx, y>|^2 : <Ax, x> <= 1 }
//!            = sup { <Bx, y> + <B*y, x> - <Ax, x> }.
//! ```

use crate::error::{Error, Result};
use crate::matrix::{CMat, CVec, Hermitian};
use crate::psd::{loewner_leq, make_psd, make_psd_with_scale, range_inclusion, range_residual, sqrt_psd, Psd};
use crate::tolerance::TolerancePolicy;

/// The pair `(A, B)` with `A` positive on `C^{n1}` and `B: C^{n1} -> C^{n2}`.
#[derive(Debug, Clone)]
pub struct IncompleteBlockSystem {
    a: Psd,
    b: CMat,
}

impl IncompleteBlockSystem {
    pub fn new(a: Psd, b: CMat) -> Result<Self> {
        if b.ncols() != a.dim() {
            return Err(Error::dims("block system: columns of B", a.dim(), b.ncols()));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &Psd {
        &self.a
    }

    pub fn b(&self) -> &CMat {
        &self.b
    }

    /// Dimension of the upper-left space `E1`.
    pub fn n1(&self) -> usize {
        self.a.dim()
    }

    /// Dimension of the lower-right space `E2`.
    pub fn n2(&self) -> usize {
        self.b.nrows()
    }
}

/// Outcome of a completion run, with the minimal constants `M_y = <A_B y, y>`
/// for the requested probe vectors.
#[derive(Debug, Clone)]
pub struct CompletionReport {
    pub completable: bool,
    /// `||(I - P_ran A) B*|| / max(1, ||B*||)`.
    pub range_residual: f64,
    pub complement: Option<Psd>,
    pub best_constants: Vec<(CVec, f64)>,
}

pub fn is_completable(s: &IncompleteBlockSystem, pol: &TolerancePolicy) -> bool {
    range_inclusion(&s.b.adjoint(), &s.a, pol).expect("dimensions checked at construction")
}

/// A constant `m` with `B*B ⪯ mA`, if one exists.
///
/// When `ran B* ⊆ ran A`, `m = ||B||^2 / lambda_min^+(A)` works; otherwise no
/// constant does. The candidate is always verified in the Loewner order.
pub fn domination_constant(s: &IncompleteBlockSystem, pol: &TolerancePolicy) -> Option<f64> {
    let btb = Hermitian::symmetrized(s.b.adjoint() * &s.b);
    let norm_sq = s.b.singular_values().iter().fold(0.0_f64, |m, v| m.max(*v)).powi(2);
    let m = match s.a.range_eigenvalues().first() {
        Some(&smallest) => norm_sq / smallest,
        None => 0.0,
    };
    loewner_leq(&btb, &s.a.base().scaled(m), pol)
        .expect("dimensions checked at construction")
        .then_some(m)
}

/// `ran B* ⊆ ran A^{1/2}`.
pub fn range_in_sqrt(s: &IncompleteBlockSystem, pol: &TolerancePolicy) -> bool {
    range_inclusion(&s.b.adjoint(), &sqrt_psd(&s.a), pol).expect("dimensions checked at construction")
}

/// `B A^+ B*` without the completability check.
pub(crate) fn complement_unchecked(
    s: &IncompleteBlockSystem,
    reference: f64,
    pol: &TolerancePolicy,
) -> Result<Psd> {
    let value = s.a.sandwich_pinv(&s.b);
    make_psd_with_scale(&value, reference, pol)
}

/// The complement `A_B`: the smallest positive `C` making `[[A, B*], [B, C]]`
/// positive.
pub fn complement(s: &IncompleteBlockSystem, pol: &TolerancePolicy) -> Result<Psd> {
    if !is_completable(s, pol) {
        return Err(Error::NotCompletable);
    }
    complement_unchecked(s, 0.0, pol)
}

/// Complement evaluated after the reparametrization `x = T x'`, i.e. the
/// complement of `(T* A T, B T)`.
///
/// The value equals `complement(s)` whenever the maximizer `A^+ B* y` stays in
/// `ran T`: for invertible `T`, or when `ran A ⊆ ran T`. The caller provides
/// the congruent upper-left block directly so that it can be formed without
/// cancellation.
pub(crate) fn complement_congruent(
    top: &Hermitian,
    off: &CMat,
    reference: f64,
    pol: &TolerancePolicy,
) -> Result<Psd> {
    let top = make_psd(top, pol)?;
    let s = IncompleteBlockSystem::new(top, off.clone())?;
    complement_unchecked(&s, reference, pol)
}

/// Schur complement `C - A_B` of a positive completion `C`.
pub fn schur_complement(
    s: &IncompleteBlockSystem,
    c: &Psd,
    pol: &TolerancePolicy,
) -> Result<Hermitian> {
    if c.dim() != s.n2() {
        return Err(Error::dims("Schur complement: C", s.n2(), c.dim()));
    }
    let ab = complement(s, pol)?;
    if !check_block_psd(s.a.base(), &s.b, c.base(), pol)? {
        return Err(Error::BlockNotPositive);
    }
    Ok(c.base() - ab.base())
}

/// Assemble `[[A, B*], [B, C]]`.
pub fn assemble_block(a: &Hermitian, b: &CMat, c: &Hermitian) -> Result<Hermitian> {
    let (n1, n2) = (a.dim(), c.dim());
    if b.nrows() != n2 || b.ncols() != n1 {
        return Err(Error::dims(
            "block assembly: B",
            format!("{n2}x{n1}"),
            format!("{}x{}", b.nrows(), b.ncols()),
        ));
    }
    let mut m = CMat::zeros(n1 + n2, n1 + n2);
    m.view_mut((0, 0), (n1, n1)).copy_from(a.matrix());
    m.view_mut((0, n1), (n1, n2)).copy_from(&b.adjoint());
    m.view_mut((n1, 0), (n2, n1)).copy_from(b);
    m.view_mut((n1, n1), (n2, n2)).copy_from(c.matrix());
    Hermitian::new(m)
}

pub fn check_block_psd(a: &Hermitian, b: &CMat, c: &Hermitian, pol: &TolerancePolicy) -> Result<bool> {
    let block = assemble_block(a, b, c)?;
    match make_psd(&block, pol) {
        Ok(_) => Ok(true),
        Err(Error::NotPositive { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Decide completability, compute `A_B` when it exists, and evaluate the
/// minimal constants for each probe.
pub fn completion_report(
    s: &IncompleteBlockSystem,
    probes: &[CVec],
    pol: &TolerancePolicy,
) -> Result<CompletionReport> {
    for p in probes {
        if p.len() != s.n2() {
            return Err(Error::dims("completion probe", s.n2(), p.len()));
        }
    }
    let residual = range_residual(&s.b.adjoint(), &s.a)?;
    let completable = residual <= pol.eq_tol;
    if !completable {
        return Ok(CompletionReport {
            completable,
            range_residual: residual,
            complement: None,
            best_constants: Vec::new(),
        });
    }
    let ab = complement_unchecked(s, 0.0, pol)?;
    let best_constants = probes.iter().map(|y| (y.clone(), ab.base().quad(y))).collect();
    Ok(CompletionReport {
        completable,
        range_residual: residual,
        complement: Some(ab),
        best_constants,
    })
}
