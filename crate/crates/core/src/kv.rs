//! Krein–von Neumann extension of a positive operator given on a subspace.
//!
//! The operator is described by a domain basis `V` (columns span `dom A`) and
//! the values `W = A V`. In coordinates the auxiliary Hilbert space `H_A` is
//! `C^k` with Gram matrix `G = V* W`, and the extension is
//! `A_N = J J* = W G^+ W*`.

use crate::error::{Error, Result};
use crate::matrix::{frobenius, CMat, Hermitian};
use crate::psd::{make_psd, Psd};
use crate::tolerance::TolerancePolicy;

#[derive(Debug, Clone)]
pub struct PartialPositiveOperator {
    domain_basis: CMat,
    values: CMat,
}

impl PartialPositiveOperator {
    /// Rejects mismatched shapes and domain bases that are not linearly
    /// independent at the rank tolerance.
    pub fn new(domain_basis: CMat, values: CMat, pol: &TolerancePolicy) -> Result<Self> {
        let (n, k) = domain_basis.shape();
        if values.shape() != (n, k) {
            return Err(Error::dims(
                "partial operator: values",
                format!("{n}x{k}"),
                format!("{}x{}", values.nrows(), values.ncols()),
            ));
        }
        if k > n {
            return Err(Error::InvalidInput(format!(
                "{k} domain vectors cannot be independent in dimension {n}"
            )));
        }
        if !crate::matrix::all_finite(&domain_basis) || !crate::matrix::all_finite(&values) {
            return Err(Error::InvalidInput("non-finite entry".into()));
        }
        if k > 0 {
            let sv = domain_basis.clone().singular_values();
            let top = sv.max();
            let bottom = sv.min();
            if bottom <= pol.rank_tol_for(n) * top.max(1.0) {
                return Err(Error::InvalidInput("domain basis is not linearly independent".into()));
            }
        }
        Ok(Self { domain_basis, values })
    }

    /// Restriction of an everywhere defined operator `m` to `ran V`.
    pub fn restrict(m: &Hermitian, domain_basis: CMat, pol: &TolerancePolicy) -> Result<Self> {
        if domain_basis.nrows() != m.dim() {
            return Err(Error::dims("restriction: domain basis rows", m.dim(), domain_basis.nrows()));
        }
        let values = m.matrix() * &domain_basis;
        Self::new(domain_basis, values, pol)
    }

    pub fn ambient_dim(&self) -> usize {
        self.domain_basis.nrows()
    }

    pub fn domain_dim(&self) -> usize {
        self.domain_basis.ncols()
    }

    pub fn domain_basis(&self) -> &CMat {
        &self.domain_basis
    }

    pub fn values(&self) -> &CMat {
        &self.values
    }

    /// `G = V* W`, the Gram matrix of `{A v_j}` in `H_A`.
    pub fn gram_raw(&self) -> CMat {
        self.domain_basis.adjoint() * &self.values
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Extensibility {
    pub extensible: bool,
    pub reason: Option<String>,
}

impl Extensibility {
    fn yes() -> Self {
        Self {
            extensible: true,
            reason: None,
        }
    }

    fn no(reason: impl Into<String>) -> Self {
        Self {
            extensible: false,
            reason: Some(reason.into()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct KvExtension {
    pub extension: Psd,
    pub gram: Psd,
    pub domain: PartialPositiveOperator,
}

fn checked_gram(p: &PartialPositiveOperator, pol: &TolerancePolicy) -> std::result::Result<Psd, String> {
    let g = p.gram_raw();
    let asym = frobenius(&(&g - g.adjoint()));
    if asym > pol.eq_tol * frobenius(&g).max(1.0) {
        return Err(format!("<Ax, x'> is not Hermitian on the domain (asymmetry {asym:.3e})"));
    }
    match make_psd(&Hermitian::symmetrized(g), pol) {
        Ok(gram) => Ok(gram),
        Err(Error::NotPositive { min_eigenvalue, .. }) => Err(format!(
            "A is not positive on its domain (Gram eigenvalue {min_eigenvalue:.3e})"
        )),
        Err(e) => Err(e.to_string()),
    }
}

/// Existence of `M_y` with `|<Ax, y>|^2 <= M_y <Ax, x>` on the domain: `G`
/// must be positive and every domain vector of zero `H_A` seminorm must be
/// mapped to zero, i.e. `W (I - G^+ G) = 0`.
pub fn check_extensibility(p: &PartialPositiveOperator, pol: &TolerancePolicy) -> Extensibility {
    let gram = match checked_gram(p, pol) {
        Ok(g) => g,
        Err(reason) => return Extensibility::no(reason),
    };
    let leak = frobenius(&(p.values() * gram.kernel_basis()));
    if leak > pol.eq_tol * frobenius(p.values()).max(1.0) {
        return Extensibility::no(format!(
            "A maps a vector with <Ax, x> = 0 to a nonzero value (residual {leak:.3e})"
        ));
    }
    Extensibility::yes()
}

pub fn krein_von_neumann(p: &PartialPositiveOperator, pol: &TolerancePolicy) -> Result<KvExtension> {
    let verdict = check_extensibility(p, pol);
    if !verdict.extensible {
        return Err(Error::NotExtensible(verdict.reason.unwrap_or_default()));
    }
    let gram = make_psd(&Hermitian::symmetrized(p.gram_raw()), pol)?;
    let value = gram.sandwich_pinv(p.values());
    let extension = make_psd(&value, pol)?;
    Ok(KvExtension {
        extension,
        gram,
        domain: p.clone(),
    })
}
