//! Finite-dimensional *-algebras spanned by matrices, representable
//! functionals and the GNS construction, with the functional versions of the
//! complement, parallel sum, parallel difference and Lebesgue decomposition.
//!
//! Elements are handled through their coordinates `α ∈ C^k` in the basis
//! `b_1, …, b_k`. A functional is stored by its values `φ_i = f(b_i)`, so
//! `f(α) = Σ α_i φ_i`.
//!
//! The induced operator is `M[r][c] = f(b_r* b_c)`, so that
//! `f(b* a) = β* M α = <M α, β>` with the pairing used by the matrix modules.

use nalgebra::linalg::Cholesky;
use nalgebra::Dyn;

use crate::error::{Error, PardiffFailure, Result};
use crate::matrix::{frobenius, vec_norm, CMat, CVec, Hermitian, C64, ONE, ZERO};
use crate::psd::{make_psd_with_scale, range_residual, Psd};
use crate::tolerance::TolerancePolicy;

#[derive(Debug, Clone)]
pub struct FiniteStarAlgebra {
    env_dim: usize,
    basis: Vec<CMat>,
    /// Columns are the vectorized basis matrices.
    stacked: CMat,
    normal: Cholesky<C64, Dyn>,
    /// `left[i]` has column `j` equal to the coordinates of `b_i b_j`.
    left: Vec<CMat>,
    /// Column `i` holds the coordinates of `b_i*`.
    star: CMat,
    unit: Option<CVec>,
}

fn vectorize(m: &CMat) -> CVec {
    CVec::from_column_slice(m.as_slice())
}

impl FiniteStarAlgebra {
    /// Checks linear independence and closure under products and adjoints,
    /// caching the structure constants. The unit is located when it exists.
    pub fn new(env_dim: usize, basis: Vec<CMat>, pol: &TolerancePolicy) -> Result<Self> {
        let k = basis.len();
        if k == 0 {
            return Err(Error::InvalidInput("algebra basis is empty".into()));
        }
        for (i, b) in basis.iter().enumerate() {
            if b.shape() != (env_dim, env_dim) {
                return Err(Error::dims(
                    "algebra basis element",
                    format!("{env_dim}x{env_dim}"),
                    format!("{}x{} (element {i})", b.nrows(), b.ncols()),
                ));
            }
            if !crate::matrix::all_finite(b) {
                return Err(Error::InvalidInput(format!("basis element {i} has a non-finite entry")));
            }
        }
        let d2 = env_dim * env_dim;
        let stacked = CMat::from_fn(d2, k, |r, c| basis[c].as_slice()[r]);
        let gram = stacked.adjoint() * &stacked;
        let g = Hermitian::symmetrized(gram.clone());
        let (values, _) = crate::psd::eigh(&g);
        let top = values.last().copied().unwrap_or(0.0);
        if values[0] <= pol.rank_tol_for(k) * top.max(1.0) {
            return Err(Error::InvalidInput("algebra basis is not linearly independent".into()));
        }
        let normal = Cholesky::new(gram)
            .ok_or_else(|| Error::InvalidInput("algebra basis is not linearly independent".into()))?;
        let mut alg = Self {
            env_dim,
            basis,
            stacked,
            normal,
            left: Vec::new(),
            star: CMat::zeros(k, k),
            unit: None,
        };
        let mut left = Vec::with_capacity(k);
        for i in 0..k {
            let mut l = CMat::zeros(k, k);
            for j in 0..k {
                let prod = &alg.basis[i] * &alg.basis[j];
                let c = alg.coordinates(&prod, pol).map_err(|_| {
                    Error::InvalidInput(format!("product b{i} b{j} leaves the span of the basis"))
                })?;
                l.set_column(j, &c);
            }
            left.push(l);
        }
        for i in 0..k {
            let adj = alg.basis[i].adjoint();
            let c = alg.coordinates(&adj, pol).map_err(|_| {
                Error::InvalidInput(format!("adjoint of b{i} leaves the span of the basis"))
            })?;
            alg.star.set_column(i, &c);
        }
        alg.left = left;
        alg.unit = alg.find_unit(pol);
        Ok(alg)
    }

    /// `C` as the span of the 1×1 identity.
    pub fn scalars() -> Self {
        Self::new(1, vec![CMat::identity(1, 1)], &TolerancePolicy::default()).expect("valid algebra")
    }

    /// Diagonal `n×n` matrices with the matrix units `E_ii` as basis.
    pub fn diagonal(n: usize) -> Self {
        let basis = (0..n)
            .map(|i| CMat::from_fn(n, n, |r, c| if r == i && c == i { ONE } else { ZERO }))
            .collect();
        Self::new(n, basis, &TolerancePolicy::default()).expect("valid algebra")
    }

    /// `M_n(C)` with the matrix units `E_ij` in row-major order.
    pub fn full_matrix(n: usize) -> Self {
        let basis = (0..n * n)
            .map(|m| {
                let (i, j) = (m / n, m % n);
                CMat::from_fn(n, n, |r, c| if r == i && c == j { ONE } else { ZERO })
            })
            .collect();
        Self::new(n, basis, &TolerancePolicy::default()).expect("valid algebra")
    }

    /// Forget the unit so that only the general code paths are used.
    pub fn without_unit(mut self) -> Self {
        self.unit = None;
        self
    }

    fn find_unit(&self, pol: &TolerancePolicy) -> Option<CVec> {
        // Σ u_i L_i = I, solved as a least-squares problem in u
        let k = self.dim();
        let system = CMat::from_fn(k * k, k, |r, i| self.left[i].as_slice()[r]);
        let target = vectorize(&CMat::identity(k, k));
        let normal = Cholesky::new(system.adjoint() * &system)?;
        let u = normal.solve(&(system.adjoint() * &target));
        let residual = vec_norm(&(&system * &u - &target));
        if residual > pol.eq_tol * (k as f64).sqrt() {
            return None;
        }
        let right = (0..k).all(|j| {
            let prod = self.product(&crate::matrix::basis_vector(k, j), &u);
            vec_norm(&(prod - crate::matrix::basis_vector(k, j))) <= pol.eq_tol
        });
        right.then_some(u)
    }

    pub fn env_dim(&self) -> usize {
        self.env_dim
    }

    /// Number of basis elements.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CMat] {
        &self.basis
    }

    pub fn unit(&self) -> Option<&CVec> {
        self.unit.as_ref()
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    /// Coordinates of a matrix in the basis; fails if it is outside the span.
    pub fn coordinates(&self, m: &CMat, pol: &TolerancePolicy) -> Result<CVec> {
        if m.shape() != (self.env_dim, self.env_dim) {
            return Err(Error::dims(
                "algebra element",
                format!("{0}x{0}", self.env_dim),
                format!("{}x{}", m.nrows(), m.ncols()),
            ));
        }
        let v = vectorize(m);
        let c = self.normal.solve(&(self.stacked.adjoint() * &v));
        let residual = vec_norm(&(&self.stacked * &c - &v));
        if residual > pol.eq_tol * vec_norm(&v).max(1.0) {
            return Err(Error::InvalidInput("matrix is not in the algebra".into()));
        }
        Ok(c)
    }

    pub fn element(&self, alpha: &CVec) -> CMat {
        let mut m = CMat::zeros(self.env_dim, self.env_dim);
        for (a, b) in alpha.iter().zip(&self.basis) {
            m += b * *a;
        }
        m
    }

    /// Left multiplication by `b_i` in coordinates.
    pub fn left_matrix(&self, i: usize) -> &CMat {
        &self.left[i]
    }

    /// Left multiplication by the element with coordinates `alpha`.
    pub fn left_multiplication(&self, alpha: &CVec) -> CMat {
        let k = self.dim();
        let mut l = CMat::zeros(k, k);
        for (a, li) in alpha.iter().zip(&self.left) {
            l += li * *a;
        }
        l
    }

    pub fn product(&self, alpha: &CVec, beta: &CVec) -> CVec {
        self.left_multiplication(alpha) * beta
    }

    pub fn adjoint(&self, alpha: &CVec) -> CVec {
        &self.star * alpha.conjugate()
    }

    fn check(&self, f: &Functional) -> Result<()> {
        if f.values.len() != self.dim() {
            return Err(Error::dims("functional values", self.dim(), f.values.len()));
        }
        Ok(())
    }
}

/// A linear functional given by its values on the basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Functional {
    values: CVec,
}

impl Functional {
    pub fn new(values: CVec) -> Self {
        Self { values }
    }

    pub fn zero(k: usize) -> Self {
        Self::new(CVec::zeros(k))
    }

    /// `a ↦ Σ_j <a v_j, v_j>`, a positive functional for any vectors `v_j` in
    /// `C^envDim`.
    pub fn vector_state(alg: &FiniteStarAlgebra, vectors: &[CVec]) -> Self {
        let values = CVec::from_fn(alg.dim(), |i, _| {
            vectors.iter().map(|v| v.dotc(&(&alg.basis[i] * v))).sum()
        });
        Self::new(values)
    }

    pub fn values(&self) -> &CVec {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn eval(&self, alpha: &CVec) -> C64 {
        self.values.iter().zip(alpha.iter()).map(|(p, a)| p * a).sum()
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self::new(self.values.map(|z| z * s))
    }

    pub fn distance(&self, other: &Functional) -> f64 {
        vec_norm(&(&self.values - &other.values))
    }

    pub fn norm(&self) -> f64 {
        vec_norm(&self.values)
    }
}

impl std::ops::Add for &Functional {
    type Output = Functional;
    fn add(self, rhs: &Functional) -> Functional {
        Functional::new(&self.values + &rhs.values)
    }
}

impl std::ops::Sub for &Functional {
    type Output = Functional;
    fn sub(self, rhs: &Functional) -> Functional {
        Functional::new(&self.values - &rhs.values)
    }
}

/// `M[r][c] = f(b_r* b_c)` without symmetrization.
pub fn induced_matrix(alg: &FiniteStarAlgebra, f: &Functional) -> Result<CMat> {
    alg.check(f)?;
    let k = alg.dim();
    // t[s][c] = f(b_s b_c)
    let t = CMat::from_fn(k, k, |s, c| f.eval(&alg.left[s].column(c).into_owned()));
    Ok(alg.star.transpose() * t)
}

/// The induced operator `𝒜 → anti-dual(𝒜)`; symmetrized, so it is exact only
/// for Hermitian functionals.
pub fn induced_operator(alg: &FiniteStarAlgebra, f: &Functional) -> Result<Hermitian> {
    Ok(Hermitian::symmetrized(induced_matrix(alg, f)?))
}

/// Positive induced operator, judged against `reference`; the error carries a
/// human-readable reason.
fn positive_gram(
    alg: &FiniteStarAlgebra,
    f: &Functional,
    reference: f64,
    pol: &TolerancePolicy,
) -> Result<std::result::Result<Psd, String>> {
    let m = induced_matrix(alg, f)?;
    let asym = frobenius(&(&m - m.adjoint()));
    let scale = frobenius(&m).max(reference).max(1.0);
    if asym > pol.eq_tol * scale {
        return Ok(Err(format!("f(b* a) is not Hermitian (asymmetry {asym:.3e})")));
    }
    match make_psd_with_scale(&Hermitian::symmetrized(m), reference, pol) {
        Ok(p) => Ok(Ok(p)),
        Err(Error::NotPositive { min_eigenvalue, .. }) => Ok(Err(format!(
            "f(a* a) takes negative values (Gram eigenvalue {min_eigenvalue:.3e})"
        ))),
        Err(e) => Err(e),
    }
}

fn conj_column(v: &CVec) -> CMat {
    CMat::from_column_slice(v.len(), 1, v.conjugate().as_slice())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Representability {
    pub representable: bool,
    pub reason: Option<String>,
}

pub fn representability(
    alg: &FiniteStarAlgebra,
    f: &Functional,
    pol: &TolerancePolicy,
) -> Result<Representability> {
    let gram = match positive_gram(alg, f, 0.0, pol)? {
        Ok(g) => g,
        Err(reason) => {
            return Ok(Representability {
                representable: false,
                reason: Some(reason),
            })
        }
    };
    let residual = range_residual(&conj_column(f.values()), &gram)?;
    if residual > pol.eq_tol {
        return Ok(Representability {
            representable: false,
            reason: Some(format!(
                "a ↦ f(a) is unbounded on the GNS space (range residual {residual:.3e})"
            )),
        });
    }
    Ok(Representability {
        representable: true,
        reason: None,
    })
}

/// Positivity of `f(a* a)` plus boundedness `|f(a)|^2 <= C f(a* a)`.
pub fn is_representable(alg: &FiniteStarAlgebra, f: &Functional, pol: &TolerancePolicy) -> Result<bool> {
    Ok(representability(alg, f, pol)?.representable)
}

/// `H_f`, `π_f` and `ξ_f` in an orthonormal basis of `H_f`.
#[derive(Debug, Clone)]
pub struct GnsTriple {
    pub hilbert_dim: usize,
    /// The induced operator `[f(b_r* b_c)]`.
    pub gram: Psd,
    /// `π_f(b_i)`, each `m×m`.
    pub rep: Vec<CMat>,
    pub cyclic: CVec,
    /// `||ξ_f||^2`, the least `C` with `|f(a)|^2 <= C f(a* a)`.
    pub cyclic_norm_sq: f64,
    /// Maps coordinates `α` to the class of `a` in `H_f`.
    pub embed: CMat,
}

impl GnsTriple {
    pub fn class(&self, alpha: &CVec) -> CVec {
        &self.embed * alpha
    }

    pub fn represent(&self, alpha: &CVec) -> CMat {
        let m = self.hilbert_dim;
        let mut r = CMat::zeros(m, m);
        for (a, ri) in alpha.iter().zip(&self.rep) {
            r += ri * *a;
        }
        r
    }

    /// `<π_f(a) ξ_f, ξ_f>`.
    pub fn value(&self, alpha: &CVec) -> C64 {
        self.cyclic.dotc(&(self.represent(alpha) * &self.cyclic))
    }

    /// `λ_a = ||π_f(a)||^2`, the least constant with
    /// `f(b* a* a b) <= λ_a f(b* b)`.
    pub fn lambda(&self, alpha: &CVec) -> f64 {
        if self.hilbert_dim == 0 {
            return 0.0;
        }
        let s = self.represent(alpha).singular_values();
        s.max().powi(2)
    }
}

/// The space and representation only; `ξ_f` is not required to exist.
struct GnsCore {
    gram: Psd,
    embed: CMat,
    inv_sqrt: Vec<f64>,
    range: CMat,
    rep: Vec<CMat>,
}

impl GnsCore {
    fn build(alg: &FiniteStarAlgebra, gram: Psd) -> Self {
        let range = gram.range_basis();
        let mu = gram.range_eigenvalues().to_vec();
        let sqrt: Vec<f64> = mu.iter().map(|v| v.sqrt()).collect();
        let inv_sqrt: Vec<f64> = sqrt.iter().map(|v| 1.0 / v).collect();
        let ua = range.adjoint();
        let embed = CMat::from_fn(ua.nrows(), ua.ncols(), |i, j| ua[(i, j)] * sqrt[i]);
        let lift = CMat::from_fn(range.nrows(), range.ncols(), |i, j| range[(i, j)] * inv_sqrt[j]);
        let rep = alg.left.iter().map(|l| &embed * l * &lift).collect();
        Self {
            gram,
            embed,
            inv_sqrt,
            range,
            rep,
        }
    }

    /// The vector `ζ ∈ H_f` with `<[a], ζ> = Σ α_i v_i` for all `a`.
    fn riesz(&self, v: &CVec) -> CVec {
        let c = self.range.adjoint() * v.conjugate();
        CVec::from_fn(c.len(), |i, _| c[i] * self.inv_sqrt[i])
    }

    fn functional_at(&self, eta: &CVec) -> Functional {
        Functional::new(CVec::from_fn(self.rep.len(), |i, _| eta.dotc(&(&self.rep[i] * eta))))
    }
}

pub fn gns(alg: &FiniteStarAlgebra, f: &Functional, pol: &TolerancePolicy) -> Result<GnsTriple> {
    let verdict = representability(alg, f, pol)?;
    if !verdict.representable {
        return Err(Error::NotRepresentable(verdict.reason.unwrap_or_default()));
    }
    let gram = positive_gram(alg, f, 0.0, pol)?.map_err(Error::NotRepresentable)?;
    let core = GnsCore::build(alg, gram);
    let cyclic = core.riesz(f.values());
    Ok(GnsTriple {
        hilbert_dim: core.embed.nrows(),
        gram: core.gram,
        rep: core.rep,
        cyclic_norm_sq: cyclic.norm_squared(),
        cyclic,
        embed: core.embed,
    })
}

/// `h(a) = <π_f(a) η_g, η_g>` where `g(a) = <π_f(a) ξ_f, η_g>`; `f` must be
/// positive (checked against `reference`).
fn complement_core(
    alg: &FiniteStarAlgebra,
    f: &Functional,
    g: &Functional,
    reference: f64,
    pol: &TolerancePolicy,
) -> Result<Functional> {
    alg.check(g)?;
    let gram = positive_gram(alg, f, reference, pol)?.map_err(Error::NotRepresentable)?;
    let residual = range_residual(&conj_column(g.values()), &gram)?;
    if residual > pol.eq_tol {
        return Err(Error::NotDominated(format!(
            "a ↦ g(a) is unbounded on H_f (range residual {residual:.3e})"
        )));
    }
    let core = GnsCore::build(alg, gram);
    let eta = core.riesz(g.values());
    Ok(core.functional_at(&eta))
}

fn functional_scale(alg: &FiniteStarAlgebra, fs: &[&Functional]) -> Result<f64> {
    let mut s: f64 = 0.0;
    for f in fs {
        s = s.max(frobenius(&induced_matrix(alg, f)?));
    }
    Ok(s)
}

fn require_representable(alg: &FiniteStarAlgebra, f: &Functional, pol: &TolerancePolicy) -> Result<()> {
    let verdict = representability(alg, f, pol)?;
    if !verdict.representable {
        return Err(Error::NotRepresentable(verdict.reason.unwrap_or_default()));
    }
    Ok(())
}

/// The complement `f_g`: the smallest representable `h` making
/// `f(a* a) + g(b* a) + conj g(b* a) + h(b* b) >= 0`.
pub fn complement_functional(
    alg: &FiniteStarAlgebra,
    f: &Functional,
    g: &Functional,
    pol: &TolerancePolicy,
) -> Result<Functional> {
    require_representable(alg, f, pol)?;
    complement_core(alg, f, g, 0.0, pol)
}

/// `f:g = f - (f+g)_f`.
pub fn parallel_sum_functional(
    alg: &FiniteStarAlgebra,
    f: &Functional,
    g: &Functional,
    pol: &TolerancePolicy,
) -> Result<Functional> {
    require_representable(alg, f, pol)?;
    require_representable(alg, g, pol)?;
    let scale = functional_scale(alg, &[f, g])?;
    let shorted = complement_core(alg, &(f + g), f, scale, pol)?;
    Ok(f - &shorted)
}

/// `g ÷ f = (f-g)_f - f`.
pub fn parallel_diff_functional(
    alg: &FiniteStarAlgebra,
    g: &Functional,
    f: &Functional,
    pol: &TolerancePolicy,
) -> Result<Functional> {
    alg.check(f)?;
    alg.check(g)?;
    let scale = functional_scale(alg, &[f, g])?;
    let diff = f - g;
    let gram = match positive_gram(alg, &diff, scale, pol)? {
        Ok(p) => p,
        Err(_) => return Err(Error::NotDefined(PardiffFailure::NotDominated)),
    };
    if range_residual(&conj_column(f.values()), &gram)? > pol.eq_tol {
        return Err(Error::NotDefined(PardiffFailure::RangeNotIncluded));
    }
    let shorted = complement_core(alg, &diff, f, scale, pol)?;
    Ok(&shorted - f)
}

#[derive(Debug, Clone)]
pub struct FunctionalSplit {
    pub regular: Functional,
    pub singular: Functional,
    /// `(f:g) ÷ g`, computed independently of the primary `(g:f) ÷ g`.
    pub diagnostic: Option<Functional>,
    pub deviation: f64,
}

/// `f = f_r + f_s` with `f_r = (g - g:f)_g - g` and `f_s = f - f_r`.
pub fn lebesgue_decompose_functional(
    alg: &FiniteStarAlgebra,
    f: &Functional,
    g: &Functional,
    pol: &TolerancePolicy,
) -> Result<FunctionalSplit> {
    require_representable(alg, f, pol)?;
    require_representable(alg, g, pol)?;
    let g_par_f = parallel_sum_functional(alg, g, f, pol)?;
    let regular = parallel_diff_functional(alg, &g_par_f, g, pol).map_err(|e| match e {
        Error::NotDefined(_) => Error::RouteDisagreement {
            deviation: f64::INFINITY,
            threshold: 0.0,
        },
        other => other,
    })?;
    let diagnostic = parallel_sum_functional(alg, f, g, pol)
        .and_then(|fg| parallel_diff_functional(alg, &fg, g, pol))
        .ok();
    let deviation = diagnostic
        .as_ref()
        .map_or(f64::INFINITY, |d| d.distance(&regular));
    Ok(FunctionalSplit {
        singular: f - &regular,
        regular,
        diagnostic,
        deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::real_vector;

    fn pol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    fn fun(values: &[f64]) -> Functional {
        Functional::new(real_vector(values))
    }

    #[test]
    fn structure_constants() {
        let m2 = FiniteStarAlgebra::full_matrix(2);
        assert_eq!(m2.dim(), 4);
        assert!(m2.is_unital());
        let u = m2.unit().unwrap();
        assert!((m2.element(u) - CMat::identity(2, 2)).norm() < 1e-14);
        // E_01 E_10 = E_00
        let p = m2.product(&crate::matrix::basis_vector(4, 1), &crate::matrix::basis_vector(4, 2));
        assert!((p - crate::matrix::basis_vector(4, 0)).norm() < 1e-14);
        // E_01* = E_10
        let a = m2.adjoint(&crate::matrix::basis_vector(4, 1));
        assert!((a - crate::matrix::basis_vector(4, 2)).norm() < 1e-14);
    }

    #[test]
    fn rejects_non_closed_basis() {
        let upper = CMat::from_row_slice(2, 2, &[ZERO, ONE, ZERO, ZERO]);
        assert!(matches!(
            FiniteStarAlgebra::new(2, vec![upper], &pol()),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn representability_examples() {
        let c = FiniteStarAlgebra::scalars();
        assert!(is_representable(&c, &fun(&[2.0]), &pol()).unwrap());
        assert!(!is_representable(&c, &fun(&[-1.0]), &pol()).unwrap());
        let c2 = FiniteStarAlgebra::diagonal(2);
        assert!(is_representable(&c2, &fun(&[1.0, 0.0]), &pol()).unwrap());
    }

    #[test]
    fn gns_examples() {
        let c = FiniteStarAlgebra::scalars();
        let t = gns(&c, &fun(&[2.0]), &pol()).unwrap();
        assert_eq!(t.hilbert_dim, 1);
        assert!((t.cyclic_norm_sq - 2.0).abs() < 1e-14);

        let c2 = FiniteStarAlgebra::diagonal(2);
        let t = gns(&c2, &fun(&[1.0, 1.0]), &pol()).unwrap();
        assert_eq!(t.hilbert_dim, 2);
        for r in &t.rep {
            assert!((r - CMat::from_diagonal(&r.diagonal())).norm() < 1e-14);
        }
        let unit_class = t.class(c2.unit().unwrap());
        assert!((unit_class - &t.cyclic).norm() < 1e-14);

        let t = gns(&c2, &Functional::zero(2), &pol()).unwrap();
        assert_eq!(t.hilbert_dim, 0);
        assert!(t.value(&real_vector(&[1.0, 0.0])).norm() == 0.0);
    }

    #[test]
    fn induced_operator_examples() {
        let c2 = FiniteStarAlgebra::diagonal(2);
        assert_eq!(induced_operator(&c2, &fun(&[1.0, 1.0])).unwrap(), Hermitian::identity(2));
        assert_eq!(induced_operator(&c2, &Functional::zero(2)).unwrap(), Hermitian::zeros(2));
        let c = FiniteStarAlgebra::scalars();
        assert_eq!(induced_operator(&c, &fun(&[3.0])).unwrap(), Hermitian::diag(&[3.0]));
    }

    #[test]
    fn complement_examples() {
        let c = FiniteStarAlgebra::scalars();
        let g = Functional::new(CVec::from_element(1, C64::new(0.6, -0.8)));
        let h = complement_functional(&c, &fun(&[1.0]), &g, &pol()).unwrap();
        assert!(h.distance(&fun(&[1.0])) < 1e-14);
        let h = complement_functional(&c, &fun(&[1.0]), &Functional::zero(1), &pol()).unwrap();
        assert!(h.norm() == 0.0);

        let c2 = FiniteStarAlgebra::diagonal(2);
        let h = complement_functional(&c2, &fun(&[1.0, 1.0]), &fun(&[1.0, 0.0]), &pol()).unwrap();
        assert!(h.distance(&fun(&[1.0, 0.0])) < 1e-14);

        assert!(matches!(
            complement_functional(&c2, &fun(&[1.0, 0.0]), &fun(&[0.0, 1.0]), &pol()),
            Err(Error::NotDominated(_))
        ));
    }

    #[test]
    fn parallel_examples() {
        let c2 = FiniteStarAlgebra::diagonal(2);
        let f = fun(&[1.0, 1.0]);
        let p = parallel_sum_functional(&c2, &f, &fun(&[1.0, 0.0]), &pol()).unwrap();
        assert!(p.distance(&fun(&[0.5, 0.0])) < 1e-14);
        let p = parallel_sum_functional(&c2, &f, &Functional::zero(2), &pol()).unwrap();
        assert!(p.norm() < 1e-14);
        let p = parallel_sum_functional(&c2, &f, &f, &pol()).unwrap();
        assert!(p.distance(&f.scaled(0.5)) < 1e-14);

        let c = FiniteStarAlgebra::scalars();
        let d = parallel_diff_functional(&c, &fun(&[0.5]), &fun(&[1.0]), &pol()).unwrap();
        assert!(d.distance(&fun(&[1.0])) < 1e-14);
        let d = parallel_diff_functional(&c, &Functional::zero(1), &fun(&[1.0]), &pol()).unwrap();
        assert!(d.norm() < 1e-14);
        assert_eq!(
            parallel_diff_functional(&c, &fun(&[1.0]), &fun(&[1.0]), &pol()).unwrap_err(),
            Error::NotDefined(PardiffFailure::RangeNotIncluded)
        );
    }

    #[test]
    fn lebesgue_examples() {
        let c2 = FiniteStarAlgebra::diagonal(2);
        let f = fun(&[1.0, 1.0]);
        let split = lebesgue_decompose_functional(&c2, &f, &fun(&[1.0, 0.0]), &pol()).unwrap();
        assert!(split.regular.distance(&fun(&[1.0, 0.0])) < 1e-12);
        assert!(split.singular.distance(&fun(&[0.0, 1.0])) < 1e-12);
        let split = lebesgue_decompose_functional(&c2, &f, &f, &pol()).unwrap();
        assert!(split.regular.distance(&f) < 1e-12);
        assert!(split.singular.norm() < 1e-12);
        let split = lebesgue_decompose_functional(&c2, &f, &Functional::zero(2), &pol()).unwrap();
        assert!(split.regular.norm() < 1e-12);
        assert!(split.singular.distance(&f) < 1e-12);
    }
}
