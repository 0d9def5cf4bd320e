//! Dense complex matrices and the Hermitian operator type.
//!
//! The anti-dual pair is realized as `E = F = C^n` with the pairing
//! `<f, x> = sum_i conj(x_i) f_i`, so an operator `E -> F` is an `n x n`
//! matrix and `<Ax, y> = y* A x`. A Hermitian matrix is simultaneously the
//! operator and its sesquilinear form `t_A(x, y) = <Ax, y>`.

use std::ops::{Add, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// The pairing `<f, x> = sum_i conj(x_i) f_i`.
pub fn pairing(f: &CVec, x: &CVec) -> C64 {
    x.dotc(f)
}

pub fn frobenius(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn vec_norm(v: &CVec) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn real_matrix(rows: usize, cols: usize, row_major: &[f64]) -> CMat {
    assert_eq!(row_major.len(), rows * cols, "entry count");
    CMat::from_fn(rows, cols, |i, j| C64::new(row_major[i * cols + j], 0.0))
}

pub fn real_vector(values: &[f64]) -> CVec {
    CVec::from_iterator(values.len(), values.iter().map(|&x| C64::new(x, 0.0)))
}

/// Standard basis vector `e_i` of `C^n`.
pub fn basis_vector(n: usize, i: usize) -> CVec {
    let mut v = CVec::zeros(n);
    v[i] = ONE;
    v
}

pub(crate) fn all_finite(m: &CMat) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Relative asymmetry accepted by [`Hermitian::new`].
pub const HERMITIAN_TOL: f64 = 1e-10;

/// An `n x n` complex Hermitian matrix.
///
/// Construction symmetrizes the input, `m <- (m + m*) / 2`, so round-off
/// asymmetry from files is absorbed. Asymmetry above
/// `HERMITIAN_TOL * max(1, ||m||_F)` is rejected.
#[derive(Debug, Clone, PartialEq)]
pub struct Hermitian(CMat);

impl Hermitian {
    pub fn new(m: CMat) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::dims(
                "Hermitian operator",
                "square matrix",
                format!("{}x{}", m.nrows(), m.ncols()),
            ));
        }
        if !all_finite(&m) {
            return Err(Error::InvalidInput("matrix entries must be finite".into()));
        }
        let asym = frobenius(&(&m - m.adjoint()));
        if asym > HERMITIAN_TOL * frobenius(&m).max(1.0) {
            return Err(Error::InvalidInput(format!("matrix is not Hermitian (asymmetry {asym:.3e})")));
        }
        Ok(Self::symmetrized(m))
    }

    pub(crate) fn symmetrized(m: CMat) -> Self {
        let adj = m.adjoint();
        Hermitian((m + adj).scale(0.5))
    }

    /// Real symmetric input given row-major; panics on a wrong entry count.
    pub fn from_real(n: usize, row_major: &[f64]) -> Self {
        Self::symmetrized(real_matrix(n, n, row_major))
    }

    pub fn identity(n: usize) -> Self {
        Hermitian(CMat::identity(n, n))
    }

    pub fn zeros(n: usize) -> Self {
        Hermitian(CMat::zeros(n, n))
    }

    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        Hermitian(CMat::from_fn(n, n, |i, j| {
            if i == j {
                C64::new(values[i], 0.0)
            } else {
                ZERO
            }
        }))
    }

    /// The rank-one operator `v v*`.
    pub fn outer(v: &CVec) -> Self {
        Hermitian(v * v.adjoint())
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.0
    }

    pub fn into_matrix(self) -> CMat {
        self.0
    }

    pub fn scaled(&self, s: f64) -> Self {
        Hermitian(self.0.map(|z| z * s))
    }

    /// `<A y, y>`, real for Hermitian `A`.
    pub fn quad(&self, y: &CVec) -> f64 {
        pairing(&(&self.0 * y), y).re
    }

    pub fn frobenius(&self) -> f64 {
        frobenius(&self.0)
    }

    /// `A^T`, which equals the entrywise conjugate for Hermitian `A`.
    pub fn conjugate(&self) -> Self {
        Hermitian(self.0.map(|z| z.conj()))
    }

    /// Distance in Frobenius norm.
    pub fn distance(&self, other: &Hermitian) -> f64 {
        frobenius(&(&self.0 - &other.0))
    }

    pub fn approx_eq(&self, other: &Hermitian, tol: f64) -> bool {
        self.dim() == other.dim() && self.distance(other) <= tol * self.frobenius().max(1.0)
    }

    pub(crate) fn check_same_dim(&self, other: &Hermitian, context: &'static str) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::dims(context, self.dim(), other.dim()));
        }
        Ok(())
    }
}

impl Add for &Hermitian {
    type Output = Hermitian;
    fn add(self, rhs: &Hermitian) -> Hermitian {
        Hermitian(&self.0 + &rhs.0)
    }
}

impl Sub for &Hermitian {
    type Output = Hermitian;
    fn sub(self, rhs: &Hermitian) -> Hermitian {
        Hermitian(&self.0 - &rhs.0)
    }
}
