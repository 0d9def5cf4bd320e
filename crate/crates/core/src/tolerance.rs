use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical cutoffs shared by every kernel.
///
/// All tolerances are relative: they are multiplied by `max(1, scale)` where
/// `scale` is the largest eigenvalue or norm of the operand being judged.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TolerancePolicy {
    /// Accept eigenvalues down to `-psd_tol * scale` as zero.
    pub psd_tol: f64,
    /// Eigenvalues at or below `rank_tol * scale` count as zero when forming
    /// ranks, projectors and pseudo-inverses. `None` selects `64 * n * eps`.
    pub rank_tol: Option<f64>,
    /// Matrix equality and range-residual tolerance.
    pub eq_tol: f64,
    /// Stopping tolerance for convergent sequences.
    pub lim_tol: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self {
            psd_tol: 1e-9,
            rank_tol: None,
            eq_tol: 1e-8,
            lim_tol: 1e-9,
        }
    }
}

impl TolerancePolicy {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("psdTol", self.psd_tol),
            ("rankTol", self.rank_tol.unwrap_or(0.0)),
            ("eqTol", self.eq_tol),
            ("limTol", self.lim_tol),
        ];
        for (name, v) in fields {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidInput(format!(
                    "tolerance {name} must be finite and nonnegative, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// Relative rank cutoff for an operator of dimension `n`.
    pub fn rank_tol_for(&self, n: usize) -> f64 {
        self.rank_tol
            .unwrap_or_else(|| 64.0 * (n.max(1) as f64) * f64::EPSILON)
    }
}
