//! Independent evaluation of the variational (sup/inf) quadratic-form
//! formulas, used as ground truth for the closed-form kernels.
//!
//! Every objective reduces to maximizing a concave quadratic
//! `q(x) = 2 Re <g, x> - <Hx, x> + c0` (or an inf of its negative). The oracle
//! only ever multiplies by `H`; it never forms an inverse or pseudo-inverse.
//! Each start runs conjugate-gradient ascent with exact line search,
//! interleaved with exact line searches along random directions.

use rand::Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{frobenius, pairing, vec_norm, CMat, CVec, Hermitian};
use crate::sample::{self, SampleRng};
use crate::tolerance::TolerancePolicy;

/// A value in `R ∪ {+∞}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extended {
    Finite(f64),
    Infinite,
}

impl Extended {
    pub fn finite(self) -> Option<f64> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Extended::Infinite)
    }
}

impl Serialize for Extended {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Extended::Finite(v) => s.serialize_f64(*v),
            Extended::Infinite => s.serialize_str("+inf"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct OracleEstimate {
    /// For sup objectives a lower bound achieved by `witness`; for inf
    /// objectives an upper bound. `Infinite` means a direction of unbounded
    /// ascent was found, reported as `witness`.
    pub value: Extended,
    pub witness: CVec,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    pub starts: usize,
    /// Line searches per start.
    pub budget: usize,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            starts: 32,
            budget: 200,
            seed: 0x5eed,
        }
    }
}

/// The sup formulas.
#[derive(Debug, Clone, Copy)]
pub enum SupObjective<'a> {
    /// `sup { |<Bx, y>|^2 : <Ax, x> <= 1 }`
    ComplementConstrained { a: &'a Hermitian, b: &'a CMat },
    /// `sup { <Bx, y> + <B*y, x> - <Ax, x> }`
    ComplementPair { a: &'a Hermitian, b: &'a CMat },
    /// `sup { <By, x> + <Bx, y> - <Ax, x> }` for positive `A`, `B` on one space.
    ComplementSelfAdjoint { a: &'a Hermitian, b: &'a Hermitian },
    /// `sup { <B(x+y), x+y> - <Ax, x> }`, the form of `B ÷ A`.
    ParallelDifference { b: &'a Hermitian, a: &'a Hermitian },
    /// `sup { |<Ax, y>|^2 : x ∈ dom A, <Ax, x> <= 1 }` with `dom A = ran V`, `A V = W`.
    KvConstrained { v: &'a CMat, w: &'a CMat },
    /// `sup { <Ax, y> + conj<Ax, y> - <Ax, x> : x ∈ dom A }`.
    KvPair { v: &'a CMat, w: &'a CMat },
}

/// The inf formulas.
#[derive(Debug, Clone, Copy)]
pub enum InfObjective<'a> {
    /// `inf { <A(y+x), y+x> + <Bx, x> }`, the form of `A:B`.
    ParallelSum { a: &'a Hermitian, b: &'a Hermitian },
}

/// `q(x) = 2 Re <g, x> - <Hx, x> + c0` on `C^n`, with a map from the search
/// variable to the reported witness.
struct Concave {
    h: CMat,
    g: CVec,
    c0: f64,
    /// Witness `= lift * x`; identity when `None`.
    lift: Option<CMat>,
}

impl Concave {
    fn value(&self, x: &CVec) -> f64 {
        2.0 * pairing(&self.g, x).re - pairing(&(&self.h * x), x).re + self.c0
    }

    fn residual(&self, x: &CVec) -> CVec {
        &self.g - &self.h * x
    }

    fn lift(&self, x: &CVec) -> CVec {
        match &self.lift {
            Some(l) => l * x,
            None => x.clone(),
        }
    }
}

enum Ascent {
    Bounded {
        x: CVec,
        value: f64,
        iterations: usize,
        converged: bool,
    },
    Unbounded {
        direction: CVec,
        iterations: usize,
    },
}

fn check_dims(expected: usize, found: usize, context: &'static str) -> Result<()> {
    if expected != found {
        return Err(Error::dims(context, expected, found));
    }
    Ok(())
}

fn herm_part(m: &CMat) -> CMat {
    (m + m.adjoint()).scale(0.5)
}

fn sup_model(obj: &SupObjective<'_>, y: &CVec) -> Result<Concave> {
    let model = match *obj {
        SupObjective::ComplementConstrained { a, b } | SupObjective::ComplementPair { a, b } => {
            check_dims(a.dim(), b.ncols(), "oracle: columns of B")?;
            check_dims(b.nrows(), y.len(), "oracle: probe vector")?;
            Concave {
                h: a.matrix().clone(),
                g: b.adjoint() * y,
                c0: 0.0,
                lift: None,
            }
        }
        SupObjective::ComplementSelfAdjoint { a, b } => {
            check_dims(a.dim(), b.dim(), "oracle: operator dimensions")?;
            check_dims(a.dim(), y.len(), "oracle: probe vector")?;
            Concave {
                h: a.matrix().clone(),
                g: b.matrix() * y,
                c0: 0.0,
                lift: None,
            }
        }
        SupObjective::ParallelDifference { b, a } => {
            check_dims(a.dim(), b.dim(), "oracle: operator dimensions")?;
            check_dims(a.dim(), y.len(), "oracle: probe vector")?;
            Concave {
                h: a.matrix() - b.matrix(),
                g: b.matrix() * y,
                c0: b.quad(y),
                lift: None,
            }
        }
        SupObjective::KvConstrained { v, w } | SupObjective::KvPair { v, w } => {
            check_dims(v.nrows(), w.nrows(), "oracle: rows of W")?;
            check_dims(v.ncols(), w.ncols(), "oracle: columns of W")?;
            check_dims(v.nrows(), y.len(), "oracle: probe vector")?;
            Concave {
                h: herm_part(&(v.adjoint() * w)),
                g: w.adjoint() * y,
                c0: 0.0,
                lift: Some(v.clone()),
            }
        }
    };
    Ok(model)
}

fn random_like(n: usize, radius: f64, rng: &mut SampleRng) -> CVec {
    let v = sample::vector(n, rng);
    let norm = vec_norm(&v).max(f64::MIN_POSITIVE);
    v.map(|z| z * (radius / norm))
}

struct Thresholds {
    curvature: f64,
    slope: f64,
    residual: f64,
}

/// Exact line search along `d` from `x` with residual `r`.
/// Returns `None` when `d` is a direction of unbounded ascent.
fn line_step(q: &Concave, r: &CVec, d: &CVec, th: &Thresholds) -> Option<Option<f64>> {
    let dn2 = d.norm_squared();
    if dn2 == 0.0 {
        return Some(None);
    }
    let kappa = pairing(&(&q.h * d), d).re;
    let slope = pairing(r, d).re;
    if kappa <= th.curvature * dn2 {
        if kappa < -th.curvature * dn2 || slope.abs() > th.slope * dn2.sqrt() {
            return None;
        }
        return Some(None);
    }
    Some(Some(slope / kappa))
}

fn ascend(q: &Concave, start: CVec, budget: usize, th: &Thresholds, rng: &mut SampleRng) -> Ascent {
    let n = q.g.len();
    let mut x = start;
    let mut r = q.residual(&x);
    let mut d = r.clone();
    let mut since_restart = 0;
    for it in 0..budget {
        if r.norm() <= th.residual {
            let value = q.value(&x);
            return Ascent::Bounded {
                x,
                value,
                iterations: it,
                converged: true,
            };
        }
        // steepest direction test for unboundedness
        if line_step(q, &r, &r, th).is_none() {
            return Ascent::Unbounded {
                direction: r.clone(),
                iterations: it,
            };
        }
        let random_turn = since_restart == n;
        let dir = if random_turn {
            random_like(n, 1.0, rng)
        } else {
            d.clone()
        };
        match line_step(q, &r, &dir, th) {
            None => {
                return Ascent::Unbounded {
                    direction: dir,
                    iterations: it,
                }
            }
            Some(Some(t)) => {
                x += dir.map(|z| z * t);
            }
            Some(None) => {}
        }
        let r_new = q.residual(&x);
        if random_turn || since_restart > n {
            d = r_new.clone();
            since_restart = 0;
        } else {
            let denom = r.norm_squared();
            let beta = if denom > 0.0 {
                (pairing(&r_new, &(&r_new - &r)).re / denom).max(0.0)
            } else {
                0.0
            };
            d = &r_new + d.map(|z| z * beta);
            since_restart += 1;
        }
        r = r_new;
    }
    let converged = r.norm() <= th.residual;
    let value = q.value(&x);
    Ascent::Bounded {
        x,
        value,
        iterations: budget,
        converged,
    }
}

fn maximize(q: &Concave, cfg: &OracleConfig, pol: &TolerancePolicy) -> Ascent {
    let n = q.g.len();
    let mut rng = sample::rng(cfg.seed);
    let h_scale = frobenius(&q.h).max(1.0);
    let g_scale = vec_norm(&q.g).max(1.0);
    let th = Thresholds {
        curvature: pol.psd_tol * h_scale,
        slope: pol.eq_tol.sqrt() * g_scale,
        residual: 1e-11 * g_scale,
    };
    let mut best: Option<Ascent> = None;
    for s in 0..cfg.starts.max(1) {
        let start = if s == 0 {
            CVec::zeros(n)
        } else {
            random_like(n, g_scale / h_scale * (1.0 + s as f64 / 8.0), &mut rng)
        };
        let run = ascend(q, start, cfg.budget, &th, &mut rng);
        match (&best, &run) {
            (_, Ascent::Unbounded { .. }) => return run,
            (None, _) => best = Some(run),
            (Some(Ascent::Bounded { value: bv, .. }), Ascent::Bounded { value, .. }) => {
                if value > bv {
                    best = Some(run);
                }
            }
            (Some(Ascent::Unbounded { .. }), _) => unreachable!(),
        }
    }
    best.expect("at least one start")
}

/// Evaluate the sup objective exactly at a witness.
pub fn evaluate_sup(obj: &SupObjective<'_>, y: &CVec, witness: &CVec) -> Result<f64> {
    let value = match *obj {
        SupObjective::ComplementConstrained { a, b } => {
            let q = a.quad(witness);
            if q > 1.0 + 1e-12 {
                return Err(Error::InvalidInput("witness violates <Ax, x> <= 1".into()));
            }
            pairing(&(b * witness), y).norm_sqr()
        }
        SupObjective::KvConstrained { v, w } => {
            // witness lies in ran V; recover the coefficients by least squares
            let c = coefficients(v, witness)?;
            let ax = w * &c;
            let q = pairing(&ax, witness).re;
            if q > 1.0 + 1e-12 {
                return Err(Error::InvalidInput("witness violates <Ax, x> <= 1".into()));
            }
            pairing(&ax, y).norm_sqr()
        }
        SupObjective::KvPair { v, w } => {
            let c = coefficients(v, witness)?;
            let ax = w * &c;
            2.0 * pairing(&ax, y).re - pairing(&ax, witness).re
        }
        _ => {
            let q = sup_model(obj, y)?;
            q.value(witness)
        }
    };
    Ok(value)
}

fn coefficients(v: &CMat, x: &CVec) -> Result<CVec> {
    let gram = v.adjoint() * v;
    let rhs = v.adjoint() * x;
    gram.cholesky()
        .map(|c| c.solve(&rhs))
        .ok_or_else(|| Error::InvalidInput("domain basis is rank deficient".into()))
}

/// Estimate one of the sup formulas at `y`.
pub fn oracle_sup(
    obj: &SupObjective<'_>,
    y: &CVec,
    cfg: &OracleConfig,
    pol: &TolerancePolicy,
) -> Result<OracleEstimate> {
    let q = sup_model(obj, y)?;
    let constrained = matches!(
        obj,
        SupObjective::ComplementConstrained { .. } | SupObjective::KvConstrained { .. }
    );
    let estimate = match maximize(&q, cfg, pol) {
        Ascent::Unbounded {
            direction,
            iterations,
        } => OracleEstimate {
            value: Extended::Infinite,
            witness: q.lift(&direction),
            iterations,
            converged: true,
        },
        Ascent::Bounded {
            x,
            value,
            iterations,
            converged,
        } => {
            if constrained {
                // the maximizer of the pair form, scaled onto <Ax, x> = 1,
                // maximizes the constrained form
                let curvature = pairing(&(&q.h * &x), &x).re;
                let (witness, value) = if curvature > 0.0 {
                    let xs = x.map(|z| z / curvature.sqrt());
                    let value = pairing(&q.g, &xs).norm_sqr();
                    (q.lift(&xs), value)
                } else {
                    (q.lift(&CVec::zeros(x.len())), 0.0)
                };
                OracleEstimate {
                    value: Extended::Finite(value),
                    witness,
                    iterations,
                    converged,
                }
            } else {
                OracleEstimate {
                    value: Extended::Finite(value),
                    witness: q.lift(&x),
                    iterations,
                    converged,
                }
            }
        }
    };
    Ok(estimate)
}

/// Estimate one of the inf formulas at `y`.
pub fn oracle_inf(
    obj: &InfObjective<'_>,
    y: &CVec,
    cfg: &OracleConfig,
    pol: &TolerancePolicy,
) -> Result<OracleEstimate> {
    let InfObjective::ParallelSum { a, b } = *obj;
    check_dims(a.dim(), b.dim(), "oracle: operator dimensions")?;
    check_dims(a.dim(), y.len(), "oracle: probe vector")?;
    // inf <(A+B)x, x> + 2 Re <Ay, x> + <Ay, y>  =  -sup q
    let q = Concave {
        h: a.matrix() + b.matrix(),
        g: -(a.matrix() * y),
        c0: -a.quad(y),
        lift: None,
    };
    let estimate = match maximize(&q, cfg, pol) {
        // cannot happen for positive A, B; reported as -inf would be meaningless
        Ascent::Unbounded { .. } => {
            return Err(Error::InvalidInput("parallel-sum objective is not convex".into()))
        }
        Ascent::Bounded {
            x,
            value,
            iterations,
            converged,
        } => OracleEstimate {
            value: Extended::Finite(-value),
            witness: x,
            iterations,
            converged,
        },
    };
    Ok(estimate)
}

/// Evaluate the inf objective exactly at a witness.
pub fn evaluate_inf(obj: &InfObjective<'_>, y: &CVec, witness: &CVec) -> f64 {
    let InfObjective::ParallelSum { a, b } = *obj;
    a.quad(&(y + witness)) + b.quad(witness)
}

/// Unit vector used by tests and the CLI when no probe is given.
pub fn random_probe(n: usize, rng: &mut SampleRng) -> CVec {
    let v = sample::vector(n, rng);
    let scale: f64 = rng.random_range(0.5..2.0);
    let norm = vec_norm(&v).max(f64::MIN_POSITIVE);
    v.map(|z| z * (scale / norm))
}
