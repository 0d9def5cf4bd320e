//! Browser demo: complements, Lebesgue splits and the convergence of
//! `A:(2^k B)` for real 2×2 matrices.
//!
//! Symmetric matrices travel as `[m11, m12, m22]`, general ones as
//! `[m11, m12, m21, m22]`.

use antidual::completion::{self, IncompleteBlockSystem};
use antidual::lebesgue::lebesgue_decompose;
use antidual::matrix::{real_matrix, Hermitian};
use antidual::parallel::weighted_parallel_sum;
use antidual::psd::{make_psd, Psd};
use antidual::tolerance::TolerancePolicy;
use wasm_bindgen::prelude::*;

fn symmetric(m: &[f64]) -> Result<Hermitian, String> {
    match m {
        [a, b, d] if m.iter().all(|x| x.is_finite()) => Ok(Hermitian::from_real(2, &[*a, *b, *b, *d])),
        [_, _, _] => Err("entries must be finite".into()),
        _ => Err(format!("expected 3 entries [m11, m12, m22], got {}", m.len())),
    }
}

fn positive(m: &[f64], name: &str) -> Result<Psd, String> {
    let h = symmetric(m).map_err(|e| format!("{name}: {e}"))?;
    make_psd(&h, &TolerancePolicy::default()).map_err(|e| format!("{name}: {e}"))
}

fn flat(h: &Hermitian) -> [f64; 3] {
    let m = h.matrix();
    [m[(0, 0)].re, m[(0, 1)].re, m[(1, 1)].re]
}

/// `A_B = B A^+ B*` for positive `A` and a general real `B`.
pub fn complement_2x2(a: &[f64], b: &[f64]) -> Result<[f64; 3], String> {
    let pa = positive(a, "A")?;
    if b.len() != 4 || !b.iter().all(|x| x.is_finite()) {
        return Err("B: expected 4 finite entries [b11, b12, b21, b22]".into());
    }
    let s = IncompleteBlockSystem::new(pa, real_matrix(2, 2, b)).map_err(|e| e.to_string())?;
    let ab = completion::complement(&s, &TolerancePolicy::default()).map_err(|e| e.to_string())?;
    Ok(flat(ab.base()))
}

/// Regular and singular parts of `A` with respect to `B`.
#[derive(Debug, Clone, PartialEq)]
pub struct Split {
    pub regular: [f64; 3],
    pub singular: [f64; 3],
    pub iterations: usize,
    pub route_deviation: f64,
}

pub fn lebesgue_2x2(a: &[f64], b: &[f64]) -> Result<Split, String> {
    let (pa, pb) = (positive(a, "A")?, positive(b, "B")?);
    let split = lebesgue_decompose(&pa, &pb, &TolerancePolicy::default()).map_err(|e| e.to_string())?;
    Ok(Split {
        regular: flat(split.regular.base()),
        singular: flat(split.singular.base()),
        iterations: split.routes.iterations,
        route_deviation: split.routes.max_deviation(),
    })
}

/// `||A:(2^k B) - A_r||_F` for `k = 0..steps`.
pub fn convergence_2x2(a: &[f64], b: &[f64], steps: usize) -> Result<Vec<f64>, String> {
    let pol = TolerancePolicy::default();
    let (pa, pb) = (positive(a, "A")?, positive(b, "B")?);
    let limit = lebesgue_decompose(&pa, &pb, &pol).map_err(|e| e.to_string())?.regular;
    (0..=steps.min(60))
        .map(|k| {
            let it = weighted_parallel_sum(&pa, &pb, 2f64.powi(k as i32), &pol).map_err(|e| e.to_string())?;
            Ok(it.base().distance(limit.base()))
        })
        .collect()
}

#[wasm_bindgen]
pub fn complement(a: &[f64], b: &[f64]) -> Result<Vec<f64>, JsError> {
    complement_2x2(a, b).map(Vec::from).map_err(|e| JsError::new(&e))
}

/// `[r11, r12, r22, s11, s12, s22, iterations, routeDeviation]`.
#[wasm_bindgen]
pub fn lebesgue(a: &[f64], b: &[f64]) -> Result<Vec<f64>, JsError> {
    let s = lebesgue_2x2(a, b).map_err(|e| JsError::new(&e))?;
    let mut out = Vec::with_capacity(8);
    out.extend(s.regular);
    out.extend(s.singular);
    out.push(s.iterations as f64);
    out.push(s.route_deviation);
    Ok(out)
}

#[wasm_bindgen]
pub fn convergence(a: &[f64], b: &[f64], steps: usize) -> Result<Vec<f64>, JsError> {
    convergence_2x2(a, b, steps).map_err(|e| JsError::new(&e))
}
