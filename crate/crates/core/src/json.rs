//! JSON formats for matrices, partial operators, algebras and functionals.
//!
//! A matrix is `{"dim": n, "entries": [[[re, im], …], …]}` (row-major), or the
//! real shorthand `[[x, …], …]`. Rectangular matrices use `"rows"`/`"cols"`
//! in place of `"dim"`. Entries may be given as `[re, im]` or as a bare real.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::kv::PartialPositiveOperator;
use crate::matrix::{CMat, CVec, Hermitian, C64};
use crate::star::{FiniteStarAlgebra, Functional};
use crate::tolerance::TolerancePolicy;

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn number(v: &Value, what: &str) -> Result<f64> {
    let x = v.as_f64().ok_or_else(|| bad(format!("{what}: expected a number, found {v}")))?;
    if !x.is_finite() {
        return Err(bad(format!("{what}: non-finite number")));
    }
    Ok(x)
}

fn scalar(v: &Value, what: &str) -> Result<C64> {
    match v {
        Value::Array(pair) if pair.len() == 2 => {
            Ok(C64::new(number(&pair[0], what)?, number(&pair[1], what)?))
        }
        Value::Number(_) => Ok(C64::new(number(v, what)?, 0.0)),
        _ => Err(bad(format!("{what}: expected [re, im] or a number, found {v}"))),
    }
}

fn rows_of(v: &Value, what: &str) -> Result<CMat> {
    let rows = v.as_array().ok_or_else(|| bad(format!("{what}: expected an array of rows")))?;
    let ncols = rows
        .first()
        .map(|r| r.as_array().map(|r| r.len()).ok_or_else(|| bad(format!("{what}: row is not an array"))))
        .transpose()?
        .unwrap_or(0);
    let mut m = CMat::zeros(rows.len(), ncols);
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| bad(format!("{what}: row {i} is not an array")))?;
        if row.len() != ncols {
            return Err(bad(format!("{what}: row {i} has {} entries, expected {ncols}", row.len())));
        }
        for (j, x) in row.iter().enumerate() {
            m[(i, j)] = scalar(x, what)?;
        }
    }
    Ok(m)
}

fn usize_field(obj: &Value, key: &str, what: &str) -> Result<Option<usize>> {
    match obj.get(key) {
        None => Ok(None),
        Some(v) => v
            .as_u64()
            .map(|n| Some(n as usize))
            .ok_or_else(|| bad(format!("{what}: \"{key}\" must be a nonnegative integer"))),
    }
}

/// Parse any matrix (square or rectangular).
pub fn parse_matrix(v: &Value) -> Result<CMat> {
    let what = "matrix";
    match v {
        Value::Array(_) => rows_of(v, what),
        Value::Object(_) => {
            let entries = v.get("entries").ok_or_else(|| bad("matrix: missing \"entries\""))?;
            let m = rows_of(entries, what)?;
            let dim = usize_field(v, "dim", what)?;
            let rows = usize_field(v, "rows", what)?.or(dim);
            let cols = usize_field(v, "cols", what)?.or(dim);
            let (r, c) = (rows.unwrap_or(m.nrows()), cols.unwrap_or(m.ncols()));
            // a declared shape with no rows means an empty r×c matrix
            if m.nrows() == 0 && r > 0 && c == 0 {
                return Ok(CMat::zeros(r, 0));
            }
            if m.nrows() == 0 && r == 0 {
                return Ok(CMat::zeros(0, c));
            }
            if m.shape() != (r, c) {
                return Err(Error::dims(
                    "matrix entries",
                    format!("{r}x{c}"),
                    format!("{}x{}", m.nrows(), m.ncols()),
                ));
            }
            Ok(m)
        }
        _ => Err(bad("matrix: expected an object or an array of rows")),
    }
}

pub fn parse_hermitian(v: &Value) -> Result<Hermitian> {
    Hermitian::new(parse_matrix(v)?)
}

pub fn parse_vector(v: &Value) -> Result<CVec> {
    let items = v.as_array().ok_or_else(|| bad("vector: expected an array"))?;
    let values: Result<Vec<C64>> = items.iter().map(|x| scalar(x, "vector")).collect();
    Ok(CVec::from_vec(values?))
}

/// `[re, im]`, with negative zeros written as `0`.
fn complex_to_json(z: C64) -> Value {
    json!([z.re + 0.0, z.im + 0.0])
}

fn entries(m: &CMat) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| complex_to_json(m[(i, j)])).collect()))
            .collect(),
    )
}

/// `{"dim", "entries"}` for square input, `{"rows", "cols", "entries"}` otherwise.
pub fn matrix_to_json(m: &CMat) -> Value {
    if m.is_square() {
        json!({ "dim": m.nrows(), "entries": entries(m) })
    } else {
        json!({ "rows": m.nrows(), "cols": m.ncols(), "entries": entries(m) })
    }
}

pub fn hermitian_to_json(h: &Hermitian) -> Value {
    matrix_to_json(h.matrix())
}

pub fn vector_to_json(v: &CVec) -> Value {
    Value::Array(v.iter().map(|z| complex_to_json(*z)).collect())
}

pub fn parse_partial(v: &Value, pol: &TolerancePolicy) -> Result<PartialPositiveOperator> {
    let what = "partial operator";
    let basis = parse_matrix(v.get("domainBasis").ok_or_else(|| bad("partial operator: missing \"domainBasis\""))?)?;
    let values = parse_matrix(v.get("values").ok_or_else(|| bad("partial operator: missing \"values\""))?)?;
    if let Some(n) = usize_field(v, "ambientDim", what)? {
        if basis.nrows() != n {
            return Err(Error::dims("partial operator: ambientDim", n, basis.nrows()));
        }
    }
    PartialPositiveOperator::new(basis, values, pol)
}

pub fn partial_to_json(p: &PartialPositiveOperator) -> Value {
    json!({
        "ambientDim": p.ambient_dim(),
        "domainBasis": matrix_to_json(p.domain_basis()),
        "values": matrix_to_json(p.values()),
    })
}

pub fn parse_algebra(v: &Value, pol: &TolerancePolicy) -> Result<FiniteStarAlgebra> {
    let what = "algebra";
    let items = v
        .get("basis")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("algebra: missing \"basis\" array"))?;
    let basis: Vec<CMat> = items.iter().map(parse_matrix).collect::<Result<_>>()?;
    let env_dim = match usize_field(v, "envDim", what)? {
        Some(d) => d,
        None => basis.first().map_or(0, |b| b.nrows()),
    };
    let alg = FiniteStarAlgebra::new(env_dim, basis, pol)?;
    match v.get("unital").map(|u| u.as_bool().ok_or_else(|| bad("algebra: \"unital\" must be a boolean"))) {
        Some(Err(e)) => Err(e),
        Some(Ok(true)) if !alg.is_unital() => Err(bad("algebra is declared unital but has no unit")),
        Some(Ok(false)) => Ok(alg.without_unit()),
        _ => Ok(alg),
    }
}

pub fn algebra_to_json(alg: &FiniteStarAlgebra) -> Value {
    json!({
        "envDim": alg.env_dim(),
        "basis": alg.basis().iter().map(matrix_to_json).collect::<Vec<_>>(),
        "unital": alg.is_unital(),
    })
}

pub fn parse_functional(v: &Value) -> Result<Functional> {
    let values = match v {
        Value::Object(_) => v.get("values").ok_or_else(|| bad("functional: missing \"values\""))?,
        _ => v,
    };
    Ok(Functional::new(parse_vector(values)?))
}

pub fn functional_to_json(f: &Functional) -> Value {
    json!({ "values": vector_to_json(f.values()) })
}

pub fn policy_to_json(pol: &TolerancePolicy) -> Value {
    serde_json::to_value(pol).expect("policy serializes")
}
