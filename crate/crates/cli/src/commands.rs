use antidual::completion::{check_block_psd, completion_report, schur_complement, IncompleteBlockSystem};
use antidual::error::Error;
use antidual::json::{
    functional_to_json, hermitian_to_json, matrix_to_json, parse_algebra, parse_functional, parse_hermitian,
    parse_matrix, parse_partial, parse_vector, policy_to_json, vector_to_json,
};
use antidual::kv::{krein_von_neumann, PartialPositiveOperator};
use antidual::lebesgue::{absolutely_continuous, lebesgue_decompose, mutually_singular};
use antidual::matrix::{frobenius, basis_vector, CVec};
use antidual::parallel::{parallel_difference, parallel_sum, pardiff_check, weighted_parallel_sum};
use antidual::psd::{make_psd, Psd};
use antidual::star::{
    complement_functional, gns, induced_operator, lebesgue_decompose_functional, FiniteStarAlgebra, Functional,
};
use antidual::tolerance::TolerancePolicy;
use serde_json::{json, Map, Value};

use crate::args::{AlgebraArgs, Cli, Command, CompletionArgs, KvArgs, PairArgs};
use crate::input::Sources;
use crate::{verify, Failure};

pub fn dispatch(cli: &Cli, pol: &TolerancePolicy) -> Result<Value, Failure> {
    let (name, body) = match &cli.command {
        Command::Complement(a) => ("complement", complement(a, pol)?),
        Command::Schur(a) => ("schur", schur(a, pol)?),
        Command::Kvext(a) => ("kvext", kvext(a, pol)?),
        Command::Parsum(a) => ("parsum", parsum(a, pol)?),
        Command::Pardiff(a) => ("pardiff", pardiff(a, pol)?),
        Command::Lebesgue(a) => ("lebesgue", lebesgue(a, pol)?),
        Command::AlgGns(a) => ("alg-gns", alg_gns(a, pol)?),
        Command::AlgComplement(a) => ("alg-complement", alg_complement(a, pol)?),
        Command::AlgLebesgue(a) => ("alg-lebesgue", alg_lebesgue(a, pol)?),
        Command::Verify(a) => ("verify", verify::run(a, cli.globals.seed, pol)?),
    };
    let mut report = Map::new();
    report.insert("command".into(), json!(name));
    report.insert("policy".into(), policy_to_json(pol));
    match body {
        Value::Object(fields) => report.extend(fields),
        other => {
            report.insert("result".into(), other);
        }
    }
    Ok(Value::Object(report))
}

pub fn psd_operand(v: &Value, name: &str, pol: &TolerancePolicy) -> Result<Psd, Failure> {
    let h = parse_hermitian(v).map_err(|e| Failure::Input(format!("operand {name}: {e}")))?;
    make_psd(&h, pol).map_err(|e| match e {
        Error::NotPositive { .. } => Failure::Domain(format!("operand {name}: {e}")),
        other => other.into(),
    })
}

pub fn pair_operands(src: &Sources, a: &PairArgs, pol: &TolerancePolicy) -> Result<(Psd, Psd), Failure> {
    let pa = psd_operand(&src.required("a", a.a.as_deref())?, "a", pol)?;
    let pb = psd_operand(&src.required("b", a.b.as_deref())?, "b", pol)?;
    if pa.dim() != pb.dim() {
        return Err(Failure::Input(format!("operands a and b have dimensions {} and {}", pa.dim(), pb.dim())));
    }
    Ok((pa, pb))
}

fn completion_system(src: &Sources, a: &CompletionArgs, pol: &TolerancePolicy) -> Result<IncompleteBlockSystem, Failure> {
    let pa = psd_operand(&src.required("a", a.a.as_deref())?, "a", pol)?;
    let b = parse_matrix(&src.required("b", a.b.as_deref())?).map_err(|e| Failure::Input(format!("operand b: {e}")))?;
    Ok(IncompleteBlockSystem::new(pa, b)?)
}

fn probes(src: &Sources, a: &CompletionArgs) -> Result<Vec<CVec>, Failure> {
    match src.optional("probes", a.probes.as_deref())? {
        None => Ok(Vec::new()),
        Some(Value::Array(items)) => items
            .iter()
            .map(|v| parse_vector(v).map_err(|e| Failure::Input(format!("probe: {e}"))))
            .collect(),
        Some(_) => Err(Failure::Input("probes must be an array of vectors".into())),
    }
}

fn complement(a: &CompletionArgs, pol: &TolerancePolicy) -> Result<Value, Failure> {
    let src = Sources::new(a.input.as_deref())?;
    let s = completion_system(&src, a, pol)?;
    let probes = probes(&src, a)?;
    let report = completion_report(&s, &probes, pol)?;
    let Some(ab) = &report.complement else {
        return Err(Error::NotCompletable.into());
    };
    let mut out = json!({
        "completable": report.completable,
        "rangeResidual": report.range_residual + 0.0,
        "complement": hermitian_to_json(ab.base()),
        "bestConstants": report.best_constants.iter()
            .map(|(y, m)| json!({ "probe": vector_to_json(y), "value": m }))
            .collect::<Vec<_>>(),
    });
    if let Some(c) = src.optional("c", a.c.as_deref())? {
        let c = parse_hermitian(&c).map_err(|e| Failure::Input(format!("operand c: {e}")))?;
        let block_psd = check_block_psd(s.a().base(), s.b(), &c, pol)?;
        out["blockPsd"] = json!(block_psd);
        if block_psd {
            out["schur"] = hermitian_to_json(&schur_complement(&s, &make_psd(&c, pol)?, pol)?);
        }
    }
    Ok(out)
}

fn schur(a: &CompletionArgs, pol: &TolerancePolicy) -> Result<Value, Failure> {
    let src = Sources::new(a.input.as_deref())?;
    let s = completion_system(&src, a, pol)?;
    let c = parse_hermitian(&src.required("c", a.c.as_deref())?).map_err(|e| Failure::Input(format!("operand c: {e}")))?;
    let pc = make_psd(&c, pol)?;
    let schur = schur_complement(&s, &pc, pol)?;
    Ok(json!({
        "complement": hermitian_to_json(&(&c - &schur)),
        "schur": hermitian_to_json(&schur),
        "blockPsd": true,
    }))
}

fn kvext(a: &KvArgs, pol: &TolerancePolicy) -> Result<Value, Failure> {
    let p = match (&a.v, &a.w) {
        (Some(v), Some(w)) => {
            let v = parse_matrix(&crate::input::load(v)?)?;
            let w = parse_matrix(&crate::input::load(w)?)?;
            PartialPositiveOperator::new(v, w, pol)?
        }
        (None, None) => {
            let src = Sources::new(a.input.as_deref())?;
            let doc = src
                .document()
                .ok_or_else(|| Failure::Input("kvext needs --input or both --v and --w".into()))?;
            parse_partial(doc, pol)?
        }
        _ => return Err(Failure::Input("--v and --w must be given together".into())),
    };
    let kv = krein_von_neumann(&p, pol)?;
    let residual = frobenius(&(kv.extension.matrix() * p.domain_basis() - p.values()));
    Ok(json!({
        "ambientDim": p.ambient_dim(),
        "domainDim": p.domain_dim(),
        "extensible": true,
        "extension": hermitian_to_json(kv.extension.base()),
        "gram": hermitian_to_json(kv.gram.base()),
        "extensionResidual": residual,
    }))
}

fn parsum(a: &PairArgs, pol: &TolerancePolicy) -> Result<Value, Failure> {
    let src = Sources::new(a.input.as_deref())?;
    let (pa, pb) = pair_operands(&src, a, pol)?;
    let weight = match a.weight {
        Some(w) => Some(w),
        None => match src.document().and_then(|d| d.get("weight")) {
            None => None,
            Some(w) => Some(w.as_f64().ok_or_else(|| Failure::Input("weight must be a number".into()))?),
        },
    };
    let value = match weight {
        Some(n) => weighted_parallel_sum(&pa, &pb, n, pol)?,
        None => parallel_sum(&pa, &pb, pol)?,
    };
    Ok(json!({
        "weight": weight,
        "parallelSum": hermitian_to_json(value.base()),
    }))
}

fn pardiff(a: &PairArgs, pol: &TolerancePolicy) -> Result<Value, Failure> {
    let src = Sources::new(a.input.as_deref())?;
    let (pa, pb) = pair_operands(&src, a, pol)?;
    if let Err(why) = pardiff_check(&pb, &pa, pol)? {
        return Err(Error::NotDefined(why).into());
    }
    let value = parallel_difference(&pb, &pa, pol)?;
    Ok(json!({ "parallelDifference": hermitian_to_json(value.base()) }))
}

fn lebesgue(a: &PairArgs, pol: &TolerancePolicy) -> Result<Value, Failure> {
    let src = Sources::new(a.input.as_deref())?;
    let (pa, pb) = pair_operands(&src, a, pol)?;
    let split = lebesgue_decompose(&pa, &pb, pol)?;
    let r = &split.routes;
    Ok(json!({
        "regular": hermitian_to_json(split.regular.base()),
        "singular": hermitian_to_json(split.singular.base()),
        "absolutelyContinuous": absolutely_continuous(&pa, &pb, pol)?,
        "mutuallySingular": mutually_singular(&pa, &pb, pol)?,
        "routes": {
            "limit": hermitian_to_json(&r.limit),
            "pardiff": hermitian_to_json(&r.pardiff),
            "complement": hermitian_to_json(&r.complement),
            "limitVsPardiff": r.limit_vs_pardiff,
            "limitVsComplement": r.limit_vs_complement,
            "pardiffVsComplement": r.pardiff_vs_complement,
            "threshold": r.threshold,
            "converged": r.converged,
        },
        "iterations": r.iterations,
    }))
}

fn algebra_operands(
    a: &AlgebraArgs,
    need_g: bool,
    pol: &TolerancePolicy,
) -> Result<(FiniteStarAlgebra, Functional, Option<Functional>), Failure> {
    let src = Sources::new(a.input.as_deref())?;
    let alg = parse_algebra(&src.required("algebra", a.algebra.as_deref())?, pol)?;
    let functional = |name: &str, file| -> Result<Functional, Failure> {
        let f = parse_functional(&src.required(name, file)?)?;
        if f.len() != alg.dim() {
            return Err(Failure::Input(format!(
                "functional {name} has {} values, the algebra has dimension {}",
                f.len(),
                alg.dim()
            )));
        }
        Ok(f)
    };
    let f = functional("f", a.f.as_deref())?;
    let g = if need_g { Some(functional("g", a.g.as_deref())?) } else { None };
    Ok((alg, f, g))
}

fn alg_gns(a: &AlgebraArgs, pol: &TolerancePolicy) -> Result<Value, Failure> {
    let (alg, f, _) = algebra_operands(a, false, pol)?;
    let t = gns(&alg, &f, pol)?;
    let k = alg.dim();
    Ok(json!({
        "hilbertDim": t.hilbert_dim,
        "gram": hermitian_to_json(t.gram.base()),
        "repMatrices": t.rep.iter().map(matrix_to_json).collect::<Vec<_>>(),
        "cyclic": vector_to_json(&t.cyclic),
        "cyclicNormSq": t.cyclic_norm_sq,
        "lambdas": (0..k).map(|i| t.lambda(&basis_vector(k, i))).collect::<Vec<_>>(),
    }))
}

fn alg_complement(a: &AlgebraArgs, pol: &TolerancePolicy) -> Result<Value, Failure> {
    let (alg, f, g) = algebra_operands(a, true, pol)?;
    let g = g.expect("requested");
    let h = complement_functional(&alg, &f, &g, pol)?;
    Ok(json!({
        "complement": functional_to_json(&h),
        "inducedOperator": hermitian_to_json(&induced_operator(&alg, &h)?),
    }))
}

fn alg_lebesgue(a: &AlgebraArgs, pol: &TolerancePolicy) -> Result<Value, Failure> {
    let (alg, f, g) = algebra_operands(a, true, pol)?;
    let g = g.expect("requested");
    let split = lebesgue_decompose_functional(&alg, &f, &g, pol)?;
    Ok(json!({
        "regular": functional_to_json(&split.regular),
        "singular": functional_to_json(&split.singular),
        "diagnostic": split.diagnostic.as_ref().map(functional_to_json),
        "deviation": split.deviation,
    }))
}
