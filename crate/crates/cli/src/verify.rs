//! Oracle cross-checks of the closed-form kernels.

use antidual::completion::{complement, is_completable, IncompleteBlockSystem};
use antidual::json::parse_matrix;
use antidual::kv::{check_extensibility, krein_von_neumann, PartialPositiveOperator};
use antidual::matrix::{CMat, CVec, Hermitian};
use antidual::oracle::{oracle_inf, oracle_sup, InfObjective, OracleConfig, OracleEstimate, SupObjective};
use antidual::parallel::{parallel_difference, parallel_sum, pardiff_exists};
use antidual::psd::{make_psd, Psd};
use antidual::sample::{self, SampleRng};
use antidual::tolerance::TolerancePolicy;
use serde_json::{json, Value};

use crate::args::VerifyArgs;
use crate::commands::psd_operand;
use crate::input::Sources;
use crate::Failure;

const OBJECTIVES: [&str; 7] = [
    "complement-constrained",
    "complement-pair",
    "complement-selfadjoint",
    "parsum-inf",
    "pardiff",
    "kv-constrained",
    "kv-pair",
];

#[derive(Default)]
struct Tally {
    checked: usize,
    converged: usize,
    infinite: usize,
    max_deviation: f64,
    verdict_mismatches: usize,
    soundness_violations: usize,
}

impl Tally {
    /// `kernel` is `None` when the closed form reports the value as infinite.
    fn record(&mut self, kernel: Option<f64>, est: &OracleEstimate, inf: bool, pol: &TolerancePolicy) {
        self.checked += 1;
        match (kernel, est.value.finite()) {
            (None, None) => self.infinite += 1,
            (Some(k), Some(v)) => {
                let unsound = if inf { v < k - pol.eq_tol } else { v > k + pol.eq_tol };
                if unsound {
                    self.soundness_violations += 1;
                }
                if est.converged {
                    self.converged += 1;
                    self.max_deviation = self.max_deviation.max((k - v).abs());
                }
            }
            _ => self.verdict_mismatches += 1,
        }
    }

    fn passed(&self, tol: f64) -> bool {
        self.verdict_mismatches == 0 && self.soundness_violations == 0 && self.max_deviation <= tol
    }

    fn to_json(&self, name: &str, tol: f64) -> Value {
        json!({
            "objective": name,
            "checked": self.checked,
            "converged": self.converged,
            "infinite": self.infinite,
            "maxDeviation": self.max_deviation,
            "verdictMismatches": self.verdict_mismatches,
            "soundnessViolations": self.soundness_violations,
            "passed": self.passed(tol),
        })
    }
}

struct Checker<'p> {
    pol: &'p TolerancePolicy,
    cfg: OracleConfig,
    tallies: Vec<Tally>,
}

impl Checker<'_> {
    fn sup(&mut self, slot: usize, obj: &SupObjective<'_>, y: &CVec, kernel: Option<f64>, seed: u64) -> Result<(), Failure> {
        let cfg = OracleConfig { seed, ..self.cfg };
        let est = oracle_sup(obj, y, &cfg, self.pol)?;
        self.tallies[slot].record(kernel, &est, false, self.pol);
        Ok(())
    }

    fn inf(&mut self, slot: usize, obj: &InfObjective<'_>, y: &CVec, kernel: f64, seed: u64) -> Result<(), Failure> {
        let cfg = OracleConfig { seed, ..self.cfg };
        let est = oracle_inf(obj, y, &cfg, self.pol)?;
        self.tallies[slot].record(Some(kernel), &est, true, self.pol);
        Ok(())
    }

    fn complement_forms(&mut self, a: &Psd, b: &CMat, y: &CVec, seed: u64) -> Result<(), Failure> {
        let s = IncompleteBlockSystem::new(a.clone(), b.clone())?;
        let kernel = match is_completable(&s, self.pol) {
            true => Some(complement(&s, self.pol)?.base().quad(y)),
            false => None,
        };
        let ah = a.base();
        self.sup(0, &SupObjective::ComplementConstrained { a: ah, b }, y, kernel, seed)?;
        self.sup(1, &SupObjective::ComplementPair { a: ah, b }, y, kernel, seed)?;
        if b.is_square() && b.nrows() == a.dim() {
            if let Ok(bh) = Hermitian::new(b.clone()) {
                if make_psd(&bh, self.pol).is_ok() {
                    self.sup(2, &SupObjective::ComplementSelfAdjoint { a: ah, b: &bh }, y, kernel, seed)?;
                }
            }
        }
        Ok(())
    }

    fn parallel_forms(&mut self, a: &Psd, b: &Psd, y: &CVec, seed: u64) -> Result<(), Failure> {
        let sum = parallel_sum(a, b, self.pol)?.base().quad(y);
        self.inf(3, &InfObjective::ParallelSum { a: a.base(), b: b.base() }, y, sum, seed)?;
        let diff = match pardiff_exists(b, a, self.pol)? {
            true => Some(parallel_difference(b, a, self.pol)?.base().quad(y)),
            false => None,
        };
        self.sup(4, &SupObjective::ParallelDifference { b: b.base(), a: a.base() }, y, diff, seed)
    }

    fn kv_forms(&mut self, p: &PartialPositiveOperator, y: &CVec, seed: u64) -> Result<(), Failure> {
        let kernel = match check_extensibility(p, self.pol).extensible {
            true => Some(krein_von_neumann(p, self.pol)?.extension.base().quad(y)),
            false => None,
        };
        let (v, w) = (p.domain_basis(), p.values());
        self.sup(5, &SupObjective::KvConstrained { v, w }, y, kernel, seed)?;
        self.sup(6, &SupObjective::KvPair { v, w }, y, kernel, seed)
    }
}

fn psd_of(h: &Hermitian, pol: &TolerancePolicy) -> Psd {
    make_psd(h, pol).expect("sampled operators are positive")
}

/// Subtracted operand for `B ÷ A`: a mix of existing and undefined cases.
fn pardiff_operand(a: &Psd, rng: &mut SampleRng, pol: &TolerancePolicy) -> Result<Psd, Failure> {
    let n = a.dim();
    Ok(match sample::index(4, rng) {
        0 => parallel_sum(a, &psd_of(&sample::psd_any_rank(n, rng), pol), pol)?,
        1 => psd_of(&a.base().scaled(sample::uniform(0.0, 0.9, rng)), pol),
        2 => a.clone(),
        _ => psd_of(&sample::psd_any_rank(n, rng), pol),
    })
}

/// Restriction of a random positive matrix, or with `broken` a partial
/// operator that maps a zero-seminorm domain vector to a nonzero value.
fn partial_operator(broken: bool, max_dim: usize, rng: &mut SampleRng, pol: &TolerancePolicy) -> PartialPositiveOperator {
    loop {
        let n = sample::dim(max_dim, rng);
        let k = 1 + sample::index(n, rng);
        let m = sample::psd_any_rank(n, rng);
        let mut v = sample::matrix(n, k, rng);
        if !broken {
            if let Ok(p) = PartialPositiveOperator::restrict(&m, v, pol) {
                return p;
            }
            continue;
        }
        let kernel = psd_of(&m, pol).kernel_basis();
        if kernel.ncols() == 0 || k == n {
            continue;
        }
        v.set_column(0, &kernel.column(0));
        let mut w = m.matrix() * &v;
        let q = v.clone().qr().q();
        let z = sample::vector(n, rng);
        let w0 = &z - &q * (q.adjoint() * &z);
        w.set_column(0, &(w.column(0) + w0));
        if let Ok(p) = PartialPositiveOperator::new(v, w, pol) {
            return p;
        }
    }
}

pub fn run(args: &VerifyArgs, seed: u64, pol: &TolerancePolicy) -> Result<Value, Failure> {
    if args.count == 0 || args.max_dim == 0 || args.starts == 0 {
        return Err(Failure::Input("--count, --max-dim and --starts must be positive".into()));
    }
    let mut checker = Checker {
        pol,
        cfg: OracleConfig {
            starts: args.starts,
            budget: args.budget,
            seed,
        },
        tallies: (0..OBJECTIVES.len()).map(|_| Tally::default()).collect(),
    };
    let mut rng = sample::rng(seed);
    let supplied = args.input.is_some() || args.a.is_some() || args.b.is_some();
    if supplied {
        let src = Sources::new(args.input.as_deref())?;
        let a = psd_operand(&src.required("a", args.a.as_deref())?, "a", pol)?;
        let b = parse_matrix(&src.required("b", args.b.as_deref())?).map_err(|e| Failure::Input(format!("operand b: {e}")))?;
        let pb = match Hermitian::new(b.clone()) {
            Ok(h) if b.nrows() == a.dim() => make_psd(&h, pol).ok(),
            _ => None,
        };
        for i in 0..args.count {
            let y = sample::vector(b.nrows(), &mut rng);
            let s = seed.wrapping_add(i as u64);
            checker.complement_forms(&a, &b, &y, s)?;
            if let Some(pb) = &pb {
                checker.parallel_forms(&a, pb, &y, s)?;
            }
        }
    } else {
        for i in 0..args.count {
            let s = seed.wrapping_add(i as u64);
            let n1 = sample::dim(args.max_dim, &mut rng);
            let n2 = sample::dim(args.max_dim, &mut rng);
            let a = psd_of(&sample::psd_any_rank(n1, &mut rng), pol);
            let mut b = sample::matrix(n2, n1, &mut rng);
            if i % 2 == 0 {
                b *= a.range_projector().matrix();
            }
            let y = sample::vector(n2, &mut rng);
            checker.complement_forms(&a, &b, &y, s)?;

            let n = sample::dim(args.max_dim, &mut rng);
            let a = psd_of(&sample::psd_any_rank(n, &mut rng), pol);
            let b = psd_of(&sample::psd_any_rank(n, &mut rng), pol);
            let y = sample::vector(n, &mut rng);
            checker.complement_forms(&a, b.matrix(), &y, s)?;
            let sum = parallel_sum(&a, &b, pol)?.base().quad(&y);
            checker.inf(3, &InfObjective::ParallelSum { a: a.base(), b: b.base() }, &y, sum, s)?;
            let d = pardiff_operand(&a, &mut rng, pol)?;
            let diff = match pardiff_exists(&d, &a, pol)? {
                true => Some(parallel_difference(&d, &a, pol)?.base().quad(&y)),
                false => None,
            };
            checker.sup(4, &SupObjective::ParallelDifference { b: d.base(), a: a.base() }, &y, diff, s)?;

            let p = partial_operator(i % 3 == 0, args.max_dim, &mut rng, pol);
            let y = sample::vector(p.ambient_dim(), &mut rng);
            checker.kv_forms(&p, &y, s)?;
        }
    }
    let tol = 10.0 * pol.eq_tol;
    let results: Vec<Value> = OBJECTIVES
        .iter()
        .zip(&checker.tallies)
        .filter(|(_, t)| t.checked > 0)
        .map(|(name, t)| t.to_json(name, tol))
        .collect();
    let passed = checker.tallies.iter().all(|t| t.passed(tol));
    Ok(json!({
        "mode": if supplied { "supplied" } else { "random" },
        "count": args.count,
        "seed": seed,
        "oracle": { "starts": args.starts, "budget": args.budget },
        "tolerance": tol,
        "objectives": results,
        "passed": passed,
    }))
}
