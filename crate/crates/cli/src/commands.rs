use lorentz::{
    certify, classify_membership, decompose, difference_family, family_bound, gamma_inverse_at, gamma_of, lambda_of,
    lorentz_norm_pth, min_equinorm_index, seminorm_pth, Counterexample, EquinormOutcome, Error, Family64, FamilyBound,
    Gamma, MembershipVerdict, Method, Sequence64, Verdict, Weights64,
};
use serde_json::{json, Value};

use crate::args::{FamilyArgs, GammaArgs, IndexedArgs, LambdaArgs, Numeric, SelftestArgs, SeqArgs};
use crate::error::CliError;
use crate::report::{bounds, witness, Bounds, Findings, Outcome};
use crate::selftest;
use crate::spec::{self, FamilyDoc, SequenceDoc, WeightDoc};

struct Loaded<S> {
    target: S,
    doc: Value,
    spec: String,
}

fn load_sequence(source: &str) -> Result<Loaded<Sequence64>, CliError> {
    let doc: SequenceDoc = spec::load(source)?;
    let target = doc.build("")?;
    let canonical = SequenceDoc::from_core(&target);
    Ok(Loaded {
        target,
        doc: serde_json::to_value(&canonical).expect("spec documents serialize"),
        spec: spec::to_pretty(&canonical),
    })
}

fn load_family(source: &str) -> Result<Loaded<Family64>, CliError> {
    let doc: FamilyDoc = spec::load(source)?;
    let target = doc.build("")?;
    let canonical = FamilyDoc::from_core(&target);
    Ok(Loaded {
        target,
        doc: serde_json::to_value(&canonical).expect("spec documents serialize"),
        spec: spec::to_pretty(&canonical),
    })
}

fn load_weights(numeric: &Numeric) -> Result<Weights64, CliError> {
    match &numeric.w_file {
        Some(source) => spec::load::<WeightDoc>(source)?.build(""),
        None => spec::weight_shorthand(&numeric.w),
    }
}

fn numeric_inputs(numeric: &Numeric, w: &Weights64) -> Value {
    json!({
        "p": numeric.p,
        "w": WeightDoc::from_core(w),
        "tol": numeric.tol,
        "budget": numeric.budget,
    })
}

fn inputs(command: &str, fields: Value) -> Value {
    let mut v = json!({ "command": command });
    if let (Value::Object(target), Value::Object(extra)) = (&mut v, fields) {
        target.extend(extra);
    }
    v
}

/// Verdict for an error raised while evaluating a sequence.
fn on_error(e: Error, inputs: Value) -> Result<Findings, CliError> {
    match e {
        Error::NotSummable { reason } => {
            let mut f = Findings::new(Outcome::Negative, "NotMember", inputs);
            f.details = json!({ "reason": reason });
            Ok(f)
        }
        Error::HorizonExhausted { .. } | Error::BudgetExhausted { .. } | Error::Inconclusive { .. } => {
            let mut f = Findings::new(Outcome::Undecided, "Inconclusive", inputs);
            f.details = json!({ "reason": e.to_string() });
            Ok(f)
        }
        other => Err(other.into()),
    }
}

pub fn norm(args: &SeqArgs) -> Result<Findings, CliError> {
    let seq = load_sequence(&args.seq)?;
    let w = load_weights(&args.numeric)?;
    let n = &args.numeric;
    let inputs = inputs("norm", json!({ "seq": seq.doc, "numeric": numeric_inputs(n, &w) }));
    let mut f = match lorentz_norm_pth(&seq.target, n.p, &w, n.tol, n.budget) {
        Ok(x) => {
            let mut f = Findings::new(Outcome::Success, "ok", inputs);
            f.norm_pth = Some(Bounds::from(x));
            f.details = json!({ "norm": { "lo": x.lo.powf(n.p.recip()), "hi": x.hi.powf(n.p.recip()) } });
            f
        }
        Err(e) => on_error(e, inputs)?,
    };
    f.spec = Some(seq.spec);
    Ok(f)
}

pub fn member(args: &SeqArgs) -> Result<Findings, CliError> {
    let seq = load_sequence(&args.seq)?;
    let w = load_weights(&args.numeric)?;
    let n = &args.numeric;
    let inputs = inputs("member", json!({ "seq": seq.doc, "numeric": numeric_inputs(n, &w) }));
    let mut f = match classify_membership(&seq.target, n.p, &w, n.budget)? {
        MembershipVerdict::Member { norm_pth } => {
            let mut f = Findings::new(Outcome::Success, "Member", inputs);
            f.norm_pth = Some(norm_pth.into());
            f
        }
        MembershipVerdict::NotMember { reason } => {
            let mut f = Findings::new(Outcome::Negative, "NotMember", inputs);
            f.details = json!({ "reason": reason });
            f
        }
        MembershipVerdict::Inconclusive { partial_sum, horizon } => {
            let mut f = Findings::new(Outcome::Undecided, "Inconclusive", inputs);
            f.details = json!({ "partial_sum": partial_sum, "horizon": horizon });
            f
        }
    };
    f.spec = Some(seq.spec);
    Ok(f)
}

pub fn seminorm(args: &IndexedArgs) -> Result<Findings, CliError> {
    let seq = load_sequence(&args.target.seq)?;
    let w = load_weights(&args.target.numeric)?;
    let n = &args.target.numeric;
    let inputs = inputs(
        "seminorm",
        json!({ "seq": seq.doc, "numeric": numeric_inputs(n, &w), "i": args.indices }),
    );
    let mut f = Findings::new(Outcome::Success, "ok", inputs);
    for &i in &args.indices {
        let s = seminorm_pth(&seq.target, n.p, &w, i)?;
        f.table.push(json!({ "i": i, "seminorm_pth": s }));
    }
    f.spec = Some(seq.spec);
    Ok(f)
}

pub fn decomposition(args: &IndexedArgs) -> Result<Findings, CliError> {
    let seq = load_sequence(&args.target.seq)?;
    let w = load_weights(&args.target.numeric)?;
    let n = &args.target.numeric;
    let inputs = inputs(
        "decompose",
        json!({ "seq": seq.doc, "numeric": numeric_inputs(n, &w), "i": args.indices }),
    );
    let mut rows = Vec::new();
    let mut norm_pth = None;
    for &i in &args.indices {
        let d = match decompose(&seq.target, n.p, &w, i, n.tol, n.budget) {
            Ok(d) => d,
            Err(e) => {
                let mut f = on_error(e, inputs)?;
                f.spec = Some(seq.spec);
                return Ok(f);
            }
        };
        norm_pth = Some(Bounds::from(d.norm_pth));
        rows.push(json!({
            "i": d.i,
            "seminorm": bounds(d.seminorm),
            "shifted_tail": bounds(d.shifted_tail),
            "head": bounds(d.head),
            "head_complement": bounds(d.head_complement),
            "weight_head": bounds(d.weight_head),
            "weight_complement": bounds(d.weight_complement),
            "tail_norm": bounds(d.tail_norm),
        }));
    }
    let mut f = Findings::new(Outcome::Success, "ok", inputs);
    f.norm_pth = norm_pth;
    f.table = rows;
    f.spec = Some(seq.spec);
    Ok(f)
}

fn member_spec(family: &Family64, id: lorentz::MemberId) -> Option<Value> {
    family
        .member(id)
        .ok()
        .map(|a| serde_json::to_value(SequenceDoc::from_core(&a)).expect("spec documents serialize"))
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Precompact => "Precompact",
        Verdict::NotPrecompact => "NotPrecompact",
        Verdict::Inconclusive => "Inconclusive",
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::SeminormGap => "SeminormGap",
        Method::TailCriterion => "TailCriterion",
        Method::Both => "Both",
    }
}

pub fn certification(args: &FamilyArgs) -> Result<Findings, CliError> {
    let fam = load_family(&args.family)?;
    let w = load_weights(&args.numeric)?;
    let n = &args.numeric;
    let inputs = inputs(
        "certify",
        json!({ "family": fam.doc, "numeric": numeric_inputs(n, &w), "eps": args.eps }),
    );
    let c = certify(&fam.target, n.p, &w, &args.eps, n.tol, n.budget)?;
    let outcome = match c.verdict {
        Verdict::Precompact => Outcome::Success,
        Verdict::NotPrecompact => Outcome::Negative,
        Verdict::Inconclusive => Outcome::Undecided,
    };
    let mut f = Findings::new(outcome, verdict_name(c.verdict), inputs);
    f.table = c
        .equinorm_table
        .iter()
        .map(|&(eps, index)| {
            let tail = c.tail_table.iter().find(|(e, _)| *e == eps).map(|&(_, k)| k);
            json!({ "eps": eps, "seminorm_gap_index": index, "tail_index": tail })
        })
        .collect();
    let counterexample = match &c.counterexample {
        None => Value::Null,
        Some(Counterexample::Unbounded { reason }) => json!({ "kind": "unbounded", "reason": reason }),
        Some(Counterexample::NotMember { reason }) => json!({ "kind": "not_member", "reason": reason }),
        Some(Counterexample::NotEquinormed { eps, witness: wit }) => {
            f.witness = Some(witness(wit, member_spec(&fam.target, wit.member)));
            json!({ "kind": "not_equinormed", "eps": eps })
        }
    };
    f.details = json!({
        "bound": c.bound.map(bounds),
        "method": method_name(c.method),
        "cross_check_agreement": c.cross_check_agreement,
        "tail_table": c.tail_table.iter().map(|&(eps, k)| json!({ "eps": eps, "index": k })).collect::<Vec<_>>(),
        "counterexample": counterexample,
        "diagnostics": c.diagnostics,
    });
    f.spec = Some(fam.spec);
    Ok(f)
}

pub fn lambda(args: &LambdaArgs) -> Result<Findings, CliError> {
    let w = load_weights(&args.numeric)?;
    let n = &args.numeric;
    let (bound, source, spec) = match (&args.m, &args.family) {
        (Some(m), _) => (*m, json!({ "m": m }), None),
        (None, Some(source)) => {
            let fam = load_family(source)?;
            match family_bound(&fam.target, n.p, &w, n.tol, n.budget) {
                Ok(FamilyBound::Bounded(b)) => (b.hi, json!({ "family": fam.doc }), Some(fam.spec)),
                Ok(FamilyBound::Unbounded { reason }) => {
                    let inputs = inputs("lambda", json!({ "family": fam.doc, "numeric": numeric_inputs(n, &w) }));
                    let mut f = Findings::new(Outcome::Negative, "Unbounded", inputs);
                    f.details = json!({ "reason": reason });
                    f.spec = Some(fam.spec);
                    return Ok(f);
                }
                Err(e) => {
                    let inputs = inputs("lambda", json!({ "family": fam.doc, "numeric": numeric_inputs(n, &w) }));
                    let mut f = on_error(e, inputs)?;
                    f.spec = Some(fam.spec);
                    return Ok(f);
                }
            }
        }
        (None, None) => return Err(CliError::MissingFlag("m")),
    };
    let inputs = inputs(
        "lambda",
        json!({ "bound": source, "d": args.d, "numeric": numeric_inputs(n, &w) }),
    );
    let mut f = Findings::new(Outcome::Success, "ok", inputs);
    for &d in &args.d {
        f.table.push(json!({ "d": d, "lambda": lambda_of(bound, d, n.p, &w)? }));
    }
    f.details = json!({ "m": bound });
    f.spec = spec;
    Ok(f)
}

pub fn gamma(args: &GammaArgs) -> Result<Findings, CliError> {
    let fam = load_family(&args.family)?;
    let inputs = inputs("gamma", json!({ "family": fam.doc, "d": args.d, "n": args.n }));
    let mut uniform = true;
    let mut table = Vec::new();
    for &d in &args.d {
        let value = match gamma_of(&fam.target, d)? {
            Gamma::Finite(k) => json!(k),
            Gamma::Infinite => {
                uniform = false;
                json!("infinite")
            }
        };
        table.push(json!({ "d": d, "gamma": value }));
    }
    for &k in &args.n {
        let value = match gamma_inverse_at(&fam.target, k) {
            Ok(x) => json!(x),
            Err(Error::NotUniform) => {
                uniform = false;
                Value::Null
            }
            Err(e) => return Err(e.into()),
        };
        table.push(json!({ "n": k, "gamma_inverse": value }));
    }
    let mut f = if uniform {
        Findings::new(Outcome::Success, "ok", inputs)
    } else {
        Findings::new(Outcome::Negative, "NotUniform", inputs)
    };
    f.table = table;
    f.spec = Some(fam.spec);
    Ok(f)
}

pub fn diff_family(args: &FamilyArgs) -> Result<Findings, CliError> {
    let fam = load_family(&args.family)?;
    let w = load_weights(&args.numeric)?;
    let n = &args.numeric;
    let inputs = inputs(
        "diff-family",
        json!({ "family": fam.doc, "numeric": numeric_inputs(n, &w), "eps": args.eps }),
    );
    let diffs = difference_family(&fam.target)?;
    let index = |family: &Family64, eps: f64| -> Result<Value, CliError> {
        Ok(match min_equinorm_index(family, n.p, &w, eps, n.budget) {
            Ok(EquinormOutcome::Index { index, gap }) => json!({ "index": index, "gap": bounds(gap) }),
            Ok(EquinormOutcome::NotEquinormed(wit)) => json!({ "not_equinormed": witness(&wit, None) }),
            Err(e @ (Error::HorizonExhausted { .. } | Error::BudgetExhausted { .. })) => json!({ "inconclusive": e.to_string() }),
            Err(e) => return Err(e.into()),
        })
    };
    let mut f = Findings::new(Outcome::Success, "ok", inputs);
    for &eps in &args.eps {
        f.table.push(json!({
            "eps": eps,
            "family": index(&fam.target, eps)?,
            "differences": index(&diffs, eps)?,
        }));
    }
    let canonical = FamilyDoc::from_core(&diffs);
    let count = match &diffs {
        Family64::Explicit { members } => members.len(),
        _ => 0,
    };
    f.details = json!({ "members": count, "differences": canonical });
    f.spec = Some(spec::to_pretty(&canonical));
    Ok(f)
}

pub fn self_test(args: &SelftestArgs) -> Findings {
    let suites = selftest::run_all(args.seed, args.trials);
    let passed = suites.iter().all(|s| s.passed());
    let inputs = inputs("selftest", json!({ "seed": args.seed, "trials": args.trials }));
    let mut f = if passed {
        Findings::new(Outcome::Success, "pass", inputs)
    } else {
        Findings::new(Outcome::Negative, "fail", inputs)
    };
    f.seed = Some(args.seed);
    f.table = suites
        .iter()
        .map(|s| {
            json!({
                "suite": s.name,
                "trials": s.trials,
                "checks": s.checks,
                "failures": s.failures,
                "first_failure": s.first_failure,
            })
        })
        .collect();
    f
}
