use std::cell::Cell;
use std::fmt;
use std::fs;
use std::path::PathBuf;

use repcount::engine::{check_degree_monic, check_laurent_quotient, EngineError};
use repcount::fforacle::{
    brute_conj_count, brute_hom_count, poly_type_census, Budget, CountRecord, FieldSpec,
    OracleError, TupleMode,
};
use repcount::groupdiv::{
    group_suite, parse_corpus, GroupError, GroupSuiteReport, SuiteConfig, Verdict, DEFAULT_CORPUS,
};
use repcount::{CountingEngine, CountingPolynomial, Mode};
use serde_json::{json, Value};

use crate::output::{int_value, table};
use crate::{CensusArgs, DivisibilityArgs, Format, PolyArgs, VerifyArgs};

pub struct Context {
    pub format: Format,
    pub budget_override: bool,
    pub cache: Option<PathBuf>,
    /// Cleared when the cache file exists but cannot be read, so it is not overwritten.
    pub cache_writable: Cell<bool>,
}

pub enum Outcome {
    Success,
    Mismatch,
}

impl Outcome {
    fn from_match(ok: bool) -> Self {
        if ok {
            Outcome::Success
        } else {
            Outcome::Mismatch
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(m) => write!(f, "{m}"),
            CliError::Internal(m) => write!(f, "internal check failed: {m}"),
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::EmptyMatrix
            | EngineError::InvalidArity { .. }
            | EngineError::InvalidPrank(_)
            | EngineError::DepthLimit { .. }
            | EngineError::WrongMode(_)
            | EngineError::Cache(_) => CliError::Invalid(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::PreconditionViolated(_) => CliError::Internal(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

type CmdResult = Result<Outcome, CliError>;

impl Context {
    fn engine(&self) -> CountingEngine {
        let engine = if self.budget_override {
            CountingEngine::new().with_limits(None)
        } else {
            CountingEngine::new()
        };
        if let Some(path) = &self.cache {
            if let Err(e) = engine.load_cache(path) {
                eprintln!("warning: ignoring cache: {e}");
                self.cache_writable.set(false);
            }
        }
        engine
    }

    fn finish(&self, engine: &CountingEngine) {
        if let Some(path) = self.cache.as_ref().filter(|_| self.cache_writable.get()) {
            if let Err(e) = engine.save_cache(path) {
                eprintln!("warning: could not write cache: {e}");
            }
        }
    }

    fn budget(&self) -> Budget {
        if self.budget_override {
            Budget::unlimited()
        } else {
            Budget::default()
        }
    }

    fn emit(&self, value: &Value, text: impl FnOnce() -> String) {
        match self.format {
            Format::Json => println!("{}", serde_json::to_string_pretty(value).unwrap()),
            Format::Table => print!("{}", text()),
        }
    }
}

fn field(q: u64) -> Result<FieldSpec, CliError> {
    FieldSpec::with_order(q).map_err(CliError::from)
}

fn check_qs(qs: &[u64]) -> Result<(), CliError> {
    match qs.iter().find(|&&q| q < 2) {
        Some(q) => Err(CliError::Invalid(format!("field size {q} is below 2"))),
        None => Ok(()),
    }
}

pub fn poly(ctx: &Context, args: PolyArgs) -> CmdResult {
    check_qs(&args.q)?;
    let engine = ctx.engine();
    let p = match (args.k, args.g) {
        (Some(k), None) => engine.count(args.n, k, args.mode.unwrap_or(Mode::AllSemisimple))?,
        (None, Some(g)) => engine.hom_count(args.n, g, args.prank.unwrap_or(0))?,
        _ => unreachable!("clap enforces exactly one of --k and --g"),
    };
    ctx.finish(&engine);

    let (degree_report, laurent) = if p.mode() == Mode::ConjugacyClasses {
        (None, None)
    } else {
        // k = 0: P = 1, no quotient
        let laurent = if p.k() == 0 {
            None
        } else {
            Some(check_laurent_quotient(&p)?)
        };
        (Some(check_degree_monic(&p)?), laurent)
    };
    let values: Vec<(u64, String)> = args.q.iter().map(|&q| (q, p.eval(q).to_string())).collect();

    let mut doc = json!({
        "command": "poly",
        "n": p.n(),
        "k": p.k(),
        "mode": p.mode().as_str(),
        "polynomial": p.poly().to_string(),
        "coefficients": coefficient_values(&p),
        "degree": p.degree().finite(),
        "checks": {
            "integer_coefficients": true,
            "degree": degree_report,
            "laurent_quotient": laurent.as_ref().map(|l| json!({
                "expression": l.to_string(),
                "min_degree": l.min_degree(),
                "coefficients": l.integer_coeffs().unwrap().iter().map(int_value).collect::<Vec<_>>(),
            })),
        },
        "values": values.iter().map(|(q, v)| json!({"q": q, "value": int_value(v)})).collect::<Vec<_>>(),
    });
    if let Some(g) = args.g {
        doc["g"] = json!(g);
        doc["prank"] = json!(args.prank.unwrap_or(0));
    }
    ctx.emit(&doc, || {
        let mut out = format!("P(q) = {}\n", p.poly());
        out += &format!("n = {}, k = {}, mode = {}\n", p.n(), p.k(), p.mode());
        out += "integer coefficients: yes\n";
        if let Some(r) = &degree_report {
            let status = if r.meets_bound { "met" } else { "not met" };
            let how = if r.enforced { "enforced" } else { "observed" };
            out += &format!(
                "degree {} vs bound {}: {status} ({how}); monic: {}\n",
                p.degree(),
                r.bound,
                if r.monic { "yes" } else { "no" }
            );
        }
        if let Some(l) = &laurent {
            out += &format!("P / |GL_n| = {l}\n");
        }
        for (q, v) in &values {
            out += &format!("P({q}) = {v}\n");
        }
        out
    });
    Ok(Outcome::Success)
}

fn coefficient_values(p: &CountingPolynomial) -> Vec<Value> {
    p.coefficients().iter().map(int_value).collect()
}

pub fn verify(ctx: &Context, args: VerifyArgs) -> CmdResult {
    check_qs(&args.q)?;
    let engine = ctx.engine();
    let p = engine.count(args.n, args.k, args.mode)?;
    ctx.finish(&engine);
    let budget = ctx.budget();
    let mut rows = Vec::new();
    for &q in &args.q {
        let f = field(q)?;
        let brute = match args.mode {
            Mode::AllSemisimple => {
                brute_hom_count(args.n, &f, args.k, TupleMode::AllSemisimple, &budget)?
            }
            Mode::Mixed => brute_hom_count(args.n, &f, args.k, TupleMode::LastFree, &budget)?,
            Mode::ConjugacyClasses => brute_conj_count(args.n, &f, args.k, &budget)?,
        };
        let record = CountRecord::new(args.n, q, args.k, args.mode.as_str(), brute);
        let predicted = p.eval(q).to_string();
        let matched = predicted == record.count;
        rows.push((record, predicted, matched));
    }
    let all_match = rows.iter().all(|r| r.2);
    let doc = json!({
        "command": "verify",
        "n": args.n,
        "k": args.k,
        "mode": args.mode.as_str(),
        "polynomial": p.poly().to_string(),
        "rows": rows.iter().map(|(rec, pred, m)| json!({
            "q": rec.q,
            "predicted": pred,
            "brute_force": rec,
            "match": m,
        })).collect::<Vec<_>>(),
        "all_match": all_match,
    });
    ctx.emit(&doc, || {
        let body: Vec<Vec<String>> = rows
            .iter()
            .map(|(rec, pred, m)| {
                vec![
                    rec.q.to_string(),
                    pred.clone(),
                    rec.count.clone(),
                    yes_no(*m),
                ]
            })
            .collect();
        format!(
            "n = {}, k = {}, mode = {}\n{}",
            args.n,
            args.k,
            args.mode,
            table(&["q", "predicted", "brute-force", "match"], &body)
        )
    });
    Ok(Outcome::from_match(all_match))
}

pub fn census(ctx: &Context, args: CensusArgs) -> CmdResult {
    check_qs(&args.q)?;
    if args.n == 0 {
        return Err(CliError::Invalid("n must be at least 1".into()));
    }
    let engine = ctx.engine();
    let predictions = engine.types_with_psi(args.n);
    let budget = ctx.budget();
    let mut rows = Vec::new();
    for &q in &args.q {
        let f = field(q)?;
        let records = poly_type_census(&f, args.n, &budget)?;
        if records.len() != predictions.len() {
            return Err(CliError::Internal(
                "census and type enumeration disagree".into(),
            ));
        }
        for (rec, (t, psi)) in records.into_iter().zip(&predictions) {
            if &rec.type_of != t {
                return Err(CliError::Internal(format!("type order differs at {t}")));
            }
            let predicted = psi.eval_int(q as i64);
            let predicted = predicted.to_string();
            let matched = predicted == rec.count.to_string();
            rows.push((q, rec, predicted, matched));
        }
    }
    let all_match = rows.iter().all(|r| r.3);
    let doc = json!({
        "command": "census",
        "n": args.n,
        "rows": rows.iter().map(|(q, rec, pred, m)| json!({
            "q": q,
            "type": rec.type_of,
            "label": rec.type_of.to_string(),
            "predicted": int_value(pred),
            "observed": rec.count,
            "match": m,
        })).collect::<Vec<_>>(),
        "all_match": all_match,
    });
    ctx.emit(&doc, || {
        let body: Vec<Vec<String>> = rows
            .iter()
            .map(|(q, rec, pred, m)| {
                vec![
                    q.to_string(),
                    rec.type_of.to_string(),
                    pred.clone(),
                    rec.count.to_string(),
                    yes_no(*m),
                ]
            })
            .collect();
        table(&["q", "type", "predicted", "observed", "match"], &body)
    });
    Ok(Outcome::from_match(all_match))
}

pub fn divisibility(ctx: &Context, args: DivisibilityArgs) -> CmdResult {
    let text = match &args.corpus {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?,
        None => DEFAULT_CORPUS.to_string(),
    };
    let mut corpus = parse_corpus(&text)?;
    if let Some(name) = &args.group {
        corpus.retain(|e| &e.name == name);
        if corpus.is_empty() {
            return Err(CliError::Invalid(format!(
                "no group named '{name}' in the corpus"
            )));
        }
    }
    if args.n == Some(0) || args.k == Some(0) {
        return Err(CliError::Invalid("--n and --k must be positive".into()));
    }
    let narrowed = args.n.is_some() || args.k.is_some() || args.s.is_some();
    let mut config = SuiteConfig {
        frobenius_n: args.n,
        cosets: !narrowed,
        ..SuiteConfig::default()
    };
    match (args.k, &args.s) {
        (Some(k), _) => config.ks = vec![k],
        (None, Some(_)) => {}
        (None, None) if args.n.is_some() => config.ks.clear(),
        (None, None) => {}
    }
    if let Some(s) = &args.s {
        config.sets = vec![s.0.clone()];
    }
    if ctx.budget_override {
        config.closure_limit = usize::MAX;
        config.max_order = None;
    }
    let reports: Vec<GroupSuiteReport> = corpus
        .iter()
        .map(|e| group_suite(e, &config))
        .collect::<Result<_, _>>()?;
    let verdict = Verdict::all(reports.iter().map(|r| r.verdict));
    let doc = json!({
        "command": "divisibility",
        "groups": reports,
        "verdict": verdict,
    });
    ctx.emit(&doc, || render_reports(&reports, verdict));
    Ok(Outcome::from_match(verdict != Verdict::Fail))
}

fn render_reports(reports: &[GroupSuiteReport], verdict: Verdict) -> String {
    let mut out = String::new();
    for r in reports {
        out += &format!("{} (order {}): {}\n", r.name, r.order, r.verdict);
        let frob: Vec<Vec<String>> = r
            .frobenius
            .iter()
            .map(|f| vec![f.n.to_string(), f.count.to_string(), f.verdict.to_string()])
            .collect();
        if !frob.is_empty() {
            out += &indent(&table(&["n", "#{x^n=1}", "verdict"], &frob));
        }
        if let Some(c) = &r.coset {
            out += &format!(
                "  coset triples: {} checked, {} failed: {}\n",
                c.triples_checked,
                c.failures.len(),
                c.verdict
            );
        }
        let div: Vec<Vec<String>> = r
            .divisibility
            .iter()
            .map(|d| {
                vec![
                    d.k.to_string(),
                    d.s.to_string(),
                    d.hom_count.to_string(),
                    d.quotient.clone(),
                    d.verdict.to_string(),
                ]
            })
            .collect();
        if !div.is_empty() {
            out += &indent(&table(&["k", "S", "#Hom", "#Hom/|G|", "verdict"], &div));
        }
    }
    out += &format!("overall: {verdict}\n");
    out
}

fn indent(s: &str) -> String {
    s.lines().map(|l| format!("  {l}\n")).collect()
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}
