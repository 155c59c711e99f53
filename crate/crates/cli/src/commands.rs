use serde_json::{json, Value};
use velcomp_core::algebra3::norm_hermitian;
use velcomp_core::einstein::{einstein_add, relative_velocity};
use velcomp_core::lawlab::{
    check, hunt_and_shrink, run_suite, HuntOutcome, LawError, LawReport, Op, SamplerConfig,
    SuiteConfig, SuiteReport, Verdict,
};
use velcomp_core::recsym::{rs_add, rs_relative_velocity};
use velcomp_core::{CScalar, CVec3, CompositionError, LightSpeed, Velocity};

use crate::record::OutputRecord;
use crate::vector::{canonical, scalar_text, sig, vector_text};
use crate::{
    AddArgs, CheckArgs, Command, HuntArgs, JsonOrCsv, OnOff, RelativeArgs, SamplingArgs, SuiteArgs,
    TextOrJson,
};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(CompositionError),
}

impl CliError {
    pub fn name(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "UsageError",
            CliError::Domain(e) => e.name(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl From<CompositionError> for CliError {
    fn from(e: CompositionError) -> Self {
        CliError::Domain(e)
    }
}

impl From<LawError> for CliError {
    fn from(e: LawError) -> Self {
        match e {
            LawError::Composition(e) => CliError::Domain(e),
            other => CliError::Usage(other.to_string()),
        }
    }
}

pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

pub fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Add(args) => cmd_add(args),
        Command::Relative(args) => cmd_relative(args),
        Command::Check(args) => cmd_check(args),
        Command::Hunt(args) => cmd_hunt(args),
        Command::Suite(args) => cmd_suite(args),
    }
}

fn with_threads<T: Send>(
    threads: Option<u64>,
    f: impl FnOnce() -> T + Send,
) -> Result<T, CliError> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n as usize)
                .build()
                .map_err(|e| CliError::Usage(format!("cannot start {n} threads: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn compose(op: Op, a: CVec3, b: CVec3, ctx: LightSpeed) -> Result<(CVec3, CScalar), CliError> {
    match op {
        Op::Einstein => {
            let s = einstein_add(&Velocity::from_cvec(a, ctx)?, &Velocity::from_cvec(b, ctx)?)?;
            Ok((s.w.to_cvec(), CScalar::new(s.denom, 0.0)))
        }
        Op::Recsym => {
            let s = rs_add(a, b, ctx)?;
            Ok((s.w, s.denom))
        }
    }
}

fn relative(op: Op, observer: CVec3, object: CVec3, ctx: LightSpeed) -> Result<CVec3, CliError> {
    match op {
        Op::Einstein => {
            let obs = Velocity::from_cvec(observer, ctx)?;
            let obj = Velocity::from_cvec(object, ctx)?;
            Ok(relative_velocity(&obs, &obj)?.w.to_cvec())
        }
        Op::Recsym => Ok(rs_relative_velocity(observer, object, ctx)?.w),
    }
}

fn cmd_add(args: AddArgs) -> Result<Outcome, CliError> {
    let ctx = LightSpeed::new(args.c)?;
    let (w, denom) = compose(args.law, args.a, args.b, ctx)?;
    let stdout = match args.format {
        TextOrJson::Text => format!("{}\n", vector_text(&w)),
        TextOrJson::Json => OutputRecord::new(
            "add",
            json!({
                "law": args.law,
                "a": canonical(&args.a),
                "b": canonical(&args.b),
                "c": args.c,
            }),
            json!({ "w": w, "text": vector_text(&w) }),
            json!({ "denominator": denom, "denominator_text": scalar_text(denom) }),
        )
        .to_json(),
    };
    Ok(Outcome::ok(stdout))
}

fn cmd_relative(args: RelativeArgs) -> Result<Outcome, CliError> {
    let ctx = LightSpeed::new(args.c)?;
    let w = relative(args.law, args.observer, args.object, ctx)?;
    let w_tilde = relative(args.law, args.object, args.observer, ctx)?;
    let defect = norm_hermitian(w + w_tilde);
    let stdout = match args.format {
        TextOrJson::Text => format!(
            "W  = {}\nW~ = {}\nreciprocity defect |W~ + W| = {}\n",
            vector_text(&w),
            vector_text(&w_tilde),
            sig(defect, 9)
        ),
        TextOrJson::Json => OutputRecord::new(
            "relative",
            json!({
                "law": args.law,
                "observer": canonical(&args.observer),
                "object": canonical(&args.object),
                "c": args.c,
            }),
            json!({ "w": w, "w_tilde": w_tilde, "reciprocity_defect": defect }),
            json!({ "defect_normalized": defect / ctx.get() }),
        )
        .to_json(),
    };
    Ok(Outcome::ok(stdout))
}

fn sampler(args: &SamplingArgs) -> Result<SamplerConfig, CliError> {
    Ok(SamplerConfig::new(args.seed, args.samples)
        .with_regime(args.regime)
        .with_light_speed(LightSpeed::new(args.c)?)
        .with_max_beta(args.max_beta))
}

fn sampling_inputs(args: &SamplingArgs, tol: f64) -> Value {
    json!({
        "law_id": args.law_id,
        "op": args.op,
        "samples": args.samples,
        "seed": args.seed,
        "tol": tol,
        "regime": args.regime,
        "c": args.c,
        "max_beta": args.max_beta,
    })
}

fn csv_string(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn report_row(r: &LawReport) -> Vec<String> {
    vec![
        r.law.to_string(),
        r.op.to_string(),
        r.regime.to_string(),
        r.seed.to_string(),
        r.samples.to_string(),
        r.skips.to_string(),
        r.max_defect.to_string(),
        r.mean_defect.to_string(),
        r.violations.to_string(),
        r.tol.to_string(),
        r.verdict.name().to_string(),
    ]
}

fn cmd_check(args: CheckArgs) -> Result<Outcome, CliError> {
    let s = &args.sampling;
    let tol = s.tol.unwrap_or_else(|| s.law_id.default_tolerance());
    let cfg = sampler(s)?;
    let report = with_threads(s.threads, || check(s.law_id, s.op, &cfg, tol))??;
    let code = match report.verdict {
        Verdict::Holds => 0,
        Verdict::Violated => 1,
    };
    let stdout = match s.format {
        JsonOrCsv::Json => OutputRecord::new(
            "check",
            sampling_inputs(s, tol),
            serde_json::to_value(&report).expect("finite report"),
            json!({
                "skips": report.skips,
                "skip_reasons": report.skip_reasons,
                "skip_rate": report.skip_rate(),
            }),
        )
        .to_json(),
        JsonOrCsv::Csv => csv_string(
            &[
                "law",
                "op",
                "regime",
                "seed",
                "samples",
                "skips",
                "max_defect",
                "mean_defect",
                "violations",
                "tol",
                "verdict",
            ],
            &[report_row(&report)],
        ),
    };
    Ok(Outcome { stdout, code })
}

fn cmd_hunt(args: HuntArgs) -> Result<Outcome, CliError> {
    let s = &args.sampling;
    let tol = s.tol.unwrap_or_else(|| s.law_id.default_tolerance());
    let cfg = sampler(s)?;
    let shrink = args.shrink == OnOff::On;
    let outcome = with_threads(s.threads, || {
        hunt_and_shrink(s.law_id, s.op, &cfg, tol, shrink)
    })??;
    let (code, skips) = match &outcome {
        HuntOutcome::Found(_) => (0, 0),
        HuntOutcome::NotFound { skips, .. } => (1, *skips),
    };
    let stdout = match s.format {
        JsonOrCsv::Json => {
            let mut inputs = sampling_inputs(s, tol);
            inputs["shrink"] = json!(shrink);
            OutputRecord::new(
                "hunt",
                inputs,
                serde_json::to_value(&outcome).expect("finite outcome"),
                json!({ "skips": skips }),
            )
            .to_json()
        }
        JsonOrCsv::Csv => {
            let row = match &outcome {
                HuntOutcome::Found(ce) => vec![
                    ce.law.to_string(),
                    ce.op.to_string(),
                    "found".into(),
                    ce.defect.to_string(),
                    ce.shrink_steps.to_string(),
                    ce.found_at.to_string(),
                    ce.inputs
                        .iter()
                        .map(canonical)
                        .collect::<Vec<_>>()
                        .join(" "),
                ],
                HuntOutcome::NotFound { searched, .. } => vec![
                    s.law_id.to_string(),
                    s.op.to_string(),
                    "not_found".into(),
                    String::new(),
                    String::new(),
                    searched.to_string(),
                    String::new(),
                ],
            };
            csv_string(
                &[
                    "law",
                    "op",
                    "outcome",
                    "defect",
                    "shrink_steps",
                    "index",
                    "inputs",
                ],
                &[row],
            )
        }
    };
    Ok(Outcome { stdout, code })
}

fn suite_rows(report: &SuiteReport) -> Vec<Vec<String>> {
    let opt = |v: Option<String>| v.unwrap_or_default();
    report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.id.clone(),
                serde_json::to_value(r.kind)
                    .ok()
                    .and_then(|v| v.as_str().map(str::to_string))
                    .unwrap_or_default(),
                opt(r.law.map(|l| l.to_string())),
                opt(r.op.map(|o| o.to_string())),
                opt(r.regime.map(|g| g.to_string())),
                r.samples.to_string(),
                r.skips.to_string(),
                r.tol.to_string(),
                r.metric.to_string(),
                r.expected.name().to_string(),
                r.observed.name().to_string(),
                r.pass.to_string(),
                r.claim.clone(),
            ]
        })
        .collect()
}

fn cmd_suite(args: SuiteArgs) -> Result<Outcome, CliError> {
    let cfg = SuiteConfig::new(args.seed, args.samples);
    let report = with_threads(args.threads, || run_suite(cfg))??;
    let code = if report.all_pass { 0 } else { 1 };
    let stdout = match args.format {
        JsonOrCsv::Json => {
            let failed: Vec<&str> = report
                .rows
                .iter()
                .filter(|r| !r.pass)
                .map(|r| r.id.as_str())
                .collect();
            let skips: u64 = report.rows.iter().map(|r| r.skips).sum();
            OutputRecord::new(
                "suite",
                json!({ "seed": args.seed, "samples": args.samples }),
                serde_json::to_value(&report).expect("finite report"),
                json!({ "failed": failed, "skips_total": skips }),
            )
            .to_json()
        }
        JsonOrCsv::Csv => csv_string(
            &[
                "id", "kind", "law", "op", "regime", "samples", "skips", "tol", "metric",
                "expected", "observed", "pass", "claim",
            ],
            &suite_rows(&report),
        ),
    };
    Ok(Outcome { stdout, code })
}
