//! Command-line front end over the exact-arithmetic library: Cremona
//! reduction, exceptional-class enumeration, cone membership, Gromov
//! widths, and width-gap certificates.
//!
//! Every invocation builds one typed payload; the human text and the
//! machine-readable document are both rendered from that payload, so the
//! two views can never diverge. Exit codes: 0 success, 1 negative verdict
//! (non-member, refusal, outside the reduced orbit, non-exceptional
//! class), 2 usage or input error with a one-line stderr diagnostic.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gwidth_core::num::parse_rational;
use gwidth_core::sixfold::Refusal;
use gwidth_core::{
    enumerate_exceptional, gromov_width, is_exceptional, kpm_membership, liliu_membership, reduce,
    verify_certificate, width_gap_certificate, CertificateOutcome, ConeVerdict, HomologyClass,
    ManifoldDescriptor, PeriodVector, Rational, ReductionStep, WidthWitness,
};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "gwidth",
    version,
    about = "Exact computations on cohomology lattices of rational surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print the machine-readable JSON document instead of human text.
    #[arg(long, global = true)]
    json: bool,
    /// Include full traces and class lists in the output.
    #[arg(long, global = true)]
    trace: bool,
    /// Also write the machine-readable document to FILE.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a period vector by sorting and Cremona moves.
    Reduce {
        /// Number of blowups; the period must have k+1 entries.
        #[arg(long)]
        k: usize,
        /// Comma-separated exact rationals "a,b1,...,bk".
        #[arg(long)]
        period: String,
    },
    /// Enumerate exceptional classes, or test a single class.
    Exceptional {
        #[arg(long)]
        k: usize,
        /// Highest degree to enumerate.
        #[arg(long, default_value_t = 6)]
        degree_bound: i64,
        /// Test this class "d,e1,...,ek" instead of enumerating.
        #[arg(long)]
        class: Option<String>,
    },
    /// Decide symplectic-cone membership.
    Cone {
        #[arg(long)]
        model: Model,
        #[arg(long)]
        k: usize,
        /// Exceptional sphere count on the exotic model.
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        period: String,
    },
    /// Compute the Gromov width.
    Width {
        #[arg(long)]
        model: Model,
        #[arg(long)]
        k: usize,
        /// Exceptional sphere count on the exotic model.
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        period: String,
        /// Degree cutoff floor for the obstruction scan.
        #[arg(long, default_value_t = 6)]
        degree_bound: i64,
    },
    /// Generate a width-gap certificate for the product with a sphere.
    GapCert {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        period: String,
        /// Sphere factor area as an exact rational.
        #[arg(long)]
        sphere_area: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    Rational,
    Exotic,
}

impl Model {
    fn name(self) -> &'static str {
        match self {
            Model::Rational => "rational",
            Model::Exotic => "exotic",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

struct Rendered {
    json: String,
    human: String,
    exit: u8,
}

#[derive(Serialize)]
struct Document<'a, T: Serialize> {
    schema_version: u32,
    command: &'static str,
    result: &'a T,
}

fn render<T: Serialize>(
    command: &'static str,
    payload: &T,
    human: String,
    exit: u8,
) -> Result<Rendered, String> {
    let doc = Document {
        schema_version: SCHEMA_VERSION,
        command,
        result: payload,
    };
    let mut json = serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?;
    json.push('\n');
    Ok(Rendered { json, human, exit })
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let trace = cli.trace;
    let rendered = match cli.command {
        Command::Reduce { k, period } => cmd_reduce(k, &period, trace)?,
        Command::Exceptional {
            k,
            degree_bound,
            class,
        } => cmd_exceptional(k, degree_bound, class.as_deref(), trace)?,
        Command::Cone {
            model,
            k,
            l,
            period,
        } => cmd_cone(model, k, l, &period)?,
        Command::Width {
            model,
            k,
            l,
            period,
            degree_bound,
        } => cmd_width(model, k, l, &period, degree_bound)?,
        Command::GapCert {
            k,
            l,
            period,
            sphere_area,
        } => cmd_gap_cert(k, l, &period, &sphere_area)?,
    };

    if let Some(path) = &cli.out {
        fs::write(path, &rendered.json)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    if cli.json {
        print!("{}", rendered.json);
    } else {
        print!("{}", rendered.human);
    }
    Ok(ExitCode::from(rendered.exit))
}

fn parse_exact_list(s: &str, k: usize, what: &str) -> Result<Vec<Rational>, String> {
    let entries: Vec<Rational> = s
        .split(',')
        .map(|t| parse_rational(t.trim()).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    if entries.len() != k + 1 {
        return Err(format!(
            "{what} has {} entries but --k {k} expects {}",
            entries.len(),
            k + 1
        ));
    }
    Ok(entries)
}

fn parse_period(s: &str, k: usize) -> Result<PeriodVector, String> {
    Ok(PeriodVector::new(parse_exact_list(s, k, "period")?))
}

fn parse_class(s: &str, k: usize) -> Result<HomologyClass, String> {
    Ok(HomologyClass::new(parse_exact_list(s, k, "class")?))
}

fn fmt_tuple(coeffs: &[Rational]) -> String {
    let mut out = String::from("(");
    for (i, c) in coeffs.iter().enumerate() {
        match i {
            0 => write!(out, "{c}").unwrap(),
            1 => write!(out, "; {c}").unwrap(),
            _ => write!(out, ", {c}").unwrap(),
        }
    }
    out.push(')');
    out
}

fn fmt_period(v: &PeriodVector) -> String {
    fmt_tuple(v.areas())
}

fn fmt_class(c: &HomologyClass) -> String {
    fmt_tuple(c.coeffs())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Serialize)]
struct ReducePayload {
    k: usize,
    input: PeriodVector,
    reached_reduced: bool,
    output: PeriodVector,
    #[serde(with = "gwidth_core::num::rat_string")]
    square: Rational,
    steps_total: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    steps: Option<Vec<ReductionStep>>,
}

fn cmd_reduce(k: usize, period: &str, trace: bool) -> Result<Rendered, String> {
    let v = parse_period(period, k)?;
    let outcome = reduce(&v).map_err(|e| e.to_string())?;
    let payload = ReducePayload {
        k,
        input: v,
        reached_reduced: outcome.reached_reduced(),
        output: outcome.output().clone(),
        square: outcome.output().square(),
        steps_total: outcome.trace().len(),
        steps: trace.then(|| outcome.trace().steps.clone()),
    };

    let mut human = String::new();
    writeln!(human, "input:   {}", fmt_period(&payload.input)).unwrap();
    writeln!(human, "output:  {}", fmt_period(&payload.output)).unwrap();
    writeln!(human, "reduced: {}", yes_no(payload.reached_reduced)).unwrap();
    writeln!(human, "steps:   {}", payload.steps_total).unwrap();
    writeln!(human, "square:  {}", payload.square).unwrap();
    if let Some(steps) = &payload.steps {
        for (i, step) in steps.iter().enumerate() {
            match step {
                ReductionStep::Sort { order } => {
                    writeln!(human, "step {}: sort {order:?}", i + 1).unwrap()
                }
                ReductionStep::Cremona => writeln!(human, "step {}: cremona", i + 1).unwrap(),
            }
        }
    }

    let exit = u8::from(!payload.reached_reduced);
    render("reduce", &payload, human, exit)
}

#[derive(Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
enum ExceptionalPayload {
    Enumerate {
        k: usize,
        degree_bound: i64,
        complete: bool,
        count: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        classes: Option<Vec<HomologyClass>>,
    },
    Check {
        k: usize,
        class: HomologyClass,
        exceptional: bool,
    },
}

fn cmd_exceptional(
    k: usize,
    degree_bound: i64,
    class: Option<&str>,
    trace: bool,
) -> Result<Rendered, String> {
    if let Some(spec) = class {
        let class = parse_class(spec, k)?;
        let exceptional = is_exceptional(&class);
        let payload = ExceptionalPayload::Check {
            k,
            class: class.clone(),
            exceptional,
        };
        let human = format!(
            "class {} is {}exceptional\n",
            fmt_class(&class),
            if exceptional { "" } else { "not " }
        );
        let exit = u8::from(!exceptional);
        return render("exceptional", &payload, human, exit);
    }

    let set = enumerate_exceptional(k, degree_bound);
    let payload = ExceptionalPayload::Enumerate {
        k,
        degree_bound,
        complete: set.complete,
        count: set.len(),
        classes: trace.then(|| set.classes.clone()),
    };
    let mut human = String::new();
    writeln!(
        human,
        "exceptional classes on the {k}-fold blowup up to degree {degree_bound}"
    )
    .unwrap();
    writeln!(
        human,
        "count: {} ({})",
        set.len(),
        if set.complete { "complete" } else { "partial" }
    )
    .unwrap();
    if let ExceptionalPayload::Enumerate {
        classes: Some(classes),
        ..
    } = &payload
    {
        for c in classes {
            writeln!(human, "  {}", fmt_class(c)).unwrap();
        }
    }
    render("exceptional", &payload, human, 0)
}

#[derive(Serialize)]
struct ConePayload {
    model: &'static str,
    k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    l: Option<usize>,
    period: PeriodVector,
    verdict: ConeVerdict,
}

fn cmd_cone(model: Model, k: usize, l: Option<usize>, period: &str) -> Result<Rendered, String> {
    let v = parse_period(period, k)?;
    let (l, verdict) = match model {
        Model::Rational => {
            if l.is_some() {
                return Err("--l applies only to the exotic model".into());
            }
            (None, liliu_membership(&v))
        }
        Model::Exotic => {
            let l = l.ok_or("the exotic model requires --l")?;
            (Some(l), kpm_membership(&v, l).map_err(|e| e.to_string())?)
        }
    };
    let payload = ConePayload {
        model: model.name(),
        k,
        l,
        period: v,
        verdict,
    };

    let mut human = String::new();
    writeln!(human, "model:  {}", payload.model).unwrap();
    writeln!(human, "period: {}", fmt_period(&payload.period)).unwrap();
    writeln!(human, "member: {}", yes_no(payload.verdict.is_member())).unwrap();
    writeln!(
        human,
        "status: {}",
        serde_json::to_value(payload.verdict.status)
            .map_err(|e| e.to_string())?
            .as_str()
            .unwrap_or("unknown")
    )
    .unwrap();
    if let Some(violator) = &payload.verdict.violator {
        writeln!(human, "violator: {}", fmt_class(violator)).unwrap();
    }
    if payload.verdict.checked_bound > 0 {
        writeln!(human, "checked degree: {}", payload.verdict.checked_bound).unwrap();
    }

    let exit = u8::from(!payload.verdict.is_member());
    render("cone", &payload, human, exit)
}

#[derive(Serialize)]
struct WidthPayload {
    model: &'static str,
    k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    l: Option<usize>,
    period: PeriodVector,
    degree_bound: i64,
    width: gwidth_core::ExactReal,
    witness: WidthWitness,
    checked_bound: i64,
}

fn cmd_width(
    model: Model,
    k: usize,
    l: Option<usize>,
    period: &str,
    degree_bound: i64,
) -> Result<Rendered, String> {
    let v = parse_period(period, k)?;
    let descriptor = match model {
        Model::Rational => {
            if l.is_some() {
                return Err("--l applies only to the exotic model".into());
            }
            ManifoldDescriptor::rational(k)
        }
        Model::Exotic => {
            let l = l.ok_or("the exotic model requires --l")?;
            ManifoldDescriptor::exotic_rational(k, l).map_err(|e| e.to_string())?
        }
    };
    let result = gromov_width(&v, &descriptor, degree_bound).map_err(|e| e.to_string())?;
    let payload = WidthPayload {
        model: model.name(),
        k,
        l,
        period: v,
        degree_bound,
        width: result.value,
        witness: result.witness,
        checked_bound: result.checked_bound,
    };

    let mut human = String::new();
    writeln!(human, "model:  {}", payload.model).unwrap();
    writeln!(human, "period: {}", fmt_period(&payload.period)).unwrap();
    writeln!(human, "width:  {}", payload.width).unwrap();
    match &payload.witness {
        WidthWitness::VolumeBound => writeln!(human, "witness: volume bound").unwrap(),
        WidthWitness::ObstructingClass { class, c1 } => writeln!(
            human,
            "witness: obstructing class {} with c1 = {c1}",
            fmt_class(class)
        )
        .unwrap(),
    }
    render("width", &payload, human, 0)
}

#[derive(Serialize)]
struct GapCertPayload {
    k: usize,
    l: usize,
    input: PeriodVector,
    #[serde(with = "gwidth_core::num::rat_string")]
    sphere_area: Rational,
    #[serde(flatten)]
    outcome: CertificateOutcome,
}

fn refusal_line(refusal: &Refusal) -> String {
    match refusal {
        Refusal::InsufficientSphereArea { required, given } => {
            format!("insufficient sphere area: need at least {required}, got {given}")
        }
        Refusal::ConeViolation { side, verdict } => {
            let side = match side {
                gwidth_core::sixfold::ConeSide::Exotic => "exotic",
                gwidth_core::sixfold::ConeSide::Rational => "rational",
            };
            match &verdict.violator {
                Some(v) => format!("cone violation on the {side} side at {}", fmt_class(v)),
                None => format!("cone violation on the {side} side"),
            }
        }
        Refusal::NotReduced => "period vector is not reduced with positive entries".into(),
        Refusal::NonStrictMargin { margin } => {
            format!("fiber-area margin is not strict: {margin}")
        }
        Refusal::InconclusiveChernWitness { witness } => {
            format!("canonical pairing {witness} is not negative; deform the tail first")
        }
        Refusal::IsometryMovesBlowupClasses { l } => {
            format!("isometry does not fix the last {l} exceptional directions")
        }
    }
}

fn cmd_gap_cert(k: usize, l: usize, period: &str, sphere_area: &str) -> Result<Rendered, String> {
    let v = parse_period(period, k)?;
    let lambda = parse_rational(sphere_area).map_err(|e| e.to_string())?;
    let outcome = width_gap_certificate(k, l, &v, &lambda, None).map_err(|e| e.to_string())?;
    if let Some(cert) = outcome.certificate() {
        verify_certificate(cert)
            .map_err(|e| format!("internal: emitted certificate failed re-validation: {e}"))?;
    }
    let payload = GapCertPayload {
        k,
        l,
        input: v,
        sphere_area: lambda,
        outcome,
    };

    let mut human = String::new();
    let exit = match &payload.outcome {
        CertificateOutcome::Emitted { certificate: c } => {
            writeln!(human, "certificate emitted").unwrap();
            writeln!(human, "k = {}, l = {}", c.k, c.l).unwrap();
            writeln!(human, "working period: {}", fmt_period(&c.working_period)).unwrap();
            writeln!(human, "tail deformed: {}", yes_no(c.tail_deformed)).unwrap();
            writeln!(human, "sphere area: {}", c.sphere_area).unwrap();
            writeln!(
                human,
                "exotic width lower bound:   {}",
                c.exotic_width_lower
            )
            .unwrap();
            writeln!(
                human,
                "standard width upper bound: {}",
                c.standard_width_upper
            )
            .unwrap();
            writeln!(human, "gap: {} > 0", c.gap).unwrap();
            writeln!(
                human,
                "first Chern classes differ: {} (canonical pairing {})",
                yes_no(c.chern.differ),
                c.chern.witness
            )
            .unwrap();
            0
        }
        CertificateOutcome::Refused { refusal } => {
            writeln!(human, "refused: {}", refusal_line(refusal)).unwrap();
            1
        }
    };
    render("gap-cert", &payload, human, exit)
}
