//! `mumcl`: class groups of glued schemes from the command line.
//!
//! JSON goes to stdout (or `--out`), a one-line human summary to stderr.
//! Exit codes: 0 success or equivalent, 1 invalid input, 2 refuted or
//! nonequivalent, 3 internal invariant violation.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use mumcl_core::glued_scheme::{validate, SchemeFile};
use mumcl_core::mumford::{
    classify, lineq_mod_d, random_divisor, restrict_min, sample_divisor, witness_search,
};
use mumcl_core::proj_line::RationalPoint;
use mumcl_core::{Error, GluedScheme, MumfordDivisor};

#[derive(Parser)]
#[command(name = "mumcl", version, about = "Mumford class groups of glued schemes over prime fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SchemeArg {
    #[arg(long)]
    scheme: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Check a scheme description and list every violation.
    Validate(SchemeArg),
    /// Filtration layers of the class group: component classes, conductor
    /// quotients and the piecewise-trivial group.
    Report(SchemeArg),
    /// Classify one divisor layer by layer.
    Classify {
        #[command(flatten)]
        scheme: SchemeArg,
        #[arg(long)]
        divisor: PathBuf,
    },
    /// Decide linear equivalence modulo the conductor of two divisors.
    Lineq {
        #[command(flatten)]
        scheme: SchemeArg,
        /// Exactly two divisor files.
        #[arg(long, num_args = 1, required = true)]
        divisor: Vec<PathBuf>,
    },
    /// Coefficientwise minimum of the two restrictions along a two-piece
    /// split conductor.
    RestrictMin {
        #[command(flatten)]
        scheme: SchemeArg,
        #[arg(long)]
        divisor: PathBuf,
        #[arg(long)]
        conductor: String,
    },
    /// A divisor of given class on one component, avoiding the conductor.
    Sample {
        #[command(flatten)]
        scheme: SchemeArg,
        #[arg(long)]
        component: String,
        /// Class as comma-separated integers, e.g. `2` or `1,0`.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        class: Vec<i64>,
        /// `POINT:MULT` on line components, e.g. `3:2` or `inf:-1`.
        #[arg(long)]
        prescribe: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare the equivalence verdict with exhaustive witness search. With
    /// two divisors, checks that pair; otherwise checks random pairs.
    Oracle {
        #[command(flatten)]
        scheme: SchemeArg,
        #[arg(long)]
        divisor: Vec<PathBuf>,
        /// Height bound of the reference-function search.
        #[arg(long, default_value_t = 2)]
        height: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random pairs when no divisors are given.
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
}

struct Outcome {
    json: Value,
    summary: String,
    code: u8,
}

impl Outcome {
    fn ok(json: Value, summary: impl Into<String>) -> Self {
        Outcome { json, summary: summary.into(), code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli.command).unwrap_or_else(error_outcome);
    let mut text = serde_json::to_string_pretty(&outcome.json).expect("json values serialize");
    text.push('\n');
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    eprintln!("{}", outcome.summary);
    ExitCode::from(outcome.code)
}

fn error_outcome(e: Error) -> Outcome {
    let (kind, code) = if e.is_input_error() { ("invalid_input", 1) } else { ("internal", 3) };
    let diagnostics = match &e {
        Error::InvalidScheme(d) | Error::NotMumford(d) => json!(d),
        _ => json!([]),
    };
    Outcome {
        json: json!({ "error": kind, "message": e.to_string(), "diagnostics": diagnostics }),
        summary: format!("error: {e}"),
        code,
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn load_scheme(arg: &SchemeArg) -> Result<GluedScheme, Error> {
    GluedScheme::from_json(&read(&arg.scheme)?)
}

fn load_divisor(s: &GluedScheme, path: &Path) -> Result<MumfordDivisor, Error> {
    MumfordDivisor::from_json(s, &read(path)?)
}

fn two_divisors(s: &GluedScheme, paths: &[PathBuf]) -> Result<(MumfordDivisor, MumfordDivisor), Error> {
    match paths {
        [a, b] => Ok((load_divisor(s, a)?, load_divisor(s, b)?)),
        _ => Err(Error::InvalidInput(format!("expected two --divisor files, got {}", paths.len()))),
    }
}

fn run(command: &Command) -> Result<Outcome, Error> {
    match command {
        Command::Validate(arg) => cmd_validate(arg),
        Command::Report(arg) => {
            let s = load_scheme(arg)?;
            let report = s.group_report();
            let summary = format!(
                "pullback rank {}, {} free conductor quotient(s), pt invariants {:?}",
                report.pullback.rank, report.free_quotients, report.pt.invariants
            );
            Ok(Outcome::ok(serde_json::to_value(&report)?, summary))
        }
        Command::Classify { scheme, divisor } => {
            let s = load_scheme(scheme)?;
            let b = load_divisor(&s, divisor)?;
            let report = classify(&b, &s)?;
            let summary = verdict_summary(&report);
            Ok(Outcome::ok(report.to_json(&s), summary))
        }
        Command::Lineq { scheme, divisor } => {
            let s = load_scheme(scheme)?;
            let (b, b2) = two_divisors(&s, divisor)?;
            let eq = lineq_mod_d(&b, &b2, &s)?;
            let mut json = eq.report.to_json(&s);
            json["witness"] = eq.witness.as_ref().map_or(Value::Null, |w| w.to_json(&s));
            Ok(Outcome {
                json,
                summary: verdict_summary(&eq.report),
                code: if eq.report.verdict.is_principal() { 0 } else { 2 },
            })
        }
        Command::RestrictMin { scheme, divisor, conductor } => {
            let s = load_scheme(scheme)?;
            let b = load_divisor(&s, divisor)?;
            let m = restrict_min(&b, conductor, &s)?;
            Ok(Outcome::ok(
                json!({ "conductor": conductor, "min": m.to_string(), "terms": m }),
                format!("min restriction along {conductor}: {m}"),
            ))
        }
        Command::Sample { scheme, component, class, prescribe, seed } => {
            let s = load_scheme(scheme)?;
            let i = s
                .component_index(component)
                .ok_or_else(|| Error::InvalidInput(format!("unknown component '{component}'")))?;
            let prescriptions = prescribe
                .iter()
                .map(|p| parse_prescription(&s, p))
                .collect::<Result<Vec<_>, _>>()?;
            let b = sample_divisor(&s, i, class, &prescriptions, *seed)?;
            Ok(Outcome::ok(serde_json::to_value(b.to_file(&s))?, format!("sampled {b}")))
        }
        Command::Oracle { scheme, divisor, height, seed, samples } => {
            let s = load_scheme(scheme)?;
            let pairs = if divisor.is_empty() {
                (0..*samples as u64)
                    .map(|k| {
                        let base = seed.wrapping_add(2 * k);
                        Ok((random_divisor(&s, 1 + (k as usize % 2), base)?, random_divisor(&s, 1, base + 1)?))
                    })
                    .collect::<Result<Vec<_>, Error>>()?
            } else {
                vec![two_divisors(&s, divisor)?]
            };
            let mut instances = Vec::new();
            let mut disagreements = 0;
            for (b, b2) in &pairs {
                let report = witness_search(b, b2, &s, *height)?;
                if !report.agrees {
                    disagreements += 1;
                }
                instances.push(serde_json::to_value(&report)?);
            }
            Ok(Outcome {
                json: json!({
                    "instances": instances.len(),
                    "height_bound": height,
                    "disagreements": disagreements,
                    "agrees": disagreements == 0,
                    "results": instances,
                }),
                summary: format!("oracle: {disagreements} disagreement(s) in {} instance(s)", pairs.len()),
                code: if disagreements == 0 { 0 } else { 2 },
            })
        }
    }
}

fn cmd_validate(arg: &SchemeArg) -> Result<Outcome, Error> {
    let text = read(&arg.scheme)?;
    let diagnostics = match serde_json::from_str::<SchemeFile>(&text) {
        Ok(file) => validate(&file),
        Err(e) => vec![mumcl_core::glued_scheme::Diagnostic {
            subject: "file".into(),
            message: e.to_string(),
        }],
    };
    let valid = diagnostics.is_empty();
    let summary = if valid {
        "valid".to_string()
    } else {
        diagnostics.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
    };
    Ok(Outcome {
        json: json!({ "valid": valid, "diagnostics": diagnostics }),
        summary,
        code: if valid { 0 } else { 1 },
    })
}

fn verdict_summary(report: &mumcl_core::ClassReport) -> String {
    match report.verdict.layer() {
        None => report.verdict.to_string(),
        Some(layer) => {
            let detail = match layer {
                mumcl_core::Layer::Pullback => format!("{:?}", report.pullback),
                mumcl_core::Layer::Rho => report
                    .rho
                    .iter()
                    .flatten()
                    .filter(|(_, q)| !q.is_trivial())
                    .map(|(name, q)| format!("{name}: {q}"))
                    .collect::<Vec<_>>()
                    .join("; "),
                mumcl_core::Layer::Pt => format!("{:?}", report.pt.as_deref().unwrap_or_default()),
            };
            format!("{} at {layer}: {detail}", report.verdict)
        }
    }
}

fn parse_prescription(s: &GluedScheme, text: &str) -> Result<(RationalPoint, i64), Error> {
    let bad = || Error::InvalidInput(format!("prescription '{text}' is not POINT:MULT"));
    let (point, mult) = text.split_once(':').ok_or_else(bad)?;
    let mult: i64 = mult.trim().parse().map_err(|_| bad())?;
    let point = match point.trim() {
        "inf" => RationalPoint::Infinity,
        a => RationalPoint::Affine(s.field().reduce(a.parse().map_err(|_| bad())?)),
    };
    Ok((point, mult))
}
