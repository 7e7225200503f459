//! `subshift`: JSON on stdout, diagnostics on stderr.
//!
//! Exit codes: 0 success, 1 property failure, 2 usage or parse error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use subshift_core::json::{
    emit_conjugacy_witness, emit_flow_witness, epseq_to_value, parse_epseq, parse_witness, perseq_to_value,
    spec_to_value, Witness,
};
use subshift_core::verify::{self, Bounds};
use subshift_core::{
    cell_series, conjugacy_witness, conjugate_ep, expand_cells, flow_witness, restricted_bezout, skew_sturmian,
    verify_conjugacy, verify_flow_witness, EpSeq, Error, Frequency, SturmianSpec, SturmianType,
};

#[derive(Parser)]
#[command(
    name = "subshift",
    version,
    about = "Eventually periodic subshifts and skew Sturmian sequences"
)]
struct Cli {
    /// Add human-readable sequence sketches to the output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Restricted Bézout coefficients: 0 <= a < q, 0 < b <= p, b*q - a*p = 1.
    Bezout {
        #[arg(allow_negative_numbers = true)]
        q: i128,
        #[arg(allow_negative_numbers = true)]
        p: i128,
    },
    /// Skew Sturmian sequences.
    #[command(subcommand)]
    Sturmian(SturmianCommand),
    /// Invariants of an eventually periodic sequence given as epseq/1 JSON.
    #[command(subcommand)]
    Ep(EpCommand),
    /// Conjugacy and flow equivalence with witnesses.
    #[command(subcommand)]
    Classify(ClassifyCommand),
    /// Run the theorem checks and print a report.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum SturmianCommand {
    /// Generate a skew Sturmian sequence.
    Gen {
        /// `q/p`, `0` or `inf`.
        #[arg(long)]
        freq: Frequency,
        /// `S` or `Sprime`.
        #[arg(long = "type")]
        stype: SturmianType,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        m: i64,
        /// Cells (or symbols) on each side of B_m.
        #[arg(long, default_value_t = 8)]
        cells: u32,
        #[arg(long, value_enum, default_value_t = Emit::Epseq)]
        emit: Emit,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Cells,
    Symbols,
    Epseq,
}

#[derive(Subcommand)]
enum EpCommand {
    /// Length of a shortest anomaly window.
    AnomalySize { file: PathBuf },
    /// Least period of the tail.
    LeastPeriod { file: PathBuf },
    /// Representative with the leftmost minimal anomaly at offset 0.
    Canonical { file: PathBuf },
    /// Whether two sequences differ by a shift.
    Similar { a: PathBuf, b: PathBuf },
    /// Delete the stored anomaly and classify what remains.
    RemoveAnomaly { file: PathBuf },
}

#[derive(Subcommand)]
enum ClassifyCommand {
    /// Decide conjugacy; optionally write a conjugacy witness.
    Conjugate {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Build, check and write a flow-equivalence witness.
    Flow {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        witness: PathBuf,
    },
    /// Replay a conjugacy or flow witness.
    CheckWitness { a: PathBuf, b: PathBuf, witness: PathBuf },
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Cap every p+q bound at this value.
    #[arg(long)]
    max_period_sum: Option<u64>,
    /// Run only these theorem tags.
    #[arg(long = "only", value_name = "TAG")]
    only: Vec<String>,
    #[arg(long)]
    max_period_word: Option<usize>,
    #[arg(long)]
    max_anomaly_word: Option<usize>,
    #[arg(long)]
    random_instances: Option<usize>,
    #[arg(long)]
    random_flow_pairs: Option<usize>,
}

/// A successful run: the JSON to print and the exit code.
struct Outcome {
    value: Value,
    failed: bool,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Outcome { value, failed: false }
    }
}

fn usage(message: impl Into<String>) -> Error {
    Error::Parse(message.into())
}

fn read_ep(path: &Path) -> Result<EpSeq, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    parse_epseq(&text)
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn with_pretty(mut v: Value, pretty: bool, x: &EpSeq) -> Value {
    if pretty {
        v["pretty"] = json!(x.pretty());
    }
    v
}

fn bezout(q: i128, p: i128) -> Result<Outcome, Error> {
    if q <= 0 || p <= 0 {
        return Err(Error::NonPositive);
    }
    let q = u64::try_from(q).map_err(|_| Error::Overflow)?;
    let p = u64::try_from(p).map_err(|_| Error::Overflow)?;
    let bp = restricted_bezout(q, p)?;
    Ok(Outcome::ok(
        json!({"q": q, "p": p, "a": bp.a, "b": bp.b, "check": "b*q-a*p=1"}),
    ))
}

fn sturmian_gen(spec: SturmianSpec, cells: u32, emit: Emit, pretty: bool) -> Result<Outcome, Error> {
    let k = i64::from(cells);
    let x = skew_sturmian(&spec)?;
    let head = json!({"spec": spec_to_value(&spec)});
    let mut out = match emit {
        Emit::Epseq => with_pretty(epseq_to_value(&x), pretty, &x),
        Emit::Cells => {
            let cs = cell_series(&spec, spec.m - k, spec.m + k)?;
            let cells: Vec<String> = cs.cells.iter().map(ToString::to_string).collect();
            json!({"n_lo": cs.n_lo, "n_hi": cs.n_hi(), "cells": cells})
        }
        Emit::Symbols => match spec.freq {
            Frequency::Rational { .. } => {
                let cs = cell_series(&spec, spec.m - k, spec.m + k)?;
                let origin: usize = cs.cells[..k as usize].iter().map(|c| c.len()).sum();
                json!({"n_lo": cs.n_lo, "n_hi": cs.n_hi(), "origin": origin, "symbols": expand_cells(&cs).to_string()})
            }
            _ => json!({"from": -k, "to": k, "origin": k, "symbols": x.window(-k, k)?.to_string()}),
        },
    };
    if !matches!(emit, Emit::Epseq) {
        if let (Value::Object(o), Value::Object(h)) = (&mut out, head) {
            for (key, v) in h {
                o.insert(key, v);
            }
        }
    }
    Ok(Outcome::ok(out))
}

fn ep(cmd: EpCommand, pretty: bool) -> Result<Outcome, Error> {
    Ok(Outcome::ok(match cmd {
        EpCommand::AnomalySize { file } => {
            let x = read_ep(&file)?;
            with_pretty(
                json!({"anomaly_size": x.anomaly_size(), "least_period": x.least_period()}),
                pretty,
                &x,
            )
        }
        EpCommand::LeastPeriod { file } => json!({"least_period": read_ep(&file)?.least_period()}),
        EpCommand::Canonical { file } => {
            let c = read_ep(&file)?.canonical();
            with_pretty(epseq_to_value(&c), pretty, &c)
        }
        EpCommand::Similar { a, b } => {
            let (x, y) = (read_ep(&a)?, read_ep(&b)?);
            let similar = x.similar(&y)?;
            let mut v = json!({"similar": similar});
            if similar {
                v["shift"] = json!(x.shift_to(&y));
            }
            v
        }
        EpCommand::RemoveAnomaly { file } => perseq_to_value(&read_ep(&file)?.remove_anomaly()),
    }))
}

fn invariants(x: &EpSeq) -> Value {
    json!({"least_period": x.least_period(), "anomaly_size": x.anomaly_size()})
}

fn classify(cmd: ClassifyCommand) -> Result<Outcome, Error> {
    match cmd {
        ClassifyCommand::Conjugate { a, b, witness } => {
            let (x, y) = (read_ep(&a)?, read_ep(&b)?);
            let conjugate = conjugate_ep(&x, &y);
            let mut v = json!({"conjugate": conjugate, "a": invariants(&x), "b": invariants(&y)});
            if let Some(path) = witness {
                if conjugate {
                    let pair = conjugacy_witness(&x, &y)?;
                    if let Err(e) = verify_conjugacy(&x, &y, &pair) {
                        eprintln!("constructed witness failed verification: {e}");
                        return Ok(Outcome {
                            value: json!({"conjugate": true, "verified": false, "message": e}),
                            failed: true,
                        });
                    }
                    write_file(&path, &emit_conjugacy_witness(&pair))?;
                    v["witness"] = json!(path.display().to_string());
                    v["memory"] = json!(pair.forward.memory());
                } else {
                    eprintln!("not conjugate; no witness written");
                    v["witness"] = Value::Null;
                }
            }
            Ok(Outcome::ok(v))
        }
        ClassifyCommand::Flow { a, b, witness } => {
            let (x, y) = (read_ep(&a)?, read_ep(&b)?);
            let w = flow_witness(&x, &y)?;
            let verdict = verify_flow_witness(&x, &y, &w);
            for line in &verdict.trail {
                eprintln!("{line}");
            }
            write_file(&witness, &emit_flow_witness(&w))?;
            let end = |start: &EpSeq, chain: &[subshift_core::FlowMove]| {
                invariants(chain.last().map_or(start, |m| m.result()))
            };
            Ok(Outcome {
                value: json!({
                    "flow_equivalent": verdict.passed,
                    "verified": verdict.passed,
                    "moves_x": w.chain_x.len(),
                    "moves_y": w.chain_y.len(),
                    "endpoint": end(&x, &w.chain_x),
                    "witness": witness.display().to_string(),
                }),
                failed: !verdict.passed,
            })
        }
        ClassifyCommand::CheckWitness { a, b, witness } => {
            let (x, y) = (read_ep(&a)?, read_ep(&b)?);
            let text = std::fs::read_to_string(&witness).map_err(|e| usage(format!("{}: {e}", witness.display())))?;
            let (kind, valid, trail) = match parse_witness(&text)? {
                Witness::Conjugacy(pair) => {
                    let r = verify_conjugacy(&x, &y, &pair);
                    let trail = vec![r.clone().err().unwrap_or_else(|| "ok".into())];
                    ("conjugacy", r.is_ok(), trail)
                }
                Witness::Flow(w) => {
                    let verdict = verify_flow_witness(&x, &y, &w);
                    ("flow", verdict.passed, verdict.trail)
                }
            };
            for line in &trail {
                eprintln!("{line}");
            }
            Ok(Outcome {
                value: json!({"kind": kind, "valid": valid, "trail": trail}),
                failed: !valid,
            })
        }
    }
}

fn run_verify(args: VerifyArgs) -> Result<Outcome, Error> {
    let seed = verify::seed_from_env().map_err(usage)?;
    let mut bounds = Bounds {
        seed,
        ..Bounds::default()
    };
    if let Some(s) = args.max_period_sum {
        if s < 2 {
            return Err(usage("--max-period-sum must be at least 2"));
        }
        bounds = bounds.capped(s);
    }
    bounds.max_period_word = args.max_period_word.unwrap_or(bounds.max_period_word);
    bounds.max_anomaly_word = args.max_anomaly_word.unwrap_or(bounds.max_anomaly_word);
    bounds.random_instances = args.random_instances.unwrap_or(bounds.random_instances);
    bounds.random_flow_pairs = args.random_flow_pairs.unwrap_or(bounds.random_flow_pairs);
    if bounds.max_period_word == 0 || bounds.max_anomaly_word == 0 {
        return Err(usage("word length bounds must be positive"));
    }
    let tags: Vec<&str> = if args.only.is_empty() {
        verify::TAGS.to_vec()
    } else {
        for t in &args.only {
            if !verify::TAGS.contains(&t.as_str()) {
                return Err(usage(format!("unknown tag {t:?}; known: {}", verify::TAGS.join(", "))));
            }
        }
        args.only.iter().map(String::as_str).collect()
    };
    let mut theorems = Vec::new();
    for tag in tags {
        let r = verify::run_tag(tag, &bounds).expect("known tag");
        eprintln!(
            "{:<24} {:>6} instances  {:>8.3}s  {}",
            r.tag,
            r.instances,
            r.wall_seconds,
            if r.passed() { "pass" } else { "FAIL" }
        );
        theorems.push(r);
    }
    let passed = theorems.iter().all(|t| t.passed());
    let report = verify::VerifyReport {
        format: verify::REPORT_FORMAT.into(),
        bounds,
        status: if passed {
            verify::Status::Pass
        } else {
            verify::Status::Fail
        },
        theorems,
    };
    Ok(Outcome {
        value: serde_json::to_value(&report)?,
        failed: !passed,
    })
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::PostconditionFailed(_) | Error::WindowExhausted(_) | Error::InternalMismatch(_) => 1,
        _ => 2,
    }
}

fn print(v: &Value, pretty: bool) {
    let text = if pretty {
        serde_json::to_string_pretty(v)
    } else {
        serde_json::to_string(v)
    };
    // A closed stdout (e.g. piped into `head`) is not an error worth reporting.
    let _ = writeln!(std::io::stdout().lock(), "{}", text.expect("serialisable"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            print(&json!({"error": "Usage", "message": e.kind().to_string()}), false);
            return ExitCode::from(2);
        }
    };
    let pretty = cli.pretty;
    let result = match cli.command {
        Command::Bezout { q, p } => bezout(q, p),
        Command::Sturmian(SturmianCommand::Gen {
            freq,
            stype,
            m,
            cells,
            emit,
        }) => SturmianSpec::new(freq, stype, m).and_then(|spec| sturmian_gen(spec, cells, emit, pretty)),
        Command::Ep(cmd) => ep(cmd, pretty),
        Command::Classify(cmd) => classify(cmd),
        Command::Verify(args) => run_verify(args),
    };
    match result {
        Ok(out) => {
            print(&out.value, pretty);
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            print(&json!({"error": e.kind(), "message": e.to_string()}), pretty);
            ExitCode::from(exit_code_for(&e))
        }
    }
}
