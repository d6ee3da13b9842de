use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use symsub::border::limit_witness;
use symsub::groebner::GroebnerConfig;
use symsub::moduli::{eta_cubic, eta_quartic, section_scan, ScanConfig};
use symsub::repro::{check_bundle, BUNDLES};
use symsub::subrank::{
    bounds_report, certify_lower_bound, symmetric_subrank_with, LowerBoundCertificate,
    SubrankOptions, DEFAULT_BOX,
};
use symsub::{Error, Field, LaurentMatrix, SymTensor};

const EXIT_OK: u8 = 0;
const EXIT_INPUT: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_RETRY: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "symsub",
    version,
    about = "Exact symmetric subrank and section moduli"
)]
struct Cli {
    #[command(flatten)]
    config: RunArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Coefficient field: QQ or Fp:<p>.
    #[arg(long, global = true, default_value = "QQ")]
    field: String,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Maximum number of S-pairs processed per Groebner basis.
    #[arg(long = "spair-cap", global = true)]
    spair_cap: Option<usize>,
    /// Maximum degree of S-polynomials.
    #[arg(long = "deg-cap", global = true)]
    deg_cap: Option<u32>,
    /// Sample box for random integer entries.
    #[arg(long = "box", global = true)]
    box_size: Option<u64>,
    /// Also write the JSON result to this file.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Degree of the input form (needed for the zero form).
    #[arg(long, global = true)]
    d: Option<u32>,
    /// Number of variables of the input form; inferred when absent.
    #[arg(long, global = true)]
    vars: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Symmetric subrank of a form.
    Subrank {
        /// Inline form or path to a file holding it.
        form: String,
        /// Stop after this level.
        #[arg(long)]
        r_cap: Option<usize>,
    },
    /// Generic subrank bounds.
    Bounds { n: u64, d: u32 },
    /// Lower-bound certificate from random spanning forms.
    Certify {
        n: usize,
        d: u32,
        r: usize,
        /// Re-verify a certificate file instead of generating one.
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Limit of a form along a curve and the border witness verdict.
    Limit {
        form: String,
        /// Weight vector such as `3,0,-2` (diagonal curve).
        #[arg(long, allow_hyphen_values = true, conflicts_with = "curve")]
        weights: Option<String>,
        /// Laurent matrix as a JSON array of string rows, inline or as a file.
        #[arg(long)]
        curve: Option<String>,
        #[arg(long)]
        r: usize,
    },
    /// Moduli point of a plane cubic or binary quartic.
    Moduli { form: String, mode: Mode },
    /// Moduli points of random linear sections.
    SectionScan {
        form: String,
        #[arg(long)]
        k: usize,
        /// Number of sampled sections.
        #[arg(long = "samples", short = 'N', default_value_t = 100)]
        samples: usize,
    },
    /// Run a reproduction bundle against its golden output.
    Repro { bundle: String },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Cubic,
    Quartic,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SpanDeficient { .. } => EXIT_RETRY,
            Error::ResourceLimit(_) => EXIT_INCONCLUSIVE,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

type CmdResult = std::result::Result<(Value, u8), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> std::result::Result<u8, Failure> {
    let field = Field::parse_tag(&cli.config.field)?;
    let (value, code) = match &cli.command {
        Command::Subrank { form, r_cap } => cmd_subrank(&cli.config, &field, form, *r_cap)?,
        Command::Bounds { n, d } => (to_value(&bounds_report(*n, *d)?), EXIT_OK),
        Command::Certify { n, d, r, check } => {
            cmd_certify(&cli.config, &field, *n, *d, *r, check.as_deref())?
        }
        Command::Limit {
            form,
            weights,
            curve,
            r,
        } => cmd_limit(
            &cli.config,
            &field,
            form,
            weights.as_deref(),
            curve.as_deref(),
            *r,
        )?,
        Command::Moduli { form, mode } => cmd_moduli(&cli.config, &field, form, *mode)?,
        Command::SectionScan { form, k, samples } => {
            cmd_scan(&cli.config, &field, form, *k, *samples)?
        }
        Command::Repro { bundle } => cmd_repro(bundle)?,
    };
    let text = serde_json::to_string_pretty(&value).expect("serializable");
    println!("{text}");
    if let Some(path) = &cli.config.json {
        std::fs::write(path, format!("{text}\n"))
            .map_err(|e| input_error(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(code)
}

fn to_value<T: Serialize>(t: &T) -> Value {
    let mut v = serde_json::to_value(t).expect("serializable");
    if let Value::Object(map) = &mut v {
        map.entry("schema").or_insert(json!(1));
    }
    v
}

/// An existing file is read; anything else is taken as the text itself.
fn read_source(src: &str) -> std::result::Result<String, Failure> {
    let path = Path::new(src);
    if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| input_error(format!("cannot read {src}: {e}")))
    } else {
        Ok(src.to_string())
    }
}

fn read_form(
    config: &RunArgs,
    field: &Field,
    src: &str,
) -> std::result::Result<SymTensor, Failure> {
    let text = read_source(src)?;
    let f = match config.vars {
        Some(n) => SymTensor::parse(&text, n, config.d, field)?,
        None => SymTensor::parse_infer(&text, config.d, field)?,
    };
    Ok(f)
}

fn subrank_options(config: &RunArgs, r_cap: Option<usize>) -> SubrankOptions {
    let defaults = GroebnerConfig::default();
    SubrankOptions {
        r_cap,
        groebner: GroebnerConfig {
            spair_cap: config.spair_cap.unwrap_or(defaults.spair_cap),
            deg_cap: config.deg_cap.unwrap_or(defaults.deg_cap),
        },
        seed: config.seed,
        ..SubrankOptions::default()
    }
}

fn check_caps(config: &RunArgs) -> std::result::Result<(), Failure> {
    if config.spair_cap == Some(0) || config.deg_cap == Some(0) || config.box_size == Some(0) {
        return Err(input_error(
            "resource caps and the sample box must be positive",
        ));
    }
    Ok(())
}

fn cmd_subrank(config: &RunArgs, field: &Field, src: &str, r_cap: Option<usize>) -> CmdResult {
    check_caps(config)?;
    let f = read_form(config, field, src)?;
    let verdict = symmetric_subrank_with(&f, &subrank_options(config, r_cap))?;
    let mut v = to_value(&verdict);
    v["value"] = json!(verdict.value());
    v["form"] = json!(f.to_string());
    let code = if verdict.value().is_some() {
        EXIT_OK
    } else {
        EXIT_INCONCLUSIVE
    };
    Ok((v, code))
}

fn cmd_certify(
    config: &RunArgs,
    field: &Field,
    n: usize,
    d: u32,
    r: usize,
    check: Option<&Path>,
) -> CmdResult {
    check_caps(config)?;
    if let Some(path) = check {
        let text = std::fs::read_to_string(path)
            .map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?;
        let cert = LowerBoundCertificate::from_json(&text)?;
        let ok = cert.verify()?;
        let v = json!({"schema": 1, "kind": "certificate-check", "valid": ok});
        return Ok((v, if ok { EXIT_OK } else { EXIT_INPUT }));
    }
    let bound = config.box_size.unwrap_or(DEFAULT_BOX);
    let cert = certify_lower_bound(n, d, r, config.seed, field, bound)?;
    Ok((to_value(&cert), EXIT_OK))
}

fn cmd_limit(
    config: &RunArgs,
    field: &Field,
    src: &str,
    weights: Option<&str>,
    curve: Option<&str>,
    r: usize,
) -> CmdResult {
    let f = read_form(config, field, src)?;
    let g = match (weights, curve) {
        (Some(w), None) => {
            let w = w
                .split(',')
                .map(|s| s.trim().parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| input_error(format!("bad weight vector {w:?}: {e}")))?;
            LaurentMatrix::diagonal_weights(&w, field)
        }
        (None, Some(c)) => LaurentMatrix::parse_json(&read_source(c)?, field)?,
        _ => return Err(input_error("give exactly one of --weights or --curve")),
    };
    let f = if f.nvars() < g.size() {
        f.embed(g.size())?
    } else {
        f
    };
    let witness = limit_witness(&f, &g, r)?;
    let code = if witness.verdict {
        EXIT_OK
    } else {
        EXIT_INCONCLUSIVE
    };
    Ok((to_value(&witness), code))
}

fn cmd_moduli(config: &RunArgs, field: &Field, src: &str, mode: Mode) -> CmdResult {
    let f = read_form(config, field, src)?;
    let (want_vars, want_deg, name) = match mode {
        Mode::Cubic => (3, 3, "cubic"),
        Mode::Quartic => (2, 4, "quartic"),
    };
    if f.degree() != want_deg || f.nvars() > want_vars {
        return Err(input_error(format!(
            "{name} mode needs a form of degree {want_deg} in at most {want_vars} variables"
        )));
    }
    let f = f.embed(want_vars)?;
    let point = match mode {
        Mode::Cubic => eta_cubic(&f)?,
        Mode::Quartic => eta_quartic(&f)?,
    };
    let v = json!({
        "schema": 1,
        "kind": "moduli",
        "mode": name,
        "f": f.to_string(),
        "point": point,
    });
    Ok((v, EXIT_OK))
}

fn cmd_scan(config: &RunArgs, field: &Field, src: &str, k: usize, samples: usize) -> CmdResult {
    check_caps(config)?;
    let f = read_form(config, field, src)?;
    let box_size = match config.box_size {
        Some(b) => i64::try_from(b).map_err(|_| input_error("sample box too large"))?,
        None => ScanConfig::default().box_size,
    };
    let report = section_scan(
        &f,
        k,
        &ScanConfig {
            box_size,
            seed: config.seed,
        },
        samples,
    )?;
    Ok((to_value(&report), EXIT_OK))
}

fn cmd_repro(bundle: &str) -> CmdResult {
    if !BUNDLES.contains(&bundle) {
        return Err(input_error(format!(
            "unknown bundle {bundle:?}; expected one of {}",
            BUNDLES.join(", ")
        )));
    }
    let outcome = check_bundle(bundle)?;
    if !outcome.matches {
        eprintln!("{bundle}: output differs from golden\n{}", outcome.diff());
    } else {
        eprint!("{}", outcome.output);
    }
    let v = json!({"schema": 1, "kind": "repro", "bundle": bundle, "matches": outcome.matches});
    Ok((
        v,
        if outcome.matches {
            EXIT_OK
        } else {
            EXIT_INCONCLUSIVE
        },
    ))
}
