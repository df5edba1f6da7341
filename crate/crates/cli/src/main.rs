use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use threept_core::current::bracket;
use threept_core::fock::{
    apply_heis, apply_osc, FockVector, HeisKind, HeisParams, HeisVariant, OscConfig, OscKind,
};
use threept_core::kahler::pairing;
use threept_core::realization::{apply_mode, RealizationConfig};
use threept_core::verify::{run, Suite, VerifyConfig};
use threept_core::{CurrentElem, Error, Generator, Rational, RingElem};

#[derive(Parser)]
#[command(
    name = "threept",
    version,
    about = "Exact computations in the three-point sl(2) current algebra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suites and write a JSON report.
    Verify(Box<VerifyArgs>),
    /// Kassel bracket of two current-algebra elements, e.g. "e[t^1]" "f[t^-1*u]".
    Bracket { x: String, y: String },
    /// Class of f dg in Omega/dR as coordinates on w0, w1.
    Reduce { f: String, g: String },
    /// Apply one mode operator to a Fock vector.
    #[command(allow_negative_numbers = true)]
    Apply(ApplyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// JSON config; unspecified fields take their defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Report destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    r: Option<Vec<u8>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    kappa0: Option<Vec<Rational>>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    varkappa: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    chi1: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<Rational>,
    /// "derived" or "paper".
    #[arg(long, value_parser = parse_variant)]
    heis_variant: Option<HeisVariant>,
    #[arg(long, allow_hyphen_values = true)]
    m_min: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    m_max: Option<i64>,
    #[arg(long)]
    degree_max: Option<usize>,
    /// Comma-separated subset of ring,kahler,current,oscillator,heisenberg,pairs,realization.
    #[arg(long, value_delimiter = ',', value_parser = parse_suite)]
    suites: Option<Vec<Suite>>,
}

#[derive(Args)]
struct ApplyArgs {
    /// A current (e, f, h, e1, f1, h1, w0, w1), an oscillator (a, a*, a1, a1*) or b, b1.
    op: String,
    mode: i64,
    /// Fock vector, e.g. "x_2*v0 - 1/2*y_-1*v1".
    state: String,
    #[arg(long, default_value_t = 0)]
    r: u8,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    kappa0: Rational,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    chi1: Rational,
    #[arg(long, value_parser = parse_variant, default_value = "derived")]
    heis_variant: HeisVariant,
}

fn parse_variant(s: &str) -> Result<HeisVariant, String> {
    serde_json::from_value(serde_json::Value::String(s.into())).map_err(|e| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    serde_json::from_value(serde_json::Value::String(s.into())).map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn verify(args: VerifyArgs) -> Result<(), Failure> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            VerifyConfig::from_json(&text)?
        }
        None => VerifyConfig::default(),
    };
    macro_rules! set {
        ($($field:ident),*) => { $(if let Some(v) = args.$field { cfg.$field = v; })* };
    }
    set!(
        r,
        kappa0,
        lambda,
        mu,
        nu,
        varkappa,
        chi1,
        c,
        heis_variant,
        m_min,
        m_max,
        degree_max,
        suites
    );
    let report = run(&cfg)?;
    let json = report.to_json();
    match &args.out {
        Some(path) => fs::write(path, json + "\n")
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        None => println!("{json}"),
    }
    for s in &report.suites {
        let status = match (s.passed(), s.asserted) {
            (true, _) => "pass",
            (false, true) => "FAIL",
            (false, false) => "fail (report only)",
        };
        eprintln!(
            "{:?}: {status} ({} checks, {} failures)",
            s.suite, s.checks, s.failures
        );
        for f in s.failing_families() {
            eprintln!("  {} [{}]: {}/{}", f.family, f.params, f.failures, f.checks);
        }
    }
    if report.summary.passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn apply(args: ApplyArgs) -> Result<(), Failure> {
    let v: FockVector = args.state.parse()?;
    let osc = OscConfig::new(args.r)?;
    let heis = HeisParams {
        kappa0: args.kappa0,
        chi1: args.chi1,
        variant: args.heis_variant,
        ..HeisParams::default()
    };
    let out = if let Some(k) = OscKind::ALL.into_iter().find(|k| k.name() == args.op) {
        apply_osc(k, args.mode, &v, osc)
    } else if let Some(k) = HeisKind::ALL.into_iter().find(|k| k.name() == args.op) {
        apply_heis(k, args.mode, &v, &heis)
    } else {
        let g: Generator = args.op.parse()?;
        let cfg = RealizationConfig::new(osc, heis)?;
        apply_mode(g, args.mode, &v, &cfg)
    };
    println!("{out}");
    Ok(())
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Verify(args) => verify(*args),
        Command::Bracket { x, y } => {
            let (x, y): (CurrentElem, CurrentElem) = (x.parse()?, y.parse()?);
            let b = bracket(&x, &y);
            println!("{b}");
            println!("c0 = {}, c1 = {}", b.central.c0, b.central.c1);
            Ok(())
        }
        Command::Reduce { f, g } => {
            let (f, g): (RingElem, RingElem) = (f.parse()?, g.parse()?);
            let c = pairing(&f, &g);
            println!("c0 = {}, c1 = {}", c.c0, c.c1);
            Ok(())
        }
        Command::Apply(args) => apply(args),
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
