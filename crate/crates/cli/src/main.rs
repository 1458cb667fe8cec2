use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hypertrans::selftest::{run_all, SelftestOptions};
use hypertrans::{apply, kernel_for, run_campaign, CampaignConfig, Error, Mutation, RoundtripFamily, Sequence, Tag, TransformSpec};

const EXIT_FAIL: u8 = 1;
const EXIT_PARAM: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "hypertrans", version, about = "Exact sequence transforms and identity verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a transform to a sequence prefix and print the result as JSON.
    Transform {
        /// Sequence JSON: {"seq": [[re, im], ...]}
        #[arg(long = "in")]
        input: PathBuf,
        /// Transform JSON, e.g. {"kind": "L", "a": "3/2"}
        #[arg(long)]
        spec: PathBuf,
    },
    /// Run a seeded verification campaign and print the report as JSON.
    Verify {
        #[arg(long)]
        id: String,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        nmax: usize,
        #[arg(long)]
        seed: u64,
        /// Directory to also write the report to, as <id>-seed<seed>.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance criteria.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Flip the sign of the (2,1) coefficient of this family's kernel.
        #[arg(long, hide = true)]
        mutate: Option<MutateFamily>,
        /// Apply the flip to the inverse kernel instead.
        #[arg(long, hide = true, requires = "mutate")]
        mutate_inverse: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MutateFamily {
    #[value(name = "L")]
    L,
    #[value(name = "Ltilde")]
    LTilde,
    #[value(name = "Lab")]
    Lab,
    #[value(name = "binomial")]
    Binomial,
}

impl From<MutateFamily> for RoundtripFamily {
    fn from(f: MutateFamily) -> Self {
        match f {
            MutateFamily::L => RoundtripFamily::L,
            MutateFamily::LTilde => RoundtripFamily::LTilde,
            MutateFamily::Lab => RoundtripFamily::Lab,
            MutateFamily::Binomial => RoundtripFamily::Binomial,
        }
    }
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => EXIT_INPUT,
            Error::NonTerminating => EXIT_INPUT,
            _ => EXIT_PARAM,
        };
        Failure { code, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INPUT) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Transform { input, spec } => transform(&input, &spec),
        Command::Verify { id, trials, nmax, seed, out } => verify(&id, trials, nmax, seed, out.as_deref()),
        Command::Selftest { seed, mutate, mutate_inverse } => {
            let mutation = mutate.map(|f| Mutation { family: f.into(), inverse: mutate_inverse });
            selftest(SelftestOptions { seed, mutation })
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::input(format!("malformed {what} in {}: {e}", path.display())))
}

fn transform(input: &Path, spec: &Path) -> Result<u8, Failure> {
    let x: Sequence = read_json(input, "sequence")?;
    let spec: TransformSpec = read_json(spec, "transform spec")?;
    let kernel = kernel_for(&spec)?;
    let y = apply(&kernel, &x);
    println!("{}", serde_json::to_string(&y).expect("sequence serializes"));
    Ok(0)
}

fn verify(id: &str, trials: usize, n_max: usize, seed: u64, out: Option<&Path>) -> Result<u8, Failure> {
    let tag: Tag = id.parse()?;
    let report = run_campaign(&CampaignConfig::new(tag, trials, n_max, seed))?;
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    println!("{json}");
    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(|e| Failure::input(format!("cannot create {}: {e}", dir.display())))?;
        let path = dir.join(report.file_name());
        fs::write(&path, format!("{json}\n"))
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(if report.passed() { 0 } else { EXIT_FAIL })
}

fn selftest(opts: SelftestOptions) -> Result<u8, Failure> {
    let results = run_all(&opts, true, |r| println!("{r}"));
    match results.iter().find(|r| !r.passed) {
        None => {
            println!("selftest: all {} criteria passed", results.len());
            Ok(0)
        }
        Some(first) => {
            let tag = first.failing_tag.as_deref().map(|t| format!(" ({t})")).unwrap_or_default();
            println!("selftest: criterion {} [{}] failed{tag}", first.number, first.name);
            Ok(EXIT_FAIL)
        }
    }
}
