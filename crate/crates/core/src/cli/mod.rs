//! Command-line frontend.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse error,
//! 3 invalid parameters, 4 method unsupported for the input.

mod record;

use std::ffi::OsString;
use std::io::{IsTerminal, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::analysis::{verify_theorem_suite, Suite, VerifyConfig};
use crate::arith::{crt_split, factorize};
use crate::characters::Character;
use crate::error::Error;
use crate::exec::Execution;
use crate::sequences::{parse_u64_list, SeqSpec, SpecError};
use crate::signal::{ComplexSeq, ZakArray};
use crate::transforms::{
    balanced_split, dft_character_closed, dft_naive_signed, fzt_character_closed_form,
    fzt_direct_signed, gtpf_dft_with, DFT_SIGN,
};

pub use record::{Format, Metadata, OutputRecord, Payload, RecordError, CONVENTION, VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;

/// Largest `--max-n` accepted by `verify`.
pub const MAX_N_CEILING: u64 = 10_000;

#[derive(Debug, Parser)]
#[command(name = "charzak", version, about = "Multiplicative characters, Gauss sums, prime-factor DFTs and finite Zak transforms")]
pub struct Cli {
    /// Run every kernel on the calling thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a sequence or character.
    Gen(GenArgs),
    /// DFT of a sequence, character or sequence file.
    Dft(DftArgs),
    /// Finite Zak transform with L rows.
    Fzt(FztArgs),
    /// Run the closed-form-vs-oracle verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; stdout when omitted.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Output format; defaults to the `--out` extension, else CSV.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct InputArgs {
    /// e.g. `jacobi:15`, `modified-jacobi:3,5`, `golomb:3,5`,
    /// `golomb-prime:7`, `modified-legendre:7`, `character:45:l=1,1`.
    pub spec: Option<String>,
    /// A sequence file written by `gen`.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub spec: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DftMethod {
    Naive,
    Closed,
    Gtpf,
}

#[derive(Debug, Args)]
pub struct DftArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "naive")]
    pub method: DftMethod,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FztMethod {
    Direct,
    Closed,
}

#[derive(Debug, Args)]
pub struct FztArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Number of rows; must divide the length.
    #[arg(long = "l", short = 'l')]
    pub l: u64,
    #[arg(long, value_enum, default_value = "direct")]
    pub method: FztMethod,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    FlipDftSign,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    #[arg(long, default_value_t = 105)]
    pub max_n: u64,
    /// Write the JSON report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Print the JSON report instead of the table.
    #[arg(long)]
    pub json: bool,
    #[arg(long, value_enum, hide = true)]
    pub fault_inject: Option<Fault>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Unsupported(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Unsupported(_) => EXIT_UNSUPPORTED,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        match e {
            SpecError::Parse { .. } => CliError::Parse(e.to_string()),
            SpecError::Invalid(inner) => inner.into(),
        }
    }
}

impl From<RecordError> for CliError {
    fn from(e: RecordError) -> Self {
        match e {
            RecordError::Io(io) => CliError::Invalid(io.to_string()),
            RecordError::Malformed(_) => CliError::Parse(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// What a spec string names: a sequence family or a character.
#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Sequence(SeqSpec),
    Character(Character),
}

impl FromStr for Source {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, SpecError> {
        let Some(body) = s.strip_prefix("character:") else {
            return s.parse().map(Source::Sequence);
        };
        let parse = |token: &str, reason: &str| SpecError::Parse {
            token: token.to_string(),
            reason: reason.to_string(),
        };
        let (n, labels) = body
            .split_once(':')
            .ok_or_else(|| parse(body, "expected `character:N:l=L1,L2,...`"))?;
        let n = parse_u64_list(n, 1)?[0];
        let labels = labels
            .trim()
            .strip_prefix("l=")
            .ok_or_else(|| parse(labels, "expected `l=` followed by component indices"))?;
        let count = labels.split(',').count();
        let labels = parse_u64_list(labels, count)?;
        Ok(Source::Character(Character::from_labels(n, &labels)?))
    }
}

impl Source {
    pub fn kind(&self) -> &'static str {
        match self {
            Source::Sequence(s) => s.kind(),
            Source::Character(_) => "character",
        }
    }

    pub fn len(&self) -> u64 {
        match self {
            Source::Sequence(s) => s.len(),
            Source::Character(c) => c.modulus(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Parameters joined by `;` for the record header.
    pub fn params(&self) -> String {
        let spec = match self {
            Source::Sequence(s) => s.to_string(),
            Source::Character(c) => {
                let labels: Vec<String> = c.labels().iter().map(u64::to_string).collect();
                return format!("l={}", labels.join(";"));
            }
        };
        spec.split_once(':').map(|(_, p)| p.replace(',', ";")).unwrap_or_default()
    }

    pub fn generate(&self) -> crate::Result<ComplexSeq> {
        match self {
            Source::Sequence(s) => s.generate(),
            Source::Character(c) => Ok(ComplexSeq::new(c.to_complex())),
        }
    }
}

/// Input to a transform command: a parsed spec or a sequence read from disk.
struct Loaded {
    source: Option<Source>,
    kind: String,
    params: String,
    x: ComplexSeq,
}

fn load(input: &InputArgs) -> CliResult<Loaded> {
    if let Some(spec) = &input.spec {
        let source: Source = spec.parse()?;
        let x = source.generate()?;
        return Ok(Loaded {
            kind: source.kind().to_string(),
            params: source.params(),
            source: Some(source),
            x,
        });
    }
    let path = input.input.as_ref().expect("clap enforces one input");
    let rec = OutputRecord::read(path)?;
    let Payload::Sequence(x) = rec.payload else {
        return Err(CliError::Invalid(format!(
            "{} holds a Zak grid, not a sequence",
            path.display()
        )));
    };
    Ok(Loaded {
        source: None,
        kind: rec.meta.kind,
        params: rec.meta.params,
        x,
    })
}

fn metadata(kind: &str, n: u64, params: &str, transform: &str, method: Option<&str>) -> Metadata {
    Metadata {
        kind: kind.to_string(),
        n,
        params: params.to_string(),
        transform: transform.to_string(),
        method: method.map(str::to_string),
        rows: None,
        cols: None,
        convention: CONVENTION.to_string(),
        version: VERSION.to_string(),
    }
}

fn emit(rec: &OutputRecord, output: &OutputArgs, stdout: &mut dyn Write) -> CliResult<()> {
    match &output.out {
        Some(path) => {
            let format = output.format.unwrap_or_else(|| Format::from_path(path));
            rec.write_atomic(path, format)?;
        }
        None => {
            let format = output.format.unwrap_or(Format::Csv);
            stdout
                .write_all(rec.render(format).as_bytes())
                .map_err(|e| CliError::Invalid(e.to_string()))?;
        }
    }
    Ok(())
}

fn exec_of(cli_sequential: bool) -> Execution {
    if cli_sequential {
        Execution::Sequential
    } else {
        Execution::default()
    }
}

fn cmd_gen(args: &GenArgs, stdout: &mut dyn Write) -> CliResult<i32> {
    let source: Source = args.spec.parse()?;
    let x = source.generate()?;
    let rec = OutputRecord {
        meta: metadata(source.kind(), source.len(), &source.params(), "sequence", None),
        payload: Payload::Sequence(x),
    };
    emit(&rec, &args.output, stdout)?;
    Ok(EXIT_OK)
}

/// DFT of the loaded input by the requested method.
fn dft_of(loaded: &Loaded, method: DftMethod, exec: Execution) -> CliResult<ComplexSeq> {
    let n = loaded.x.len() as u64;
    match method {
        DftMethod::Naive => Ok(dft_naive_signed(&loaded.x, DFT_SIGN, exec)),
        DftMethod::Gtpf => {
            let split = balanced_split(&factorize(n)?).ok_or_else(|| {
                CliError::Unsupported(format!("gtpf needs a coprime split of {n}; none exists"))
            })?;
            Ok(gtpf_dft_with(&loaded.x, &split, exec)?)
        }
        DftMethod::Closed => match &loaded.source {
            Some(Source::Sequence(s)) => Ok(s.dft_closed()?),
            Some(Source::Character(c)) => {
                if !c.is_primitive() {
                    return Err(CliError::Unsupported(format!(
                        "{c} is not primitive; no closed-form DFT"
                    )));
                }
                Ok(dft_character_closed(c)?)
            }
            None => Err(CliError::Unsupported(
                "closed-form DFT needs a SPEC, not a data file".into(),
            )),
        },
    }
}

fn cmd_dft(args: &DftArgs, exec: Execution, stdout: &mut dyn Write) -> CliResult<i32> {
    let loaded = load(&args.input)?;
    let hat = dft_of(&loaded, args.method, exec)?;
    let method = args.method.to_possible_value().expect("not skipped");
    let rec = OutputRecord {
        meta: metadata(&loaded.kind, hat.len() as u64, &loaded.params, "dft", Some(method.get_name())),
        payload: Payload::Sequence(hat),
    };
    emit(&rec, &args.output, stdout)?;
    Ok(EXIT_OK)
}

fn fzt_of(loaded: &Loaded, l: u64, method: FztMethod, exec: Execution) -> CliResult<ZakArray> {
    let n = loaded.x.len() as u64;
    if l == 0 || n % l != 0 {
        return Err(Error::NotDivisor {
            l: l as usize,
            n: n as usize,
        }
        .into());
    }
    match method {
        FztMethod::Direct => Ok(fzt_direct_signed(&loaded.x, l as usize, DFT_SIGN, exec)?),
        FztMethod::Closed => {
            let unsupported = || {
                CliError::Unsupported(format!(
                    "no closed-form Zak transform for this input with l={l}"
                ))
            };
            match &loaded.source {
                Some(Source::Sequence(s)) => s.fzt_closed(l).ok_or_else(unsupported)?.map_err(Into::into),
                Some(Source::Character(c)) => {
                    let r1 = n / l;
                    if crt_split(n, r1, l).is_err() {
                        return Err(unsupported());
                    }
                    let chi1 = c.restrict(r1)?;
                    let chi2 = c.restrict(l)?;
                    if !chi2.is_primitive() {
                        return Err(unsupported());
                    }
                    Ok(fzt_character_closed_form(&chi1, &chi2)?)
                }
                None => Err(unsupported()),
            }
        }
    }
}

fn cmd_fzt(args: &FztArgs, exec: Execution, stdout: &mut dyn Write) -> CliResult<i32> {
    let loaded = load(&args.input)?;
    let grid = fzt_of(&loaded, args.l, args.method, exec)?;
    let method = args.method.to_possible_value().expect("not skipped");
    let mut meta = metadata(&loaded.kind, grid.n() as u64, &loaded.params, "fzt", Some(method.get_name()));
    meta.rows = Some(grid.rows());
    meta.cols = Some(grid.cols());
    let rec = OutputRecord {
        meta,
        payload: Payload::Grid(grid),
    };
    emit(&rec, &args.output, stdout)?;
    Ok(EXIT_OK)
}

fn cmd_verify(args: &VerifyArgs, exec: Execution, stdout: &mut dyn Write) -> CliResult<i32> {
    if args.max_n < 3 || args.max_n > MAX_N_CEILING {
        return Err(CliError::Invalid(format!(
            "--max-n must lie in [3, {MAX_N_CEILING}], got {}",
            args.max_n
        )));
    }
    let config = VerifyConfig {
        suite: args.suite,
        max_n: args.max_n,
        oracle_sign: match args.fault_inject {
            Some(Fault::FlipDftSign) => -DFT_SIGN,
            None => DFT_SIGN,
        },
        exec,
    };
    let report = verify_theorem_suite(&config)?;
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    if let Some(path) = &args.report {
        let dir = match path.parent() {
            Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
            _ => PathBuf::from("."),
        };
        let io = |e: std::io::Error| CliError::Invalid(e.to_string());
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
        tmp.write_all(json.as_bytes()).map_err(io)?;
        tmp.persist(path).map_err(|e| io(e.error))?;
    }
    let text = if args.json {
        json + "\n"
    } else {
        let color = std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal();
        report.render_table_colored(color)
    };
    stdout
        .write_all(text.as_bytes())
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    Ok(if report.passed {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}

/// Runs an already-parsed command, writing results to `stdout`.
pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> CliResult<i32> {
    let exec = exec_of(cli.sequential);
    match &cli.command {
        Command::Gen(a) => cmd_gen(a, stdout),
        Command::Dft(a) => cmd_dft(a, exec, stdout),
        Command::Fzt(a) => cmd_fzt(a, exec, stdout),
        Command::Verify(a) => cmd_verify(a, exec, stdout),
    }
}

/// Parses `args` (program name first) and runs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match execute(&cli, &mut lock) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (CliResult<i32>, String) {
        let cli = Cli::try_parse_from(std::iter::once("charzak").chain(args.iter().copied())).unwrap();
        let mut buf = Vec::new();
        let r = execute(&cli, &mut buf);
        (r, String::from_utf8(buf).unwrap())
    }

    fn code(args: &[&str]) -> i32 {
        match run_capture(args).0 {
            Ok(c) => c,
            Err(e) => e.exit_code(),
        }
    }

    #[test]
    fn source_parsing() {
        assert!(matches!("golomb:3,5".parse::<Source>(), Ok(Source::Sequence(_))));
        let Ok(Source::Character(c)) = "character:45:l=1,1".parse::<Source>() else {
            panic!()
        };
        assert_eq!(c.modulus(), 45);
        assert_eq!(c.labels(), vec![1, 1]);
        assert!(matches!("character:45:l=1".parse::<Source>(), Err(SpecError::Invalid(_))));
        assert!(matches!("character:45:1,1".parse::<Source>(), Err(SpecError::Parse { .. })));
        assert!(matches!("golomb:x,5".parse::<Source>(), Err(SpecError::Parse { token, .. }) if token == "x"));
    }

    #[test]
    fn params_field() {
        assert_eq!("golomb:3,5".parse::<Source>().unwrap().params(), "3;5");
        assert_eq!("jacobi:15".parse::<Source>().unwrap().params(), "15");
        assert_eq!("character:45:l=1,1".parse::<Source>().unwrap().params(), "l=1;1");
    }

    #[test]
    fn gen_jacobi_to_stdout() {
        let (r, out) = run_capture(&["gen", "jacobi:15"]);
        assert_eq!(r.unwrap(), 0);
        let rec = OutputRecord::parse(&out).unwrap();
        let Payload::Sequence(x) = rec.payload else { panic!() };
        assert_eq!(x.iter().filter(|v| v.norm() > 0.0).count(), 8);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(code(&["gen", "golomb:4,6"]), EXIT_INVALID);
        assert_eq!(code(&["gen", "golomb:3"]), EXIT_PARSE);
        assert_eq!(code(&["gen", "wobble:3"]), EXIT_PARSE);
        assert_eq!(code(&["gen", "golomb:5,3"]), EXIT_INVALID);
        assert_eq!(code(&["dft", "character:15:l=0,1", "--method", "closed"]), EXIT_UNSUPPORTED);
        assert_eq!(code(&["dft", "golomb-prime:7", "--method", "gtpf"]), EXIT_UNSUPPORTED);
        assert_eq!(code(&["fzt", "golomb:3,5", "--l", "4"]), EXIT_INVALID);
        assert_eq!(code(&["fzt", "golomb:3,5", "--l", "3", "--method", "closed"]), EXIT_UNSUPPORTED);
        assert_eq!(code(&["verify", "--max-n", "20000"]), EXIT_INVALID);
        assert_eq!(code(&["verify", "--suite", "characters", "--max-n", "9"]), EXIT_OK);
        assert_eq!(
            code(&["verify", "--suite", "characters", "--max-n", "9", "--fault-inject", "flip-dft-sign"]),
            EXIT_VERIFY_FAILED
        );
    }

    #[test]
    fn closed_and_naive_agree() {
        for spec in ["character:15:l=1,1", "jacobi:15", "golomb:3,5", "modified-legendre:7"] {
            let (_, closed) = run_capture(&["dft", spec, "--method", "closed"]);
            let (_, naive) = run_capture(&["dft", spec, "--method", "naive"]);
            let (Payload::Sequence(a), Payload::Sequence(b)) = (
                OutputRecord::parse(&closed).unwrap().payload,
                OutputRecord::parse(&naive).unwrap().payload,
            ) else {
                panic!()
            };
            assert!(a.max_abs_diff(&b).unwrap() < 1e-9, "{spec}");
        }
    }

    #[test]
    fn fzt_character_closed() {
        let (r, closed) = run_capture(&["fzt", "character:45:l=1,1", "--l", "5", "--method", "closed"]);
        assert_eq!(r.unwrap(), 0);
        let (_, direct) = run_capture(&["fzt", "character:45:l=1,1", "--l", "5"]);
        let (Payload::Grid(a), Payload::Grid(b)) = (
            OutputRecord::parse(&closed).unwrap().payload,
            OutputRecord::parse(&direct).unwrap().payload,
        ) else {
            panic!()
        };
        assert_eq!((a.rows(), a.cols()), (5, 9));
        assert!(a.max_abs_diff(&b).unwrap() < 1e-9 * 45.0);
    }
}
