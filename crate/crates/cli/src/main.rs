use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qldpc_core::alist::{parse_css_pair, write_alist};
use qldpc_core::analysis::{Analyzer, DEFAULT_BUDGET};
use qldpc_core::bp::{BpDecoder, BpStatus, BpUfDecoder, BpUfStage};
use qldpc_core::constructions::{steane_code, toric_code};
use qldpc_core::montecarlo::{run_trials, DecoderKind, RunConfig, TrialRunner};
use qldpc_core::tanner::TannerGraph;
use qldpc_core::uf::UnionFindDecoder;
use qldpc_core::{BitVector, CssCode, Error};

const EXIT_ERROR: u8 = 1;
const EXIT_FLAGGED: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;
const EXIT_USAGE: u8 = 64;

/// Decoding and analysis tools for quantum LDPC codes in CSS form.
#[derive(Parser)]
#[command(name = "qldpc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print code parameters.
    Info(InfoArgs),
    /// Decode one syndrome and write the correction support.
    Decode(DecodeArgs),
    /// Monte Carlo failure rates under bit-flip noise.
    Sim(SimArgs),
    /// Covering radii of all errors up to a given weight.
    Radius(RadiusArgs),
    /// Syndrome-to-error weight ratios of reduced errors up to a given weight.
    Soundness(SoundnessArgs),
    /// Write H_X and H_Z as alist files.
    Export(ExportArgs),
}

#[derive(Args)]
struct CodeArgs {
    /// Built-in code: "toric:D,i,L" or "steane".
    #[arg(long, conflicts_with_all = ["hx", "hz"], required_unless_present_all = ["hx", "hz"])]
    code: Option<String>,
    /// alist file with H_X.
    #[arg(long, requires = "hz")]
    hx: Option<PathBuf>,
    /// alist file with H_Z.
    #[arg(long, requires = "hx")]
    hz: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SyndromeFormat {
    /// Bits if the file holds exactly r_Z zeros and ones, indices otherwise.
    Auto,
    Bits,
    Indices,
}

#[derive(Args)]
struct InfoArgs {
    #[command(flatten)]
    code: CodeArgs,
}

#[derive(Args)]
struct DecodeArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Syndrome file: a 0/1 string or 0-based check indices, whitespace separated.
    #[arg(long)]
    syndrome: PathBuf,
    #[arg(long, value_enum, default_value_t = SyndromeFormat::Auto)]
    syndrome_format: SyndromeFormat,
    /// uf, bp or bp+uf.
    #[arg(long, default_value = "uf")]
    decoder: DecoderKind,
    /// Physical error rate used as the BP prior.
    #[arg(short = 'p', long = "p")]
    p: Option<f64>,
    /// Output file; standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Comma-separated list of decoders.
    #[arg(long, value_delimiter = ',', default_value = "uf")]
    decoder: Vec<DecoderKind>,
    /// Comma-separated list of physical error rates.
    #[arg(short = 'p', long = "p", value_delimiter = ',', required = true)]
    p: Vec<f64>,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; all available cores if omitted. Results do not depend on it.
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct RadiusArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    wmax: u64,
    /// Maximum number of enumerated errors.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct SoundnessArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    wmax: u64,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long)]
    hx_out: PathBuf,
    #[arg(long)]
    hz_out: PathBuf,
}

/// Error caused by the arguments rather than by the data.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(message: impl Into<String>) -> anyhow::Error {
    Usage(message.into()).into()
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Usage>().is_some() {
        return EXIT_USAGE;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::InfeasibleSyndrome { .. }) => EXIT_INFEASIBLE,
        Some(Error::InvalidParameter(_) | Error::DimensionMismatch { .. } | Error::BudgetExceeded { .. }) => EXIT_USAGE,
        _ => EXIT_ERROR,
    }
}

fn parse_code_spec(spec: &str) -> Result<CssCode> {
    if spec == "steane" {
        return Ok(steane_code());
    }
    let Some(params) = spec.strip_prefix("toric:") else {
        return Err(usage(format!("unknown code '{spec}' (expected toric:D,i,L or steane)")));
    };
    let values: Vec<usize> = params
        .split(',')
        .map(|v| v.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| usage(format!("toric parameters must be integers, got '{params}'")))?;
    let [dim, cell_dim, side] = values[..] else {
        return Err(usage(format!("toric code needs three parameters D,i,L, got '{params}'")));
    };
    Ok(toric_code(dim, cell_dim, side)?.into_code())
}

fn file_stem(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn load_code(args: &CodeArgs) -> Result<CssCode> {
    match (&args.code, &args.hx, &args.hz) {
        (Some(spec), None, None) => parse_code_spec(spec),
        (None, Some(hx), Some(hz)) => {
            let read = |p: &Path| fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()));
            let (hx_text, hz_text) = (read(hx)?, read(hz)?);
            let name = format!("alist:{}:{}", file_stem(hx), file_stem(hz));
            parse_css_pair(&name, &hx_text, &hz_text)
                .with_context(|| format!("loading code from {} and {}", hx.display(), hz.display()))
        }
        _ => Err(usage("give either --code or both --hx and --hz")),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn render<T: Serialize>(rows: &[T], format: Format) -> Result<String> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in rows {
                w.serialize(row)?;
            }
            Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?)?)
        }
        Format::Json => Ok(serde_json::to_string_pretty(rows)? + "\n"),
    }
}

fn cmd_info(args: &InfoArgs) -> Result<u8> {
    let code = load_code(&args.code)?;
    let gz = TannerGraph::new(code.h_z());
    let gx = TannerGraph::new(code.h_x());
    println!("code={}", code.name());
    println!("n={}", code.n());
    println!("r_X={}", code.num_x_checks());
    println!("r_Z={}", code.num_z_checks());
    println!("k={}", code.num_logical());
    println!("max_check_weight_X={}", gx.max_check_weight());
    println!("max_check_weight_Z={}", gz.max_check_weight());
    println!("max_qubit_degree_X={}", gx.max_qubit_degree());
    println!("max_qubit_degree_Z={}", gz.max_qubit_degree());
    Ok(0)
}

fn parse_syndrome(text: &str, checks: usize, format: SyndromeFormat) -> Result<BitVector> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let looks_like_bits = !tokens.is_empty()
        && tokens.iter().all(|t| t.bytes().all(|b| b == b'0' || b == b'1'))
        && tokens.iter().map(|t| t.len()).sum::<usize>() == checks;
    let format = match format {
        SyndromeFormat::Auto if looks_like_bits => SyndromeFormat::Bits,
        SyndromeFormat::Auto => SyndromeFormat::Indices,
        f => f,
    };
    if format == SyndromeFormat::Bits {
        let bits = tokens.concat();
        return BitVector::from_bit_str(&bits)
            .filter(|v| v.len() == checks)
            .ok_or_else(|| usage(format!("expected {checks} syndrome bits, found '{bits}'")));
    }
    let mut sigma = BitVector::zeros(checks);
    for t in tokens {
        let i: usize = t.parse().map_err(|_| usage(format!("'{t}' is not a check index")))?;
        if i >= checks {
            return Err(usage(format!("check index {i} out of range (code has {checks} Z checks)")));
        }
        if sigma.get(i) {
            return Err(usage(format!("check index {i} listed twice")));
        }
        sigma.set(i, true);
    }
    Ok(sigma)
}

fn support_lines(v: &BitVector) -> String {
    v.iter_ones().map(|q| format!("{q}\n")).collect()
}

fn cmd_decode(args: &DecodeArgs) -> Result<u8> {
    let code = load_code(&args.code)?;
    let text = fs::read_to_string(&args.syndrome).with_context(|| format!("cannot read {}", args.syndrome.display()))?;
    let sigma = parse_syndrome(&text, code.num_z_checks(), args.syndrome_format)?;
    let prior = || {
        args.p
            .ok_or_else(|| usage(format!("decoder {} needs -p", args.decoder)))
    };
    let out = args.out.as_deref();
    match args.decoder {
        DecoderKind::UnionFind => {
            let c = UnionFindDecoder::new(&code).decode(&sigma)?;
            emit(out, &support_lines(&c.correction))?;
            eprintln!("uf: correction weight {} after {} growth rounds", c.correction.weight(), c.rounds);
            Ok(0)
        }
        DecoderKind::BeliefPropagation => {
            let res = BpDecoder::new(&code).decode_tuning_free(&sigma, prior()?)?;
            emit(out, &support_lines(&res.estimate))?;
            match res.status {
                BpStatus::Converged => {
                    eprintln!("bp: converged after {} rounds, weight {}", res.rounds_used, res.estimate.weight());
                    Ok(0)
                }
                BpStatus::Flagged => {
                    let residual = &code.syndrome(&res.estimate)? ^ &sigma;
                    eprintln!(
                        "bp: flagged after {} rounds; residual syndrome weight {}",
                        res.rounds_used,
                        residual.weight()
                    );
                    Ok(EXIT_FLAGGED)
                }
            }
        }
        DecoderKind::BpThenUf => {
            let (c, stage) = BpUfDecoder::new(&code).decode(&sigma, prior()?)?;
            emit(out, &support_lines(&c))?;
            let stage = match stage {
                BpUfStage::BeliefPropagation => "bp converged",
                BpUfStage::UnionFind => "bp flagged, uf fallback",
            };
            eprintln!("bp+uf: {stage}; correction weight {}", c.weight());
            Ok(0)
        }
    }
}

fn cmd_sim(args: &SimArgs) -> Result<u8> {
    let code = load_code(&args.code)?;
    if args.trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    if args.threads == Some(0) {
        return Err(usage("--threads must be at least 1"));
    }
    let configs: Vec<RunConfig> = args
        .p
        .iter()
        .flat_map(|&p| {
            args.decoder.iter().map(move |&decoder| RunConfig {
                decoder,
                p,
                trials: args.trials,
                seed: args.seed,
                threads: args.threads,
            })
        })
        .collect();
    for c in &configs {
        TrialRunner::new(&code, c.decoder, c.p)?;
    }
    let mut rows = Vec::with_capacity(configs.len());
    for c in &configs {
        let r = run_trials(&code, c)?;
        match r.wilson_interval(1.96) {
            Some((lo, hi)) => eprintln!(
                "{} {} p={}: {} failures in {} trials, per-logical 95% interval [{lo:.3e}, {hi:.3e}]",
                r.code,
                r.decoder,
                r.p,
                r.failures(),
                r.trials
            ),
            None => eprintln!("{} {} p={}: k = 0, per-logical rate undefined", r.code, r.decoder, r.p),
        }
        rows.push(r);
    }
    emit(args.out.as_deref(), &render(&rows, args.format)?)?;
    Ok(0)
}

#[derive(Serialize)]
struct RadiusRow {
    weight: usize,
    errors: usize,
    undetectable: usize,
    max_rho_cov: Option<usize>,
    max_rho_bar_cov: Option<usize>,
}

fn cmd_radius(args: &RadiusArgs) -> Result<u8> {
    let code = load_code(&args.code)?;
    let rows: Vec<RadiusRow> = Analyzer::new(&code)
        .radius_scan(args.wmax as usize, args.budget)?
        .into_iter()
        .map(|s| RadiusRow {
            weight: s.weight,
            errors: s.errors,
            undetectable: s.undetectable,
            max_rho_cov: s.max_error_radius,
            max_rho_bar_cov: s.max_syndrome_radius,
        })
        .collect();
    emit(args.out.as_deref(), &render(&rows, args.format)?)?;
    Ok(0)
}

#[derive(Serialize)]
struct SoundnessRow {
    weight: usize,
    reduced_errors: usize,
    min_ratio: Option<f64>,
}

fn cmd_soundness(args: &SoundnessArgs) -> Result<u8> {
    let code = load_code(&args.code)?;
    let report = Analyzer::new(&code).soundness_scan(args.wmax as usize, args.budget)?;
    let rows: Vec<SoundnessRow> = report
        .strata
        .iter()
        .map(|s| SoundnessRow {
            weight: s.weight,
            reduced_errors: s.reduced_errors,
            min_ratio: s.min_ratio,
        })
        .collect();
    match report.min_ratio {
        Some(alpha) => eprintln!("sound with alpha = {alpha} up to weight {}", args.wmax),
        None => eprintln!("no reduced errors up to weight {}", args.wmax),
    }
    emit(args.out.as_deref(), &render(&rows, args.format)?)?;
    Ok(0)
}

fn cmd_export(args: &ExportArgs) -> Result<u8> {
    let code = load_code(&args.code)?;
    emit(Some(&args.hx_out), &write_alist(code.h_x()))?;
    emit(Some(&args.hz_out), &write_alist(code.h_z()))?;
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Info(a) => cmd_info(a),
        Command::Decode(a) => cmd_decode(a),
        Command::Sim(a) => cmd_sim(a),
        Command::Radius(a) => cmd_radius(a),
        Command::Soundness(a) => cmd_soundness(a),
        Command::Export(a) => cmd_export(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
