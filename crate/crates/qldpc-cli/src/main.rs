//! `qldpc`: generate codes, decode syndrome files, run noise campaigns and
//! latency benchmarks.

mod check;
mod io;

use std::fs::{self, File};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use qldpc::bench::{host_descriptor, run_bench, BenchConfig, BenchRecord};
use qldpc::code::{build_bb_code, builtin, save_alist, save_css_json};
use qldpc::decoder::{Arithmetic, CssDecoder, DecoderConfig, MinSumDecoder, WorkerPool};
use qldpc::noise::{run_campaign, NoiseKind, NoiseModel};
use qldpc::CssCode;
use serde::Serialize;

use check::{DecodeRow, TrialRow};

#[derive(Parser)]
#[command(name = "qldpc", version, about = "Min-sum decoding for quantum LDPC codes")]
#[command(args_conflicts_with_subcommands = true, arg_required_else_help = true)]
struct Cli {
    /// Re-read a CSV written by this tool and validate it.
    #[arg(long, value_name = "FILE")]
    check: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Write a code as JSON plus one alist file per check matrix.
    GenCode(GenCodeArgs),
    /// Decode a file of syndromes.
    Decode(DecodeArgs),
    /// Monte Carlo decoding campaign.
    Simulate(SimulateArgs),
    /// Latency benchmark.
    Bench(BenchArgs),
    /// Same as `--check FILE`.
    Check { file: PathBuf },
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["name", "bb"])))]
struct GenCodeArgs {
    /// Built-in code name, or `all`.
    #[arg(long)]
    name: Option<String>,
    /// Bivariate bicycle parameters `l,m,A,B`, e.g. `6,6,x^3+y+y^2,y^3+x+x^2`.
    #[arg(long)]
    bb: Option<String>,
    /// Name for a `--bb` code.
    #[arg(long, requires = "bb")]
    label: Option<String>,
    /// Output directory.
    #[arg(long, env = io::CODE_DIR_ENV, default_value = ".")]
    out: PathBuf,
}

#[derive(Args, Clone)]
struct DecoderArgs {
    #[arg(long, default_value_t = 0.8)]
    alpha: f64,
    #[arg(long, default_value_t = 10)]
    iters: usize,
    #[arg(long, default_value = "float")]
    mode: Arithmetic,
    #[arg(long)]
    no_early_term: bool,
    /// Integer-mode value scale (defaults: 8 for int8, 256 for int16).
    #[arg(long)]
    quant_scale: Option<f64>,
}

impl DecoderArgs {
    fn config(&self) -> DecoderConfig {
        DecoderConfig {
            quant_scale: self.quant_scale,
            ..DecoderConfig::default()
                .with_alpha(self.alpha)
                .with_max_iterations(self.iters)
                .with_arithmetic(self.mode)
                .with_early_termination(!self.no_early_term)
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Species {
    /// X errors: syndromes of length rows(H_Z).
    X,
    /// Z errors: syndromes of length rows(H_X).
    Z,
    /// `s_X ++ s_Z`, decoded to `ê_X ++ ê_Z`.
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct DecodeArgs {
    /// Code JSON file or built-in name.
    #[arg(long)]
    code: String,
    #[arg(long)]
    syndromes: PathBuf,
    #[command(flatten)]
    decoder: DecoderArgs,
    #[arg(long, value_enum, default_value = "both")]
    species: Species,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Output file; standard output by default.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    code: String,
    #[arg(long, default_value = "independent-xz")]
    noise: NoiseKind,
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    decoder: DecoderArgs,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Per-trial CSV log.
    #[arg(long)]
    log: Option<PathBuf>,
    /// Write each trial's `s_X ++ s_Z` as a syndrome file.
    #[arg(long)]
    syndromes_out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Code files or built-in names; every verified built-in by default.
    #[arg(long, value_delimiter = ',')]
    code: Vec<String>,
    #[arg(long, value_delimiter = ',', default_values_t = [1usize, 16, 64])]
    batch: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = [Arithmetic::Float])]
    mode: Vec<Arithmetic>,
    #[arg(long, default_value_t = 100)]
    warmup: usize,
    #[arg(long, default_value_t = 1000)]
    measure: usize,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long, default_value_t = 0.8)]
    alpha: f64,
    #[arg(long, default_value_t = 10)]
    iters: usize,
    /// Stop decoding once the syndrome is met (off in the standard protocol).
    #[arg(long)]
    early_term: bool,
    /// Physical error rate of the benchmark syndromes.
    #[arg(long, default_value_t = 0.01)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV output file; standard output by default.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also write the rows and host description as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

fn output_writer(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn write_code(code: &CssCode, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let name = code.name();
    fs::write(dir.join(format!("{name}.json")), save_css_json(code))?;
    fs::write(dir.join(format!("{name}_hx.alist")), save_alist(code.hx()))?;
    fs::write(dir.join(format!("{name}_hz.alist")), save_alist(code.hz()))?;
    println!("{name}: {} -> {}", code.params(), dir.join(format!("{name}.json")).display());
    Ok(())
}

fn gen_code(args: &GenCodeArgs) -> Result<()> {
    if let Some(spec) = &args.bb {
        let spec = io::parse_bb_spec(spec)?;
        let label = args.label.clone().unwrap_or_else(|| format!("bb{}", spec.num_qubits()));
        return write_code(&build_bb_code(label, &spec, None)?, &args.out);
    }
    match args.name.as_deref() {
        Some("all") => builtin::all()?.iter().try_for_each(|c| write_code(c, &args.out)),
        Some(name) => write_code(&builtin::code(name)?, &args.out),
        None => unreachable!("clap requires --name or --bb"),
    }
}

fn decode(args: &DecodeArgs) -> Result<()> {
    let code = io::resolve_code(&args.code)?;
    let config = args.decoder.config();
    let pool = WorkerPool::new(args.threads)?;
    let (mx, mz) = (code.hz().rows(), code.hx().rows());
    let rows: Vec<DecodeRow> = match args.species {
        Species::X | Species::Z => {
            let graph = match args.species {
                Species::X => code.x_error_graph(),
                _ => code.z_error_graph(),
            };
            let syndromes = io::read_syndromes(&args.syndromes, graph.num_checks())?;
            let decoder = MinSumDecoder::new(graph, config)?;
            decoder
                .decode_batch_in(&pool, &syndromes)?
                .into_iter()
                .enumerate()
                .map(|(index, o)| DecodeRow {
                    index,
                    converged: o.converged,
                    iterations_used: o.iterations_used,
                    e_hat: o.e_hat.to_hex(),
                })
                .collect()
        }
        Species::Both => {
            let syndromes = io::read_syndromes(&args.syndromes, mx + mz)?;
            let pairs: Vec<_> = syndromes.iter().map(|s| (s.slice(0, mx), s.slice(mx, mx + mz))).collect();
            let decoder = CssDecoder::new(&code, config)?;
            pool.install(|| decoder.decode_batch(&pairs))?
                .into_iter()
                .enumerate()
                .map(|(index, o)| DecodeRow {
                    index,
                    converged: o.x.converged && o.z.converged,
                    iterations_used: o.x.iterations_used.max(o.z.iterations_used),
                    e_hat: o.x.e_hat.concat(&o.z.e_hat).to_hex(),
                })
                .collect()
        }
    };
    let mut out = output_writer(args.output.as_deref())?;
    match args.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for row in &rows {
                w.serialize(row)?;
            }
            if rows.is_empty() {
                w.write_record(check::DECODE_COLUMNS)?;
            }
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &rows)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn simulate(args: &SimulateArgs) -> Result<()> {
    let code = io::resolve_code(&args.code)?;
    let model = NoiseModel::new(args.noise, args.p, args.seed)?;
    let pool = WorkerPool::new(args.threads)?;
    let summary = pool.install(|| run_campaign(&code, &model, args.trials, &args.decoder.config()))?;
    if let Some(path) = &args.log {
        let mut w = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
        if summary.records.is_empty() {
            w.write_record(check::TRIAL_COLUMNS)?;
        }
        for r in &summary.records {
            w.serialize(TrialRow {
                trial: r.trial,
                e_x: r.e_x.to_hex(),
                e_z: r.e_z.to_hex(),
                e_hat_x: r.e_hat_x.to_hex(),
                e_hat_z: r.e_hat_z.to_hex(),
                converged_x: r.converged_x,
                converged_z: r.converged_z,
                iterations_x: r.iterations_x,
                iterations_z: r.iterations_z,
                classification: r.classification.as_str().into(),
                baseline: r.baseline.as_str().into(),
            })?;
        }
        w.flush()?;
    }
    if let Some(path) = &args.syndromes_out {
        let mut text = format!("# s_X ++ s_Z, {} trials of {} at p = {}\n", summary.trials, code.name(), args.p);
        for r in &summary.records {
            text.push_str(&r.s_x.concat(&r.s_z).to_bit_string());
            text.push('\n');
        }
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    println!("{}", serde_json::to_string_pretty(&summary)?);
    Ok(())
}

#[derive(Serialize)]
struct BenchReport<'a> {
    host: String,
    records: &'a [BenchRecord],
}

fn bench(args: &BenchArgs) -> Result<()> {
    let codes: Vec<CssCode> = if args.code.is_empty() {
        builtin::all()?
    } else {
        args.code.iter().map(|c| io::resolve_code(c)).collect::<Result<_>>()?
    };
    let noise = NoiseModel::new(NoiseKind::IndependentXz, args.p, args.seed)?;
    let mut records = Vec::new();
    let mut w = csv::Writer::from_writer(output_writer(args.output.as_deref())?);
    for code in &codes {
        for &mode in &args.mode {
            for &batch in &args.batch {
                let config = BenchConfig {
                    decoder: DecoderConfig::latency_protocol()
                        .with_arithmetic(mode)
                        .with_alpha(args.alpha)
                        .with_max_iterations(args.iters)
                        .with_early_termination(args.early_term),
                    batch,
                    warmup: args.warmup,
                    measure: args.measure,
                    threads: args.threads,
                    noise,
                };
                let run = run_bench(code, &config)?;
                w.serialize(&run.record)?;
                w.flush()?;
                records.push(run.record);
            }
        }
    }
    if let Some(path) = &args.json {
        let report = BenchReport {
            host: host_descriptor(),
            records: &records,
        };
        fs::write(path, serde_json::to_string_pretty(&report)?)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    if let Some(path) = &cli.check {
        println!("{}", check::check_file(path)?);
        return Ok(());
    }
    match cli.command {
        Some(Command::GenCode(a)) => gen_code(&a),
        Some(Command::Decode(a)) => decode(&a),
        Some(Command::Simulate(a)) => simulate(&a),
        Some(Command::Bench(a)) => bench(&a),
        Some(Command::Check { file }) => {
            println!("{}", check::check_file(&file)?);
            Ok(())
        }
        None => bail!("no command given"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
