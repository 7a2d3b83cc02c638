//! `mindtrace` command-line tool.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use mindtrace::eval::{
    calibration_stats, compute_gap, count_tokens, read_accuracy_csv, read_audit_log, run_eval,
    EvalConfig, Mode,
};
use mindtrace::prover::{prove, AdapterRegistry, ProverConfig};
use mindtrace::synth::{
    check_scenario, false_belief_config, generate_story, nested_config, suite_config, GenConfig,
    Mismatch, Regime,
};
use mindtrace::{build_trace, parse_scenario, AgentId, Scenario, TraceConfig};

#[derive(Parser)]
#[command(
    name = "mindtrace",
    version,
    about = "Perspective-tracking theory-of-mind solver and evaluator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate scenario files and write a report bundle.
    Eval(EvalArgs),
    /// Generate synthetic scenarios as line-delimited records.
    Gen(GenArgs),
    /// Check engine and prover against the brute-force oracle.
    Verify(VerifyArgs),
    /// Per-benchmark and macro gap between two accuracy tables.
    Gap(GapArgs),
    /// Calibration statistics from an audit log.
    Calib(CalibArgs),
    /// Count proxy tokens in a file or stdin.
    Tokens(TokensArgs),
    /// Print the belief trace and proof for one scenario.
    Trace(TraceArgs),
}

#[derive(Args)]
struct EvalArgs {
    /// Scenario files, one record per line.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long, default_value = "symbolic")]
    mode: String,
    /// Adapter used for abstentions in adapter mode.
    #[arg(long, default_value = "null")]
    adapter: String,
    #[arg(long)]
    max_order: Option<usize>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Report directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    /// Mixed regimes and orders drawn from each seed.
    Suite,
    FalseBelief,
    /// Nested regime at `--order`.
    Nested,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value = "false_belief")]
    regime: String,
    #[arg(long, default_value_t = 3)]
    agents: usize,
    #[arg(long, default_value_t = 2)]
    rooms: usize,
    #[arg(long, default_value_t = 4)]
    containers: usize,
    #[arg(long, default_value_t = 2)]
    objects: usize,
    #[arg(long, default_value_t = 10)]
    events: usize,
    #[arg(long, default_value_t = 1)]
    order: usize,
    #[arg(long, default_value_t = 0.2)]
    communication_rate: f64,
    #[arg(long, default_value_t = 0.3)]
    deception_rate: f64,
    #[arg(long, default_value_t = 0.2)]
    distractor_rate: f64,
    /// First seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of consecutive seeds.
    #[arg(long, default_value_t = 1)]
    seeds: u64,
    /// Derive the other settings from each seed instead of the flags.
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 10_000)]
    seeds: u64,
    #[arg(long, default_value_t = 0)]
    start: u64,
    /// Belief tables are compared at least to this depth.
    #[arg(long, default_value_t = 2)]
    min_order: usize,
    /// Mismatches printed in full.
    #[arg(long, default_value_t = 10)]
    show: usize,
}

#[derive(Args)]
struct GapArgs {
    #[arg(long)]
    model_csv: PathBuf,
    #[arg(long)]
    sym_csv: PathBuf,
    /// Also write the gap table to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CalibArgs {
    #[arg(long)]
    audit_log: PathBuf,
}

#[derive(Args)]
struct TokensArgs {
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct TraceArgs {
    input: PathBuf,
    /// Scenario id; the first record when absent.
    #[arg(long)]
    id: Option<String>,
    /// Perspective to trace; the question holder when absent.
    #[arg(long)]
    agent: Option<String>,
    #[arg(long, default_value_t = 2)]
    max_order: usize,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn eval(args: EvalArgs) -> Result<ExitCode> {
    let cfg = EvalConfig {
        mode: args.mode.parse::<Mode>()?,
        adapter: args.adapter,
        max_order: args.max_order,
        workers: args.workers,
        ..EvalConfig::default()
    };
    let report = run_eval(&args.inputs, &cfg, &AdapterRegistry::default())?;
    print!("{}", report.summary_text());
    if let Some(out) = &args.out {
        report
            .write_bundle(out)
            .with_context(|| format!("cannot write report to {}", out.display()))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn gen(args: GenArgs) -> Result<ExitCode> {
    let regime: Regime = args.regime.parse()?;
    let mut lines = String::new();
    for seed in args.seed..args.seed + args.seeds {
        let cfg = match args.preset {
            Some(Preset::Suite) => suite_config(seed),
            Some(Preset::FalseBelief) => false_belief_config(seed),
            Some(Preset::Nested) => nested_config(seed, args.order),
            None => GenConfig {
                n_agents: args.agents,
                n_rooms: args.rooms,
                n_containers: args.containers,
                n_objects: args.objects,
                n_events: args.events,
                belief_order: args.order,
                communication_rate: args.communication_rate,
                deception_rate: args.deception_rate,
                distractor_rate: args.distractor_rate,
                regime,
                seed,
            },
        };
        let (scenario, _) = generate_story(&cfg).with_context(|| format!("seed {seed}"))?;
        lines.push_str(&scenario.to_record());
        lines.push('\n');
    }
    match &args.out {
        Some(path) => std::fs::write(path, lines)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => std::io::stdout().write_all(lines.as_bytes())?,
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let (mut tables, mut steps, mut bad, mut abstained) = (0, 0, 0, 0);
    let mut unsound = 0;
    for seed in args.start..args.start + args.seeds {
        let (s, _) = generate_story(&suite_config(seed))?;
        let report = check_scenario(&s, s.question.target_path.len().max(args.min_order));
        tables += report.tables_compared;
        steps += report.proof_steps_checked;
        abstained += usize::from(report.prover_abstained);
        for m in &report.mismatches {
            unsound += usize::from(matches!(m, Mismatch::Unsound { .. }));
            if bad < args.show {
                println!("{}: {m}", s.id);
            }
            bad += 1;
        }
    }
    println!(
        "scenarios: {}\ntables compared: {tables}\nproof steps checked: {steps}\nprover abstained: {abstained}\nmismatches: {bad}\nunsound citations: {unsound}",
        args.seeds
    );
    Ok(if bad == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn gap(args: GapArgs) -> Result<ExitCode> {
    let model = read_accuracy_csv(&read(&args.model_csv)?)
        .with_context(|| args.model_csv.display().to_string())?;
    let sym = read_accuracy_csv(&read(&args.sym_csv)?)
        .with_context(|| args.sym_csv.display().to_string())?;
    let missing: Vec<&String> = model
        .keys()
        .filter(|b| !sym.contains_key(*b))
        .chain(sym.keys().filter(|b| !model.contains_key(*b)))
        .collect();
    if !missing.is_empty() {
        bail!("benchmarks present in only one table: {missing:?}");
    }
    let pairs: Vec<(&String, f64, f64)> = model.iter().map(|(b, m)| (b, *m, sym[b])).collect();
    let table = compute_gap(&pairs)?.to_csv();
    print!("{table}");
    if let Some(out) = &args.out {
        std::fs::write(out, &table).with_context(|| format!("cannot write {}", out.display()))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn calib(args: CalibArgs) -> Result<ExitCode> {
    let log = read_audit_log(&read(&args.audit_log)?)?;
    let stats = calibration_stats(&log)?;
    println!("records: {}", stats.records);
    println!("rejects: {}", stats.rejects);
    println!(
        "rejected_proof_correctness: {}",
        stats.rejected_proof_correctness
    );
    println!("override_precision: {}", stats.override_precision);
    Ok(ExitCode::SUCCESS)
}

fn tokens(args: TokensArgs) -> Result<ExitCode> {
    let text = match &args.file {
        Some(path) => read(path)?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    println!("{}", count_tokens(&text));
    Ok(ExitCode::SUCCESS)
}

fn trace(args: TraceArgs) -> Result<ExitCode> {
    let text = read(&args.input)?;
    let mut found: Option<Scenario> = None;
    for (i, line) in text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
    {
        let s = parse_scenario(line, i + 1)?;
        if args.id.as_ref().is_none_or(|id| *id == s.id) {
            found = Some(s);
            break;
        }
    }
    let Some(scenario) = found else {
        bail!("no matching scenario in {}", args.input.display());
    };
    let agent = match args.agent {
        Some(a) => AgentId::from(a.as_str()),
        None => scenario
            .question
            .target_path
            .first()
            .or_else(|| scenario.header.agents.first())
            .cloned()
            .context("scenario declares no agents")?,
    };
    let t = build_trace(&scenario, &agent, &TraceConfig::new(args.max_order))?;
    print!("{}", t.dump());
    let proof = prove(&scenario, &ProverConfig::default())?;
    println!("# proof");
    print!("{}", proof.answer.render());
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(a) => eval(a),
        Command::Gen(a) => gen(a),
        Command::Verify(a) => verify(a),
        Command::Gap(a) => gap(a),
        Command::Calib(a) => calib(a),
        Command::Tokens(a) => tokens(a),
        Command::Trace(a) => trace(a),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}
