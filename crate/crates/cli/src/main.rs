use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use afsat::af::{parse_apx, parse_tgf, ArgumentationFramework};
use afsat::bench::{
    ipc_score, manifest_grouping, parse_systems, run_bench, success_gnuplot, success_rate, BenchConfig, GroupBy,
    Isolation, DEFAULT_BUDGET, DESK_BUDGET,
};
use afsat::encoding::{dimacs_comments, encode, encode_complete, parse_dimacs, to_dimacs, EncodingId};
use afsat::enumerate::{
    credulous_accept, enumerate_complete_with_budget, enumerate_preferred_with_budget, Backend, EnumerateError,
    EnumerationResult,
};
use afsat::external::ExternalSolverConfig;
use afsat::generate::{gen_suite, generate, AttackCount, GenMethod, GenSpec, Manifest, SuiteSpec};
use afsat::oracle::{classify_all, ConstraintTerm, Verdict};
use afsat::sat::{Budget, Interrupt, SolveOutcome, Solver, SolverConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

#[derive(Parser)]
#[command(name = "afsat", version, about = "SAT-based reasoning over abstract argumentation frameworks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Read a framework and write it back, optionally in another format.
    #[command(alias = "convert")]
    Parse(ParseArgs),
    /// Write the CNF encoding of a framework as DIMACS.
    Encode(EncodeArgs),
    /// List preferred or complete extensions, or answer an acceptance query.
    Enumerate(EnumerateArgs),
    /// Generate a random framework or a whole benchmark suite.
    #[command(subcommand)]
    Generate(GenerateCommand),
    /// Classify all 64 subsets of the labelling constraint terms.
    Classify(ClassifyArgs),
    /// Run systems over a suite manifest and score them.
    Bench(BenchArgs),
    /// Solve a DIMACS file with the built-in solver, printing `s`/`v` lines.
    Solve(SolveArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Apx,
    Tgf,
}

#[derive(Args)]
struct InputArgs {
    /// Input file, or `-` for stdin.
    #[arg(default_value = "-")]
    input: String,
    /// Input format; guessed from the file extension when omitted (default apx).
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct ParseArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Output format.
    #[arg(long, value_enum, default_value = "apx")]
    to: Format,
    /// Output file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EncodeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value = "C2")]
    encoding: EncodingId,
    /// Leave out the clause requiring a non-empty in-set.
    #[arg(long)]
    allow_empty: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Semantics {
    Preferred,
    Complete,
}

#[derive(Args)]
struct SolverArgs {
    /// `builtin` or `ext:<path>` for an external DIMACS solver.
    #[arg(long, default_value = "builtin")]
    solver: String,
    /// Perturbs the built-in solver's branching order.
    #[arg(long)]
    seed: Option<u64>,
    /// Wall-clock budget in seconds.
    #[arg(long)]
    timeout: Option<f64>,
    /// Conflict budget per SAT call (built-in solver only).
    #[arg(long)]
    max_conflicts: Option<u64>,
}

impl SolverArgs {
    fn backend(&self) -> Result<Backend, CliError> {
        if self.solver == "builtin" {
            return Ok(Backend::Builtin(SolverConfig { seed: self.seed, ..SolverConfig::default() }));
        }
        match self.solver.strip_prefix("ext:") {
            Some(path) if !path.is_empty() => ExternalSolverConfig::new(path)
                .map(Backend::External)
                .map_err(|e| CliError::Input(e.to_string())),
            _ => Err(CliError::Usage(format!("unknown solver {:?}; use builtin or ext:<path>", self.solver))),
        }
    }

    fn budget(&self, started: Instant) -> Result<Budget, CliError> {
        let deadline = match self.timeout {
            Some(t) if !(t >= 0.0 && t.is_finite()) => {
                return Err(CliError::Usage(format!("bad timeout {t}")));
            }
            Some(t) => Some(started + Duration::from_secs_f64(t)),
            None => None,
        };
        Ok(Budget { max_conflicts: self.max_conflicts, deadline })
    }
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value = "C2")]
    encoding: EncodingId,
    #[arg(long, value_enum, default_value = "preferred")]
    semantics: Semantics,
    #[command(flatten)]
    solver: SolverArgs,
    /// Is the named argument in some extension?
    #[arg(long, value_name = "ARG", conflicts_with = "query_skeptical")]
    query_credulous: Option<String>,
    /// Is the named argument in every extension?
    #[arg(long, value_name = "ARG")]
    query_skeptical: Option<String>,
    /// Print one extension per line instead of JSON.
    #[arg(long)]
    text: bool,
    /// Add wall-clock time to the JSON statistics.
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum GenerateCommand {
    /// A single framework in APX.
    Af(GenAfArgs),
    /// A suite of APX files plus manifest.json.
    Suite(GenSuiteArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum GenMethodArg {
    Probability,
    Count,
    Empty,
    Full,
}

#[derive(Args)]
struct GenAfArgs {
    /// Number of arguments.
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value = "probability")]
    method: GenMethodArg,
    /// Attack probability for the probability method.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Attack count for the count method: a number or `random`.
    #[arg(long, default_value = "random")]
    attacks: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteProfile {
    /// Sizes 25..200, 50 per density class, 200 per count class.
    Full,
    /// Sizes 25..100, 10 instances per class.
    Desk,
}

#[derive(Args)]
struct GenSuiteArgs {
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "full")]
    profile: SuiteProfile,
    /// Multiplies per-class instance counts (at least one per class).
    #[arg(long)]
    scale: Option<f64>,
    /// Comma-separated argument counts, overriding the profile.
    #[arg(long, value_delimiter = ',')]
    ks: Option<Vec<usize>>,
    /// Comma-separated attack probabilities, overriding the profile.
    #[arg(long, value_delimiter = ',')]
    probabilities: Option<Vec<f64>>,
    #[arg(long)]
    no_probability: bool,
    #[arg(long)]
    no_count: bool,
    #[arg(long)]
    no_extremes: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    K,
    Density,
    Class,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    manifest: PathBuf,
    /// Comma-separated systems such as `C2:builtin,C1:ext:/usr/bin/solver`.
    #[arg(long, default_value = "C2:builtin")]
    systems: String,
    /// Per-run budget in seconds (900 by default, 60 with `--profile desk`).
    #[arg(long)]
    budget: Option<f64>,
    #[arg(long, value_enum, default_value = "full")]
    profile: SuiteProfile,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value_t = 1)]
    repetitions: usize,
    /// Record CSV; existing records are kept and their runs skipped.
    #[arg(long, default_value = "bench.csv")]
    out: PathBuf,
    /// Write the IPC table as CSV here.
    #[arg(long)]
    ipc_out: Option<PathBuf>,
    /// Run inside this process instead of one child process per run.
    #[arg(long)]
    in_process: bool,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "k,density")]
    group_by: Vec<GroupArg>,
}

#[derive(Args)]
struct SolveArgs {
    /// DIMACS file, or `-` for stdin.
    #[arg(default_value = "-")]
    input: String,
    #[arg(long)]
    seed: Option<u64>,
    /// Disable clause learning (plain backtracking search).
    #[arg(long)]
    no_learning: bool,
    #[arg(long)]
    timeout: Option<f64>,
    #[arg(long)]
    max_conflicts: Option<u64>,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn read_input(input: &str) -> Result<String, CliError> {
    if input == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(input_err)?;
        Ok(s)
    } else {
        fs::read_to_string(input).map_err(|e| CliError::Input(format!("{input}: {e}")))
    }
}

fn load_af(args: &InputArgs) -> Result<ArgumentationFramework, CliError> {
    let text = read_input(&args.input)?;
    let format = args.format.unwrap_or_else(|| {
        if Path::new(&args.input).extension().is_some_and(|e| e.eq_ignore_ascii_case("tgf")) {
            Format::Tgf
        } else {
            Format::Apx
        }
    });
    let parsed = match format {
        Format::Apx => parse_apx(&text),
        Format::Tgf => parse_tgf(&text),
    };
    parsed.map_err(|e| CliError::Input(format!("{}: {e}", args.input)))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).map_err(input_err)
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable output");
    s.push('\n');
    s
}

fn cmd_parse(a: ParseArgs) -> Result<(), CliError> {
    let af = load_af(&a.input)?;
    let text = match a.to {
        Format::Apx => af.to_apx(),
        Format::Tgf => af.to_tgf(),
    };
    emit(a.out.as_deref(), &text)
}

fn cmd_encode(a: EncodeArgs) -> Result<(), CliError> {
    let af = load_af(&a.input)?;
    let f = if a.allow_empty { encode_complete(&af, a.encoding) } else { encode(&af, a.encoding) };
    let source = if a.input.input == "-" { "<stdin>" } else { &a.input.input };
    emit(a.out.as_deref(), &to_dimacs(&f, &dimacs_comments(&af, source, a.encoding)))
}

#[derive(Serialize)]
struct StatsJson {
    sat_calls: u64,
    outer_iterations: u64,
    inner_iterations: u64,
    conflicts: u64,
    decisions: u64,
    propagations: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time_seconds: Option<f64>,
}

#[derive(Serialize)]
struct EnumerationJson {
    semantics: &'static str,
    encoding: String,
    complete: bool,
    extensions: Vec<Vec<String>>,
    stats: StatsJson,
}

#[derive(Serialize)]
struct QueryJson {
    semantics: &'static str,
    encoding: String,
    query: &'static str,
    argument: String,
    accepted: bool,
}

fn semantics_name(s: Semantics) -> &'static str {
    match s {
        Semantics::Preferred => "preferred",
        Semantics::Complete => "complete",
    }
}

fn budget_message(reason: Interrupt) -> String {
    match reason {
        Interrupt::ConflictLimit => "conflict budget exhausted".into(),
        Interrupt::Deadline => "time budget exhausted".into(),
        Interrupt::SolverGaveUp => "solver gave up".into(),
    }
}

fn cmd_enumerate(a: EnumerateArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let af = load_af(&a.input)?;
    let backend = a.solver.backend()?;
    let budget = a.solver.budget(started)?;
    let sem = semantics_name(a.semantics);

    let query = match (&a.query_credulous, &a.query_skeptical) {
        (Some(n), _) => Some(("credulous", n)),
        (_, Some(n)) => Some(("skeptical", n)),
        _ => None,
    };
    if let Some((kind, name)) = query {
        let arg = af.index_of(name).ok_or_else(|| CliError::Input(format!("unknown argument {name:?}")))?;
        let accepted = if kind == "credulous" {
            // some complete extension contains `arg` iff some preferred one does
            credulous_accept(&af, a.encoding, &backend, arg)
        } else {
            run_enumeration(&af, &a, &backend, budget).map(|r| r.extensions.iter().all(|e| e.contains(arg)))
        };
        let accepted = accepted.map_err(enumerate_error)?;
        if a.text {
            return emit(None, &format!("{}\n", if accepted { "YES" } else { "NO" }));
        }
        let json = QueryJson { semantics: sem, encoding: a.encoding.to_string(), query: kind, argument: name.clone(), accepted };
        return emit(None, &to_json(&json));
    }

    let (result, failure) = match run_enumeration(&af, &a, &backend, budget) {
        Ok(r) => (r, None),
        Err(EnumerateError::Incomplete { partial, reason }) => (*partial, Some(CliError::Budget(budget_message(reason)))),
        Err(e) => return Err(enumerate_error(e)),
    };
    let extensions: Vec<Vec<String>> = result.extensions.iter().map(|e| af.extension_names(e)).collect();
    if a.text {
        let mut out = String::new();
        for e in &extensions {
            out.push_str(&format!("[{}]\n", e.join(",")));
        }
        emit(None, &out)?;
    } else {
        let s = &result.stats;
        let json = EnumerationJson {
            semantics: sem,
            encoding: a.encoding.to_string(),
            complete: result.complete,
            extensions,
            stats: StatsJson {
                sat_calls: s.sat_calls,
                outer_iterations: s.outer_iterations,
                inner_iterations: s.inner_iterations,
                conflicts: s.conflicts,
                decisions: s.decisions,
                propagations: s.propagations,
                wall_time_seconds: a.timing.then_some(s.wall_time.as_secs_f64()),
            },
        };
        emit(None, &to_json(&json))?;
    }
    failure.map_or(Ok(()), Err)
}

fn run_enumeration(
    af: &ArgumentationFramework,
    a: &EnumerateArgs,
    backend: &Backend,
    budget: Budget,
) -> Result<EnumerationResult, EnumerateError> {
    match a.semantics {
        Semantics::Preferred => enumerate_preferred_with_budget(af, a.encoding, backend, budget),
        Semantics::Complete => enumerate_complete_with_budget(af, a.encoding, backend, budget),
    }
}

fn enumerate_error(e: EnumerateError) -> CliError {
    match e {
        EnumerateError::Incomplete { reason, .. } => CliError::Budget(budget_message(reason)),
        other => CliError::Input(other.to_string()),
    }
}

fn cmd_generate(c: GenerateCommand) -> Result<(), CliError> {
    match c {
        GenerateCommand::Af(a) => {
            let method = match a.method {
                GenMethodArg::Probability => GenMethod::Probability(a.p),
                GenMethodArg::Count if a.attacks == "random" => GenMethod::Count(AttackCount::UniformRandom),
                GenMethodArg::Count => GenMethod::Count(AttackCount::Fixed(
                    a.attacks.parse().map_err(|_| CliError::Usage(format!("bad attack count {:?}", a.attacks)))?,
                )),
                GenMethodArg::Empty => GenMethod::Empty,
                GenMethodArg::Full => GenMethod::FullyConnected,
            };
            let af = generate(&GenSpec { k: a.k, method, seed: a.seed }).map_err(input_err)?;
            emit(a.out.as_deref(), &af.to_apx())
        }
        GenerateCommand::Suite(a) => {
            let mut spec = SuiteSpec::full();
            if let SuiteProfile::Desk = a.profile {
                spec.ks = vec![25, 50, 75, 100];
                spec.per_probability_class = 10;
                spec.per_count_class = 10;
            }
            if let Some(ks) = a.ks {
                spec.ks = ks;
            }
            if let Some(ps) = a.probabilities {
                spec.probabilities = ps;
            }
            if let Some(s) = a.scale {
                spec.scale = s;
            }
            spec.include_probability = !a.no_probability;
            spec.include_count = !a.no_count;
            spec.include_extremes = !a.no_extremes;
            spec.seed = a.seed;
            let manifest = gen_suite(&spec, &a.out).map_err(input_err)?;
            eprintln!("wrote {} frameworks to {}", manifest.instances.len(), a.out.display());
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct WitnessJson {
    arguments: Vec<String>,
    attacks: Vec<(String, String)>,
    labelling: Vec<(String, String)>,
}

#[derive(Serialize)]
struct ClassifyRow {
    subset: String,
    terms: Vec<String>,
    cardinality: u32,
    verdict: Verdict,
    witness: Option<WitnessJson>,
}

#[derive(Serialize)]
struct ClassifyJson {
    counts: std::collections::BTreeMap<String, usize>,
    rows: Vec<ClassifyRow>,
}

fn cmd_classify(a: ClassifyArgs) -> Result<(), CliError> {
    let verdicts = classify_all().map_err(input_err)?;
    let rows: Vec<ClassifyRow> = verdicts
        .iter()
        .map(|v| ClassifyRow {
            subset: v.subset.to_string(),
            terms: v.subset.terms().map(|t: ConstraintTerm| t.to_string()).collect(),
            cardinality: v.subset.cardinality(),
            verdict: v.verdict,
            witness: v.witness.as_ref().map(|w| WitnessJson {
                arguments: w.af.names().to_vec(),
                attacks: w.af.attacks().map(|(x, y)| (w.af.name(x).to_string(), w.af.name(y).to_string())).collect(),
                labelling: (0..w.af.len()).map(|i| (w.af.name(i).to_string(), w.labelling[i].to_string())).collect(),
            }),
        })
        .collect();
    let mut counts = std::collections::BTreeMap::new();
    for r in &rows {
        *counts.entry(r.verdict.to_string()).or_insert(0) += 1;
    }
    if a.json {
        return emit(None, &to_json(&ClassifyJson { counts, rows }));
    }
    let width = rows.iter().map(|r| r.subset.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (r, v) in rows.iter().zip(&verdicts) {
        let witness = v.witness.as_ref().map(|w| w.describe()).unwrap_or_default();
        let line = format!("{:<width$}  {}  {:<21}  {}", r.subset, r.cardinality, r.verdict.to_string(), witness);
        out.push_str(line.trim_end());
        out.push('\n');
    }
    let summary: Vec<String> = counts.iter().map(|(k, n)| format!("{k}={n}")).collect();
    out.push_str(&format!("# {}\n", summary.join(" ")));
    emit(None, &out)
}

fn seconds(v: f64) -> Result<Duration, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(Duration::from_secs_f64(v))
    } else {
        Err(CliError::Usage(format!("bad budget {v}")))
    }
}

fn cmd_bench(a: BenchArgs) -> Result<(), CliError> {
    let systems = parse_systems(&a.systems).map_err(|e| CliError::Usage(e.to_string()))?;
    if systems.is_empty() {
        return Err(CliError::Usage("no systems given".into()));
    }
    let (manifest, base) = Manifest::load(&a.manifest).map_err(|e| CliError::Input(format!("{}: {e}", a.manifest.display())))?;
    let isolation = if a.in_process {
        Isolation::InProcess
    } else {
        Isolation::Process { exe: std::env::current_exe().map_err(input_err)? }
    };
    let budget = match (a.budget, a.profile) {
        (Some(b), _) => seconds(b)?,
        (None, SuiteProfile::Desk) => DESK_BUDGET,
        (None, SuiteProfile::Full) => DEFAULT_BUDGET,
    };
    let cfg = BenchConfig {
        systems,
        budget,
        repetitions: a.repetitions.max(1),
        jobs: a.jobs.max(1),
        isolation,
        csv: Some(a.out.clone()),
    };
    let records = run_bench(&manifest, &base, &cfg).map_err(input_err)?;
    let by: Vec<GroupBy> = a
        .group_by
        .iter()
        .map(|g| match g {
            GroupArg::K => GroupBy::ArgCount,
            GroupArg::Density => GroupBy::Density,
            GroupArg::Class => GroupBy::Class,
        })
        .collect();
    let group_of = manifest_grouping(&manifest, &by);
    let table = ipc_score(&records, budget, &group_of).map_err(input_err)?;
    if let Some(p) = &a.ipc_out {
        emit(Some(p), &table.to_csv())?;
    }
    let mut out = String::from("# normalized IPC score\n");
    out.push_str(&table.to_gnuplot());
    out.push_str("\n# success rate\n");
    out.push_str(&success_gnuplot(&success_rate(&records, &group_of)));
    emit(None, &out)
}

fn cmd_solve(a: SolveArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let f = parse_dimacs(&read_input(&a.input)?).map_err(input_err)?;
    let cfg = SolverConfig { seed: a.seed, learning: !a.no_learning, ..SolverConfig::default() };
    let mut solver = Solver::from_formula(&f, cfg);
    let deadline = match a.timeout {
        Some(t) => Some(started + seconds(t)?),
        None => None,
    };
    solver.set_budget(Budget { max_conflicts: a.max_conflicts, deadline });
    match solver.solve() {
        SolveOutcome::Sat(model) => {
            let mut out = String::from("s SATISFIABLE\nv");
            for (i, &v) in model.iter().enumerate() {
                let lit = i as i64 + 1;
                out.push_str(&format!(" {}", if v { lit } else { -lit }));
            }
            out.push_str(" 0\n");
            emit(None, &out)
        }
        SolveOutcome::Unsat => emit(None, "s UNSATISFIABLE\n"),
        SolveOutcome::Unknown(reason) => {
            emit(None, "s UNKNOWN\n")?;
            Err(CliError::Budget(budget_message(reason)))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Parse(a) => cmd_parse(a),
        Command::Encode(a) => cmd_encode(a),
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Generate(c) => cmd_generate(c),
        Command::Classify(a) => cmd_classify(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Solve(a) => cmd_solve(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("afsat: {e}");
            ExitCode::from(e.code())
        }
    }
}
