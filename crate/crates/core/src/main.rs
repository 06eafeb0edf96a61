use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bimotif::input::{self, Loaded};
use bimotif::report::{self, AnalysisReport, InputInfo, RunConfig};
use bimotif::{
    census, classify, opsahl, run_ensemble, BipartiteGraph, ClosureSemantics, DivisorRule,
    DrivingScoreReport, EnsembleConfig, EnsembleStats, InputFormat, LoadError, MotifCensus,
    NullModel, Opsahl, Reference, Side,
};

#[derive(Parser)]
#[command(
    name = "bimotif",
    version,
    about = "Structure-aware clustering for two-mode networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Census and the four coefficients, global and per node.
    Analyze(Common),
    /// Random ensemble with per-class confidence intervals.
    Ensemble(EnsembleArgs),
    /// Driving scores against midpoints from --ci-file.
    Score(ScoreArgs),
    /// Ensemble plus scores, written to report.json, nodes.csv and replicas.csv.
    Report(EnsembleArgs),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "edgelist")]
    format: FormatArg,
    #[arg(long, value_enum, default_value = "primary")]
    side: SideArg,
    #[arg(long, value_enum, default_value = "at-least-one")]
    semantics: SemanticsArg,
    /// Score divisor for nodes with undefined classes.
    #[arg(long, value_enum, default_value = "defined-components")]
    divisor: DivisorArg,
    /// Output directory. JSON goes to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EnsembleArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = bimotif::null_model::DEFAULT_RUNS)]
    runs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = bimotif::null_model::DEFAULT_SWAPS_PER_EDGE)]
    swaps_per_edge: usize,
    #[arg(long, value_enum, default_value = "degree-preserving-swap")]
    null_model: NullModelArg,
    /// Use these midpoints for scoring instead of the ensemble's own.
    #[arg(long)]
    ci_file: Option<PathBuf>,
}

#[derive(Args)]
struct ScoreArgs {
    #[command(flatten)]
    common: Common,
    /// Midpoint file, ensemble.json or report.json.
    #[arg(long)]
    ci_file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Edgelist,
    Biadjacency,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Primary,
    Secondary,
}

#[derive(Clone, Copy, ValueEnum)]
enum SemanticsArg {
    AtLeastOne,
    PairCount,
}

#[derive(Clone, Copy, ValueEnum)]
enum NullModelArg {
    DegreePreservingSwap,
    FixedDensity,
}

#[derive(Clone, Copy, ValueEnum)]
enum DivisorArg {
    DefinedComponents,
    FixedFour,
}

impl EnsembleArgs {
    fn model(&self) -> NullModel {
        match self.null_model {
            NullModelArg::DegreePreservingSwap => NullModel::DegreePreservingSwap,
            NullModelArg::FixedDensity => NullModel::FixedDensity,
        }
    }
}

impl Common {
    fn format(&self) -> InputFormat {
        match self.format {
            FormatArg::Edgelist => InputFormat::EdgeList,
            FormatArg::Biadjacency => InputFormat::Biadjacency,
        }
    }

    fn side(&self) -> Side {
        match self.side {
            SideArg::Primary => Side::Primary,
            SideArg::Secondary => Side::Secondary,
        }
    }

    fn semantics(&self) -> ClosureSemantics {
        match self.semantics {
            SemanticsArg::AtLeastOne => ClosureSemantics::AtLeastOne,
            SemanticsArg::PairCount => ClosureSemantics::PairCount,
        }
    }

    fn divisor(&self) -> DivisorRule {
        match self.divisor {
            DivisorArg::DefinedComponents => DivisorRule::DefinedComponents,
            DivisorArg::FixedFour => DivisorRule::FixedFour,
        }
    }

    fn config(&self) -> RunConfig {
        RunConfig {
            side: self.side(),
            semantics: self.semantics(),
            divisor_rule: self.divisor(),
            runs: None,
            seed: None,
            swaps_per_edge: None,
            null_model: None,
            ci_file: None,
        }
    }
}

enum Failure {
    Parse(String),
    Invalid(String),
    Config(String),
}

impl Failure {
    fn exit(self) -> ExitCode {
        let (code, msg) = match self {
            Failure::Parse(m) => (1, m),
            Failure::Invalid(m) => (2, m),
            Failure::Config(m) => (3, m),
        };
        eprintln!("bimotif: {msg}");
        ExitCode::from(code)
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Parse(e) => Failure::Parse(e.to_string()),
            LoadError::Invalid(e) => Failure::Invalid(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return if usage {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Err(f) = configure_threads() {
        return f.exit();
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => f.exit(),
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("BIMOTIF_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        Failure::Config(format!(
            "BIMOTIF_THREADS must be a positive integer, got {raw:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Config(e.to_string()))
}

struct Analysis {
    graph: BipartiteGraph,
    input: InputInfo,
    census: MotifCensus,
    opsahl: Opsahl,
}

fn analyze(common: &Common) -> Result<Analysis, Failure> {
    let format = common.format();
    let Loaded {
        graph,
        duplicate_edges,
    } = input::load(&common.input, format)?;
    if duplicate_edges > 0 {
        eprintln!("bimotif: warning: collapsed {duplicate_edges} duplicate edge(s)");
    }
    let side = common.side();
    let input = InputInfo::describe(
        &graph,
        Some(common.input.display().to_string()),
        Some(format),
        duplicate_edges,
    );
    let census = census(&graph, side);
    let opsahl = opsahl(&graph, side);
    Ok(Analysis {
        graph,
        input,
        census,
        opsahl,
    })
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Analyze(common) => {
            let a = analyze(&common)?;
            let report = AnalysisReport::new(
                &a.graph,
                a.input,
                common.config(),
                &a.census,
                &a.opsahl,
                None,
                None,
            );
            match &common.out {
                Some(dir) => {
                    write_json(dir, "analysis.json", &report)?;
                    write_with(dir, "local.csv", |w| {
                        report::write_local_csv(w, &a.graph, &a.census, common.semantics())
                    })
                }
                None => print_json(&report),
            }
        }
        Command::Ensemble(args) => {
            let a = analyze(&args.common)?;
            let stats = ensemble(&a.graph, &args)?;
            match &args.common.out {
                Some(dir) => {
                    write_json(dir, "ensemble.json", &stats)?;
                    write_with(dir, "replicas.csv", |w| {
                        report::write_replicas_csv(w, &stats)
                    })
                }
                None => print_json(&stats),
            }
        }
        Command::Score(args) => {
            let path = args
                .ci_file
                .as_deref()
                .ok_or_else(|| Failure::Config("score needs midpoints: pass --ci-file".into()))?;
            let reference = read_reference(path, args.common.side())?;
            let a = analyze(&args.common)?;
            let scores = score(&a, &args.common, &reference)?;
            let mut config = args.common.config();
            config.ci_file = Some(path.display().to_string());
            let report = AnalysisReport::new(
                &a.graph,
                a.input,
                config,
                &a.census,
                &a.opsahl,
                None,
                Some(&scores),
            );
            match &args.common.out {
                Some(dir) => {
                    write_json(dir, "scores.json", &report)?;
                    write_with(dir, "nodes.csv", |w| report::write_nodes_csv(w, &scores))
                }
                None => print_json(&report),
            }
        }
        Command::Report(args) => {
            let dir = args
                .common
                .out
                .clone()
                .ok_or_else(|| Failure::Config("report needs --out DIR".into()))?;
            let external = match &args.ci_file {
                Some(path) => Some(read_reference(path, args.common.side())?),
                None => None,
            };
            let a = analyze(&args.common)?;
            let stats = ensemble(&a.graph, &args)?;
            let reference = external.unwrap_or(Reference {
                midpoints: stats.midpoints(),
                intervals: stats.intervals(),
            });
            let scores = score(&a, &args.common, &reference)?;
            let mut config = args.common.config();
            config.runs = Some(args.runs);
            config.seed = Some(args.seed);
            config.swaps_per_edge = Some(args.swaps_per_edge);
            config.null_model = Some(args.model());
            config.ci_file = args.ci_file.as_ref().map(|p| p.display().to_string());
            let report = AnalysisReport::new(
                &a.graph,
                a.input,
                config,
                &a.census,
                &a.opsahl,
                Some(&stats),
                Some(&scores),
            );
            write_json(&dir, "report.json", &report)?;
            write_with(&dir, "nodes.csv", |w| report::write_nodes_csv(w, &scores))?;
            write_with(&dir, "replicas.csv", |w| {
                report::write_replicas_csv(w, &stats)
            })
        }
    }
}

fn ensemble(g: &BipartiteGraph, args: &EnsembleArgs) -> Result<EnsembleStats, Failure> {
    let cfg = EnsembleConfig {
        runs: args.runs,
        seed: args.seed,
        swaps_per_edge: args.swaps_per_edge,
        side: args.common.side(),
        semantics: args.common.semantics(),
        model: args.model(),
    };
    cfg.validate().map_err(|e| Failure::Config(e.to_string()))?;
    let stats = run_ensemble(g, &cfg).map_err(|e| Failure::Config(e.to_string()))?;
    for k in stats.undefined_classes() {
        eprintln!("bimotif: warning: cc{k} is undefined in every replica");
    }
    Ok(stats)
}

fn score(
    a: &Analysis,
    common: &Common,
    reference: &Reference,
) -> Result<DrivingScoreReport, Failure> {
    classify(
        &a.graph,
        &a.census,
        common.semantics(),
        reference,
        common.divisor(),
    )
    .map_err(|e| Failure::Invalid(e.to_string()))
}

fn read_reference(path: &Path, side: Side) -> Result<Reference, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Config(format!("cannot read {}: {e}", path.display())))?;
    let (file_side, reference) = report::read_reference(&text)
        .map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
    if file_side != side {
        return Err(Failure::Config(format!(
            "{} holds {file_side} midpoints but --side is {side}",
            path.display()
        )));
    }
    reference
        .validate()
        .map_err(|e| Failure::Config(e.to_string()))?;
    Ok(reference)
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| Failure::Config(e.to_string()))?;
    writeln!(out).map_err(|e| Failure::Config(e.to_string()))
}

fn write_json<T: serde::Serialize>(dir: &Path, name: &str, value: &T) -> Result<(), Failure> {
    write_with(dir, name, |mut w| {
        serde_json::to_writer_pretty(&mut w, value)?;
        writeln!(w)?;
        w.flush()?;
        Ok::<_, Box<dyn std::error::Error>>(())
    })
}

fn write_with<F, E>(dir: &Path, name: &str, f: F) -> Result<(), Failure>
where
    F: FnOnce(BufWriter<File>) -> Result<(), E>,
    E: std::fmt::Display,
{
    let fail = |e: &dyn std::fmt::Display| {
        Failure::Config(format!("cannot write {}: {e}", dir.join(name).display()))
    };
    fs::create_dir_all(dir).map_err(|e| fail(&e))?;
    let file = File::create(dir.join(name)).map_err(|e| fail(&e))?;
    f(BufWriter::new(file)).map_err(|e| fail(&e))
}
