//! `acap`: command-line driver for the article-comment relevance pipeline.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::{ContextKind, ContextValue, ErrorKind};
use clap::{ArgAction, Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "acap",
    version,
    about = "Article-comment relevance: ingest, agreement, embeddings, training and experiments"
)]
pub struct Cli {
    /// TOML file with pipeline defaults; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Raise log verbosity (-v info, -vv debug, -vvv trace).
    #[arg(short, long, action = ArgAction::Count, global = true)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate documents and annotations and write a corpus directory.
    Ingest(IngestArgs),
    /// Inter-annotator agreement report.
    Agreement(AgreementArgs),
    /// Embed every document of a corpus.
    Embed(EmbedArgs),
    /// Train a softmax classifier on a feature file.
    Train(TrainArgs),
    /// Predict classes for a feature file.
    Predict(PredictArgs),
    /// Repeated randomized-split comparison of systems.
    Experiment(ExperimentArgs),
    /// Render one or more experiment summaries as tables.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    #[arg(long)]
    pub documents: PathBuf,
    #[arg(long)]
    pub annotations: PathBuf,
    /// Corpus directory to create.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct AgreementArgs {
    /// Annotation file, or a corpus directory written by `ingest`.
    #[arg(long)]
    pub annotations: PathBuf,
    /// Document file; needed for --per-outlet unless --annotations is a corpus directory.
    #[arg(long)]
    pub documents: Option<PathBuf>,
    #[arg(long)]
    pub per_outlet: bool,
    /// JSON report path.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// tfidf or hashed.
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long)]
    pub dim: Option<usize>,
    /// Fit one vectorizer per outlet.
    #[arg(long)]
    pub per_outlet: bool,
    /// Document embeddings, `id<TAB>v1 ... vd` per line.
    #[arg(long)]
    pub out: PathBuf,
    /// Also write pair features in the same row format.
    #[arg(long)]
    pub pairs_out: Option<PathBuf>,
    /// Also write aggregated pair labels, `id<TAB>label` per line.
    #[arg(long)]
    pub labels_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    /// Feature rows, `id<TAB>v1 ... vf`.
    #[arg(long)]
    pub features: PathBuf,
    /// Label rows, `id<TAB>class`.
    #[arg(long)]
    pub labels: PathBuf,
    /// standard or ordinal.
    #[arg(long)]
    pub loss: Option<String>,
    /// normalized or integer.
    #[arg(long)]
    pub weight_mode: Option<String>,
    #[arg(long)]
    pub epochs: Option<usize>,
    #[arg(long)]
    pub learning_rate: Option<f64>,
    #[arg(long)]
    pub batch_size: Option<usize>,
    #[arg(long)]
    pub l2: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 4)]
    pub classes: usize,
    /// Model file to write.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long)]
    pub features: PathBuf,
    /// Prediction rows, `id<TAB>class`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// Comma-separated: threshold, softmax-standard, softmax-ordinal, softmax-ordinal-integer, vote.
    #[arg(long, value_delimiter = ',')]
    pub systems: Option<Vec<String>>,
    /// all, high or low.
    #[arg(long)]
    pub subset: Option<String>,
    /// multiclass or binary.
    #[arg(long)]
    pub labels: Option<String>,
    #[arg(long)]
    pub merge_outlets: bool,
    #[arg(long)]
    pub repeats: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub epochs: Option<usize>,
    /// tfidf or hashed.
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long)]
    pub dim: Option<usize>,
    /// Keep the softmax epoch with the best validation accuracy.
    #[arg(long)]
    pub select_on_validation: bool,
    /// Output directory for summary.json and summary.txt.
    #[arg(long, env = "ACAP_OUT_DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// summary.json files written by `experiment`.
    #[arg(required = true)]
    pub summaries: Vec<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn usage_error(err: clap::Error) -> ExitCode {
    match err.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
            let _ = err.print();
            ExitCode::SUCCESS
        }
        ErrorKind::InvalidSubcommand => {
            let name = match err.get(ContextKind::InvalidSubcommand) {
                Some(ContextValue::String(s)) => s.clone(),
                _ => String::new(),
            };
            eprintln!("error: unknown subcommand '{name}'");
            ExitCode::from(2)
        }
        _ => {
            let message = if err.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                "a subcommand is required (see --help)".to_string()
            } else {
                let text = err.to_string();
                text.lines()
                    .take_while(|l| !l.trim().is_empty() && !l.starts_with("Usage:"))
                    .map(str::trim)
                    .collect::<Vec<_>>()
                    .join(" ")
                    .trim_start_matches("error: ")
                    .to_string()
            };
            eprintln!("error: usage: {message}");
            ExitCode::from(2)
        }
    }
}

fn init_logging(cli: &Cli, configured: Option<&str>) {
    let level = match cli.verbose {
        0 => configured.unwrap_or("warn"),
        1 => "info",
        2 => "debug",
        _ => "trace",
    };
    let _ = env_logger::Builder::new()
        .parse_filters(level)
        .format_timestamp(None)
        .try_init();
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => return usage_error(err),
    };
    let config = match config::PipelineConfig::load(cli.config.as_deref()) {
        Ok(config) => config,
        Err(err) => {
            eprintln!("error: usage: {}", commands::one_line(&err));
            return ExitCode::from(2);
        }
    };
    init_logging(&cli, config.log_level.as_deref());
    match commands::run(cli.command, &config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(commands::Failure::Usage(msg)) => {
            eprintln!("error: usage: {msg}");
            ExitCode::from(2)
        }
        Err(commands::Failure::Runtime(err)) => {
            eprintln!("error: {}", commands::one_line(&err));
            ExitCode::from(1)
        }
    }
}
