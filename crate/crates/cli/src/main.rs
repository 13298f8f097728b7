use std::fs;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pqa_core::eval::Agent;
use pqa_core::harness::{self, ExportFormat};
use pqa_core::task::TaskId;
use pqa_core::taskgen::GenParams;
use pqa_service::ServiceConfig;

/// Perceptual question answering datasets: build, inspect, solve, score.
#[derive(Parser)]
#[command(name = "pqa", version)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate pairs and write them as episodes under OUT/<task>/.
    Gen {
        /// t1..t7 or "all".
        #[arg(long)]
        task: String,
        /// Pairs per task; they form COUNT/2 episodes.
        #[arg(long)]
        count: u64,
        #[arg(long, env = "PQA_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, env = "PQA_OUT_DIR", default_value = "pqa-data")]
        out: PathBuf,
        /// JSON file overriding generation parameters.
        #[arg(long)]
        params: Option<PathBuf>,
    },
    /// Print per-task statistics as JSON.
    Stats {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Run a built-in agent and write its predictions.
    Solve {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        agent: AgentArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Score predictions: JSON report on stdout, table on stderr.
    Score {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        preds: PathBuf,
    },
    /// Export the dataset as combined JSON, pixmaps or tensors.
    Export {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        format: FormatArg,
        /// Destination (default: IN/export-FORMAT).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Positional-encoding dimension for tensor exports.
        #[arg(long, default_value_t = 512)]
        d: usize,
    },
    /// Serve the study API (and optionally the browser client).
    Serve {
        #[arg(long, env = "PQA_ADDR", default_value = "127.0.0.1:8080")]
        addr: SocketAddr,
        #[arg(long, env = "PQA_SEED", default_value_t = 0)]
        seed: u64,
        /// Append-only event log; replayed on start.
        #[arg(long)]
        journal: Option<PathBuf>,
        /// Directory of static files for the browser client.
        #[arg(long = "static")]
        static_dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AgentArg {
    Oracle,
    Identity,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Pixmap,
    Tensors,
}

struct Failure {
    kind: &'static str,
    message: String,
}

impl Failure {
    fn new(kind: &'static str, message: impl ToString) -> Failure {
        Failure {
            kind,
            message: message.to_string(),
        }
    }
}

impl From<harness::HarnessError> for Failure {
    fn from(e: harness::HarnessError) -> Failure {
        Failure::new(e.kind(), e)
    }
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn tasks(arg: &str) -> Result<Vec<TaskId>, Failure> {
    if arg.eq_ignore_ascii_case("all") {
        return Ok(TaskId::ALL.to_vec());
    }
    arg.parse()
        .map(|t| vec![t])
        .map_err(|e| Failure::new("usage", e))
}

fn load_params(path: Option<&Path>) -> Result<GenParams, Failure> {
    let Some(path) = path else {
        return Ok(GenParams::default());
    };
    let bytes = fs::read(path).map_err(|e| Failure::new("file", format!("{}: {e}", path.display())))?;
    let params: GenParams = serde_json::from_slice(&bytes)
        .map_err(|e| Failure::new("invalid_params", format!("{}: {e}", path.display())))?;
    params
        .validate()
        .map_err(|e| Failure::new("invalid_params", e))?;
    Ok(params)
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::new("usage", e))?;
    }
    match cli.command {
        Command::Gen {
            task,
            count,
            seed,
            out,
            params,
        } => {
            let tasks = tasks(&task)?;
            let params = load_params(params.as_deref())?;
            if count < 2 {
                return Err(Failure::new("usage", "--count must be at least 2 (one episode)"));
            }
            eprintln!(
                "generating {count} pairs ({} episodes) per task for {} task(s) into {}",
                count / 2,
                tasks.len(),
                out.display()
            );
            let manifests = harness::generate(&out, &tasks, count, seed, &params)?;
            print_json(&manifests);
        }
        Command::Stats { input } => print_json(&harness::dataset_stats(&input)?),
        Command::Solve { input, agent, out } => {
            let agent = match agent {
                AgentArg::Oracle => Agent::Oracle,
                AgentArg::Identity => Agent::Identity,
            };
            let preds = harness::solve(&input, agent)?;
            let bytes = serde_json::to_vec(&preds).expect("serializable");
            fs::write(&out, bytes).map_err(|e| Failure::new("file", format!("{}: {e}", out.display())))?;
            print_json(&json!({ "agent": preds.agent, "predictions": preds.predictions.len(), "out": out }));
        }
        Command::Score { input, preds } => {
            let preds = harness::read_predictions(&preds)?;
            let report = harness::score_dir(&input, &preds)?;
            eprint!("{}", report.table());
            print_json(&report);
        }
        Command::Export {
            input,
            format,
            out,
            d,
        } => {
            let (format, name) = match format {
                FormatArg::Json => (ExportFormat::Json, "json"),
                FormatArg::Pixmap => (ExportFormat::Pixmap, "pixmap"),
                FormatArg::Tensors => (ExportFormat::Tensors, "tensors"),
            };
            let out = out.unwrap_or_else(|| input.join(format!("export-{name}")));
            print_json(&harness::export(&input, &out, format, d)?);
        }
        Command::Serve {
            addr,
            seed,
            journal,
            static_dir,
        } => {
            let config = ServiceConfig {
                addr,
                seed,
                journal,
                static_dir,
                params: GenParams::default(),
            };
            let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure::new("io", e))?;
            runtime
                .block_on(pqa_service::serve(config, |bound| {
                    eprintln!("listening on http://{bound}");
                }))
                .map_err(|e| Failure::new("serve", e))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version.
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.render().to_string();
            eprintln!("{}", json!({ "error": "usage", "message": message.trim() }));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let v: Value = json!({ "error": f.kind, "message": f.message });
            eprintln!("{v}");
            ExitCode::FAILURE
        }
    }
}
