use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use weilreg::exactalg::budget::DEFAULT_MAX_STEPS;
use weilreg_cli::{run_text, Format, RunOptions};

#[derive(Parser)]
#[command(name = "weilreg", version, about = "Run weilreg session files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run every command of a session file and print the report.
    Run {
        session: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Cap on S-pairs per Gröbner basis computation.
        #[arg(long, env = "WEILREG_MAX_STEPS", default_value_t = DEFAULT_MAX_STEPS)]
        max_groebner_steps: u64,
        /// Run commands concurrently; the report keeps session order.
        #[arg(long)]
        parallel: bool,
        #[arg(long)]
        verbose: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Run { session, format, out, max_groebner_steps, parallel, verbose } = cli.command;
    let level = if verbose { "info" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    let text = match std::fs::read_to_string(&session) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("weilreg: cannot read {}: {e}", session.display());
            return ExitCode::from(2);
        }
    };
    let name = session.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let opts = RunOptions { max_steps: max_groebner_steps, parallel };
    let report = match run_text(&text, &name, &opts) {
        Ok(r) => r,
        Err(d) => {
            eprintln!("{}:{d}", session.display());
            return ExitCode::from(2);
        }
    };
    let format = match format {
        OutputFormat::Json => Format::Json,
        OutputFormat::Text => Format::Text,
    };
    let rendered = report.render(format);
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, rendered) {
                eprintln!("weilreg: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    if report.has_errors() {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
