use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use semizd_cli::{output::Format, run_file, write_out, Session};

/// Zero-divisor analysis of finite modules and their semigroup modules.
#[derive(Parser)]
#[command(name = "semizd", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every command of a session file.
    Run {
        session: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::JsonLines)]
        format: Format,
        /// Evaluation budget for verifications; overrides the session
        /// setting and SEMIZD_BUDGET.
        #[arg(long)]
        budget: Option<u64>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Build and validate every object without running commands.
    Validate { session: PathBuf },
    /// Rewrite a session with every object as an explicit table.
    Export {
        session: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Run { session, format, budget, output } => run_file(&session, format, budget, output.as_deref()),
        Command::Validate { session } => match Session::load(&session) {
            Ok(s) => {
                println!(
                    "ok: {} rings, {} monoids, {} modules, {} submodules, {} series, {} commands",
                    s.rings.len(),
                    s.monoids.len(),
                    s.modules.len(),
                    s.submodules.len(),
                    s.series.len(),
                    s.file.commands.len()
                );
                0
            }
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        },
        Command::Export { session, output } => match Session::load(&session) {
            Ok(s) => {
                let text = serde_json::to_string_pretty(&s.export()).expect("session serializes") + "\n";
                match write_out(output.as_deref(), &text) {
                    Ok(()) => 0,
                    Err(e) => {
                        eprintln!("error: cannot write session: {e}");
                        2
                    }
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        },
    };
    ExitCode::from(code as u8)
}
