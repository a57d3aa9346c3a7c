//! Session runner for the semizd toolkit: loads JSON session files,
//! executes their commands and renders deterministic reports.

pub mod output;
pub mod run;
pub mod session;

use std::io::Write;
use std::path::Path;

pub use output::Format;
pub use run::{exit_code, run_commands, Record, Status};
pub use session::{Session, SessionError, SessionFile};

/// Loads and runs a session, writing the report to `output` (stdout when
/// `None`). Returns the process exit code.
pub fn run_file(path: &Path, format: Format, budget: Option<u64>, output: Option<&Path>) -> i32 {
    let (text, code) = match Session::load(path) {
        Ok(session) => {
            let records = run_commands(&session, budget);
            (output::render(&records, format), exit_code(&records))
        }
        Err(e) => {
            eprintln!("error: {e}");
            (output::render_load_error(&e.to_string(), format), 2)
        }
    };
    match write_out(output, &text) {
        Ok(()) => code,
        Err(e) => {
            eprintln!("error: cannot write report: {e}");
            2
        }
    }
}

pub fn write_out(output: Option<&Path>, text: &str) -> std::io::Result<()> {
    match output {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}
