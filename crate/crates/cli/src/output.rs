//! Rendering of records and the run summary.

use std::fmt::Write as _;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::run::{exit_code, Record, Status};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    JsonLines,
    Human,
}

/// SHA-256 over the compact payload of every record, one per line.
pub fn payload_hash(records: &[Record]) -> String {
    let mut hasher = Sha256::new();
    for r in records {
        hasher.update(r.payload().to_string().as_bytes());
        hasher.update(b"\n");
    }
    hex::encode(hasher.finalize())
}

pub fn summary(records: &[Record]) -> Value {
    let count = |s| records.iter().filter(|r| r.status == s).count();
    json!({
        "commands": records.len(),
        "ok": count(Status::Ok),
        "counterexamples": count(Status::Counterexample),
        "skipped": count(Status::Skipped),
        "errors": count(Status::Error),
        "exit_code": exit_code(records),
        "payload_sha256": payload_hash(records),
    })
}

fn meta(r: &Record) -> Value {
    json!({ "elapsed_ms": r.elapsed.as_secs_f64() * 1e3, "version": VERSION })
}

pub fn render(records: &[Record], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::JsonLines => {
            for r in records {
                let line = json!({ "payload": r.payload(), "meta": meta(r) });
                writeln!(out, "{line}").unwrap();
            }
            writeln!(out, "{}", json!({ "summary": summary(records), "meta": { "version": VERSION } })).unwrap();
        }
        Format::Human => {
            for r in records {
                let status = serde_json::to_value(r.status).unwrap();
                writeln!(
                    out,
                    "[{}] {} {}: {} ({:.1} ms)",
                    r.index,
                    r.command.name(),
                    serde_json::to_string(&r.command).unwrap(),
                    status.as_str().unwrap_or_default(),
                    r.elapsed.as_secs_f64() * 1e3
                )
                .unwrap();
                match &r.result {
                    Value::Object(map) => {
                        for (k, v) in map {
                            writeln!(out, "    {k}: {v}").unwrap();
                        }
                    }
                    other => writeln!(out, "    {}", other.as_str().map_or_else(|| other.to_string(), String::from)).unwrap(),
                }
            }
            let s = summary(records);
            writeln!(
                out,
                "summary: {} commands, {} ok, {} counterexamples, {} skipped, {} errors; exit {}; payload sha256 {}",
                s["commands"], s["ok"], s["counterexamples"], s["skipped"], s["errors"], s["exit_code"], s["payload_sha256"].as_str().unwrap()
            )
            .unwrap();
        }
    }
    out
}

/// Output for a session that failed to load.
pub fn render_load_error(message: &str, format: Format) -> String {
    match format {
        Format::JsonLines => format!(
            "{}\n",
            json!({ "session_error": message, "summary": { "commands": 0, "exit_code": 2 }, "meta": { "version": VERSION } })
        ),
        Format::Human => format!("session error: {message}\n"),
    }
}
