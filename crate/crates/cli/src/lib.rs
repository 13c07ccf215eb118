//! Command-line front end for `diffcoh`: scenario parsing, the subcommands,
//! the built-in examples and the self-test.

pub mod commands;
pub mod examples;
pub mod report;
pub mod scenario;
pub mod selftest;

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde_json::{json, Value};

pub use report::{emit, Dim, Format, ReportTable, Row};

/// Exit code for invalid input (unparsable scenario, invalid module).
pub const EXIT_INVALID: i32 = 2;
/// Exit code for a failed internal check (for instance two routes disagreeing).
pub const EXIT_ASSERTION: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot parse input: {0}")]
    Parse(String),
    #[error("{path}: {message}")]
    Scenario { path: String, message: String },
    #[error(transparent)]
    Library(#[from] diffcoh::Error),
    #[error("{message}")]
    Assertion {
        message: String,
        /// A scenario reproducing the failing case.
        replay: Option<Value>,
    },
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Library(diffcoh::Error::Mismatch(_)) | CliError::Assertion { .. } => EXIT_ASSERTION,
            _ => EXIT_INVALID,
        }
    }

    /// Structured form for stderr.
    pub fn to_json(&self) -> Value {
        let kind = match self {
            CliError::Parse(_) => "parse",
            CliError::Scenario { .. } => "scenario",
            CliError::Library(_) => "validation",
            CliError::Assertion { .. } => "assertion",
            CliError::Io(_) => "io",
        };
        let mut out = json!({ "error": kind, "message": self.to_string() });
        match self {
            CliError::Scenario { path, .. } => out["path"] = json!(path),
            CliError::Library(diffcoh::Error::NotHomomorphism { g, h }) => {
                out["g"] = json!(g);
                out["h"] = json!(h);
            }
            CliError::Library(diffcoh::Error::ChainMapViolation { degree }) => {
                out["degree"] = json!(degree);
            }
            CliError::Library(diffcoh::Error::Mismatch(_)) => out["error"] = json!("assertion"),
            CliError::Assertion {
                replay: Some(replay), ..
            } => out["replay"] = replay.clone(),
            _ => {}
        }
        out
    }
}

/// Worker count: `DIFFCOH_THREADS` if set, else the available parallelism.
pub fn thread_count() -> usize {
    std::env::var("DIFFCOH_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, usize::from))
        .max(1)
}

/// Maps `f` over `items` on up to [`thread_count`] threads; results keep input order.
pub fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let threads = thread_count().min(items.len());
    if threads <= 1 {
        return items.iter().map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                results.lock().expect("no worker panicked")[i] = Some(r);
            });
        }
    });
    results
        .into_inner()
        .expect("no worker panicked")
        .into_iter()
        .map(|r| r.expect("every item was processed"))
        .collect()
}
