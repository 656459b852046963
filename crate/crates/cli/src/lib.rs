//! Library half of the `coxcomb` command: document parsing, dispatch and
//! canonical report rendering.

pub mod commands;
pub mod document;
pub mod error;

pub use commands::{execute, Command, GroupOp, Options, Report, RingOp};
pub use document::{to_canonical_string, InputDocument};
pub use error::CliError;

use serde_json::Value;

/// Rendering switches that never touch the result payload.
#[derive(Clone, Debug, Default)]
pub struct Render {
    pub cite: bool,
    /// Attached under a top-level `meta` key when present.
    pub meta: Option<Value>,
}

/// Parses `text`, runs `command` and returns the canonical report with the
/// process exit code.
pub fn run_text(command: Command, text: &str, opts: &Options, render: &Render) -> (String, u8) {
    let outcome = InputDocument::parse(text)
        .map_err(|e| CliError::schema(format!("invalid input document: {e}")))
        .and_then(|doc| execute(command, &doc, opts));
    render_outcome(&command.name(), outcome, render)
}

pub fn render_outcome(
    command: &str,
    outcome: Result<Report, CliError>,
    render: &Render,
) -> (String, u8) {
    let (mut value, code) = match outcome {
        Ok(report) => (report.to_value(render.cite), report.exit_code),
        Err(err) => (commands::error_value(command, &err), err.exit_code()),
    };
    if let Some(meta) = &render.meta {
        value["meta"] = meta.clone();
    }
    (to_canonical_string(&value), code)
}

/// `COXCOMB_MAX_STEPS`, falling back to the library default when unset.
pub fn max_steps_from_env(value: Option<&str>) -> Result<usize, CliError> {
    match value {
        None => Ok(coxcomb_core::iteration::DEFAULT_MAX_STEPS),
        Some(v) => v.trim().parse().map_err(|_| {
            CliError::schema(format!(
                "COXCOMB_MAX_STEPS must be a nonnegative integer, got {v:?}"
            ))
        }),
    }
}
