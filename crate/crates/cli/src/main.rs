use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use coxcomb_cli::{
    max_steps_from_env, render_outcome, run_text, to_canonical_string, CliError, Command, GroupOp,
    InputDocument, Options, Render, RingOp,
};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "coxcomb",
    version,
    about = "Invariants of Cox rings of complexity-one varieties"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Io {
    /// Input document; `-` reads stdin.
    #[arg(short, long)]
    input: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Add a `meta` block with a timestamp outside the payload.
    #[arg(long)]
    meta: bool,
    /// Include the statements behind each result.
    #[arg(long)]
    cite: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Finitely generated abelian group computations.
    Group {
        #[arg(value_enum)]
        op: GroupOp,
        #[command(flatten)]
        io: Io,
    },
    /// The graded trinomial algebra R(A,P0).
    Ring {
        #[arg(value_enum)]
        op: RingOp,
        #[command(flatten)]
        io: Io,
    },
    /// Platonic verdict for the exponent vectors in `ring`.
    Platonic {
        #[command(flatten)]
        io: Io,
    },
    /// Log terminality of the total coordinate space.
    Logterm {
        #[command(flatten)]
        io: Io,
    },
    /// Exponent-vector dynamics of iterated Cox rings.
    Iterate {
        /// Divide every class by its gcd at each step (heuristic, not derived).
        #[arg(long)]
        heuristic_gcd: bool,
        #[command(flatten)]
        io: Io,
    },
    /// Re-emit an input document in canonical form.
    Canon {
        #[command(flatten)]
        io: Io,
    },
}

fn read_input(path: &Path) -> Result<String, CliError> {
    let mut text = String::new();
    let result = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    result.map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(text)
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

fn meta() -> serde_json::Value {
    let now = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    json!({"generated_at_unix": now, "version": env!("CARGO_PKG_VERSION")})
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, io, heuristic_gcd) = match cli.command {
        Cmd::Group { op, io } => (Some(Command::Group(op)), io, false),
        Cmd::Ring { op, io } => (Some(Command::Ring(op)), io, false),
        Cmd::Platonic { io } => (Some(Command::Platonic), io, false),
        Cmd::Logterm { io } => (Some(Command::Logterm), io, false),
        Cmd::Iterate { heuristic_gcd, io } => (Some(Command::Iterate), io, heuristic_gcd),
        Cmd::Canon { io } => (None, io, false),
    };
    let name = command.map_or_else(|| "canon".to_string(), |c| c.name());
    let render = Render {
        cite: io.cite,
        meta: io.meta.then(meta),
    };
    let fail = |err: CliError| {
        eprintln!("coxcomb: {err}");
        render_outcome(&name, Err(err), &render)
    };
    let (text, code) = match read_input(&io.input) {
        Err(err) => fail(err),
        Ok(input) => match command {
            None => match InputDocument::parse(&input) {
                Ok(doc) => (to_canonical_string(&doc), 0),
                Err(e) => fail(CliError::schema(format!("invalid input document: {e}"))),
            },
            Some(command) => {
                match max_steps_from_env(std::env::var("COXCOMB_MAX_STEPS").ok().as_deref()) {
                    Err(err) => fail(err),
                    Ok(max_steps) => {
                        let opts = Options {
                            max_steps,
                            heuristic_gcd,
                        };
                        run_text(command, &input, &opts, &render)
                    }
                }
            }
        },
    };
    if let Err(err) = write_output(io.output.as_deref(), &text) {
        eprintln!("coxcomb: {err}");
        return ExitCode::from(err.exit_code());
    }
    ExitCode::from(code)
}
