use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use semifiber_cli::validate::PROCEDURES;
use semifiber_cli::{check_manifest, run_manifest, CliError, Options};

#[derive(Parser)]
#[command(name = "semifiber", version, about = "Semi-fiber products, resolutions and lifting decisions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every task of a manifest and print the report.
    Run {
        /// Manifest file, or `-` for standard input.
        manifest: PathBuf,
        /// Print the JSON report instead of text.
        #[arg(long)]
        json: bool,
        /// Default homological degree for tasks without `hdeg`.
        #[arg(long)]
        hdeg: Option<u32>,
        /// Default internal degree for tasks without `tdeg`.
        #[arg(long)]
        tdeg: Option<u32>,
        /// Default search bound for tasks without `bound`.
        #[arg(long)]
        bound: Option<u32>,
        /// Run tasks on several threads; output order is unchanged.
        #[arg(long)]
        parallel: bool,
    },
    /// Parse and validate a manifest without running it.
    Check { manifest: PathBuf },
    /// Print a manifest in canonical form.
    Fmt { manifest: PathBuf },
    /// List the available procedures.
    Procedures,
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn main_inner(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Run { manifest, json, hdeg, tdeg, bound, parallel } => {
            let text = read(&manifest)?;
            let report = run_manifest(&text, &Options { hdeg, tdeg, bound }, parallel)?;
            Ok(if json { report.to_json() } else { report.render_text() })
        }
        Command::Check { manifest } => {
            let m = check_manifest(&read(&manifest)?)?;
            Ok(format!(
                "ok: {} algebras, {} actions, {} tasks over {}\n",
                m.algebras.len(),
                m.actions.len(),
                m.tasks.len(),
                m.field.value
            ))
        }
        Command::Fmt { manifest } => Ok(check_manifest(&read(&manifest)?)?.to_string()),
        Command::Procedures => {
            let mut out = String::new();
            for p in PROCEDURES {
                out.push_str(&format!("{:<18} {} [{}]\n", p.name, p.summary, p.keys.join(", ")));
            }
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    match main_inner(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
