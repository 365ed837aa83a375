use std::fs;
use std::path::PathBuf;
use std::process::exit;

use clap::{Parser, Subcommand, ValueEnum};
use subangle_cli::check::{render_summary, run_check};
use subangle_cli::error::CliError;
use subangle_cli::generate::{generate_pairs, parse_planted, GenerateParams};
use subangle_cli::pairspec::SubspacePairSpec;
use subangle_cli::report::{render_json, render_text, run_report};

/// Relative orientation of two subspaces of R^n: principal angles,
/// intersection and perpendicularity counts, and principal planes from
/// a single geometric product, optionally cross-checked against a
/// QR + SVD computation.
#[derive(Parser)]
#[command(name = "subangle", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the orientation report for one pair file
    Angle {
        /// Pair file: {"n": ..., "A": [...], "B": [...]}
        input: PathBuf,
        /// Also run the QR + SVD path and report the agreement
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Agreement tolerance annotated in text output
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        /// Write the report here instead of standard output
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Generate pair files, fully random or with planted angles
    Generate {
        /// Space dimension
        #[arg(long)]
        n: usize,
        /// Subspace dimension
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// RNG seed; equal seeds give byte-identical files
        #[arg(long)]
        seed: u64,
        /// Comma-separated principal angles in [0, pi/2], at most r
        #[arg(long)]
        planted: Option<String>,
        /// Output directory for pair_NNNN.json files
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Run both paths over a directory of pair files and compare
    Check {
        dir: PathBuf,
        /// Max allowed per-angle deviation between the two paths
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => exit(code),
        Err(err) => {
            eprintln!("{}", err.to_json());
            exit(err.exit_code());
        }
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Angle {
            input,
            oracle,
            format,
            tol,
            output,
        } => {
            let text = fs::read_to_string(&input)
                .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", input.display())))?;
            let spec = SubspacePairSpec::parse(&text)?;
            let doc = run_report(&spec, Some(&input.display().to_string()), oracle)?;
            let rendered = match format {
                Format::Json => render_json(&doc),
                Format::Text => render_text(&doc, tol),
            };
            match output {
                Some(path) => fs::write(&path, rendered).map_err(|e| {
                    CliError::Parse(format!("cannot write {}: {e}", path.display()))
                })?,
                None => print!("{rendered}"),
            }
            Ok(0)
        }
        Command::Generate {
            n,
            r,
            count,
            seed,
            planted,
            out_dir,
        } => {
            let planted = planted.as_deref().map(parse_planted).transpose()?;
            let pairs = generate_pairs(&GenerateParams {
                n,
                r,
                count,
                seed,
                planted,
            })?;
            fs::create_dir_all(&out_dir).map_err(|e| {
                CliError::Parse(format!("cannot create {}: {e}", out_dir.display()))
            })?;
            for (i, spec) in pairs.iter().enumerate() {
                let path = out_dir.join(format!("pair_{i:04}.json"));
                fs::write(&path, spec.render()).map_err(|e| {
                    CliError::Parse(format!("cannot write {}: {e}", path.display()))
                })?;
            }
            println!("wrote {} pair files to {}", pairs.len(), out_dir.display());
            Ok(0)
        }
        Command::Check { dir, tol } => {
            let summary = run_check(&dir, tol)?;
            print!("{}", render_summary(&summary));
            Ok(if summary.all_within_tol() { 0 } else { 1 })
        }
    }
}
