use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use clump_cli::commands::{self, DEFAULT_CENSUS_BOUND};
use clump_cli::config::RunConfig;
use clump_cli::{exit, exit_code};

#[derive(Parser)]
#[command(name = "clump", version, about = "Planar clump census, verification and dynamics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dump the 256-entry move table as `mask allowed` lines.
    Table {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count clumps of each size up to translation.
    Census {
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Largest size accepted.
        #[arg(long, default_value_t = DEFAULT_CENSUS_BOUND)]
        bound: usize,
    },
    /// Check two-collapsibility, the configuration statements and locality
    /// over the census.
    Verify {
        #[arg(long)]
        n_max: usize,
        /// Directory for counterexample files.
        #[arg(long, default_value = "diagnostics")]
        diagnostics: PathBuf,
        /// Flip one table entry before checking.
        #[arg(long, hide = true)]
        inject_fault: Option<u8>,
    },
    /// Run the chain and write trajectory, excursion and size-law files.
    Simulate {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Overrides as key=value.
        overrides: Vec<String>,
    },
    /// Recompute excursion statistics from a stored trajectory.
    Analyze {
        #[arg(long)]
        trajectory: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "analysis")]
        out: PathBuf,
        overrides: Vec<String>,
    },
    /// Render a cells file as SVG.
    Render {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 12)]
        scale: u32,
    },
}

fn load_config(path: Option<&PathBuf>, overrides: &[String]) -> Result<RunConfig> {
    let mut cfg = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            RunConfig::parse(&text).with_context(|| format!("parsing {}", p.display()))?
        }
        None => RunConfig::default(),
    };
    cfg.apply_overrides(overrides)?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Table { out } => {
            let dump = commands::cmd_table(out.as_deref())?;
            if out.is_none() {
                print!("{dump}");
            }
        }
        Command::Census { n_max, out, bound } => {
            let csv = commands::cmd_census(n_max, bound, out.as_deref())?;
            if out.is_none() {
                print!("{csv}");
            }
        }
        Command::Verify {
            n_max,
            diagnostics,
            inject_fault,
        } => {
            let v = commands::cmd_verify(n_max, Some(&diagnostics), inject_fault)?;
            print!("{}", v.summary);
            if !v.counterexamples.is_empty() {
                eprintln!("counterexamples written to {}", diagnostics.display());
                return Ok(exit::COUNTEREXAMPLE);
            }
        }
        Command::Simulate { config, overrides } => {
            let cfg = load_config(config.as_ref(), &overrides)?;
            let out = commands::cmd_simulate(&cfg)?;
            for (dir, s) in out.dirs.iter().zip(&out.summaries) {
                println!(
                    "{}: {:?} after {} events, t = {:.3}, size {} (max {})",
                    dir.display(),
                    s.status,
                    s.events,
                    s.t_end,
                    s.final_card,
                    s.max_card
                );
            }
            if out.any_overflow() {
                return Ok(exit::OVERFLOW);
            }
        }
        Command::Analyze {
            trajectory,
            config,
            out,
            overrides,
        } => {
            let cfg = load_config(config.as_ref(), &overrides)?;
            print!("{}", commands::cmd_analyze(&trajectory, &cfg, &out)?);
        }
        Command::Render { input, out, scale } => commands::cmd_render(&input, &out, scale)?,
    }
    Ok(exit::OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
