use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use koebe_cli::{
    cmd_build, cmd_combine, cmd_coords, cmd_limitset, cmd_plumb, cmd_triangle, cmd_verify,
    CommandOutput,
};

/// Explicit generators and Teichmuller-space coordinates for
/// constructible Koebe groups.
#[derive(Parser)]
#[command(name = "koebe", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Exit with code 2 when a result carries unverified-discreteness
    /// or truncation warnings.
    #[arg(long, global = true)]
    strict: bool,
    /// Tolerance override for verification checks (also read from the
    /// KOEBE_TOL environment variable).
    #[arg(long, global = true)]
    tolerance: Option<f64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Canonical generators of a triangle group.
    Triangle {
        /// Signature, e.g. "4,4,2" or "inf,3,4".
        #[arg(long)]
        signature: String,
        /// Parameter points, e.g. "inf,0,1" or "-1,1,0.2+0.4i".
        #[arg(long)]
        params: String,
    },
    /// One amalgamated free product or HNN extension.
    Combine {
        /// "afp" or "hnn".
        #[arg(long)]
        kind: String,
        #[arg(long)]
        sig1: Option<String>,
        #[arg(long)]
        sig2: Option<String>,
        /// Base signature (mu,mu,nu) for HNN.
        #[arg(long)]
        sig: Option<String>,
        /// The coordinate: alpha, tau or tau^2 depending on the row.
        #[arg(long)]
        coordinate: String,
    },
    /// Build a Koebe group from an orbifold document.
    Build {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Recover the coordinate vector from a built group document.
    Coords {
        #[arg(long)]
        group: PathBuf,
    },
    /// Plumbing parameters for an orbifold document.
    Plumb {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Limit-set point cloud as CSV (optionally SVG).
    Limitset {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 8)]
        word_length: usize,
        #[arg(long, default_value_t = 20000)]
        cap: usize,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Relation, Jorgensen and separation reports for a built group.
    Verify {
        #[arg(long)]
        spec: PathBuf,
        /// Jorgensen pair budget.
        #[arg(long, default_value_t = 2000)]
        pairs: usize,
    },
}

fn run(cli: &Cli) -> Result<CommandOutput> {
    let tolerance_opt = cli
        .tolerance
        .or_else(|| std::env::var("KOEBE_TOL").ok().and_then(|v| v.parse().ok()));
    match &cli.cmd {
        Cmd::Triangle { signature, params } => cmd_triangle(signature, params),
        Cmd::Combine {
            kind,
            sig1,
            sig2,
            sig,
            coordinate,
        } => cmd_combine(
            kind,
            sig1.as_deref(),
            sig2.as_deref(),
            sig.as_deref(),
            coordinate,
        ),
        Cmd::Build { spec } => cmd_build(&std::fs::read_to_string(spec)?),
        Cmd::Coords { group } => cmd_coords(&std::fs::read_to_string(group)?),
        Cmd::Plumb { spec } => cmd_plumb(&std::fs::read_to_string(spec)?),
        Cmd::Limitset {
            spec,
            word_length,
            cap,
            svg,
        } => {
            let (out, svg_text) = cmd_limitset(&std::fs::read_to_string(spec)?, *word_length, *cap)?;
            if let Some(path) = svg {
                std::fs::write(path, svg_text)?;
            }
            Ok(out)
        }
        Cmd::Verify { spec, pairs } => {
            cmd_verify(&std::fs::read_to_string(spec)?, *pairs, tolerance_opt)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &output.text) {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            } else {
                print!("{}", output.text);
            }
            if output.warnings && cli.strict {
                eprintln!("warning: unverified result (see output); failing under --strict");
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
