//! `hhd-kit`: Helmholtz–Hodge decompositions from the command line.
//!
//! Exit codes: 0 success, 1 input error, 2 the requested strict
//! decomposition (or SDE decomposition) does not exist / was not found.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use hhd_core::report::{
    self, casestudy_vdp, cmd_decompose, cmd_sde, parse_grid, parse_levels, parse_matrix,
    parse_seed, DecomposeOptions, FieldKind, FieldSpec, EXIT_INPUT,
};

#[derive(Parser)]
#[command(
    name = "hhd-kit",
    version,
    about = "Helmholtz-Hodge decompositions of vector fields"
)]
struct Cli {
    /// Tolerance for classifying a decomposition as strictly orthogonal.
    #[arg(long, global = true, env = "HHD_KIT_TOL", default_value_t = report::DEFAULT_STRICT_TOL)]
    tol: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a field given as a JSON specification.
    Decompose(DecomposeArgs),
    /// Look for an SDE decomposition F = -(D + Q)U of a linear field.
    Sde(SdeArgs),
    /// Emit Van der Pol plot data (CSV) and an SVG overlay.
    CasestudyVdp(CaseStudyArgs),
}

#[derive(Args)]
struct CommonInput {
    /// Field specification (JSON); `-` reads stdin.
    #[arg(long)]
    input: PathBuf,

    /// Directory for report.json.
    #[arg(long)]
    output_dir: Option<PathBuf>,

    /// Riccati starting point: a scalar s (P0 = s*I) or a JSON matrix.
    #[arg(long, allow_hyphen_values = true)]
    seed: Option<String>,

    /// Print the JSON report instead of the text summary.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct DecomposeArgs {
    #[command(flatten)]
    common: CommonInput,
}

#[derive(Args)]
struct SdeArgs {
    #[command(flatten)]
    common: CommonInput,

    /// Diffusion matrix D as JSON (default: identity).
    #[arg(long)]
    diffusion: Option<String>,

    /// Use this gradient part P instead of solving for a strict HHD.
    #[arg(long)]
    gradient: Option<String>,
}

#[derive(Args)]
struct CaseStudyArgs {
    #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
    mu: f64,

    /// Take mu from a `vdp` field specification instead.
    #[arg(long, conflicts_with = "mu")]
    input: Option<PathBuf>,

    /// xmin,xmax,ymin,ymax,nx,ny
    #[arg(long, default_value = "-4,4,-4,4,201,201", allow_hyphen_values = true)]
    grid: String,

    /// Comma-separated levels of W; empty for none.
    #[arg(long, default_value = "-0.5,-1,-2", allow_hyphen_values = true)]
    levels: String,

    #[arg(long)]
    output_dir: PathBuf,
}

/// Failures that map to exit code 1.
struct InputError(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for InputError {
    fn from(e: E) -> Self {
        Self(e.into())
    }
}

fn read_spec(path: &Path) -> Result<FieldSpec> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    Ok(FieldSpec::from_json(&text)?)
}

fn options(tol: f64, common: &CommonInput) -> Result<DecomposeOptions> {
    anyhow::ensure!(
        tol.is_finite() && tol > 0.0,
        "tolerance must be positive, got {tol}"
    );
    let mut opts = DecomposeOptions::new();
    opts.tol = tol;
    if let Some(s) = &common.seed {
        opts.seed = parse_seed(s)?;
    }
    Ok(opts)
}

fn write_report(dir: &Option<PathBuf>, json: &str) -> Result<()> {
    if let Some(dir) = dir {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let path = dir.join("report.json");
        std::fs::write(&path, json).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> std::result::Result<i32, InputError> {
    match cli.command {
        Command::Decompose(args) => {
            let spec = read_spec(&args.common.input)?;
            let opts = options(cli.tol, &args.common)?;
            let out = cmd_decompose(&spec, &opts)?;
            let json = out.report.to_json();
            write_report(&args.common.output_dir, &json)?;
            if args.common.json {
                println!("{json}");
            } else {
                print!("{}", out.report);
            }
            Ok(out.exit_code)
        }
        Command::Sde(args) => {
            let spec = read_spec(&args.common.input)?;
            let opts = options(cli.tol, &args.common)?;
            let d = args.diffusion.as_deref().map(parse_matrix).transpose()?;
            let p = args.gradient.as_deref().map(parse_matrix).transpose()?;
            let out = cmd_sde(&spec, d.as_ref(), p.as_ref(), &opts)?;
            let json = out.report.to_json();
            write_report(&args.common.output_dir, &json)?;
            if args.common.json {
                println!("{json}");
            } else {
                print!("{}", out.report);
            }
            Ok(out.exit_code)
        }
        Command::CasestudyVdp(args) => {
            let grid = parse_grid(&args.grid)?;
            let levels = parse_levels(&args.levels)?;
            let mu = match &args.input {
                Some(path) => {
                    let spec = read_spec(path)?;
                    if spec.kind != FieldKind::Vdp {
                        return Err(anyhow::anyhow!(
                            "casestudy-vdp needs a vdp specification, got {:?}",
                            spec.kind
                        )
                        .into());
                    }
                    spec.mu.expect("validated")
                }
                None => args.mu,
            };
            let files = casestudy_vdp(mu, grid, &levels)?;
            files
                .write_to(&args.output_dir)
                .with_context(|| format!("writing to {}", args.output_dir.display()))?;
            for (name, _) in &files.files {
                println!("{}", args.output_dir.join(name).display());
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // clap uses 2 for usage errors; here 2 means nonexistence
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(InputError(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
