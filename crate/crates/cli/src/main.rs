use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use kconvex::{CurvatureBand, CurvatureDefinition, Ln2Variant};
use kconvex_cli::{run, sibling, Command, RunConfig};

#[derive(Parser)]
#[command(name = "kconvex", version, about = "Inradius/circumradius bound verification in pinched negative curvature")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand)]
enum Sub {
    /// Generate a seeded polygon corpus (JSON).
    Gen,
    /// Vertex curvatures, hypothesis flags and radii of a corpus.
    Measure { corpus: PathBuf },
    /// Check measured radii against the polygon bounds.
    Verify { corpus: PathBuf },
    /// Build the rounded arc chain and its convexity conditions.
    Round { polygon: PathBuf },
    /// Measure geodesic polygons on a warped surface.
    Surface { scenario: Option<PathBuf> },
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Dimensional,
    AsWritten,
}

#[derive(Clone, Copy, ValueEnum)]
enum DefinitionArg {
    A,
    B,
}

#[derive(Args)]
struct Common {
    /// Curvature lower bound is -k1^2.
    #[arg(long, global = true, default_value_t = 1.0)]
    k1: f64,
    /// Curvature upper bound is -k2^2.
    #[arg(long, global = true, default_value_t = 0.5)]
    k2: f64,
    /// Treat the upper curvature bound as strict.
    #[arg(long, global = true)]
    strict: bool,
    /// Fixed model curvature scale (default: drawn from [k2, k1]).
    #[arg(long, global = true)]
    k: Option<f64>,
    #[arg(long, global = true, default_value_t = 0.5)]
    rho: f64,
    /// Comma-separated parallel-curve offsets.
    #[arg(long, global = true, value_delimiter = ',', default_values_t = [1e-2, 1e-3, 1e-4])]
    eps: Vec<f64>,
    /// Vertex count `N` or range `MIN..MAX`.
    #[arg(long, global = true, default_value = "3..8")]
    n: String,
    #[arg(long, global = true, default_value_t = 100)]
    size: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value = "dimensional")]
    variant: VariantArg,
    /// Vertex curvature used by the hypothesis test.
    #[arg(long, global = true, value_enum, default_value = "a")]
    definition: DefinitionArg,
    /// Surface profile: sinh or blended.
    #[arg(long, global = true)]
    profile: Option<String>,
    /// Keep polygons that fail the curvature hypotheses (gen).
    #[arg(long, global = true)]
    unfiltered: bool,
    /// Output file; side artifacts are written next to it.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

fn parse_n(s: &str) -> Result<(usize, usize)> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| anyhow!("bad --n {s:?}: {e}"));
    match s.split_once("..") {
        Some((a, b)) => Ok((parse(a)?, parse(b.trim_start_matches('='))?)),
        None => {
            let n = parse(s)?;
            Ok((n, n))
        }
    }
}

fn config(cli: &Cli) -> Result<RunConfig> {
    let c = &cli.common;
    let (command, input) = match &cli.command {
        Sub::Gen => (Command::Gen, None),
        Sub::Measure { corpus } => (Command::Measure, Some(corpus.clone())),
        Sub::Verify { corpus } => (Command::Verify, Some(corpus.clone())),
        Sub::Round { polygon } => (Command::Round, Some(polygon.clone())),
        Sub::Surface { scenario } => (Command::Surface, scenario.clone()),
    };
    let band = CurvatureBand::new(c.k1, c.k2, c.strict)?;
    let mut cfg = RunConfig::new(command, band, c.rho);
    cfg.seed = c.seed;
    cfg.k = c.k;
    cfg.eps = c.eps.clone();
    cfg.size = c.size;
    cfg.n_range = parse_n(&c.n)?;
    cfg.variant = match c.variant {
        VariantArg::Dimensional => Ln2Variant::Dimensional,
        VariantArg::AsWritten => Ln2Variant::AsWritten,
    };
    cfg.definition = match c.definition {
        DefinitionArg::A => CurvatureDefinition::A,
        DefinitionArg::B => CurvatureDefinition::B,
    };
    cfg.profile = c.profile.clone();
    cfg.require_hypotheses = !c.unfiltered;
    cfg.input = input;
    cfg.out = c.out.clone();
    cfg.validate()?;
    Ok(cfg)
}

fn execute(cli: &Cli) -> Result<bool> {
    let cfg = config(cli)?;
    let input = match &cfg.input {
        Some(p) => fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?,
        None => String::new(),
    };
    let out = run(&cfg, &input)?;
    match &cfg.out {
        Some(path) => {
            if path.is_dir() {
                bail!("--out {} is a directory", path.display());
            }
            fs::write(path, &out.primary).with_context(|| format!("cannot write {}", path.display()))?;
            for (suffix, content) in &out.extras {
                let p = sibling(path, suffix);
                fs::write(&p, content).with_context(|| format!("cannot write {}", p.display()))?;
            }
        }
        None => print!("{}", out.primary),
    }
    eprintln!("{}", out.summary);
    Ok(out.failed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
