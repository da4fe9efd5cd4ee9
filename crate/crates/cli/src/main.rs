use clap::{Args, Parser, Subcommand, ValueEnum};
use mindiam_cli::gen::{self, ImpreciseKind};
use mindiam_cli::run::{DEFAULT_EPS, DEFAULT_RESOLUTION};
use mindiam_cli::{parse_instance, run, CliError, Command, InstanceFile, RunOptions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Minimum-diameter color selection and imprecise-point solvers.
#[derive(Parser)]
#[command(name = "mindiam", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Approximate minimum-diameter color selection (indecisive model).
    Mindcs(Shared),
    /// Approximate minimum-diameter selection from convex regions.
    Imprecise(Shared),
    /// Rectilinear LP relaxation, a √d approximation in any dimension.
    Lp(Shared),
    /// Best separating wedge over all region pairs.
    Separability(Shared),
    /// Exact (indecisive) or sampling (imprecise) baseline.
    Oracle(Shared),
    /// Emit a random instance.
    Gen(GenArgs),
}

#[derive(Args)]
struct Shared {
    /// Instance file; with --seed and no input, a random instance is used.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Report destination (stdout if absent).
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_EPS)]
    eps: f64,
    /// Write a figure of the instance and selection.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Compare against an oracle.
    #[arg(long)]
    oracle: bool,
    /// Shrink eps internally so the guarantee is a plain 1 + eps.
    #[arg(long)]
    strict_eps: bool,
    /// Seed for a generated instance when --input is absent.
    #[arg(long)]
    seed: Option<u64>,
    /// Sampling-oracle grid step.
    #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
    resolution: f64,
    /// Write the LP in text form (lp command).
    #[arg(long)]
    dump_lp: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Indecisive,
    Imprecise,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Random,
    Separable,
    Common,
    Triple,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum, default_value = "indecisive")]
    model: ModelArg,
    /// Colors (indecisive) or regions (imprecise).
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Max class size (indecisive) or max polygon vertices (imprecise).
    #[arg(long, default_value_t = 4)]
    k: usize,
    /// Coordinates fall in [0, spread]^d.
    #[arg(long, default_value_t = 10.0)]
    spread: f64,
    /// Region radius; larger values overlap more.
    #[arg(long, default_value_t = 1.5)]
    overlap: f64,
    #[arg(long, value_enum, default_value = "random")]
    kind: KindArg,
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn generate(g: &GenArgs) -> Result<InstanceFile, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    if !(g.spread > 0.0 && g.overlap > 0.0) {
        return Err(CliError::Usage("--spread and --overlap must be positive".into()));
    }
    Ok(match g.model {
        ModelArg::Indecisive => {
            if g.n == 0 || g.d == 0 {
                return Err(CliError::Usage("--n and --d must be positive".into()));
            }
            InstanceFile::from_indecisive(&gen::indecisive(&mut rng, g.d, g.n, g.k, g.spread))
        }
        ModelArg::Imprecise => {
            if g.d != 2 {
                return Err(CliError::Usage("imprecise generation is planar; use --d 2".into()));
            }
            let kind = match g.kind {
                KindArg::Random => ImpreciseKind::Random,
                KindArg::Separable => ImpreciseKind::Separable,
                KindArg::Common => ImpreciseKind::CommonPoint,
                KindArg::Triple => ImpreciseKind::TripleOverlap,
            };
            let polys = match kind {
                ImpreciseKind::Random => gen::imprecise_polygons(&mut rng, g.n.max(1), g.k, g.spread, g.overlap),
                ImpreciseKind::Separable => {
                    gen::separable(&mut rng, g.n, g.k, g.spread, g.overlap, std::f64::consts::FRAC_PI_4)
                }
                ImpreciseKind::CommonPoint => {
                    gen::with_common_point(&mut rng, g.n.max(1), g.k, g.spread, g.overlap).0
                }
                ImpreciseKind::TripleOverlap => gen::triple_overlap(&mut rng, g.spread),
            };
            InstanceFile::from_polygons(&polys)
        }
    })
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn emit(output: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match output {
        Some(p) => write(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn execute(command: Command, a: &Shared) -> Result<(), CliError> {
    let file = match (&a.input, a.seed) {
        (Some(path), _) => {
            let bytes = std::fs::read(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            parse_instance(&bytes)?
        }
        (None, Some(seed)) => {
            let model = match command {
                Command::Mindcs => ModelArg::Indecisive,
                _ => ModelArg::Imprecise,
            };
            let kind = match command {
                Command::Imprecise | Command::Separability => KindArg::Separable,
                _ => KindArg::Random,
            };
            generate(&GenArgs {
                model,
                n: 3,
                k: 4,
                spread: 10.0,
                overlap: 1.5,
                kind,
                d: 2,
                seed,
                output: None,
            })?
        }
        (None, None) => return Err(CliError::Usage("give --input <path> or --seed <u64>".into())),
    };
    let opts = RunOptions {
        eps: a.eps,
        strict_eps: a.strict_eps,
        oracle: a.oracle,
        resolution: a.resolution,
        svg: a.svg.is_some(),
        dump_lp: a.dump_lp.is_some(),
        input: match (&a.input, a.seed) {
            (Some(p), _) => Some(p.display().to_string()),
            (None, Some(s)) => Some(format!("seed:{s}")),
            (None, None) => None,
        },
    };
    let out = run(command, &file, &opts)?;
    if let (Some(path), Some(svg)) = (&a.svg, &out.svg) {
        write(path, svg)?;
    }
    if let (Some(path), Some(text)) = (&a.dump_lp, &out.lp_dump) {
        write(path, text)?;
    }
    emit(a.output.as_deref(), &out.report.to_json())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Sub::Mindcs(a) => execute(Command::Mindcs, a),
        Sub::Imprecise(a) => execute(Command::Imprecise, a),
        Sub::Lp(a) => execute(Command::Lp, a),
        Sub::Separability(a) => execute(Command::Separability, a),
        Sub::Oracle(a) => execute(Command::Oracle, a),
        Sub::Gen(g) => generate(g).and_then(|f| {
            let mut s = f.to_canonical_json();
            s.push('\n');
            emit(g.output.as_deref(), &s)
        }),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
