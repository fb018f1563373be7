use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use wirtinger::properties::{render_properties, run_properties};
use wirtinger::scene::{parse_scene, render_table, run_scene, Report};
use wirtinger::Real;

const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(
    name = "wirtinger",
    version,
    about = "Degrees and Wirtinger numbers of flat subtori in hyperkähler tori"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scalar {
    F64,
    F32,
}

#[derive(clap::Args)]
struct SceneArgs {
    /// Scene file (JSON).
    scene: PathBuf,
    /// Cross-check every row against all strategies and the Pfaffian expansion.
    #[arg(long)]
    oracle: bool,
    /// Relative comparison tolerance (overrides the scene's).
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Floating point type used for the computation.
    #[arg(long, value_enum, default_value = "f64")]
    scalar: Scalar,
}

#[derive(Subcommand)]
enum Command {
    /// Degree report for every subvariety and verdict for every chain.
    Compute(SceneArgs),
    /// Like compute, but exits with status 1 on any violation.
    Check(SceneArgs),
    /// Seeded property run with counterexample dumps.
    Properties {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        size: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

fn evaluate<R: Real>(args: &SceneArgs) -> Result<Report<R>, String> {
    let text = std::fs::read_to_string(&args.scene)
        .map_err(|e| format!("{}: {e}", args.scene.display()))?;
    let mut scene = parse_scene::<R>(&text).map_err(|e| e.to_string())?;
    for w in &scene.warnings {
        eprintln!("warning: subvariety {}: {}", w.subvariety, w.message);
    }
    if let Some(t) = args.tolerance {
        if t.is_nan() || t <= 0.0 {
            return Err(format!("tolerance must be positive, got {t}"));
        }
        scene.options.tolerance = t;
    }
    run_scene(&scene, args.oracle).map_err(|e| e.to_string())
}

fn emit<R: Real>(args: &SceneArgs, strict: bool) -> ExitCode {
    let report = match evaluate::<R>(args) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    match args.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Table => print!("{}", render_table(&report)),
    }
    if strict && !report.passed() {
        ExitCode::from(EXIT_VIOLATION)
    } else {
        ExitCode::SUCCESS
    }
}

fn scene_command(args: &SceneArgs, strict: bool) -> ExitCode {
    match args.scalar {
        Scalar::F64 => emit::<f64>(args, strict),
        Scalar::F32 => emit::<f32>(args, strict),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Compute(args) => scene_command(args, false),
        Command::Check(args) => scene_command(args, true),
        Command::Properties { seed, size, format } => {
            if *size == 0 {
                eprintln!("error: size must be at least 1");
                return ExitCode::from(EXIT_INPUT);
            }
            let report = run_properties(*seed, *size);
            match format {
                Format::Json => println!("{}", report.to_json()),
                Format::Table => print!("{}", render_properties(&report)),
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VIOLATION)
            }
        }
    }
}
