//! Command-line driver wiring problems, images and reports together.
//!
//! Exit codes are a stable contract for scripts: 0 success, 2 input error,
//! 3 solver conditioning error, 4 map fitting failure. All outputs are
//! byte-for-byte reproducible for identical inputs and flags.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use szewarp::raster::{
    export_field_csv, export_svg_grid, make_grid_image, make_synthetic_portrait, metrics,
    quadratic_press, read_pgm, write_pgm, GreyImage, Metrics, PixelRect, ProbeGrid,
};
use szewarp::solver::{
    boundary_residual, continuation_csv, continuation_with, problem_from_json, solution_csv,
    solver_by_name, solver_registry, DirichletProblem, DirichletSolver, ResidualSummary,
};
use szewarp::warp::{
    correspondence_from_json, fit_map_with, recover_image, warp_image, BoundaryCorrespondence,
    HarmonicMap, OutputGeometry, Viewport, WarpReport, DEFAULT_LAMBDA,
};

const EXIT_INPUT: u8 = 2;
const EXIT_SOLVER: u8 = 3;
const EXIT_FIT: u8 = 4;

#[derive(Parser)]
#[command(
    name = "szewarp",
    about = "Mesh-free Dirichlet solves on the upper half-plane and harmonic image warping",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolverChoice {
    /// Rank-one kernel downdates, one constraint at a time
    Recursive,
    /// LU factorization of the regularized normal system
    Dense,
}

impl SolverChoice {
    fn get(self) -> &'static dyn DirichletSolver {
        let name = match self {
            SolverChoice::Recursive => "recursive",
            SolverChoice::Dense => "dense",
        };
        solver_by_name(name).expect("registered solver")
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve a Dirichlet problem file and dump coefficients as CSV
    Solve(SolveArgs),
    /// Re-solve along a decreasing lambda schedule and report residuals
    Convergence(ConvergenceArgs),
    /// Fit a harmonic map from a correspondence and warp an image under it
    Warp(WarpArgs),
    /// Undo a distortion: resample a distorted image through the forward map
    Recover(RecoverArgs),
    /// One-shot demo: grid image, quadratic press, warp, recover, reports
    GridDemo(GridDemoArgs),
    /// List the registered solver strategies
    Solvers,
}

#[derive(Args)]
struct SolveArgs {
    /// Problem JSON: { "lambda": number, "samples": [ { "x", "y", "value", "weight"? } ] }
    problem: PathBuf,
    /// Output CSV of coefficients and residuals
    #[arg(long)]
    out: PathBuf,
    /// Override the problem file's lambda
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long, value_enum, default_value = "recursive")]
    solver: SolverChoice,
}

#[derive(Args)]
struct ConvergenceArgs {
    problem: PathBuf,
    /// Strictly decreasing lambdas, comma separated, e.g. "1e-1,1e-2,1e-3"
    #[arg(long)]
    schedule: String,
    /// Output CSV with one row per lambda
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "recursive")]
    solver: SolverChoice,
}

#[derive(Args)]
struct WarpArgs {
    /// Correspondence JSON: { "source": \[\[ξ,η\],…\], "target": \[\[x,y\],…\], "lambda"? }
    correspondence: PathBuf,
    /// Source image (PGM, P2 or P5)
    image: PathBuf,
    /// Output PGM
    #[arg(long)]
    out: PathBuf,
    /// Optional per-run summary CSV
    #[arg(long)]
    report: Option<PathBuf>,
    /// Override lambda (flag beats file beats default)
    #[arg(long)]
    lambda: Option<f64>,
    /// Output width (defaults to the input's)
    #[arg(long)]
    width: Option<usize>,
    /// Output height (defaults to the input's)
    #[arg(long)]
    height: Option<usize>,
    #[arg(long, value_enum, default_value = "recursive")]
    solver: SolverChoice,
}

#[derive(Args)]
struct RecoverArgs {
    correspondence: PathBuf,
    /// Distorted image (PGM, P2 or P5)
    image: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    width: Option<usize>,
    #[arg(long)]
    height: Option<usize>,
    #[arg(long, value_enum, default_value = "recursive")]
    solver: SolverChoice,
}

#[derive(Clone, Copy, ValueEnum)]
enum Pattern {
    /// n×n black grid on white
    Grid,
    /// Smooth 256-level synthetic portrait
    Portrait,
}

#[derive(Args)]
struct GridDemoArgs {
    /// Grid cells per side
    #[arg(long, default_value_t = 8)]
    n: usize,
    /// Press strength in [0, 1)
    #[arg(long, default_value_t = 0.25)]
    alpha: f64,
    /// Output directory (created if absent)
    #[arg(long)]
    outdir: PathBuf,
    /// Image side length in pixels
    #[arg(long, default_value_t = 256)]
    size: usize,
    #[arg(long)]
    lambda: Option<f64>,
    /// Test pattern to push through the pipeline
    #[arg(long, value_enum, default_value = "grid")]
    pattern: Pattern,
    /// Seed for the portrait pattern
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Probe-grid density per axis for field.csv (0 skips the export)
    #[arg(long, default_value_t = 0)]
    probes: usize,
    #[arg(long, value_enum, default_value = "recursive")]
    solver: SolverChoice,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn solver(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_SOLVER,
            message: message.into(),
        }
    }

    fn fit(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_FIT,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Solve(args) => cmd_solve(args),
        Command::Convergence(args) => cmd_convergence(args),
        Command::Warp(args) => cmd_warp(args),
        Command::Recover(args) => cmd_recover(args),
        Command::GridDemo(args) => cmd_grid_demo(args),
        Command::Solvers => {
            for solver in solver_registry() {
                println!("{:<12} {}", solver.name(), solver.describe());
            }
            Ok(())
        }
    }
}

fn read_to_string(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

fn write_bytes(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    std::fs::write(path, bytes)
        .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))
}

fn load_problem(path: &Path, lambda_flag: Option<f64>) -> Result<DirichletProblem, Failure> {
    let text = read_to_string(path)?;
    let problem = problem_from_json(&text).map_err(|e| Failure::input(e.to_string()))?;
    match lambda_flag {
        Some(lambda) => {
            eprintln!(
                "note: --lambda {lambda} overrides the file value {}",
                problem.lambda()
            );
            problem
                .with_lambda(lambda)
                .map_err(|e| Failure::input(e.to_string()))
        }
        None => Ok(problem),
    }
}

fn print_residual(residual: ResidualSummary) {
    println!("residual max={} rms={}", residual.max, residual.rms);
}

fn cmd_solve(args: SolveArgs) -> Result<(), Failure> {
    let problem = load_problem(&args.problem, args.lambda)?;
    let solution = args
        .solver
        .get()
        .solve(&problem)
        .map_err(|e| Failure::solver(e.to_string()))?;
    write_bytes(&args.out, solution_csv(&problem, &solution).as_bytes())?;
    print_residual(boundary_residual(&problem, &solution));
    Ok(())
}

fn parse_schedule(text: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|e| Failure::input(format!("bad schedule entry {tok:?}: {e}")))
        })
        .collect()
}

fn cmd_convergence(args: ConvergenceArgs) -> Result<(), Failure> {
    let problem = load_problem(&args.problem, None)?;
    let schedule = parse_schedule(&args.schedule)?;
    let steps = continuation_with(&problem, &schedule, args.solver.get())
        .map_err(|e| Failure::input(e.to_string()))?;
    write_bytes(&args.out, continuation_csv(&steps).as_bytes())?;
    for step in &steps {
        match &step.outcome {
            Ok((_, residual)) => eprintln!(
                "lambda={} max={} rms={}",
                step.lambda, residual.max, residual.rms
            ),
            Err(e) => eprintln!("lambda={}: {e}", step.lambda),
        }
    }
    let last_ok = steps.iter().rev().find_map(|s| s.outcome.as_ref().ok());
    match last_ok {
        Some((_, residual)) => print_residual(*residual),
        None => return Err(Failure::solver("no schedule step solved".to_string())),
    }
    Ok(())
}

fn load_map(
    corr_path: &Path,
    lambda_flag: Option<f64>,
    solver: &dyn DirichletSolver,
) -> Result<(HarmonicMap, BoundaryCorrespondence), Failure> {
    let text = read_to_string(corr_path)?;
    let (corr, lambda_file) =
        correspondence_from_json(&text).map_err(|e| Failure::input(e.to_string()))?;
    let lambda = match (lambda_flag, lambda_file) {
        (Some(flag), Some(file)) => {
            eprintln!("note: --lambda {flag} overrides the file value {file}");
            flag
        }
        (Some(flag), None) => flag,
        (None, Some(file)) => file,
        (None, None) => DEFAULT_LAMBDA,
    };
    let map = fit_map_with(&corr, lambda, solver).map_err(|e| Failure::fit(e.to_string()))?;
    Ok((map, corr))
}

fn load_image(path: &Path) -> Result<GreyImage, Failure> {
    let bytes = std::fs::read(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    read_pgm(&bytes).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn finish_resample(
    out_path: &Path,
    report_path: Option<&Path>,
    image: &GreyImage,
    report: &WarpReport,
) -> Result<(), Failure> {
    write_bytes(out_path, &write_pgm(image))?;
    if let Some(path) = report_path {
        write_bytes(path, report.to_csv().as_bytes())?;
    }
    println!("pixels={} failed={}", report.pixels, report.failed);
    Ok(())
}

fn cmd_warp(args: WarpArgs) -> Result<(), Failure> {
    let (map, _) = load_map(&args.correspondence, args.lambda, args.solver.get())?;
    let source = load_image(&args.image)?;
    let geometry = OutputGeometry {
        width: args.width.unwrap_or_else(|| source.width()),
        height: args.height.unwrap_or_else(|| source.height()),
        viewport: Viewport::unit(),
    };
    let (warped, report) = warp_image(&map, &source, &Viewport::unit(), &geometry);
    finish_resample(&args.out, args.report.as_deref(), &warped, &report)
}

fn cmd_recover(args: RecoverArgs) -> Result<(), Failure> {
    let (map, _) = load_map(&args.correspondence, args.lambda, args.solver.get())?;
    let distorted = load_image(&args.image)?;
    let geometry = OutputGeometry {
        width: args.width.unwrap_or_else(|| distorted.width()),
        height: args.height.unwrap_or_else(|| distorted.height()),
        viewport: Viewport::unit(),
    };
    let (recovered, report) = recover_image(&map, &distorted, &Viewport::unit(), &geometry);
    finish_resample(&args.out, args.report.as_deref(), &recovered, &report)
}

fn metrics_csv(full: &Metrics, interior: &Metrics) -> String {
    let mut out = String::from(
        "scope,mae,psnr,exact_match_fraction,total_greyness_a,total_greyness_b\n",
    );
    for (scope, m) in [("full", full), ("central90", interior)] {
        let _ = writeln!(
            out,
            "{scope},{},{},{},{},{}",
            m.mae, m.psnr, m.exact_match_fraction, m.total_greyness_a, m.total_greyness_b
        );
    }
    out
}

fn cmd_grid_demo(args: GridDemoArgs) -> Result<(), Failure> {
    if args.size == 0 {
        return Err(Failure::input("--size must be positive"));
    }
    std::fs::create_dir_all(&args.outdir)
        .map_err(|e| Failure::input(format!("cannot create {}: {e}", args.outdir.display())))?;
    let original = match args.pattern {
        Pattern::Grid => make_grid_image(args.n, args.size)
            .map_err(|e| Failure::input(e.to_string()))?,
        Pattern::Portrait => make_synthetic_portrait(args.size, args.seed),
    };
    let corr = quadratic_press(args.alpha).map_err(|e| Failure::input(e.to_string()))?;
    let lambda = args.lambda.unwrap_or(DEFAULT_LAMBDA);
    let map =
        fit_map_with(&corr, lambda, args.solver.get()).map_err(|e| Failure::fit(e.to_string()))?;

    let geometry = OutputGeometry {
        width: args.size,
        height: args.size,
        viewport: Viewport::unit(),
    };
    let (distorted, warp_report) = warp_image(&map, &original, &Viewport::unit(), &geometry);
    let (recovered, _) = recover_image(&map, &distorted, &Viewport::unit(), &geometry);

    let full = metrics(&original, &recovered, None).map_err(|e| Failure::input(e.to_string()))?;
    let interior = metrics(
        &original,
        &recovered,
        Some(PixelRect::central(args.size, args.size, 0.9)),
    )
    .map_err(|e| Failure::input(e.to_string()))?;
    let svg =
        export_svg_grid(&map, args.n, 33).map_err(|e| Failure::fit(e.to_string()))?;

    let dir = &args.outdir;
    write_bytes(&dir.join("original.pgm"), &write_pgm(&original))?;
    write_bytes(&dir.join("distorted.pgm"), &write_pgm(&distorted))?;
    write_bytes(&dir.join("recovered.pgm"), &write_pgm(&recovered))?;
    write_bytes(&dir.join("grid.svg"), svg.as_bytes())?;
    write_bytes(
        &dir.join("metrics.csv"),
        metrics_csv(&full, &interior).as_bytes(),
    )?;
    write_bytes(&dir.join("warp_report.csv"), warp_report.to_csv().as_bytes())?;
    if args.probes > 0 {
        let grid = ProbeGrid::over_source(&map, args.probes, args.probes);
        let csv = export_field_csv(&map, &grid).map_err(|e| Failure::fit(e.to_string()))?;
        write_bytes(&dir.join("field.csv"), csv.as_bytes())?;
    }
    println!("pixels={} failed={}", warp_report.pixels, warp_report.failed);
    Ok(())
}
