use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dengue_moo::harness::{
    evaluate_reference_solution, export_cases, parse_algorithms, parse_point, run_campaign, sample_random_mapping,
    write_samples_csv, ExperimentConfig, Profile,
};
use dengue_moo::{integrate_rk4, ControlSignal, Error, ModelParameters, ScalarCostWeights, TimeGrid};

#[derive(Parser)]
#[command(name = "dengue-moo", version, about = "Dengue insecticide-control experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a multi-run, multi-algorithm campaign and write fronts, logs and statistics.
    Run(RunArgs),
    /// Evaluate uniformly random controls and write their objective pairs.
    Sample(SampleArgs),
    /// Re-simulate front members nearest to target insecticide budgets.
    ExportCases(ExportArgs),
    /// Evaluate a stored control (one value per line).
    Evaluate(EvaluateArgs),
    /// Write the trajectory of a constant control.
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct ModelArgs {
    /// Override a model parameter, e.g. `--param beta_mh=0.4`.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
}

impl ModelArgs {
    fn apply(&self, params: &mut ModelParameters) -> Result<(), Error> {
        for p in &self.params {
            let (name, value) = p
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("expected NAME=VALUE, got `{p}`")))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("invalid value in `{p}`")))?;
            params.set(name.trim(), value)?;
        }
        Ok(())
    }

    fn build(&self) -> Result<ModelParameters, Error> {
        let mut params = ModelParameters::default();
        self.apply(&mut params)?;
        Ok(params)
    }
}

#[derive(Args)]
struct RunArgs {
    /// `key = value` file; flags given on the command line take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    profile: Option<Profile>,
    /// `all` or a comma-separated list of ddmoa2, nsga2, ibea, gde3, moead, smpso.
    #[arg(long)]
    algorithm: Option<String>,
    #[arg(long)]
    runs: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    max_evals: Option<u64>,
    #[arg(long)]
    pop_size: Option<usize>,
    /// Hypervolume reference point as `f1,f2`.
    #[arg(long, allow_hyphen_values = true)]
    ref_point: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    model: ModelArgs,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long, default_value_t = 100_000)]
    count: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value = "samples.csv")]
    out: PathBuf,
    #[command(flatten)]
    model: ModelArgs,
}

#[derive(Args)]
struct ExportArgs {
    /// Front CSV (`f1,f2`).
    #[arg(long)]
    front: PathBuf,
    /// Decision-vector sidecar; defaults to the front path with `_front` replaced by `_x`.
    #[arg(long)]
    sidecar: Option<PathBuf>,
    /// Comma-separated target values of f2.
    #[arg(long, value_delimiter = ',', required = true)]
    targets: Vec<f64>,
    #[arg(long, default_value = "cases")]
    out: PathBuf,
    #[command(flatten)]
    model: ModelArgs,
}

#[derive(Args)]
struct EvaluateArgs {
    control: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    gamma_d: f64,
    #[arg(long, default_value_t = 1.0)]
    gamma_s: f64,
    #[command(flatten)]
    model: ModelArgs,
}

#[derive(Args)]
struct SimulateArgs {
    /// Constant control level in [0, 1].
    #[arg(long, default_value_t = 0.0)]
    level: f64,
    #[arg(long, default_value = "trajectory.csv")]
    out: PathBuf,
    #[command(flatten)]
    model: ModelArgs,
}

fn campaign_config(args: &RunArgs) -> Result<ExperimentConfig, Error> {
    let mut config = match &args.config {
        Some(path) => ExperimentConfig::from_file(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(p) = args.profile {
        config.set_profile(p);
    }
    if let Some(a) = &args.algorithm {
        config.algorithms = parse_algorithms(a)?;
    }
    if let Some(r) = args.runs {
        config.runs = r;
    }
    if let Some(s) = args.seed {
        config.seed = s;
    }
    if let Some(m) = args.max_evals {
        config.max_evals = m;
    }
    if let Some(p) = args.pop_size {
        config.pop_size = p;
    }
    if let Some(r) = &args.ref_point {
        config.reference = parse_point(r)?;
    }
    if let Some(o) = &args.out {
        config.out_dir = o.clone();
    }
    args.model.apply(&mut config.params)?;
    config.validate()?;
    Ok(config)
}

fn default_sidecar(front: &std::path::Path) -> PathBuf {
    let name = front
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let sidecar = match name.strip_suffix("_front.csv") {
        Some(stem) => format!("{stem}_x.csv"),
        None => format!("{}_x.csv", name.trim_end_matches(".csv")),
    };
    front.with_file_name(sidecar)
}

fn execute(command: Command) -> Result<(), Error> {
    let grid = TimeGrid::default();
    match command {
        Command::Run(args) => {
            let config = campaign_config(&args)?;
            let results = run_campaign(&config)?;
            println!("algorithm  runs  median_hv        q1        q3  total_hv");
            for r in &results {
                let s = &r.summary.stats;
                println!(
                    "{:<9} {:>5} {:>10.4} {:>9.4} {:>9.4} {:>9.4}",
                    r.algorithm.name(),
                    s.values.len(),
                    s.median,
                    s.q1,
                    s.q3,
                    r.summary.total_hv
                );
            }
            println!("results written to {}", config.out_dir.display());
        }
        Command::Sample(args) => {
            if args.count == 0 {
                return Err(Error::Config("count must be positive".into()));
            }
            let samples = sample_random_mapping(&args.model.build()?, &grid, args.count, args.seed)?;
            write_samples_csv(&args.out, &samples)?;
            println!("{} samples written to {}", samples.len(), args.out.display());
        }
        Command::ExportCases(args) => {
            let sidecar = args.sidecar.clone().unwrap_or_else(|| default_sidecar(&args.front));
            let cases = export_cases(
                &args.front,
                &sidecar,
                &args.targets,
                &args.model.build()?,
                &grid,
                &args.out,
            )?;
            for c in cases {
                println!(
                    "target f2 {:>6.2}: row {:>3}, f1 {:.6}, f2 {:.4} -> {}",
                    c.target_f2,
                    c.index,
                    c.objectives.f1(),
                    c.objectives.f2(),
                    c.trajectory_path.display()
                );
            }
        }
        Command::Evaluate(args) => {
            let weights = ScalarCostWeights::new(args.gamma_d, args.gamma_s)?;
            let (f1, f2, j) = evaluate_reference_solution(&args.control, &args.model.build()?, &grid, &weights)?;
            println!("f1,f2,J");
            println!("{f1},{f2},{j}");
        }
        Command::Simulate(args) => {
            let control = ControlSignal::constant(&grid, args.level)?;
            let traj = integrate_rk4(&args.model.build()?, control.values(), &grid)?;
            let file = std::fs::File::create(&args.out).map_err(|e| io_error(&args.out, e))?;
            traj.write_csv(std::io::BufWriter::new(file), control.values())
                .map_err(|e| io_error(&args.out, e))?;
            println!("trajectory written to {}", args.out.display());
        }
    }
    Ok(())
}

fn io_error(path: &std::path::Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_io() { 3 } else { 2 })
        }
    }
}
