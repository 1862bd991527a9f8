//! Experiment campaigns, random sampling of the objective space, case export
//! and single-solution evaluation.

use std::fmt;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::{Rng as _, SeedableRng};
use rayon::prelude::*;

use crate::baselines::{
    gde3_run, ibea_run, moead_run, nsga2_run, smpso_run, Gde3Config, IbeaConfig, MoeadConfig, Nsga2Config, SmpsoConfig,
};
use crate::ddmoa2::{self, DdmoaConfig};
use crate::error::{Error, Result};
use crate::metrics::{
    aggregate_runs, hypervolume_2d, total_hypervolume, write_statistics_csv, AlgorithmSummary, DEFAULT_REFERENCE,
};
use crate::model::{
    evaluate_objectives, integrate_rk4, scalar_cost, ControlSignal, DengueProblem, ModelParameters, ScalarCostWeights,
    TimeGrid,
};
use crate::moea::{
    read_front_csv, read_sidecar_csv, run_rng, write_front_csv, write_generation_log, write_sidecar_csv,
    ObjectiveVector, Problem, Rng, RunResult,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Ddmoa2,
    Nsga2,
    Ibea,
    Gde3,
    Moead,
    Smpso,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Ddmoa2,
        Algorithm::Nsga2,
        Algorithm::Ibea,
        Algorithm::Gde3,
        Algorithm::Moead,
        Algorithm::Smpso,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Ddmoa2 => "ddmoa2",
            Algorithm::Nsga2 => "nsga2",
            Algorithm::Ibea => "ibea",
            Algorithm::Gde3 => "gde3",
            Algorithm::Moead => "moead",
            Algorithm::Smpso => "smpso",
        }
    }

    /// One run with the algorithm's default settings apart from population
    /// size, budget and log reference point.
    pub fn run<P: Problem + ?Sized>(
        self,
        problem: &P,
        pop_size: usize,
        max_evals: u64,
        reference: ObjectiveVector,
        rng: &mut Rng,
    ) -> RunResult {
        match self {
            Algorithm::Ddmoa2 => {
                let c = DdmoaConfig {
                    mu: pop_size,
                    max_evals,
                    log_reference: reference,
                    ..DdmoaConfig::default()
                };
                ddmoa2::run(problem, &c, rng)
            }
            Algorithm::Nsga2 => {
                let c = Nsga2Config {
                    pop_size,
                    max_evals,
                    log_reference: reference,
                    ..Nsga2Config::default()
                };
                nsga2_run(problem, &c, rng)
            }
            Algorithm::Ibea => {
                let c = IbeaConfig {
                    pop_size,
                    max_evals,
                    log_reference: reference,
                    ..IbeaConfig::default()
                };
                ibea_run(problem, &c, rng)
            }
            Algorithm::Gde3 => {
                let c = Gde3Config {
                    pop_size,
                    max_evals,
                    log_reference: reference,
                    ..Gde3Config::default()
                };
                gde3_run(problem, &c, rng)
            }
            Algorithm::Moead => {
                let c = MoeadConfig {
                    pop_size,
                    neighborhood_size: MoeadConfig::default().neighborhood_size.min(pop_size),
                    max_evals,
                    log_reference: reference,
                    ..MoeadConfig::default()
                };
                moead_run(problem, &c, rng)
            }
            Algorithm::Smpso => {
                let c = SmpsoConfig {
                    swarm_size: pop_size,
                    archive_size: pop_size,
                    max_evals,
                    log_reference: reference,
                    ..SmpsoConfig::default()
                };
                smpso_run(problem, &c, rng)
            }
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownAlgorithm(s.to_string()))
    }
}

/// Parses `all` or a comma-separated list of algorithm names.
pub fn parse_algorithms(s: &str) -> Result<Vec<Algorithm>> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(Algorithm::ALL.to_vec());
    }
    s.split(',').map(|a| a.trim().parse()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    /// 30 runs of 100 000 evaluations.
    Paper,
    /// 5 runs of 20 000 evaluations.
    Desk,
}

impl Profile {
    pub fn runs(self) -> usize {
        match self {
            Profile::Paper => 30,
            Profile::Desk => 5,
        }
    }

    pub fn max_evals(self) -> u64 {
        match self {
            Profile::Paper => 100_000,
            Profile::Desk => 20_000,
        }
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "paper" => Ok(Profile::Paper),
            "desk" => Ok(Profile::Desk),
            _ => Err(Error::Config(format!("unknown profile `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub algorithms: Vec<Algorithm>,
    pub runs: usize,
    pub seed: u64,
    pub pop_size: usize,
    pub max_evals: u64,
    pub params: ModelParameters,
    pub grid: TimeGrid,
    pub reference: ObjectiveVector,
    pub out_dir: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self::from_profile(Profile::Paper)
    }
}

impl ExperimentConfig {
    pub fn from_profile(profile: Profile) -> Self {
        Self {
            algorithms: Algorithm::ALL.to_vec(),
            runs: profile.runs(),
            seed: 1,
            pop_size: 100,
            max_evals: profile.max_evals(),
            params: ModelParameters::default(),
            grid: TimeGrid::default(),
            reference: DEFAULT_REFERENCE,
            out_dir: PathBuf::from("results"),
        }
    }

    pub fn set_profile(&mut self, profile: Profile) {
        self.runs = profile.runs();
        self.max_evals = profile.max_evals();
    }

    /// Applies one `key = value` setting. Model parameters use `param.<name>`.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |what: &str| Error::Config(format!("invalid {what} `{value}`"));
        match key {
            "algorithm" | "algorithms" => self.algorithms = parse_algorithms(value)?,
            "runs" => self.runs = value.parse().map_err(|_| bad("run count"))?,
            "seed" => self.seed = value.parse().map_err(|_| bad("seed"))?,
            "pop_size" => self.pop_size = value.parse().map_err(|_| bad("population size"))?,
            "max_evals" => self.max_evals = parse_count(value).ok_or_else(|| bad("evaluation budget"))?,
            "ref_point" => self.reference = parse_point(value)?,
            "out" | "out_dir" => self.out_dir = PathBuf::from(value),
            "profile" => self.set_profile(value.parse()?),
            "horizon" => {
                let h = value.parse().map_err(|_| bad("horizon"))?;
                self.grid = TimeGrid::new(h, self.grid.steps)?;
            }
            "steps" => {
                let s = value.parse().map_err(|_| bad("step count"))?;
                self.grid = TimeGrid::new(self.grid.horizon, s)?;
            }
            _ => match key.strip_prefix("param.") {
                Some(name) => {
                    let v: f64 = value.parse().map_err(|_| bad("parameter value"))?;
                    self.params.set(name, v)?;
                }
                None => return Err(Error::Config(format!("unknown key `{key}`"))),
            },
        }
        Ok(())
    }

    /// Reads a line-oriented `key = value` file; `#` starts a comment.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut config = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                path: path.to_path_buf(),
                line: i + 1,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| parse_err("expected `key = value`".into()))?;
            config
                .apply(key.trim(), value.trim())
                .map_err(|e| parse_err(e.to_string()))?;
        }
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.algorithms.is_empty() {
            return Err(Error::Config("no algorithm selected".into()));
        }
        if self.runs == 0 {
            return Err(Error::Config("runs must be positive".into()));
        }
        if self.pop_size < 4 {
            return Err(Error::Config("population size must be at least 4".into()));
        }
        if self.max_evals == 0 {
            return Err(Error::Config("evaluation budget must be positive".into()));
        }
        if !self.reference.0.iter().all(|v| v.is_finite()) {
            return Err(Error::Config("reference point must be finite".into()));
        }
        self.params.validate()
    }

    pub fn problem(&self) -> Result<DengueProblem> {
        DengueProblem::new(self.params, self.grid)
    }
}

/// Accepts plain integers and scientific notation such as `1e5`.
fn parse_count(s: &str) -> Option<u64> {
    s.parse::<u64>().ok().or_else(|| {
        let v: f64 = s.parse().ok()?;
        (v >= 0.0 && v.fract() == 0.0 && v <= u64::MAX as f64).then_some(v as u64)
    })
}

/// Parses `f1,f2`.
pub fn parse_point(s: &str) -> Result<ObjectiveVector> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || Error::Config(format!("expected `f1,f2`, got `{s}`"));
    if parts.len() != 2 {
        return Err(bad());
    }
    let a: f64 = parts[0].parse().map_err(|_| bad())?;
    let b: f64 = parts[1].parse().map_err(|_| bad())?;
    Ok(ObjectiveVector::new(a, b))
}

/// Everything a campaign produced for one algorithm.
#[derive(Debug, Clone)]
pub struct AlgorithmRuns {
    pub algorithm: Algorithm,
    pub runs: Vec<RunResult>,
    pub summary: AlgorithmSummary,
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| Error::io(path, e))
}

fn write_with(path: &Path, f: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>) -> Result<()> {
    let mut out = create(path)?;
    f(&mut out).and_then(|_| out.flush()).map_err(|e| Error::io(path, e))
}

/// Runs every configured algorithm `runs` times on `problem` and writes the
/// per-run fronts, decision vectors and logs plus `stats.csv` to the output
/// directory.
pub fn run_campaign_on<P: Problem + ?Sized>(problem: &P, config: &ExperimentConfig) -> Result<Vec<AlgorithmRuns>> {
    config.validate()?;
    fs::create_dir_all(&config.out_dir).map_err(|e| Error::io(&config.out_dir, e))?;
    let mut results = Vec::with_capacity(config.algorithms.len());
    for &alg in &config.algorithms {
        let runs: Vec<RunResult> = (0..config.runs)
            .into_par_iter()
            .map(|r| {
                let mut rng = run_rng(config.seed, r as u64);
                alg.run(problem, config.pop_size, config.max_evals, config.reference, &mut rng)
            })
            .collect();
        for (r, run) in runs.iter().enumerate() {
            let stem = format!("{}_run{:02}", alg.name(), r);
            let dir = &config.out_dir;
            write_with(&dir.join(format!("{stem}_front.csv")), |o| {
                write_front_csv(o, &run.front)
            })?;
            write_with(&dir.join(format!("{stem}_x.csv")), |o| write_sidecar_csv(o, &run.front))?;
            write_with(&dir.join(format!("{stem}_log.csv")), |o| {
                write_generation_log(o, &run.log)
            })?;
        }
        let fronts: Vec<Vec<ObjectiveVector>> = runs.iter().map(|r| r.front.objectives()).collect();
        let hv: Vec<f64> = fronts.iter().map(|f| hypervolume_2d(f, config.reference)).collect();
        let summary = AlgorithmSummary {
            algorithm: alg.name().to_string(),
            stats: aggregate_runs(&hv)?,
            total_hv: total_hypervolume(fronts.iter().map(Vec::as_slice), config.reference),
        };
        results.push(AlgorithmRuns {
            algorithm: alg,
            runs,
            summary,
        });
    }
    let rows: Vec<AlgorithmSummary> = results.iter().map(|r| r.summary.clone()).collect();
    write_with(&config.out_dir.join("stats.csv"), |o| write_statistics_csv(o, &rows))?;
    Ok(results)
}

/// [`run_campaign_on`] for the dengue control problem described by `config`.
pub fn run_campaign(config: &ExperimentConfig) -> Result<Vec<AlgorithmRuns>> {
    run_campaign_on(&config.problem()?, config)
}

/// Objective vectors of `count` uniformly random controls. Sample `i` draws
/// from its own stream, so the result does not depend on thread scheduling.
pub fn sample_random_mapping(
    params: &ModelParameters,
    grid: &TimeGrid,
    count: usize,
    seed: u64,
) -> Result<Vec<ObjectiveVector>> {
    params.validate()?;
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let control: Vec<f64> = (0..grid.nodes()).map(|_| rng.random::<f64>()).collect();
            evaluate_objectives(params, &control, grid)
        })
        .collect()
}

pub fn write_samples_csv(path: &Path, samples: &[ObjectiveVector]) -> Result<()> {
    write_with(path, |o| {
        writeln!(o, "f1,f2")?;
        for s in samples {
            writeln!(o, "{},{}", s.f1(), s.f2())?;
        }
        Ok(())
    })
}

/// A front member picked for a requested insecticide budget.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseSelection {
    pub target_f2: f64,
    /// Row of the front file.
    pub index: usize,
    pub objectives: ObjectiveVector,
    pub trajectory_path: PathBuf,
}

/// Index of the member whose `f2` is closest to `target`, lowest index on ties.
pub fn nearest_by_f2(front: &[ObjectiveVector], target: f64) -> Option<usize> {
    front
        .iter()
        .enumerate()
        .fold(None, |best: Option<(usize, f64)>, (i, f)| {
            let d = (f.f2() - target).abs();
            match best {
                Some((_, b)) if b <= d => best,
                _ => Some((i, d)),
            }
        })
        .map(|(i, _)| i)
}

/// For each target `f2`, re-simulates the nearest front member and writes
/// its trajectory to `out_dir/case_<k>.csv`.
pub fn export_cases(
    front_path: &Path,
    sidecar_path: &Path,
    targets: &[f64],
    params: &ModelParameters,
    grid: &TimeGrid,
    out_dir: &Path,
) -> Result<Vec<CaseSelection>> {
    let front = read_front_csv(front_path)?;
    if !sidecar_path.exists() {
        return Err(Error::MissingSidecar(sidecar_path.to_path_buf()));
    }
    let xs = read_sidecar_csv(sidecar_path)?;
    if xs.len() != front.len() {
        return Err(Error::Config(format!(
            "front has {} rows but the sidecar has {}",
            front.len(),
            xs.len()
        )));
    }
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let mut cases = Vec::with_capacity(targets.len());
    for (k, &target) in targets.iter().enumerate() {
        let index = nearest_by_f2(&front, target).ok_or(Error::EmptyInput)?;
        let control = ControlSignal::new(xs[index].clone())?;
        let trajectory = integrate_rk4(params, control.values(), grid)?;
        let path = out_dir.join(format!("case_{k}.csv"));
        write_with(&path, |o| trajectory.write_csv(o, control.values()))?;
        cases.push(CaseSelection {
            target_f2: target,
            index,
            objectives: front[index],
            trajectory_path: path,
        });
    }
    Ok(cases)
}

/// Reads a control with one value per line.
pub fn read_control(path: &Path) -> Result<ControlSignal> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        values.push(line.parse::<f64>().map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            line: i + 1,
            message: e.to_string(),
        })?);
    }
    ControlSignal::new(values)
}

/// `(f1, f2, J)` of a stored control.
pub fn evaluate_reference_solution(
    path: &Path,
    params: &ModelParameters,
    grid: &TimeGrid,
    weights: &ScalarCostWeights,
) -> Result<(f64, f64, f64)> {
    let control = read_control(path)?;
    let f = evaluate_objectives(params, control.values(), grid)?;
    let j = scalar_cost(params, control.values(), weights, grid)?;
    Ok((f.f1(), f.f2(), j))
}
