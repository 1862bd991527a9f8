use std::fs;
use std::path::Path;

use dengue_moo::harness::{
    evaluate_reference_solution, export_cases, run_campaign_on, sample_random_mapping, Algorithm, ExperimentConfig,
    Profile,
};
use dengue_moo::model::ScalarCostWeights;
use dengue_moo::moea::{latin_hypercube, read_front_csv, write_front_csv, write_sidecar_csv, BiSphere};
use dengue_moo::{
    evaluate_objectives, nondominated_filter, scalar_cost, Bounds, Error, FrontArchive, ModelParameters, Problem, Rng,
    Solution, TimeGrid,
};
use rand::SeedableRng;

fn toy_config(out: &Path) -> ExperimentConfig {
    ExperimentConfig {
        runs: 2,
        max_evals: 600,
        pop_size: 20,
        out_dir: out.to_path_buf(),
        ..ExperimentConfig::from_profile(Profile::Desk)
    }
}

fn read_dir_bytes(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

#[test]
fn config_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("exp.conf");
    fs::write(
        &path,
        "# desk replication\nprofile = desk\nalgorithm = ddmoa2,nsga2\nseed = 42\n\
         ref_point = 3, 80\nparam.beta_mh = 0.4 # override\nout = somewhere\n",
    )
    .unwrap();
    let c = ExperimentConfig::from_file(&path).unwrap();
    assert_eq!(c.algorithms, vec![Algorithm::Ddmoa2, Algorithm::Nsga2]);
    assert_eq!((c.runs, c.max_evals, c.seed), (5, 20_000, 42));
    assert_eq!(c.params.beta_mh, 0.4);
    assert_eq!(c.out_dir, Path::new("somewhere"));

    fs::write(&path, "runs = 3\nthis line is wrong\n").unwrap();
    match ExperimentConfig::from_file(&path) {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
        other => panic!("unexpected {other:?}"),
    }
    fs::write(&path, "algorithm = simplex\n").unwrap();
    assert!(ExperimentConfig::from_file(&path).is_err());
    fs::write(&path, "runs = 0\n").unwrap();
    assert!(matches!(ExperimentConfig::from_file(&path), Err(Error::Config(_))));
    assert!(ExperimentConfig::from_file(&dir.path().join("absent"))
        .unwrap_err()
        .is_io());
}

#[test]
fn campaign_files_and_determinism() {
    let problem = BiSphere::unit_square();
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let results = run_campaign_on(&problem, &toy_config(a.path())).unwrap();
    run_campaign_on(&problem, &toy_config(b.path())).unwrap();
    assert_eq!(results.len(), 6);

    let files = read_dir_bytes(a.path());
    assert_eq!(files, read_dir_bytes(b.path()));
    assert_eq!(files.len(), 6 * 2 * 3 + 1);
    for alg in Algorithm::ALL {
        for run in 0..2 {
            let stem = format!("{}_run{run:02}", alg.name());
            let front = read_front_csv(&a.path().join(format!("{stem}_front.csv"))).unwrap();
            assert!(!front.is_empty());
            for p in &front {
                assert!(!front.iter().any(|q| q.dominates(p)), "{stem} is not nondominated");
            }
            let log = fs::read_to_string(a.path().join(format!("{stem}_log.csv"))).unwrap();
            assert!(log.starts_with("gen,funEval,pop_size,n_leaders,hv\n"));
        }
        let run0 = fs::read(a.path().join(format!("{}_run00_front.csv", alg.name()))).unwrap();
        let run1 = fs::read(a.path().join(format!("{}_run01_front.csv", alg.name()))).unwrap();
        assert_ne!(run0, run1, "{alg}: distinct seeds gave identical fronts");
    }
    let stats = fs::read_to_string(a.path().join("stats.csv")).unwrap();
    assert!(stats.starts_with("algorithm,runs,median_hv,q1,q3,min,max,total_hv\n"));
    assert_eq!(stats.lines().count(), 7);
}

#[test]
fn tiny_budget_front_is_the_initial_population() {
    let problem = BiSphere::unit_square();
    let dir = tempfile::tempdir().unwrap();
    let config = ExperimentConfig {
        algorithms: vec![Algorithm::Ddmoa2],
        runs: 1,
        max_evals: 10,
        ..toy_config(dir.path())
    };
    let results = run_campaign_on(&problem, &config).unwrap();
    let mut rng = dengue_moo::run_rng(config.seed, 0);
    let init: Vec<Solution> = latin_hypercube(20, 2, &Bounds::UNIT, &mut rng)
        .into_iter()
        .enumerate()
        .map(|(i, x)| Solution {
            f: problem.evaluate(&x),
            x,
            eval_id: i as u64,
        })
        .collect();
    let expected = nondominated_filter(init);
    assert_eq!(results[0].runs[0].front, expected);
    let written = read_front_csv(&dir.path().join("ddmoa2_run00_front.csv")).unwrap();
    let want: Vec<_> = expected.sorted().iter().map(|s| s.f).collect();
    assert_eq!(written, want);
}

#[test]
fn unwritable_output_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let config = toy_config(&blocker.join("sub"));
    let err = run_campaign_on(&BiSphere::unit_square(), &config).unwrap_err();
    assert!(err.is_io());
}

#[test]
fn sampling_is_seeded_and_bounded() {
    let p = ModelParameters::default();
    let g = TimeGrid::default();
    let a = sample_random_mapping(&p, &g, 40, 9).unwrap();
    let b = sample_random_mapping(&p, &g, 40, 9).unwrap();
    let c = sample_random_mapping(&p, &g, 40, 10).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
    let none = evaluate_objectives(&p, &vec![0.0; 1001], &g).unwrap();
    for f in &a {
        assert!((0.0..=84.0).contains(&f.f2()));
        assert!(f.f1() > 0.0 && f.f1() < none.f1());
    }
}

fn write_control_front(dir: &Path, levels: &[f64]) -> (std::path::PathBuf, std::path::PathBuf) {
    let p = ModelParameters::default();
    let g = TimeGrid::default();
    let mut front = FrontArchive::new();
    for (i, &c) in levels.iter().enumerate() {
        let x = vec![c; 1001];
        front.insert(Solution {
            f: evaluate_objectives(&p, &x, &g).unwrap(),
            x,
            eval_id: i as u64,
        });
    }
    let fp = dir.join("front.csv");
    let xp = dir.join("front_x.csv");
    write_front_csv(fs::File::create(&fp).unwrap(), &front).unwrap();
    write_sidecar_csv(fs::File::create(&xp).unwrap(), &front).unwrap();
    (fp, xp)
}

#[test]
fn exported_cases_reproduce_front_values() {
    let dir = tempfile::tempdir().unwrap();
    let (fp, xp) = write_control_front(dir.path(), &[0.0, 0.25, 0.5, 1.0]);
    let out = dir.path().join("cases");
    let p = ModelParameters::default();
    let g = TimeGrid::default();
    let cases = export_cases(&fp, &xp, &[0.0, 40.0, 200.0], &p, &g, &out).unwrap();
    assert_eq!(cases.len(), 3);
    assert_eq!(cases[0].objectives.f2(), 0.0);
    assert_eq!(cases[1].objectives.f2(), 42.0);
    // Beyond the front: the nearest endpoint.
    assert_eq!(cases[2].objectives.f2(), 84.0);

    let text = fs::read_to_string(&cases[0].trajectory_path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,s_h,e_h,i_h,r_h,a_m,s_m,e_m,i_m,c"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 1001);
    let peak = (0..rows.len())
        .max_by(|&a, &b| rows[a][3].total_cmp(&rows[b][3]))
        .unwrap();
    assert!((50.0..=70.0).contains(&rows[peak][0]));
    // Imported cases fade briefly before mosquito transmission takes over.
    let trough = (0..=peak).min_by(|&a, &b| rows[a][3].total_cmp(&rows[b][3])).unwrap();
    assert!(rows[trough][0] < 20.0, "trough on day {}", rows[trough][0]);
    assert!(rows[..=trough].windows(2).all(|w| w[1][3] <= w[0][3]));
    assert!(rows[trough..=peak].windows(2).all(|w| w[1][3] >= w[0][3]));
    assert!(rows[peak..].windows(2).all(|w| w[1][3] <= w[0][3]));

    for case in &cases {
        let text = fs::read_to_string(&case.trajectory_path).unwrap();
        let control: Vec<f64> = text
            .lines()
            .skip(1)
            .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
            .collect();
        let f = evaluate_objectives(&p, &control, &g).unwrap();
        assert!((f.f1() - case.objectives.f1()).abs() <= 1e-9);
        assert!((f.f2() - case.objectives.f2()).abs() <= 1e-9);
    }
}

#[test]
fn export_requires_the_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let (fp, xp) = write_control_front(dir.path(), &[0.0, 1.0]);
    fs::remove_file(&xp).unwrap();
    let err = export_cases(
        &fp,
        &xp,
        &[0.0],
        &ModelParameters::default(),
        &TimeGrid::default(),
        dir.path(),
    )
    .unwrap_err();
    assert!(matches!(err, Error::MissingSidecar(_)));
}

#[test]
fn reference_solution_evaluation() {
    let dir = tempfile::tempdir().unwrap();
    let p = ModelParameters::default();
    let g = TimeGrid::default();
    let w = ScalarCostWeights::new(1.0, 1.0).unwrap();
    let write = |name: &str, values: &[f64]| {
        let path = dir.path().join(name);
        let text: String = values.iter().map(|v| format!("{v}\n")).collect();
        fs::write(&path, text).unwrap();
        path
    };

    let zeros = write("zeros.txt", &vec![0.0; 1001]);
    let (f1, f2, j) = evaluate_reference_solution(&zeros, &p, &g, &w).unwrap();
    let none = evaluate_objectives(&p, &vec![0.0; 1001], &g).unwrap();
    assert_eq!((f1, f2), (none.f1(), 0.0));
    assert_eq!(j, scalar_cost(&p, &vec![0.0; 1001], &w, &g).unwrap());

    let ones = write("ones.txt", &vec![1.0; 1001]);
    assert_eq!(evaluate_reference_solution(&ones, &p, &g, &w).unwrap().1, 84.0);

    let mut rng = Rng::seed_from_u64(3);
    let values: Vec<f64> = (0..1001).map(|_| rand::Rng::random::<f64>(&mut rng)).collect();
    let arbitrary = write("arbitrary.txt", &values);
    let (f1, f2, j) = evaluate_reference_solution(&arbitrary, &p, &g, &w).unwrap();
    let f = evaluate_objectives(&p, &values, &g).unwrap();
    assert_eq!((f1, f2), (f.f1(), f.f2()));
    assert_eq!(j, scalar_cost(&p, &values, &w, &g).unwrap());

    let malformed = dir.path().join("bad.txt");
    fs::write(&malformed, "0.1\nabc\n").unwrap();
    assert!(matches!(
        evaluate_reference_solution(&malformed, &p, &g, &w),
        Err(Error::Parse { line: 2, .. })
    ));
    let mut out_of_range = vec![0.5; 1001];
    out_of_range[7] = 1.5;
    let oor = write("oor.txt", &out_of_range);
    assert!(matches!(
        evaluate_reference_solution(&oor, &p, &g, &w),
        Err(Error::ControlOutOfRange { index: 7, .. })
    ));
    let short = write("short.txt", &[0.5; 10]);
    assert!(matches!(
        evaluate_reference_solution(&short, &p, &g, &w),
        Err(Error::GridMismatch { .. })
    ));
}
