//! Optimal insecticide control of a dengue outbreak as a biobjective
//! problem, with a descent-direction guided evolutionary optimizer, five
//! reference optimizers and the metrics used to compare them.
//!
//! ```
//! use dengue_moo::{evaluate_objectives, ModelParameters, TimeGrid};
//!
//! let grid = TimeGrid::default();
//! let no_control = vec![0.0; grid.nodes()];
//! let f = evaluate_objectives(&ModelParameters::default(), &no_control, &grid).unwrap();
//! assert_eq!(f.f2(), 0.0);
//! ```

pub mod baselines;
pub mod ddmoa2;
pub mod error;
pub mod harness;
pub mod metrics;
pub mod model;
pub mod moea;

pub use error::{Error, Result};
pub use metrics::{hypervolume_2d, DEFAULT_REFERENCE};
pub use model::{
    evaluate_objectives, integrate_rk4, scalar_cost, ControlSignal, DengueProblem, EpidemicState, ModelParameters,
    ScalarCostWeights, TimeGrid, Trajectory,
};
pub use moea::{
    nondominated_filter, run_rng, Bounds, FrontArchive, ObjectiveVector, Problem, Rng, RunResult, Solution,
};
