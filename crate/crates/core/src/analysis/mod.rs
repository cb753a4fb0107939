//! Monte Carlo checks of the probabilistic estimates behind reconstruction,
//! the counting bound for non-reconstructability, phase experiments and the
//! search for non-reconstructable pairs.

pub mod collide;
pub mod count_bound;
pub mod lemmas;
pub mod phase;
pub mod stats;

use serde::{Deserialize, Serialize};

pub use collide::{collision_search, verify_witness, SearchMode, Witness, WitnessCheck};
pub use count_bound::{evaluate_count_bound, prescribed_c, CountBoundEvaluation};
pub use lemmas::{
    check_face_count, check_four_tuples, check_neighbourhood_sizes, check_pair_tail,
    FaceCountConfig, FaceCountReport, FourTupleConfig, FourTupleReport, NeighbourhoodSizeConfig,
    NeighbourhoodSizeReport, PairTailConfig, TailCheckReport, TupleCase,
};
pub use phase::{phase_experiment, PhaseCell, PhaseConfig, PhaseReport};

/// Outcome of one Monte Carlo trial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub index: u64,
    pub seed: u64,
    /// Whether the event the check counts occurred.
    pub event: bool,
    /// The measured statistic.
    pub value: f64,
}

/// Empirical moments of a statistic next to reference values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentCheck {
    pub samples: usize,
    pub mean: f64,
    pub variance: f64,
    pub reference_mean: f64,
    pub reference_variance: f64,
    /// `|mean - reference_mean| / reference_mean`, or `|mean|` when the
    /// reference mean is zero.
    pub relative_error: f64,
}

impl MomentCheck {
    pub fn new(
        values: impl Iterator<Item = f64>,
        reference_mean: f64,
        reference_variance: f64,
    ) -> Self {
        let v: Vec<f64> = values.collect();
        let (mean, variance) = crate::sampler::moments(v.iter().copied());
        let relative_error = if reference_mean == 0.0 {
            mean.abs()
        } else {
            (mean - reference_mean).abs() / reference_mean.abs()
        };
        MomentCheck {
            samples: v.len(),
            mean,
            variance,
            reference_mean,
            reference_variance,
            relative_error,
        }
    }
}
