//! Success rate of extract-then-reconstruct over a grid of `(n, alpha)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::TrialRecord;
use crate::error::{Error, Result};
use crate::reconstruct::{extract_collection, reconstruct, verify_exact};
use crate::sampler::{mix64, sample_lm, trial_seed, LmParams};

/// Settings for [`phase_experiment`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseConfig {
    pub n_grid: Vec<u32>,
    pub alpha_grid: Vec<f64>,
    pub d: usize,
    pub trials: usize,
    pub seed: u64,
}

/// One `(n, alpha)` cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseCell {
    pub n: u32,
    pub alpha: f64,
    pub p: f64,
    pub trials: usize,
    /// Trials reconstructed exactly with a clean ambiguity report.
    pub successes: usize,
    pub rate: f64,
    /// Trials whose ambiguity report was not clean.
    pub ambiguous: usize,
    /// Mean number of centers holding an empty fingerprint.
    pub mean_empty_fingerprint_centers: f64,
    /// Mean number of fingerprints shared by more than two centers.
    pub mean_collision_groups: f64,
    /// `event` is success; `value` counts false faces declared.
    pub records: Vec<TrialRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseReport {
    pub config: PhaseConfig,
    pub cells: Vec<PhaseCell>,
}

impl PhaseReport {
    /// The success matrix as CSV with header `n,alpha,trials,successes,rate`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "alpha", "trials", "successes", "rate"])
            .expect("in-memory write");
        for c in &self.cells {
            w.write_record([
                c.n.to_string(),
                c.alpha.to_string(),
                c.trials.to_string(),
                c.successes.to_string(),
                c.rate.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("ascii")
    }
}

/// Samples `trials` complexes per grid cell, scrambles and reconstructs each,
/// and counts exact recoveries with clean ambiguity reports. Trial seeds
/// depend only on `(seed, n, alpha, trial index)`.
pub fn phase_experiment(cfg: &PhaseConfig) -> Result<PhaseReport> {
    if cfg.n_grid.is_empty() || cfg.alpha_grid.is_empty() {
        return Err(Error::invalid("both grids must be non-empty"));
    }
    if cfg.trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let mut cells = Vec::new();
    for &n in &cfg.n_grid {
        for &alpha in &cfg.alpha_grid {
            let base = LmParams::with_alpha(n, cfg.d, alpha, cfg.seed)?;
            let cell_seed =
                mix64(cfg.seed ^ mix64(n as u64) ^ mix64(alpha.to_bits()).rotate_left(17));
            let outcomes = (0..cfg.trials as u64)
                .into_par_iter()
                .map(|i| {
                    let seed = trial_seed(cell_seed, i);
                    let x = sample_lm(&base.reseeded(seed));
                    let coll = extract_collection(&x, mix64(seed));
                    let (y, report) = reconstruct(&coll)?;
                    let exact = verify_exact(&x, &y)?;
                    Ok((
                        seed,
                        exact && report.is_clean(),
                        !report.is_clean(),
                        y.face_count() - x.face_count(),
                        report.empty_fingerprint_centers,
                        report.collision_groups,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            let successes = outcomes.iter().filter(|o| o.1).count();
            let trials = cfg.trials as f64;
            cells.push(PhaseCell {
                n,
                alpha,
                p: base.p,
                trials: cfg.trials,
                successes,
                rate: successes as f64 / trials,
                ambiguous: outcomes.iter().filter(|o| o.2).count(),
                mean_empty_fingerprint_centers: outcomes.iter().map(|o| o.4 as f64).sum::<f64>()
                    / trials,
                mean_collision_groups: outcomes.iter().map(|o| o.5 as f64).sum::<f64>() / trials,
                records: outcomes
                    .iter()
                    .enumerate()
                    .map(|(i, o)| TrialRecord {
                        index: i as u64,
                        seed: o.0,
                        event: o.1,
                        value: o.3 as f64,
                    })
                    .collect(),
            });
        }
    }
    Ok(PhaseReport {
        config: cfg.clone(),
        cells,
    })
}
