//! Monte Carlo checks of the common-neighbour, four-tuple, neighbourhood-size
//! and face-count estimates.
//!
//! Checks that condition on faces being present force those faces into a
//! [`LazyLmComplex`] instead of rejection sampling; faces are independent, so
//! this samples the conditional law exactly.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::stats::{chi_square_binomial, ChiSquareFit};
use super::{MomentCheck, TrialRecord};
use crate::complex::FaceOracle;
use crate::error::{Error, Result};
use crate::ops;
use crate::sampler::{p_from_alpha, sample_lm, trial_seed, LazyLmComplex, LmParams};
use crate::simplex::{binomial, Simplex};

fn ridge(vs: impl IntoIterator<Item = u32>) -> Simplex {
    Simplex::new(vs).expect("distinct template vertices")
}

fn check_common(n: u32, d: usize, alpha: f64, trials: usize) -> Result<()> {
    if d == 0 || (n as usize) < d + 2 {
        return Err(Error::invalid(format!(
            "need d >= 1 and n >= d + 2, got n = {n}, d = {d}"
        )));
    }
    if !(alpha.is_finite() && alpha >= 0.0) {
        return Err(Error::invalid(format!(
            "alpha must be non-negative, got {alpha}"
        )));
    }
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    Ok(())
}

/// Settings for [`check_pair_tail`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairTailConfig {
    pub n: u32,
    pub d: usize,
    pub alpha: f64,
    /// Exponent of the tail threshold `d - 1 + n^c (n-d-1) p^2`; must exceed `2 alpha - 1`.
    pub c: f64,
    pub trials: usize,
    pub seed: u64,
    /// Allowed multiple of the Chernoff expression.
    pub slack: f64,
    /// Allowed relative error of the mean of `W - (d-1)`.
    pub mean_tolerance: f64,
}

impl PairTailConfig {
    pub fn new(n: u32, d: usize, alpha: f64, c: f64, trials: usize, seed: u64) -> Self {
        PairTailConfig {
            n,
            d,
            alpha,
            c,
            trials,
            seed,
            slack: 10.0,
            mean_tolerance: 0.05,
        }
    }
}

/// Result of [`check_pair_tail`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailCheckReport {
    pub config: PairTailConfig,
    pub p: f64,
    /// Trials in which the conditioning pair was adjacent (all of them, as
    /// the joining face is forced).
    pub conditioned: usize,
    pub threshold: f64,
    /// Fraction of conditioned trials with `W >= threshold`.
    pub frequency: f64,
    /// `exp(-(n^{2c} / (1 + n^c)) (n-d-1) p^2)`.
    pub bound: f64,
    /// `slack * bound - frequency`; negative means the check failed.
    pub margin: f64,
    /// `W - (d-1)` against `Bin(n-d-1, p^2)`.
    pub moments: MomentCheck,
    pub fit: Option<ChiSquareFit>,
    /// Histogram of `W - (d-1)`.
    pub histogram: Vec<u64>,
    /// Trials where the count inside the pair's union was not `d - 1`.
    pub inner_count_violations: usize,
    pub records: Vec<TrialRecord>,
}

impl TailCheckReport {
    pub fn passed(&self) -> bool {
        self.margin >= 0.0
            && self.moments.relative_error <= self.config.mean_tolerance
            && self.inner_count_violations == 0
    }
}

/// Common neighbours `W` of the adjacent pair `{1..d}`, `{1..d-1, d+1}` in
/// `Y_d(n, n^-alpha)` conditioned on their union being a face.
pub fn check_pair_tail(cfg: &PairTailConfig) -> Result<TailCheckReport> {
    let (n, d) = (cfg.n, cfg.d);
    check_common(n, d, cfg.alpha, cfg.trials)?;
    if cfg.c <= 2.0 * cfg.alpha - 1.0 {
        return Err(Error::invalid(format!(
            "c = {} must exceed 2 alpha - 1 = {}",
            cfg.c,
            2.0 * cfg.alpha - 1.0
        )));
    }
    let p = p_from_alpha(n, cfg.alpha);
    let base = LmParams::with_p(n, d, p, cfg.seed)?;
    let s1 = ridge(1..=d as u32);
    let s2 = ridge((1..d as u32).chain([d as u32 + 1]));
    let joined = s1.union(&s2);

    let outcomes: Vec<(u64, ops::NeighbourPairStats)> = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|i| {
            let seed = trial_seed(cfg.seed, i);
            let x = LazyLmComplex::with_forced(base.reseeded(seed), [joined.clone()])
                .expect("valid face");
            (
                seed,
                ops::neighbour_pair_stats(&x, &s1, &s2).expect("forced pair is adjacent"),
            )
        })
        .collect();

    let outside = (n as usize - d - 1) as f64;
    let nc = (n as f64).powf(cfg.c);
    let threshold = (d - 1) as f64 + nc * outside * p * p;
    let records: Vec<TrialRecord> = outcomes
        .iter()
        .enumerate()
        .map(|(i, (seed, st))| TrialRecord {
            index: i as u64,
            seed: *seed,
            event: st.w as f64 >= threshold,
            value: st.w as f64,
        })
        .collect();
    let events = records.iter().filter(|r| r.event).count();
    let frequency = events as f64 / cfg.trials as f64;
    let bound = (-(nc * nc / (1.0 + nc)) * outside * p * p).exp();
    let excess: Vec<usize> = outcomes.iter().map(|(_, st)| st.s_dprime).collect();
    let mut histogram = vec![0u64; outside as usize + 1];
    for &e in &excess {
        histogram[e] += 1;
    }
    let q = p * p;
    let fit = (q > 0.0 && q < 1.0).then(|| chi_square_binomial(&excess, outside as u64, q, 0.999));
    Ok(TailCheckReport {
        config: *cfg,
        p,
        conditioned: cfg.trials,
        threshold,
        frequency,
        bound,
        margin: cfg.slack * bound - frequency,
        moments: MomentCheck::new(
            excess.iter().map(|&e| e as f64),
            outside * q,
            outside * q * (1.0 - q),
        ),
        fit,
        histogram,
        inner_count_violations: outcomes
            .iter()
            .filter(|(_, st)| st.s_prime != d - 1)
            .count(),
        records,
    })
}

/// Shape of a four-tuple `(s1, s2, s3, s4)` with `s1 ~ s2` and `s3 ~ s4`,
/// classified by the size of the intersection of all four.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TupleCase {
    /// Both pairs share the same `(d-2)`-core; four distinct extra vertices.
    Aligned,
    /// The cores share `d - 2` vertices.
    OffsetOne,
    /// The cores share at most `d - 3` vertices.
    OffsetTwo,
    /// Pairs `(s1, s2)` and `(s2, s3)` sharing a member, with a common core.
    Chain,
}

impl TupleCase {
    /// Largest possible number of common neighbours of all four, if bounded.
    pub fn common_ceiling(self) -> Option<usize> {
        match self {
            TupleCase::OffsetOne => Some(1),
            TupleCase::OffsetTwo => Some(0),
            TupleCase::Aligned | TupleCase::Chain => None,
        }
    }

    /// Whether the case can be built in dimension `d` on `n` vertices.
    pub fn applicable(self, n: u32, d: usize) -> bool {
        let n = n as usize;
        match self {
            TupleCase::Aligned => n >= d + 3,
            TupleCase::Chain => n >= d + 2,
            TupleCase::OffsetOne => d >= 2 && n >= d + 4,
            TupleCase::OffsetTwo => d >= 3 && n >= d + 5,
        }
    }

    /// The tuple before relabelling, as `[s1, s2, s3, s4]`.
    fn template(self, d: usize) -> [Simplex; 4] {
        let d = d as u32;
        let core = |extra: &[u32]| -> Simplex { ridge((1..d).chain(extra.iter().copied())) };
        match self {
            TupleCase::Aligned => [core(&[d]), core(&[d + 1]), core(&[d + 2]), core(&[d + 3])],
            TupleCase::Chain => [core(&[d]), core(&[d + 1]), core(&[d + 1]), core(&[d + 2])],
            TupleCase::OffsetOne => {
                let other = |x: u32| ridge((1..d - 1).chain([d, x]));
                [core(&[d + 1]), core(&[d + 2]), other(d + 3), other(d + 4)]
            }
            TupleCase::OffsetTwo => {
                let other = |x: u32| ridge((1..d - 2).chain([d, d + 1, x]));
                [core(&[d + 2]), core(&[d + 3]), other(d + 4), other(d + 5)]
            }
        }
    }
}

/// Settings for [`check_four_tuples`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourTupleConfig {
    pub n: u32,
    pub d: usize,
    /// Must be below 1/2.
    pub alpha: f64,
    /// Tuples per case.
    pub trials: usize,
    pub seed: u64,
    /// Allowed relative error of the aligned-case mean.
    pub mean_tolerance: f64,
}

impl FourTupleConfig {
    pub fn new(n: u32, d: usize, alpha: f64, trials: usize, seed: u64) -> Self {
        FourTupleConfig {
            n,
            d,
            alpha,
            trials,
            seed,
            mean_tolerance: 0.05,
        }
    }
}

/// Per-case results of [`check_four_tuples`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub case: TupleCase,
    pub trials: usize,
    /// Largest number of common neighbours of all four seen.
    pub max_common: usize,
    /// Tuples exceeding the case's ceiling on common neighbours.
    pub violations: usize,
    /// Fraction of tuples with `W - |S| - Z <= n p^2 / 2`.
    pub event_frequency: f64,
    /// `W - |S| - Z - (d-1)` against its binomial reference, where one is known.
    pub moments: Option<MomentCheck>,
    pub records: Vec<TrialRecord>,
}

/// Result of [`check_four_tuples`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourTupleReport {
    pub config: FourTupleConfig,
    pub p: f64,
    pub cases: Vec<CaseReport>,
}

impl FourTupleReport {
    pub fn case(&self, case: TupleCase) -> Option<&CaseReport> {
        self.cases.iter().find(|c| c.case == case)
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.violations == 0)
            && self
                .case(TupleCase::Aligned)
                .and_then(|c| c.moments)
                .is_none_or(|m| m.relative_error <= self.config.mean_tolerance)
    }
}

/// Samples randomly relabelled four-tuples of every applicable case, forcing
/// the faces that make each pair adjacent, and records `|S|`, `Z` and `W`.
pub fn check_four_tuples(cfg: &FourTupleConfig) -> Result<FourTupleReport> {
    let (n, d) = (cfg.n, cfg.d);
    check_common(n, d, cfg.alpha, cfg.trials)?;
    if cfg.alpha >= 0.5 {
        return Err(Error::invalid(format!(
            "alpha = {} must be below 1/2",
            cfg.alpha
        )));
    }
    let p = p_from_alpha(n, cfg.alpha);
    let base = LmParams::with_p(n, d, p, cfg.seed)?;
    let q = p * p;
    let half = 0.5 * n as f64 * q;
    let mut cases = Vec::new();
    for (k, case) in [
        TupleCase::Aligned,
        TupleCase::OffsetOne,
        TupleCase::OffsetTwo,
        TupleCase::Chain,
    ]
    .into_iter()
    .enumerate()
    {
        if !case.applicable(n, d) {
            continue;
        }
        let template = case.template(d);
        let case_seed = trial_seed(cfg.seed, k as u64);
        let outcomes: Vec<(u64, usize, usize, usize)> = (0..cfg.trials as u64)
            .into_par_iter()
            .map(|i| {
                let seed = trial_seed(case_seed, i);
                let mut perm: Vec<u32> = (1..=n).collect();
                perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
                let t: Vec<Simplex> = template
                    .iter()
                    .map(|s| s.map(|v| perm[v as usize - 1]))
                    .collect();
                let forced = [t[0].union(&t[1]), t[2].union(&t[3])];
                let x =
                    LazyLmComplex::with_forced(base.reseeded(seed), forced).expect("valid faces");
                let st =
                    ops::four_tuple_stats(&x, [&t[0], &t[1], &t[2], &t[3]]).expect("forced pairs");
                let w = ops::neighbour_pair_stats(&x, &t[0], &t[1])
                    .expect("forced pair")
                    .w;
                (seed, st.s, st.z, w)
            })
            .collect();
        let value = |&(_, s, z, w): &(u64, usize, usize, usize)| w as f64 - s as f64 - z as f64;
        let records: Vec<TrialRecord> = outcomes
            .iter()
            .enumerate()
            .map(|(i, o)| TrialRecord {
                index: i as u64,
                seed: o.0,
                event: value(o) <= half,
                value: value(o),
            })
            .collect();
        let outside = n as f64 - d as f64 - 3.0;
        let reference = match case {
            TupleCase::Aligned => Some(q * (1.0 - q)),
            TupleCase::Chain => Some(q * (1.0 - p)),
            _ => None,
        };
        let moments = reference.map(|r| {
            MomentCheck::new(
                outcomes.iter().map(|o| value(o) - (d - 1) as f64),
                outside * r,
                outside * r * (1.0 - r),
            )
        });
        let ceiling = case.common_ceiling();
        cases.push(CaseReport {
            case,
            trials: cfg.trials,
            max_common: outcomes.iter().map(|o| o.1).max().unwrap_or(0),
            violations: outcomes
                .iter()
                .filter(|o| ceiling.is_some_and(|c| o.1 > c))
                .count(),
            event_frequency: records.iter().filter(|r| r.event).count() as f64 / cfg.trials as f64,
            moments,
            records,
        });
    }
    Ok(FourTupleReport {
        config: *cfg,
        p,
        cases,
    })
}

/// Settings for [`check_neighbourhood_sizes`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NeighbourhoodSizeConfig {
    pub n: u32,
    pub d: usize,
    pub alpha: f64,
    pub epsilon: f64,
    /// Exponent in `t = (1 + n^c) p`; must exceed `3 alpha - 2`.
    pub c: f64,
    pub trials: usize,
    pub seed: u64,
    /// Frequency the check requires.
    pub required: f64,
}

impl NeighbourhoodSizeConfig {
    /// Uses `c = (max(0, 3 alpha - 2) + 2 alpha - 1) / 2`.
    pub fn new(n: u32, d: usize, alpha: f64, epsilon: f64, trials: usize, seed: u64) -> Self {
        NeighbourhoodSizeConfig {
            n,
            d,
            alpha,
            epsilon,
            c: super::prescribed_c(alpha),
            trials,
            seed,
            required: 0.99,
        }
    }
}

/// Result of [`check_neighbourhood_sizes`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NeighbourhoodSizeReport {
    pub config: NeighbourhoodSizeConfig,
    pub p: f64,
    pub q: f64,
    pub t: f64,
    /// `n q`: every center needs fewer faces through it.
    pub degree_threshold: f64,
    /// `(d/2) n^2 q^2 t`: every center needs fewer faces spanned by neighbours.
    pub spanned_threshold: f64,
    /// Fraction of samples in which every center met both thresholds.
    pub frequency: f64,
    /// Average over samples of the fraction of centers failing the degree threshold.
    pub degree_failure_rate: f64,
    /// Average over samples of the fraction of centers failing the spanned threshold.
    pub spanned_failure_rate: f64,
    pub max_degree: usize,
    pub max_spanned: usize,
    /// The union-bound lower estimate for the frequency.
    pub bound: f64,
    /// Per sample: `event` when all centers pass, `value` the largest degree.
    pub records: Vec<TrialRecord>,
}

impl NeighbourhoodSizeReport {
    pub fn passed(&self) -> bool {
        self.frequency >= self.config.required
    }
}

/// Whether every `(d-1)`-simplex of a sample has fewer than `n q` faces
/// through it and fewer than `(d/2) n^2 q^2 t` faces spanned by two neighbours
/// and avoiding it.
pub fn check_neighbourhood_sizes(cfg: &NeighbourhoodSizeConfig) -> Result<NeighbourhoodSizeReport> {
    let (n, d) = (cfg.n, cfg.d);
    check_common(n, d, cfg.alpha, cfg.trials)?;
    if !(cfg.epsilon > 0.0 && cfg.epsilon < 1.0) {
        return Err(Error::invalid(format!(
            "epsilon must lie in (0, 1), got {}",
            cfg.epsilon
        )));
    }
    if cfg.c <= 3.0 * cfg.alpha - 2.0 {
        return Err(Error::invalid(format!(
            "c = {} must exceed 3 alpha - 2 = {}",
            cfg.c,
            3.0 * cfg.alpha - 2.0
        )));
    }
    let nf = n as f64;
    let p = p_from_alpha(n, cfg.alpha);
    let q = (1.0 + cfg.epsilon) * p;
    let t = (1.0 + nf.powf(cfg.c)) * p;
    let degree_threshold = nf * q;
    let spanned_threshold = d as f64 / 2.0 * nf * nf * q * q * t;
    let base = LmParams::with_p(n, d, p, cfg.seed)?;
    let ridges: Vec<Simplex> = crate::simplex::Combinations::new(n, d).collect();
    let centers = ridges.len() as f64;

    let outcomes: Vec<(u64, usize, usize, usize, usize)> = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|i| {
            let seed = trial_seed(cfg.seed, i);
            let x = sample_lm(&base.reseeded(seed));
            let (mut max_deg, mut max_span, mut deg_fail, mut span_fail) = (0, 0, 0, 0);
            for sigma in &ridges {
                let deg = x.apexes(sigma).len();
                let spanned = if deg < 2 {
                    0
                } else {
                    ops::neighbourhood_triple(&x, sigma)
                        .expect("ridge")
                        .d_star_faces
                        .len()
                };
                max_deg = max_deg.max(deg);
                max_span = max_span.max(spanned);
                deg_fail += usize::from(deg as f64 >= degree_threshold);
                span_fail += usize::from(spanned as f64 >= spanned_threshold);
            }
            (seed, max_deg, max_span, deg_fail, span_fail)
        })
        .collect();

    let records: Vec<TrialRecord> = outcomes
        .iter()
        .enumerate()
        .map(|(i, o)| TrialRecord {
            index: i as u64,
            seed: o.0,
            event: o.3 == 0 && o.4 == 0,
            value: o.1 as f64,
        })
        .collect();
    let trials = cfg.trials as f64;
    let pairs = (nf * q) * (nf * q - 1.0) / 2.0;
    let nc = nf.powf(cfg.c);
    let per_center = (-(nc * nc * d as f64 / (2.0 + nc)) * pairs * p).exp()
        + (-(cfg.epsilon * cfg.epsilon) * p * (nf - d as f64) / 3.0).exp();
    Ok(NeighbourhoodSizeReport {
        config: *cfg,
        p,
        q,
        t,
        degree_threshold,
        spanned_threshold,
        frequency: records.iter().filter(|r| r.event).count() as f64 / trials,
        degree_failure_rate: outcomes.iter().map(|o| o.3 as f64 / centers).sum::<f64>() / trials,
        spanned_failure_rate: outcomes.iter().map(|o| o.4 as f64 / centers).sum::<f64>() / trials,
        max_degree: outcomes.iter().map(|o| o.1).max().unwrap_or(0),
        max_spanned: outcomes.iter().map(|o| o.2).max().unwrap_or(0),
        bound: 1.0 - binomial(n as u64, d as u64) as f64 * per_center,
        records,
    })
}

/// Settings for [`check_face_count`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FaceCountConfig {
    pub n: u32,
    pub d: usize,
    pub alpha: f64,
    pub epsilon: f64,
    pub trials: usize,
    pub seed: u64,
    pub required: f64,
}

impl FaceCountConfig {
    pub fn new(n: u32, d: usize, alpha: f64, epsilon: f64, trials: usize, seed: u64) -> Self {
        FaceCountConfig {
            n,
            d,
            alpha,
            epsilon,
            trials,
            seed,
            required: 0.99,
        }
    }
}

/// Result of [`check_face_count`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaceCountReport {
    pub config: FaceCountConfig,
    pub p: f64,
    /// `C(n, d+1) p`.
    pub expected: f64,
    /// Open interval the face count must fall in.
    pub interval: (f64, f64),
    pub frequency: f64,
    /// `1 - 2 exp(-(epsilon^2 / 3) C(n, d+1) p)`.
    pub bound: f64,
    pub moments: MomentCheck,
    pub records: Vec<TrialRecord>,
}

impl FaceCountReport {
    pub fn passed(&self) -> bool {
        self.frequency >= self.config.required
    }
}

/// Whether the number of faces of a sample lies within a factor `1 ± epsilon`
/// of its mean.
pub fn check_face_count(cfg: &FaceCountConfig) -> Result<FaceCountReport> {
    check_common(cfg.n, cfg.d, cfg.alpha, cfg.trials)?;
    if !(cfg.epsilon > 0.0 && cfg.epsilon < 1.0) {
        return Err(Error::invalid(format!(
            "epsilon must lie in (0, 1), got {}",
            cfg.epsilon
        )));
    }
    let p = p_from_alpha(cfg.n, cfg.alpha);
    let base = LmParams::with_p(cfg.n, cfg.d, p, cfg.seed)?;
    let total = base.candidate_count() as f64;
    let expected = total * p;
    let (lo, hi) = (
        (1.0 - cfg.epsilon) * expected,
        (1.0 + cfg.epsilon) * expected,
    );
    let records: Vec<TrialRecord> = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|i| {
            let seed = trial_seed(cfg.seed, i);
            let m = sample_lm(&base.reseeded(seed)).face_count() as f64;
            TrialRecord {
                index: i,
                seed,
                event: m > lo && m < hi,
                value: m,
            }
        })
        .collect();
    Ok(FaceCountReport {
        config: *cfg,
        p,
        expected,
        interval: (lo, hi),
        frequency: records.iter().filter(|r| r.event).count() as f64 / cfg.trials as f64,
        bound: 1.0 - 2.0 * (-(cfg.epsilon * cfg.epsilon) / 3.0 * expected).exp(),
        moments: MomentCheck::new(
            records.iter().map(|r| r.value),
            expected,
            expected * (1.0 - p),
        ),
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_density_pair_law_is_degenerate() {
        let r = check_pair_tail(&PairTailConfig::new(12, 2, 0.0, 0.5, 20, 1)).unwrap();
        assert!(r.records.iter().all(|t| t.value as usize == 12 - 2 - 1 + 1));
        assert_eq!(r.moments.relative_error, 0.0);
    }

    #[test]
    fn rejects_out_of_regime_parameters() {
        assert!(check_pair_tail(&PairTailConfig::new(50, 2, 0.3, -0.5, 10, 1)).is_err());
        assert!(check_four_tuples(&FourTupleConfig::new(50, 2, 0.6, 10, 1)).is_err());
        assert!(check_face_count(&FaceCountConfig::new(50, 2, 0.5, 1.5, 10, 1)).is_err());
    }

    #[test]
    fn templates_have_the_stated_intersections() {
        let d = 4;
        for (case, size) in [
            (TupleCase::Aligned, d - 1),
            (TupleCase::OffsetOne, d - 2),
            (TupleCase::OffsetTwo, d - 3),
        ] {
            let t = case.template(d);
            let all = t
                .iter()
                .skip(1)
                .fold(t[0].clone(), |acc, s| acc.intersection(s));
            assert_eq!(all.len(), size, "{case:?}");
            assert_eq!(t[0].union_len(&t[1]), d + 1);
            assert_eq!(t[2].union_len(&t[3]), d + 1);
            assert!(t.iter().all(|s| s.len() == d));
        }
    }

    #[test]
    fn offset_cases_respect_ceilings() {
        let r = check_four_tuples(&FourTupleConfig::new(30, 3, 0.1, 200, 9)).unwrap();
        assert_eq!(r.case(TupleCase::OffsetOne).unwrap().violations, 0);
        assert_eq!(r.case(TupleCase::OffsetTwo).unwrap().max_common, 0);
    }

    #[test]
    fn face_count_extremes() {
        let full = check_face_count(&FaceCountConfig::new(10, 1, 0.0, 0.5, 5, 1)).unwrap();
        assert_eq!(full.frequency, 1.0);
    }
}
