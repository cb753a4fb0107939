//! Seeded sampling of `Y_d(n, p)` and exhaustive enumeration of tiny complexes.
//!
//! Candidate faces are indexed by colexicographic rank. For `p >= 0.01` face
//! `r` is present when a counter-based uniform `U(seed, r)` falls below `p`,
//! which makes every face individually addressable (see [`LazyLmComplex`]).
//! Below that, gaps between present ranks are drawn from a geometric law and
//! only the present faces are unranked, so the cost tracks the face count.

use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{Complex, FaceOracle};
use crate::error::{Error, Result};
use crate::simplex::{binomial, colex_rank, colex_unrank, ColexCombinations, Simplex};

/// Below this inclusion probability [`sample_lm`] switches to gap skipping.
pub const SPARSE_THRESHOLD: f64 = 0.01;

/// Largest candidate-face count [`enumerate_complexes`] accepts.
pub const ENUMERATION_LIMIT: u128 = 24;

/// Parameters of one `Y_d(n, p)` draw.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LmParams {
    pub n: u32,
    pub d: usize,
    pub p: f64,
    /// Set when `p` was derived as `n^(-alpha)`.
    pub alpha: Option<f64>,
    pub seed: u64,
}

impl LmParams {
    pub fn with_p(n: u32, d: usize, p: f64, seed: u64) -> Result<Self> {
        let params = LmParams {
            n,
            d,
            p,
            alpha: None,
            seed,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn with_alpha(n: u32, d: usize, alpha: f64, seed: u64) -> Result<Self> {
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::invalid(format!(
                "alpha must be a non-negative number, got {alpha}"
            )));
        }
        let params = LmParams {
            n,
            d,
            p: p_from_alpha(n, alpha),
            alpha: Some(alpha),
            seed,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::invalid("dimension d must be at least 1"));
        }
        if (self.n as usize) <= self.d {
            return Err(Error::invalid(format!(
                "need n >= d + 1, got n = {} and d = {}",
                self.n, self.d
            )));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::invalid(format!(
                "p must lie in [0, 1], got {}",
                self.p
            )));
        }
        Ok(())
    }

    /// Same parameters with a different seed.
    pub fn reseeded(&self, seed: u64) -> Self {
        LmParams { seed, ..*self }
    }

    /// Number of candidate `d`-faces, `C(n, d+1)`.
    pub fn candidate_count(&self) -> u128 {
        binomial(self.n as u64, self.d as u64 + 1)
    }
}

/// `n^(-alpha)` computed as `exp(-alpha ln n)`.
pub fn p_from_alpha(n: u32, alpha: f64) -> f64 {
    (-alpha * (n as f64).ln()).exp()
}

/// The splitmix64 output function.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `index` in a run seeded by `base`. Trials can be evaluated in
/// any order or in parallel.
pub fn trial_seed(base: u64, index: u64) -> u64 {
    mix64(mix64(base) ^ index.wrapping_mul(0xD1B5_4A32_D192_ED03))
}

/// The uniform in `[0, 1)` that decides whether the face of colex rank `rank`
/// is present under `seed`.
pub fn face_uniform(seed: u64, rank: u64) -> f64 {
    let bits = mix64(mix64(seed ^ 0x243F_6A88_85A3_08D3).wrapping_add(rank));
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Which sampling strategy [`sample_lm_with`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplingPath {
    /// Visit every candidate rank and test its uniform.
    Dense,
    /// Draw geometric gaps between present ranks.
    Sparse,
}

/// Draws `Y_d(n, p)`. Deterministic in `params`.
///
/// ```
/// use lm_shotgun::sampler::{sample_lm, LmParams};
/// let full = sample_lm(&LmParams::with_p(6, 2, 1.0, 0)?);
/// assert_eq!(full.face_count(), 20);
/// # Ok::<(), lm_shotgun::Error>(())
/// ```
pub fn sample_lm(params: &LmParams) -> Complex {
    let path = if params.p < SPARSE_THRESHOLD {
        SamplingPath::Sparse
    } else {
        SamplingPath::Dense
    };
    sample_lm_with(params, path)
}

/// [`sample_lm`] with an explicit strategy. The two strategies sample the same
/// law but consume randomness differently, so their outputs differ.
pub fn sample_lm_with(params: &LmParams, path: SamplingPath) -> Complex {
    let (n, d, p) = (params.n, params.d, params.p);
    let faces: BTreeSet<Simplex> = if p <= 0.0 {
        BTreeSet::new()
    } else {
        match path {
            SamplingPath::Dense => ColexCombinations::new(n, d + 1)
                .enumerate()
                .filter(|(r, _)| p >= 1.0 || face_uniform(params.seed, *r as u64) < p)
                .map(|(_, f)| f)
                .collect(),
            SamplingPath::Sparse => sparse_ranks(params)
                .into_iter()
                .map(|r| colex_unrank(r, d + 1))
                .collect(),
        }
    };
    Complex::from_set(n, d, faces)
}

fn sparse_ranks(params: &LmParams) -> Vec<u64> {
    let total = params.candidate_count().min(u64::MAX as u128) as u64;
    if params.p >= 1.0 {
        return (0..total).collect();
    }
    let log_q = (-params.p).ln_1p();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut out = Vec::new();
    let mut next: u64 = 0;
    loop {
        // Number of absent faces before the next present one.
        let u: f64 = 1.0 - rng.random::<f64>();
        let gap = (u.ln() / log_q).floor();
        if gap >= (total - next) as f64 {
            break;
        }
        let r = next + gap as u64;
        out.push(r);
        next = r + 1;
        if next >= total {
            break;
        }
    }
    out
}

/// A `Y_d(n, p)` sample whose faces are decided on demand from the dense-path
/// hash stream, optionally with some faces forced present.
///
/// Materialising it with [`LazyLmComplex::materialize`] gives exactly the
/// dense-path sample for the same parameters, plus the forced faces.
#[derive(Debug, Clone)]
pub struct LazyLmComplex {
    params: LmParams,
    forced: HashSet<Simplex>,
}

impl LazyLmComplex {
    pub fn new(params: LmParams) -> Self {
        LazyLmComplex {
            params,
            forced: HashSet::new(),
        }
    }

    /// Conditions on the given faces being present. Faces are independent,
    /// so the other faces keep their unconditional law.
    pub fn with_forced(
        params: LmParams,
        forced: impl IntoIterator<Item = Simplex>,
    ) -> Result<Self> {
        let forced: HashSet<Simplex> = forced.into_iter().collect();
        for f in &forced {
            if f.len() != params.d + 1 || f.vertices().iter().any(|&v| v == 0 || v > params.n) {
                return Err(Error::invalid(format!(
                    "forced face {f} is not a {}-simplex on 1..={}",
                    params.d, params.n
                )));
            }
        }
        Ok(LazyLmComplex { params, forced })
    }

    pub fn params(&self) -> &LmParams {
        &self.params
    }

    pub fn materialize(&self) -> Complex {
        let mut faces: BTreeSet<Simplex> = sample_lm_with(&self.params, SamplingPath::Dense)
            .faces()
            .clone();
        faces.extend(self.forced.iter().cloned());
        Complex::from_set(self.params.n, self.params.d, faces)
    }
}

impl FaceOracle for LazyLmComplex {
    fn n(&self) -> u32 {
        self.params.n
    }

    fn d(&self) -> usize {
        self.params.d
    }

    fn has_face(&self, face: &Simplex) -> bool {
        self.forced.contains(face)
            || face_uniform(self.params.seed, colex_rank(face)) < self.params.p
    }
}

/// Pooled degrees of `{1..d}` over independent samples, with their first two
/// moments and the binomial reference values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeLaw {
    pub samples: Vec<usize>,
    pub mean: f64,
    pub variance: f64,
    pub expected_mean: f64,
    pub expected_variance: f64,
}

/// Samples `trials` complexes (trial `i` seeded by [`trial_seed`]) and records
/// the degree of the ridge `{1..d}` in each.
pub fn degree_law_check(params: &LmParams, trials: usize) -> Result<DegreeLaw> {
    params.validate()?;
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let sigma = Simplex::new(1..=params.d as u32)?;
    let samples: Vec<usize> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let x = LazyLmComplex::new(params.reseeded(trial_seed(params.seed, i)));
            x.apexes(&sigma).len()
        })
        .collect();
    let (mean, variance) = moments(samples.iter().map(|&s| s as f64));
    let m = (params.n as usize - params.d) as f64;
    Ok(DegreeLaw {
        samples,
        mean,
        variance,
        expected_mean: m * params.p,
        expected_variance: m * params.p * (1.0 - params.p),
    })
}

/// Sample mean and unbiased sample variance (0 for fewer than two values).
pub(crate) fn moments(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let v: Vec<f64> = values.collect();
    if v.is_empty() {
        return (0.0, 0.0);
    }
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    if v.len() < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = v.iter().map(|x| (x - mean) * (x - mean)).sum();
    (mean, ss / (v.len() - 1) as f64)
}

/// Every complex on `{1..n}` of dimension `d`; complex `mask` contains the
/// candidate face of colex rank `r` when bit `r` of `mask` is set.
pub fn enumerate_complexes(n: u32, d: usize) -> Result<impl Iterator<Item = Complex>> {
    if d == 0 || (n as usize) <= d {
        return Err(Error::invalid(format!(
            "need d >= 1 and n >= d + 1, got n = {n}, d = {d}"
        )));
    }
    let total = binomial(n as u64, d as u64 + 1);
    if total > ENUMERATION_LIMIT {
        return Err(Error::Refused(format!(
            "{total} candidate faces would give 2^{total} complexes; the limit is {ENUMERATION_LIMIT}"
        )));
    }
    let candidates: Vec<Simplex> = ColexCombinations::new(n, d + 1).collect();
    Ok((0u64..1 << total).map(move |mask| {
        let faces = candidates
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, f)| f.clone())
            .collect();
        Complex::from_set(n, d, faces)
    }))
}
