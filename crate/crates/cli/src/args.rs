//! Command-line surface and the semantic checks clap cannot express.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "lm-shotgun",
    version,
    about = "Sample, cut up and reassemble random simplicial complexes"
)]
pub struct Cli {
    /// Record wall-clock time in reports. Off by default so that identical
    /// runs produce identical files.
    #[arg(long, global = true)]
    pub timings: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw a random complex and write it in the text format.
    Sample(SampleArgs),
    /// Publish the anonymised 1-neighbourhoods of a complex as JSON.
    Extract(ExtractArgs),
    /// Rebuild a complex from a neighbourhood collection.
    Reconstruct(ReconstructArgs),
    /// Exit 0 when two complex files have the same faces, 2 otherwise.
    Verify(VerifyArgs),
    /// Exit 0 when two complexes are isomorphic, 1 otherwise.
    Iso(IsoArgs),
    /// Print the canonical form of a complex as hex.
    Canon(CanonArgs),
    /// Run one of the Monte Carlo checks and write a JSON report.
    Lemmas(LemmasArgs),
    /// Evaluate the counting bound over a grid of n and write CSV.
    Countbound(CountboundArgs),
    /// Measure exact-reconstruction rates over an (n, alpha) grid.
    Phase(PhaseArgs),
    /// Search for two non-isomorphic complexes with matching neighbourhoods.
    Collide(CollideArgs),
}

/// Edge-probability options shared by sampling commands.
#[derive(Debug, Clone, Copy, Args, Serialize)]
pub struct Density {
    /// Exponent: faces appear with probability n^(-alpha).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Face probability.
    #[arg(long)]
    pub p: Option<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SampleArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub d: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub density: Density,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output file; standard output when omitted.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExtractArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Seed of the interior relabelling.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Keep original vertex ids instead of scrambling them.
    #[arg(long)]
    pub unscrambled: bool,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ReconstructArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    /// Where to write the ambiguity report.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    pub expected: PathBuf,
    pub actual: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct IsoArgs {
    pub first: PathBuf,
    pub second: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CanonArgs {
    pub file: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// Common neighbours of a neighbouring pair and their upper tail.
    PairTail,
    /// Common neighbours shared by two neighbouring pairs.
    FourTuple,
    /// Sizes of every 1-neighbourhood.
    NeighbourhoodSize,
    /// Total number of faces.
    FaceCount,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LemmasArgs {
    #[arg(long, value_enum)]
    pub which: Check,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub trials: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Relative width of the size windows.
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    /// Threshold exponent; defaults to the value each check prescribes.
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CountboundArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
    /// Comma-separated values of n, e.g. 1e3,1e4,1e5.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub n_grid: Vec<f64>,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PhaseArgs {
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub n_grid: Vec<u32>,
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub alpha_grid: Vec<f64>,
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub trials: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Success matrix as CSV.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    /// Full JSON report with per-trial records.
    #[arg(long)]
    #[serde(skip)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exhaustive,
    Constructed,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CollideArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub d: usize,
    #[arg(long, value_enum)]
    pub mode: Mode,
    /// Directory receiving x.txt, y.txt and check.json.
    #[arg(long)]
    #[serde(skip)]
    pub out: PathBuf,
}

/// Collects every semantic problem with a command line.
#[derive(Default)]
struct Problems(Vec<String>);

impl Problems {
    fn check(&mut self, ok: bool, message: impl FnOnce() -> String) {
        if !ok {
            self.0.push(message());
        }
    }

    fn dims(&mut self, n: u32, d: usize) {
        self.check(n > 0, || "--n must be positive".into());
        self.check(d > 0, || "--d must be at least 1".into());
        self.check(n as usize > d, || {
            format!("need n >= d + 1, got n = {n}, d = {d}")
        });
    }

    fn seed(&mut self, seed: Option<u64>) {
        self.check(seed.is_some(), || "--seed is required".into());
    }

    fn alpha(&mut self, alpha: f64) {
        self.check(alpha.is_finite() && alpha >= 0.0, || {
            format!("--alpha must be a non-negative number, got {alpha}")
        });
    }

    fn epsilon(&mut self, epsilon: f64) {
        self.check(epsilon > 0.0 && epsilon < 1.0, || {
            format!("--epsilon must lie in (0, 1), got {epsilon}")
        });
    }

    fn trials(&mut self, trials: usize) {
        self.check(trials > 0, || "--trials must be positive".into());
    }
}

impl Command {
    /// Every semantic problem with the arguments, in flag order.
    pub fn validate(&self) -> Vec<String> {
        let mut p = Problems::default();
        match self {
            Command::Sample(a) => {
                p.dims(a.n, a.d);
                match (a.density.alpha, a.density.p) {
                    (Some(_), Some(_)) => {
                        p.0.push("give exactly one of --alpha and --p, not both".into())
                    }
                    (None, None) => p.0.push("give exactly one of --alpha and --p".into()),
                    (Some(alpha), None) => p.alpha(alpha),
                    (None, Some(q)) => p.check((0.0..=1.0).contains(&q), || {
                        format!("--p must lie in [0, 1], got {q}")
                    }),
                }
                p.seed(a.seed);
            }
            Command::Extract(a) => {
                p.check(a.seed.is_some() || a.unscrambled, || {
                    "--seed is required unless --unscrambled is given".into()
                });
            }
            Command::Reconstruct(_) | Command::Verify(_) | Command::Iso(_) | Command::Canon(_) => {}
            Command::Lemmas(a) => {
                p.dims(a.n, a.d);
                p.alpha(a.alpha);
                p.trials(a.trials);
                p.epsilon(a.epsilon);
                p.seed(a.seed);
                p.check(
                    a.c.is_none() || matches!(a.which, Check::PairTail | Check::NeighbourhoodSize),
                    || "--c applies only to pair-tail and neighbourhood-size".into(),
                );
            }
            Command::Countbound(a) => {
                p.check(a.d > 0, || "--d must be at least 1".into());
                p.check(a.alpha > 0.5 && a.alpha < 1.0, || {
                    format!("--alpha must lie in (1/2, 1), got {}", a.alpha)
                });
                p.epsilon(a.epsilon);
                p.check(!a.n_grid.is_empty(), || "--n-grid is empty".into());
                for &n in &a.n_grid {
                    p.check(n.is_finite() && n > a.d as f64 + 1.0, || {
                        format!("--n-grid value {n} is too small")
                    });
                }
            }
            Command::Phase(a) => {
                p.check(a.d > 0, || "--d must be at least 1".into());
                p.check(!a.n_grid.is_empty(), || "--n-grid is empty".into());
                p.check(!a.alpha_grid.is_empty(), || "--alpha-grid is empty".into());
                for &n in &a.n_grid {
                    p.check(n as usize > a.d, || {
                        format!("--n-grid value {n} needs to exceed d = {}", a.d)
                    });
                }
                for &alpha in &a.alpha_grid {
                    p.alpha(alpha);
                }
                p.trials(a.trials);
                p.seed(a.seed);
            }
            Command::Collide(a) => p.dims(a.n, a.d),
        }
        p.0
    }
}
