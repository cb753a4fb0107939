//! Log-space binomials and goodness-of-fit helpers.

use statrs::distribution::{Binomial, ChiSquared, ContinuousCDF, Discrete};
use statrs::function::gamma::ln_gamma;

/// `ln C(a, b)` for real `0 <= b <= a`, accurate for very large `a`.
///
/// Moderate arguments use `ln Γ` directly. For `a > 1e6` the difference
/// `ln Γ(a+1) - ln Γ(a-k+1)` with `k = min(b, a-b)` is expanded with
/// Stirling's series and `ln_1p`, which avoids cancelling two huge values.
pub fn ln_binomial(a: f64, b: f64) -> f64 {
    assert!(
        b >= 0.0 && b <= a,
        "ln_binomial needs 0 <= b <= a, got a = {a}, b = {b}"
    );
    if a <= 1e6 {
        return ln_gamma(a + 1.0) - ln_gamma(b + 1.0) - ln_gamma(a - b + 1.0);
    }
    let k = b.min(a - b);
    let x = a + 1.0;
    let y = a - k + 1.0;
    let tail = |z: f64| 1.0 / (12.0 * z) - 1.0 / (360.0 * z * z * z);
    let ratio = k * x.ln() - (y - 0.5) * (-k / x).ln_1p() - k + tail(x) - tail(y);
    ratio - ln_gamma(k + 1.0)
}

/// Pearson goodness-of-fit of integer samples against `Bin(trials, p)`.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ChiSquareFit {
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    /// The `level` quantile of the chi-square law with those degrees of freedom.
    pub critical_value: f64,
    pub level: f64,
}

impl ChiSquareFit {
    pub fn accepts(&self) -> bool {
        self.statistic <= self.critical_value
    }
}

/// Bins outcomes `0..=trials`, merging adjacent bins from both tails until each
/// has expected count at least 5, and compares with the binomial law.
pub fn chi_square_binomial(samples: &[usize], trials: u64, p: f64, level: f64) -> ChiSquareFit {
    let law = Binomial::new(p, trials).expect("valid binomial parameters");
    let total = samples.len() as f64;
    let mut observed = vec![0f64; trials as usize + 1];
    for &s in samples {
        observed[s.min(trials as usize)] += 1.0;
    }
    let expected: Vec<f64> = (0..=trials).map(|k| total * law.pmf(k)).collect();

    let mut bins: Vec<(f64, f64)> = Vec::new();
    let (mut o, mut e) = (0.0, 0.0);
    for k in 0..observed.len() {
        o += observed[k];
        e += expected[k];
        if e >= 5.0 {
            bins.push((o, e));
            o = 0.0;
            e = 0.0;
        }
    }
    match bins.last_mut() {
        Some(last) => {
            last.0 += o;
            last.1 += e;
        }
        None => bins.push((o, e)),
    }
    let statistic: f64 = bins
        .iter()
        .filter(|(_, e)| *e > 0.0)
        .map(|(o, e)| (o - e) * (o - e) / e)
        .sum();
    let dof = bins.len().saturating_sub(1).max(1);
    let critical_value = ChiSquared::new(dof as f64)
        .expect("positive degrees of freedom")
        .inverse_cdf(level);
    ChiSquareFit {
        statistic,
        degrees_of_freedom: dof,
        critical_value,
        level,
    }
}
