//! Log-space evaluation of the counting argument against reconstruction for
//! `1/2 < alpha < 1`.
//!
//! Collections whose centers all have fewer than `n q` faces through them and
//! fewer than `K = (d/2) n^2 q^2 t` spanned faces number at most
//! `(n q · K · C(M, K))^{C(n, d)}` with `M = d C(n q, 2)`. Samples with a face
//! count in `I = ((1-eps) C(n,d+1) p, (1+eps) C(n,d+1) p)` are spread over at
//! least `C(C(n,d+1), (1-eps) C(n,d+1) p)` labelled complexes. When the ratio
//! of the two (times the relabelling factor) tends to zero, most complexes
//! share their collection with another one.

use serde::{Deserialize, Serialize};

use super::stats::ln_binomial;
use crate::error::{Error, Result};

/// `(max(0, 3 alpha - 2) + 2 alpha - 1) / 2`, midway between the two
/// constraints on `c`.
pub fn prescribed_c(alpha: f64) -> f64 {
    0.5 * ((3.0 * alpha - 2.0).max(0.0) + 2.0 * alpha - 1.0)
}

/// One grid point of [`evaluate_count_bound`]. All `log10_*` fields are
/// base-10 logarithms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountBoundEvaluation {
    pub n: f64,
    pub d: usize,
    pub alpha: f64,
    pub epsilon: f64,
    pub c: f64,
    pub p: f64,
    pub q: f64,
    pub t: f64,
    /// Bounds of the face-count range `I`.
    pub m_range: (f64, f64),
    /// Upper bound on the number of admissible collections.
    pub log10_collections: f64,
    /// The smallest binomial over `I`, attained at its lower end.
    pub log10_min_binomial: f64,
    /// `n^d · collections / min binomial`.
    pub log10_ratio: f64,
    /// Same with the relabelling factor `(n^d)!` bounded by `exp(d n^d ln n)`.
    pub log10_ratio_factorial: f64,
    /// The factorial ratio with `C(M, K)` replaced by `(e / t)^K` and the
    /// minimum binomial by `(1 / ((1-eps) p))^m`.
    pub log10_ratio_closed_form: f64,
}

/// Evaluates the counting ratio at every `n` of the grid. `c` defaults to
/// [`prescribed_c`].
///
/// ```
/// use lm_shotgun::analysis::evaluate_count_bound;
/// let rows = evaluate_count_bound(&[1e3, 1e4], 1, 0.75, 0.1, None)?;
/// assert!(rows[1].log10_ratio < rows[0].log10_ratio && rows[1].log10_ratio < 0.0);
/// # Ok::<(), lm_shotgun::Error>(())
/// ```
pub fn evaluate_count_bound(
    n_grid: &[f64],
    d: usize,
    alpha: f64,
    epsilon: f64,
    c: Option<f64>,
) -> Result<Vec<CountBoundEvaluation>> {
    if !(alpha > 0.5 && alpha < 1.0) {
        return Err(Error::Refused(format!(
            "alpha = {alpha} is outside (1/2, 1), where the counting argument applies"
        )));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::invalid(format!(
            "epsilon must lie in (0, 1), got {epsilon}"
        )));
    }
    if d == 0 {
        return Err(Error::invalid("dimension d must be at least 1"));
    }
    if n_grid.is_empty() {
        return Err(Error::invalid("the n grid is empty"));
    }
    let c = c.unwrap_or_else(|| prescribed_c(alpha));
    if c >= 2.0 * alpha - 1.0 {
        return Err(Error::Refused(format!(
            "c = {c} must be below 2 alpha - 1 = {}",
            2.0 * alpha - 1.0
        )));
    }
    n_grid
        .iter()
        .map(|&n| evaluate_at(n, d, alpha, epsilon, c))
        .collect()
}

fn evaluate_at(n: f64, d: usize, alpha: f64, epsilon: f64, c: f64) -> Result<CountBoundEvaluation> {
    if n.is_nan() || n < 10.0 || n.fract() != 0.0 {
        return Err(Error::invalid(format!(
            "grid values must be integers >= 10, got {n}"
        )));
    }
    let df = d as f64;
    let ln_n = n.ln();
    let p = (-alpha * ln_n).exp();
    let q = (1.0 + epsilon) * p;
    let t = (1.0 + n.powf(c)) * p;
    let centers_ln = ln_binomial(n, df);
    let centers = centers_ln.exp();
    let candidates = ln_binomial(n, df + 1.0).exp();

    let nq = n * q;
    let k = df / 2.0 * n * n * q * q * t;
    let m_pairs = df * nq * (nq - 1.0) / 2.0;
    let ln_choose_spanned = if k <= m_pairs {
        ln_binomial(m_pairs, k)
    } else {
        // More spanned faces allowed than neighbour pairs exist; every
        // subset is admissible.
        m_pairs * std::f64::consts::LN_2
    };
    let ln_collections = centers * (nq.ln() + k.ln() + ln_choose_spanned);

    let m_low = (1.0 - epsilon) * candidates * p;
    let m_high = (1.0 + epsilon) * candidates * p;
    let ln_min_binomial = ln_binomial(candidates, m_low);

    let ln_relabel = df * n.powf(df) * ln_n;
    let ln_ratio = df * ln_n + ln_collections - ln_min_binomial;
    let ln_closed = ln_relabel
        + centers * (df / 2.0 * n.powi(3) * q.powi(3) * t).ln()
        + centers * k * (1.0 - t.ln())
        - m_low * (1.0 / ((1.0 - epsilon) * p)).ln();

    let log10 = |x: f64| x / std::f64::consts::LN_10;
    Ok(CountBoundEvaluation {
        n,
        d,
        alpha,
        epsilon,
        c,
        p,
        q,
        t,
        m_range: (m_low, m_high),
        log10_collections: log10(ln_collections),
        log10_min_binomial: log10(ln_min_binomial),
        log10_ratio: log10(ln_ratio),
        log10_ratio_factorial: log10(ln_relabel + ln_collections - ln_min_binomial),
        log10_ratio_closed_form: log10(ln_closed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prescribed_c_sits_between_constraints() {
        for alpha in [0.55, 0.75, 0.9] {
            let c = prescribed_c(alpha);
            assert!(
                c > (3.0 * alpha - 2.0).max(0.0) && c < 2.0 * alpha - 1.0,
                "{alpha}"
            );
        }
        assert!((prescribed_c(0.75) - 0.375).abs() < 1e-15);
    }

    #[test]
    fn refuses_outside_regime() {
        assert!(matches!(
            evaluate_count_bound(&[1e3], 1, 0.4, 0.1, None),
            Err(Error::Refused(_))
        ));
        assert!(evaluate_count_bound(&[], 1, 0.75, 0.1, None).is_err());
        assert!(evaluate_count_bound(&[5.0], 1, 0.75, 0.1, None).is_err());
    }
}
