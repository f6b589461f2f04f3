//! Chi-square goodness of fit of observed category counts against expected
//! weights.

use std::collections::BTreeMap;

use statrs::function::gamma::gamma_ur;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatsError {
    #[error("{observed} observations for {categories} categories; need at least 5 per category")]
    InsufficientSamples { observed: u64, categories: usize },
    #[error("expected weights must be positive and finite")]
    InvalidWeight,
    #[error("{0} observations fall outside the expected categories")]
    UnknownCategory(u64),
    #[error("no categories")]
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquareReport {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    /// A single category: the test has no degrees of freedom.
    pub degenerate: bool,
}

/// Pearson's chi-square test of `observed` counts against a distribution
/// proportional to `expected`. Categories absent from `observed` count as
/// zero; observations outside `expected` are an error.
pub fn chisquare_gof<K: Ord>(observed: &BTreeMap<K, u64>, expected: &BTreeMap<K, f64>) -> Result<ChiSquareReport, StatsError> {
    if expected.is_empty() {
        return Err(StatsError::Empty);
    }
    if expected.values().any(|w| !(w.is_finite() && *w > 0.0)) {
        return Err(StatsError::InvalidWeight);
    }
    let stray: u64 = observed.iter().filter(|(k, _)| !expected.contains_key(k)).map(|(_, n)| n).sum();
    if stray > 0 {
        return Err(StatsError::UnknownCategory(stray));
    }
    let total: u64 = observed.values().sum();
    let categories = expected.len();
    if total < 5 * categories as u64 {
        return Err(StatsError::InsufficientSamples { observed: total, categories });
    }
    let weight_sum: f64 = expected.values().sum();
    let statistic: f64 = expected
        .iter()
        .map(|(k, w)| {
            let e = total as f64 * w / weight_sum;
            let o = observed.get(k).copied().unwrap_or(0) as f64;
            (o - e) * (o - e) / e
        })
        .sum();
    let dof = categories - 1;
    if dof == 0 {
        return Ok(ChiSquareReport { statistic, dof, p_value: 1.0, degenerate: true });
    }
    let p_value = if statistic <= 0.0 { 1.0 } else { gamma_ur(dof as f64 / 2.0, statistic / 2.0) };
    Ok(ChiSquareReport { statistic, dof, p_value, degenerate: false })
}

/// Kolmogorov-Smirnov distance between a sample and the uniform law on
/// `[0, 1]`.
pub fn ks_uniform_distance(sample: &[f64]) -> f64 {
    let mut xs = sample.to_vec();
    xs.sort_by(|a, b| a.total_cmp(b));
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let x = x.clamp(0.0, 1.0);
            ((i + 1) as f64 / n - x).max(x - i as f64 / n)
        })
        .fold(0.0, f64::max)
}
