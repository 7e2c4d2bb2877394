//! Descriptive moments and Pearson correlation.

use super::StatsError;
use serde::Serialize;

/// Mean and population standard deviation (divisor n).
///
/// The population convention matches the descriptive sigmas reported in the
/// group comparisons; the hypothesis tests use sample variance internally.
pub fn mean_sd(sample: &[f64]) -> Result<(f64, f64), StatsError> {
    if sample.is_empty() {
        return Err(StatsError::EmptySample);
    }
    let n = sample.len() as f64;
    let mean = sample.iter().sum::<f64>() / n;
    let ss: f64 = sample.iter().map(|x| (x - mean) * (x - mean)).sum();
    Ok((mean, (ss / n).sqrt()))
}

/// Sample variance (divisor n-1). Returns 0 for n < 2.
pub(crate) fn sample_variance(sample: &[f64], mean: f64) -> f64 {
    if sample.len() < 2 {
        return 0.0;
    }
    let ss: f64 = sample.iter().map(|x| (x - mean) * (x - mean)).sum();
    ss / (sample.len() - 1) as f64
}

/// Pearson product-moment correlation, with a degeneracy flag.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Correlation {
    pub rho: f64,
    /// True when either column is constant; `rho` is then defined as 0.
    pub degenerate: bool,
}

/// Two-pass product-moment correlation. A constant column yields rho = 0
/// with the degenerate flag set rather than NaN.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<Correlation, StatsError> {
    if x.len() != y.len() {
        return Err(StatsError::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.len() < 2 {
        return Err(StatsError::TooFewSamples {
            needed: 2,
            got: x.len(),
        });
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        let dx = xi - mx;
        let dy = yi - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Ok(Correlation {
            rho: 0.0,
            degenerate: true,
        });
    }
    // Single sqrt keeps identical (and negated) columns at exactly +/-1.
    let rho = (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0);
    Ok(Correlation {
        rho,
        degenerate: false,
    })
}

/// Symmetric Pearson matrix over named columns; diagonal is exactly 1.
#[derive(Debug, Clone, Serialize)]
pub struct CorrelationMatrix {
    pub labels: Vec<String>,
    pub rho: Vec<Vec<f64>>,
    /// Labels of constant columns whose correlations were pinned to 0.
    pub degenerate_columns: Vec<String>,
}

/// Pairwise correlations of equal-length columns. The upper triangle is
/// computed once and mirrored, so symmetry is exact by construction.
pub fn correlation_matrix(
    labels: &[&str],
    columns: &[Vec<f64>],
) -> Result<CorrelationMatrix, StatsError> {
    assert_eq!(labels.len(), columns.len(), "one label per column");
    let k = columns.len();
    let mut rho = vec![vec![0.0; k]; k];
    let mut degenerate = vec![false; k];
    for i in 0..k {
        rho[i][i] = 1.0;
        for j in (i + 1)..k {
            let c = pearson(&columns[i], &columns[j])?;
            rho[i][j] = c.rho;
            rho[j][i] = c.rho;
            if c.degenerate {
                // Attribute the flag to whichever column is constant.
                let (mi, vi) = mean_var_hint(&columns[i]);
                if vi == 0.0 && mi.is_finite() {
                    degenerate[i] = true;
                } else {
                    degenerate[j] = true;
                }
            }
        }
    }
    Ok(CorrelationMatrix {
        labels: labels.iter().map(|s| s.to_string()).collect(),
        rho,
        degenerate_columns: labels
            .iter()
            .zip(&degenerate)
            .filter(|(_, &d)| d)
            .map(|(l, _)| l.to_string())
            .collect(),
    })
}

fn mean_var_hint(col: &[f64]) -> (f64, f64) {
    let n = col.len() as f64;
    let m = col.iter().sum::<f64>() / n;
    let v = col.iter().map(|x| (x - m) * (x - m)).sum::<f64>();
    (m, v)
}
