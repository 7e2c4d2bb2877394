//! Two-sample mean tests. Welch's variant (unequal variances,
//! Welch-Satterthwaite df) is the default throughout the toolkit; the pooled
//! variant exists as a methodological knob.

use super::descriptive::sample_variance;
use super::special::student_t_two_sided_p;
use super::{StatsError, TestMethod, TestResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TTestVariant {
    Welch,
    Pooled,
}

impl std::str::FromStr for TTestVariant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "welch" => Ok(TTestVariant::Welch),
            "pooled" => Ok(TTestVariant::Pooled),
            other => Err(format!("unknown t-test variant: {other}")),
        }
    }
}

/// Welch's t-test, two-sided.
///
/// t = (mean_a - mean_b) / sqrt(s1^2/n1 + s2^2/n2) with sample (n-1)
/// variances and Welch-Satterthwaite degrees of freedom. Errors when both
/// samples are constant (the statistic is undefined).
pub fn welch_t(a: &[f64], b: &[f64]) -> Result<TestResult, StatsError> {
    t_test(a, b, TTestVariant::Welch)
}

/// Classic pooled-variance t-test (df = n1 + n2 - 2).
pub fn pooled_t(a: &[f64], b: &[f64]) -> Result<TestResult, StatsError> {
    t_test(a, b, TTestVariant::Pooled)
}

pub fn t_test(a: &[f64], b: &[f64], variant: TTestVariant) -> Result<TestResult, StatsError> {
    let (n1, n2) = (a.len(), b.len());
    let smallest = n1.min(n2);
    if smallest < 2 {
        return Err(StatsError::TooFewSamples {
            needed: 2,
            got: smallest,
        });
    }
    let mean_a = a.iter().sum::<f64>() / n1 as f64;
    let mean_b = b.iter().sum::<f64>() / n2 as f64;
    let v1 = sample_variance(a, mean_a);
    let v2 = sample_variance(b, mean_b);
    if v1 == 0.0 && v2 == 0.0 {
        return Err(StatsError::DegenerateSamples);
    }
    let (t, df, method) = match variant {
        TTestVariant::Welch => {
            let se1 = v1 / n1 as f64;
            let se2 = v2 / n2 as f64;
            let t = (mean_a - mean_b) / (se1 + se2).sqrt();
            let df = (se1 + se2) * (se1 + se2)
                / (se1 * se1 / (n1 as f64 - 1.0) + se2 * se2 / (n2 as f64 - 1.0));
            (t, df, TestMethod::WelchT)
        }
        TTestVariant::Pooled => {
            let df = (n1 + n2 - 2) as f64;
            let pooled = ((n1 as f64 - 1.0) * v1 + (n2 as f64 - 1.0) * v2) / df;
            let t = (mean_a - mean_b) / (pooled * (1.0 / n1 as f64 + 1.0 / n2 as f64)).sqrt();
            (t, df, TestMethod::PooledT)
        }
    };
    let p = student_t_two_sided_p(t, df);
    Ok(TestResult {
        statistic: t,
        p_value: p,
        method,
        n1,
        n2,
        df: Some(df),
        underflow: p == 0.0 && t != 0.0,
    })
}
