//! Count-feature scaling. The five counts are broad and skewed, so raw
//! magnitudes would dominate the gradient; log1p then z-score tames them.
//! Binary features pass through untouched.

use super::{FeatureVector, LabeledExample, TrainError, COUNT_FEATURE_COUNT, FEATURE_COUNT};
use serde::{Deserialize, Serialize};

/// Per-count-feature (mean, sd) of log1p-transformed training values.
/// Population (divisor n) convention; a near-zero sd is stored as 1 so a
/// constant feature scales to exactly 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scaler {
    pub means: [f64; COUNT_FEATURE_COUNT],
    pub sds: [f64; COUNT_FEATURE_COUNT],
}

const SD_FLOOR: f64 = 1e-12;

/// Fit scaling statistics on training examples. Requires at least two.
pub fn fit_scaler(examples: &[LabeledExample]) -> Result<Scaler, TrainError> {
    if examples.len() < 2 {
        return Err(TrainError::TooFewExamples {
            needed: 2,
            got: examples.len(),
        });
    }
    let n = examples.len() as f64;
    let mut means = [0.0; COUNT_FEATURE_COUNT];
    let mut sds = [0.0; COUNT_FEATURE_COUNT];
    for j in 0..COUNT_FEATURE_COUNT {
        let mut sum = 0.0;
        for ex in examples {
            sum += ex.features.values[j].ln_1p();
        }
        let mean = sum / n;
        let mut ss = 0.0;
        for ex in examples {
            let d = ex.features.values[j].ln_1p() - mean;
            ss += d * d;
        }
        let sd = (ss / n).sqrt();
        means[j] = mean;
        sds[j] = if sd < SD_FLOOR { 1.0 } else { sd };
    }
    Ok(Scaler { means, sds })
}

impl Scaler {
    /// Scaled copy of the ten components: counts log1p+z-scored, binaries
    /// pass through.
    pub fn apply(&self, features: &FeatureVector) -> [f64; FEATURE_COUNT] {
        let mut out = features.values;
        for ((slot, mean), sd) in out.iter_mut().zip(&self.means).zip(&self.sds) {
            *slot = (slot.ln_1p() - mean) / sd;
        }
        out
    }
}
