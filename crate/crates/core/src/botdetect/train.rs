//! Deterministic logistic-regression training: full-batch gradient descent
//! with Armijo backtracking on mean logistic loss plus an L2 ridge on the
//! weights (bias unpenalized). No randomness enters the solver; the manifest
//! pins everything needed to reproduce a model bit-for-bit.

use super::cv::CVReport;
use super::scaler::{fit_scaler, Scaler};
use super::{FeatureVector, LabeledExample, Scorer, ScorerTrainer, UserClass, FEATURE_COUNT};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TrainError {
    #[error("training data contains a single class")]
    SingleClass,
    #[error("non-finite loss at iteration {iteration}")]
    NonFiniteLoss { iteration: usize },
    #[error("need at least {needed} examples, got {got}")]
    TooFewExamples { needed: usize, got: usize },
    #[error("class {class} has {got} members, fewer than k = {k}")]
    ClassSmallerThanK { class: &'static str, got: usize, k: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hyperparameters {
    pub l2: f64,
    pub max_iters: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for Hyperparameters {
    fn default() -> Self {
        Hyperparameters {
            l2: 1e-4,
            max_iters: 5000,
            tol: 1e-8,
            seed: 0,
        }
    }
}

/// Reproducibility record carried inside every model file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelManifest {
    pub training_data_hash: String,
    pub seed: u64,
    pub hyperparameters: Hyperparameters,
    pub n_examples: usize,
    pub n_bots: usize,
    pub n_humans: usize,
    pub iterations: usize,
    pub final_loss: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub fold_metrics: Option<CVReport>,
}

/// Trained classifier: scaling statistics, weight vector, bias, decision
/// threshold, and the training manifest.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Model {
    pub scaler: Scaler,
    pub weights: [f64; FEATURE_COUNT],
    pub bias: f64,
    pub threshold: f64,
    pub manifest: ModelManifest,
}

impl Model {
    pub fn predict_proba(&self, features: &FeatureVector) -> f64 {
        predict_proba(self, features)
    }

    /// Bot iff probability >= threshold (ties classify as bot).
    pub fn classify(&self, features: &FeatureVector) -> UserClass {
        if self.predict_proba(features) >= self.threshold {
            UserClass::Bot
        } else {
            UserClass::Human
        }
    }
}

impl Scorer for Model {
    fn score(&self, features: &FeatureVector) -> f64 {
        self.predict_proba(features)
    }
}

pub fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// ln(1 + e^z) without overflow.
fn softplus(z: f64) -> f64 {
    if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

/// Mean logistic loss plus l2/2 * ||w||^2 over pre-scaled rows.
/// Cross-entropy per point is softplus(z) - y*z with z = w.x + b.
pub fn logistic_loss(xs: &[Vec<f64>], ys: &[f64], w: &[f64], b: f64, l2: f64) -> f64 {
    debug_assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mut total = 0.0;
    for (x, &y) in xs.iter().zip(ys) {
        let z = dot(w, x) + b;
        total += softplus(z) - y * z;
    }
    let ridge: f64 = w.iter().map(|v| v * v).sum::<f64>() * l2 / 2.0;
    total / n + ridge
}

/// Analytic gradient of [`logistic_loss`]: returns (dL/dw, dL/db).
pub fn logistic_gradient(
    xs: &[Vec<f64>],
    ys: &[f64],
    w: &[f64],
    b: f64,
    l2: f64,
) -> (Vec<f64>, f64) {
    debug_assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mut gw = vec![0.0; w.len()];
    let mut gb = 0.0;
    for (x, &y) in xs.iter().zip(ys) {
        let residual = sigmoid(dot(w, x) + b) - y;
        for (g, &xi) in gw.iter_mut().zip(x) {
            *g += residual * xi;
        }
        gb += residual;
    }
    for (g, &wi) in gw.iter_mut().zip(w) {
        *g = *g / n + l2 * wi;
    }
    (gw, gb / n)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

const ARMIJO_C: f64 = 1e-4;
const STEP_SHRINK: f64 = 0.5;
const MIN_STEP: f64 = 1e-20;

/// Train on labeled examples. The scaler is refit on exactly these examples;
/// optimization is full-batch gradient descent with backtracking line
/// search, stopping when the loss decrease drops below `tol` or `max_iters`
/// is reached. Fails on single-class input and on a non-finite accepted
/// loss (never silently clamped).
pub fn train_logreg(
    examples: &[LabeledExample],
    hyper: Hyperparameters,
) -> Result<Model, TrainError> {
    let n_bots = examples.iter().filter(|e| e.label == 1).count();
    let n_humans = examples.len() - n_bots;
    if n_bots == 0 || n_humans == 0 {
        return Err(TrainError::SingleClass);
    }
    let scaler = fit_scaler(examples)?;
    let xs: Vec<Vec<f64>> = examples
        .iter()
        .map(|e| scaler.apply(&e.features).to_vec())
        .collect();
    let ys: Vec<f64> = examples.iter().map(|e| f64::from(e.label)).collect();

    let mut w = vec![0.0; FEATURE_COUNT];
    let mut b = 0.0;
    let mut loss = logistic_loss(&xs, &ys, &w, b, hyper.l2);
    if !loss.is_finite() {
        return Err(TrainError::NonFiniteLoss { iteration: 0 });
    }
    let mut iterations = 0;
    let mut step_hint = 1.0f64;
    for iter in 0..hyper.max_iters {
        let (gw, gb) = logistic_gradient(&xs, &ys, &w, b, hyper.l2);
        let gnorm2 = gw.iter().map(|g| g * g).sum::<f64>() + gb * gb;
        if gnorm2 < 1e-24 {
            break;
        }
        // Backtracking from twice the last accepted step.
        let mut step = (step_hint * 2.0).min(1e6);
        let mut accepted = None;
        while step >= MIN_STEP {
            let w_try: Vec<f64> = w.iter().zip(&gw).map(|(wi, gi)| wi - step * gi).collect();
            let b_try = b - step * gb;
            let loss_try = logistic_loss(&xs, &ys, &w_try, b_try, hyper.l2);
            if loss_try.is_finite() && loss_try <= loss - ARMIJO_C * step * gnorm2 {
                accepted = Some((w_try, b_try, loss_try, step));
                break;
            }
            step *= STEP_SHRINK;
        }
        let Some((w_new, b_new, loss_new, used_step)) = accepted else {
            break; // no descent direction progress possible
        };
        let decrease = loss - loss_new;
        w = w_new;
        b = b_new;
        loss = loss_new;
        step_hint = used_step;
        iterations = iter + 1;
        if !loss.is_finite() {
            return Err(TrainError::NonFiniteLoss { iteration: iterations });
        }
        if decrease < hyper.tol {
            break;
        }
    }

    let mut weights = [0.0; FEATURE_COUNT];
    weights.copy_from_slice(&w);
    Ok(Model {
        scaler,
        weights,
        bias: b,
        threshold: 0.5,
        manifest: ModelManifest {
            training_data_hash: hash_examples(examples),
            seed: hyper.seed,
            hyperparameters: hyper,
            n_examples: examples.len(),
            n_bots,
            n_humans,
            iterations,
            final_loss: loss,
            fold_metrics: None,
        },
    })
}

/// sigmoid(w . scale(fv) + b)
pub fn predict_proba(model: &Model, features: &FeatureVector) -> f64 {
    let scaled = model.scaler.apply(features);
    sigmoid(dot(&model.weights, &scaled) + model.bias)
}

/// Canonical digest of the training mixture: label, the ten raw feature
/// values as IEEE-754 bits, and the source id, per example in order.
fn hash_examples(examples: &[LabeledExample]) -> String {
    let mut hasher = Sha256::new();
    for ex in examples {
        hasher.update([ex.label]);
        for v in ex.features.values {
            hasher.update(v.to_le_bytes());
        }
        hasher.update(ex.source_id.as_bytes());
        hasher.update([0xff]);
    }
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// The reference trainer for the CV harness.
#[derive(Debug, Clone, Copy, Default)]
pub struct LogisticTrainer {
    pub hyper: Hyperparameters,
}

impl ScorerTrainer for LogisticTrainer {
    type Output = Model;
    fn train(&self, examples: &[LabeledExample]) -> Result<Model, TrainError> {
        train_logreg(examples, self.hyper)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeededRng;

    fn example(values: [f64; FEATURE_COUNT], label: u8) -> LabeledExample {
        LabeledExample::new(
            FeatureVector {
                values,
                complete: true,
            },
            label,
            format!("ex{label}"),
        )
    }

    fn separable_1d(n: usize) -> Vec<LabeledExample> {
        // Feature equals label on the statuses slot.
        (0..n)
            .map(|i| {
                let label = (i % 2) as u8;
                let mut values = [0.0; FEATURE_COUNT];
                values[0] = f64::from(label) * 100.0;
                example(values, label)
            })
            .collect()
    }

    #[test]
    fn separable_data_reaches_perfect_training_accuracy() {
        let examples = separable_1d(40);
        let model = train_logreg(&examples, Hyperparameters::default()).unwrap();
        let correct = examples
            .iter()
            .filter(|e| {
                let class = model.classify(&e.features);
                (class == UserClass::Bot) == (e.label == 1)
            })
            .count();
        assert_eq!(correct, examples.len());
    }

    #[test]
    fn single_class_rejected() {
        let examples: Vec<LabeledExample> =
            (0..10).map(|_| example([1.0; FEATURE_COUNT], 1)).collect();
        assert!(matches!(
            train_logreg(&examples, Hyperparameters::default()),
            Err(TrainError::SingleClass)
        ));
    }

    #[test]
    fn zero_model_predicts_half_exactly() {
        let examples = separable_1d(10);
        let mut model = train_logreg(&examples, Hyperparameters::default()).unwrap();
        model.weights = [0.0; FEATURE_COUNT];
        model.bias = 0.0;
        let fv = FeatureVector {
            values: [3.0, 1.0, 4.0, 1.0, 5.0, 1.0, 0.0, 1.0, 0.0, 1.0],
            complete: true,
        };
        assert_eq!(model.predict_proba(&fv), 0.5);
        // >= rule: probability exactly at threshold classifies as bot.
        assert_eq!(model.classify(&fv), UserClass::Bot);
    }

    #[test]
    fn analytic_gradient_matches_central_differences() {
        let mut rng = SeededRng::new(2024);
        for trial in 0..100 {
            let n = 12;
            let xs: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..FEATURE_COUNT).map(|_| rng.normal()).collect())
                .collect();
            let ys: Vec<f64> = (0..n).map(|_| f64::from(rng.chance(0.5))).collect();
            let w: Vec<f64> = (0..FEATURE_COUNT).map(|_| rng.normal() * 0.5).collect();
            let b = rng.normal() * 0.5;
            let l2 = 1e-3;
            let (gw, gb) = logistic_gradient(&xs, &ys, &w, b, l2);
            let h = 1e-5;
            for j in 0..FEATURE_COUNT {
                let mut wp = w.clone();
                let mut wm = w.clone();
                wp[j] += h;
                wm[j] -= h;
                let numeric = (logistic_loss(&xs, &ys, &wp, b, l2)
                    - logistic_loss(&xs, &ys, &wm, b, l2))
                    / (2.0 * h);
                let denom = gw[j].abs().max(numeric.abs()).max(1e-8);
                assert!(
                    (gw[j] - numeric).abs() / denom <= 1e-5,
                    "trial {trial} w[{j}]: analytic {} numeric {numeric}",
                    gw[j]
                );
            }
            let numeric_b = (logistic_loss(&xs, &ys, &w, b + h, l2)
                - logistic_loss(&xs, &ys, &w, b - h, l2))
                / (2.0 * h);
            let denom = gb.abs().max(numeric_b.abs()).max(1e-8);
            assert!((gb - numeric_b).abs() / denom <= 1e-5);
        }
    }

    #[test]
    fn label_flip_negates_weights() {
        let mut rng = SeededRng::new(55);
        let examples: Vec<LabeledExample> = (0..200)
            .map(|_| {
                let label = u8::from(rng.chance(0.5));
                let mut values = [0.0; FEATURE_COUNT];
                for v in values.iter_mut().take(5) {
                    *v = (rng.normal() + 2.0 * f64::from(label)).exp().max(0.0);
                }
                values[5] = f64::from(rng.chance(0.3 + 0.4 * f64::from(label)));
                example(values, label)
            })
            .collect();
        let flipped: Vec<LabeledExample> = examples
            .iter()
            .map(|e| LabeledExample::new(e.features.clone(), 1 - e.label, e.source_id.clone()))
            .collect();
        let hyper = Hyperparameters {
            tol: 1e-12,
            max_iters: 20_000,
            ..Default::default()
        };
        let m1 = train_logreg(&examples, hyper).unwrap();
        let m2 = train_logreg(&flipped, hyper).unwrap();
        let drift: f64 = m1
            .weights
            .iter()
            .zip(&m2.weights)
            .map(|(a, b)| (a + b) * (a + b))
            .sum::<f64>()
            .sqrt();
        assert!(drift <= 1e-3, "||w1 + w2|| = {drift}");
    }

    #[test]
    fn training_is_bit_deterministic() {
        let examples = separable_1d(30);
        let hyper = Hyperparameters {
            seed: 99,
            ..Default::default()
        };
        let m1 = train_logreg(&examples, hyper).unwrap();
        let m2 = train_logreg(&examples, hyper).unwrap();
        assert_eq!(
            serde_json::to_string(&m1).unwrap(),
            serde_json::to_string(&m2).unwrap()
        );
    }

    #[test]
    fn proba_monotone_in_negatively_weighted_count() {
        // Favourites high implies human in this fixture, so its weight
        // trains negative; the probability must then be nonincreasing as
        // favourites grows.
        let mut rng = SeededRng::new(8);
        let examples: Vec<LabeledExample> = (0..400)
            .map(|_| {
                let label = u8::from(rng.chance(0.5));
                let mut values = [0.0; FEATURE_COUNT];
                values[3] = if label == 1 {
                    rng.below(50) as f64
                } else {
                    2_000.0 + rng.below(20_000) as f64
                };
                values[0] = rng.below(1000) as f64;
                example(values, label)
            })
            .collect();
        let model = train_logreg(&examples, Hyperparameters::default()).unwrap();
        assert!(model.weights[3] < 0.0);
        let mut prev = f64::INFINITY;
        for favourites in [0.0, 1.0, 10.0, 100.0, 1_000.0, 10_000.0, 100_000.0] {
            let mut values = [0.0; FEATURE_COUNT];
            values[3] = favourites;
            let p = model.predict_proba(&FeatureVector {
                values,
                complete: true,
            });
            assert!(p <= prev + 1e-15, "p({favourites}) = {p} > prev {prev}");
            prev = p;
        }
    }

    #[test]
    fn manifest_records_mixture_counts_and_hash() {
        let examples = separable_1d(20);
        let model = train_logreg(&examples, Hyperparameters::default()).unwrap();
        assert_eq!(model.manifest.n_examples, 20);
        assert_eq!(model.manifest.n_bots, 10);
        assert_eq!(model.manifest.n_humans, 10);
        assert_eq!(model.manifest.training_data_hash.len(), 64);
        assert!(model.manifest.iterations > 0);
        // Different mixture, different hash.
        let other = train_logreg(&separable_1d(22), Hyperparameters::default()).unwrap();
        assert_ne!(
            model.manifest.training_data_hash,
            other.manifest.training_data_hash
        );
    }
}
