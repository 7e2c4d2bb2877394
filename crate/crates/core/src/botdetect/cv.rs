//! Stratified k-fold cross-validation, model-agnostic over any
//! [`ScorerTrainer`].

use super::metrics::{accuracy, auc_roc};
use super::train::{LogisticTrainer, TrainError};
use super::{Hyperparameters, LabeledExample, Scorer, ScorerTrainer};
use crate::rng::SeededRng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FoldMetrics {
    pub accuracy: f64,
    pub auc: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CVReport {
    pub k: usize,
    pub seed: u64,
    pub folds: Vec<FoldMetrics>,
    pub mean_accuracy: f64,
    pub mean_auc: f64,
}

/// Split indices into k disjoint folds preserving the class balance: each
/// class is shuffled (seeded) and dealt round-robin, so per-fold class
/// counts differ from perfect proportion by at most one. Deterministic for
/// a fixed seed.
pub fn stratified_folds(
    labels: &[u8],
    k: usize,
    seed: u64,
) -> Result<Vec<Vec<usize>>, TrainError> {
    assert!(k >= 2, "k must be at least 2");
    let mut positives: Vec<usize> = Vec::new();
    let mut negatives: Vec<usize> = Vec::new();
    for (i, &label) in labels.iter().enumerate() {
        if label == 1 {
            positives.push(i);
        } else {
            negatives.push(i);
        }
    }
    if positives.len() < k {
        return Err(TrainError::ClassSmallerThanK {
            class: "bot",
            got: positives.len(),
            k,
        });
    }
    if negatives.len() < k {
        return Err(TrainError::ClassSmallerThanK {
            class: "human",
            got: negatives.len(),
            k,
        });
    }
    let mut rng = SeededRng::new(seed).fork("stratified-folds");
    rng.shuffle(&mut positives);
    rng.shuffle(&mut negatives);
    let mut folds = vec![Vec::new(); k];
    for (pos, idx) in positives.into_iter().enumerate() {
        folds[pos % k].push(idx);
    }
    for (pos, idx) in negatives.into_iter().enumerate() {
        folds[pos % k].push(idx);
    }
    Ok(folds)
}

/// k-fold cross-validation of an arbitrary trainer. Each round trains on
/// k-1 folds (any feature scaling refits inside the trainer on exactly that
/// split) and evaluates accuracy (threshold 0.5) and AUC on the held-out
/// fold.
pub fn cross_validate_with<T: ScorerTrainer>(
    trainer: &T,
    examples: &[LabeledExample],
    k: usize,
    seed: u64,
) -> Result<CVReport, TrainError> {
    let labels: Vec<u8> = examples.iter().map(|e| e.label).collect();
    let folds = stratified_folds(&labels, k, seed)?;
    let mut metrics = Vec::with_capacity(k);
    for held_out in &folds {
        let mut train_set = Vec::with_capacity(examples.len() - held_out.len());
        let mut in_fold = vec![false; examples.len()];
        for &i in held_out {
            in_fold[i] = true;
        }
        for (i, ex) in examples.iter().enumerate() {
            if !in_fold[i] {
                train_set.push(ex.clone());
            }
        }
        let model = trainer.train(&train_set)?;
        let scores: Vec<f64> = held_out
            .iter()
            .map(|&i| model.score(&examples[i].features))
            .collect();
        let truth: Vec<u8> = held_out.iter().map(|&i| examples[i].label).collect();
        let preds: Vec<u8> = scores.iter().map(|&s| u8::from(s >= 0.5)).collect();
        let acc = accuracy(&preds, &truth).expect("non-empty fold");
        let auc = auc_roc(&scores, &truth).expect("stratified fold has both classes");
        metrics.push(FoldMetrics { accuracy: acc, auc });
    }
    let mean_accuracy = metrics.iter().map(|m| m.accuracy).sum::<f64>() / k as f64;
    let mean_auc = metrics.iter().map(|m| m.auc).sum::<f64>() / k as f64;
    Ok(CVReport {
        k,
        seed,
        folds: metrics,
        mean_accuracy,
        mean_auc,
    })
}

/// Cross-validate the reference logistic-regression trainer.
pub fn cross_validate(
    examples: &[LabeledExample],
    k: usize,
    hyper: Hyperparameters,
) -> Result<CVReport, TrainError> {
    cross_validate_with(&LogisticTrainer { hyper }, examples, k, hyper.seed)
}
