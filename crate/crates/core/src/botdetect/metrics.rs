//! Classification metrics: accuracy and rank-statistic AUC-ROC.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("prediction/label length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("empty input")]
    Empty,
    #[error("AUC undefined: labels contain a single class")]
    SingleClass,
}

/// Fraction of predictions equal to labels (both 0/1 coded).
pub fn accuracy(predictions: &[u8], labels: &[u8]) -> Result<f64, MetricsError> {
    if predictions.len() != labels.len() {
        return Err(MetricsError::LengthMismatch {
            left: predictions.len(),
            right: labels.len(),
        });
    }
    if predictions.is_empty() {
        return Err(MetricsError::Empty);
    }
    let correct = predictions
        .iter()
        .zip(labels)
        .filter(|(p, l)| p == l)
        .count();
    Ok(correct as f64 / predictions.len() as f64)
}

/// AUC-ROC by the rank statistic, O(n log n).
///
/// Equals the pairwise definition exactly: the probability a random
/// positive outscores a random negative, ties counted half. Computed as
/// (R+ - n+(n+ + 1)/2) / (n+ n-) with midranks over the pooled scores.
pub fn auc_roc(scores: &[f64], labels: &[u8]) -> Result<f64, MetricsError> {
    if scores.len() != labels.len() {
        return Err(MetricsError::LengthMismatch {
            left: scores.len(),
            right: labels.len(),
        });
    }
    if scores.is_empty() {
        return Err(MetricsError::Empty);
    }
    let n_pos = labels.iter().filter(|&&l| l == 1).count();
    let n_neg = labels.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return Err(MetricsError::SingleClass);
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&i, &j| scores[i].total_cmp(&scores[j]));
    let mut rank_sum_pos = 0.0f64;
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && scores[order[j]] == scores[order[i]] {
            j += 1;
        }
        let midrank = (i + 1 + j) as f64 / 2.0;
        for &idx in &order[i..j] {
            if labels[idx] == 1 {
                rank_sum_pos += midrank;
            }
        }
        i = j;
    }
    let n_pos_f = n_pos as f64;
    Ok((rank_sum_pos - n_pos_f * (n_pos_f + 1.0) / 2.0) / (n_pos_f * n_neg as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeededRng;

    /// O(n^2) pairwise oracle: fraction of positive/negative pairs where the
    /// positive outscores the negative, ties worth half.
    pub(crate) fn auc_pairwise(scores: &[f64], labels: &[u8]) -> f64 {
        let mut wins = 0.0;
        let mut pairs = 0.0;
        for (i, &li) in labels.iter().enumerate() {
            if li != 1 {
                continue;
            }
            for (j, &lj) in labels.iter().enumerate() {
                if lj != 0 {
                    continue;
                }
                pairs += 1.0;
                if scores[i] > scores[j] {
                    wins += 1.0;
                } else if scores[i] == scores[j] {
                    wins += 0.5;
                }
            }
        }
        wins / pairs
    }

    #[test]
    fn scores_equal_labels_is_perfect() {
        let labels = [0u8, 1, 0, 1, 1, 0];
        let scores: Vec<f64> = labels.iter().map(|&l| f64::from(l)).collect();
        assert_eq!(auc_roc(&scores, &labels).unwrap(), 1.0);
        let preds: Vec<u8> = labels.to_vec();
        assert_eq!(accuracy(&preds, &labels).unwrap(), 1.0);
    }

    #[test]
    fn constant_scores_give_half() {
        let labels = [0u8, 1, 0, 1, 1];
        let scores = [0.7; 5];
        assert_eq!(auc_roc(&scores, &labels).unwrap(), 0.5);
    }

    #[test]
    fn single_class_is_an_error() {
        assert!(matches!(
            auc_roc(&[0.1, 0.2], &[1, 1]),
            Err(MetricsError::SingleClass)
        ));
    }

    #[test]
    fn matches_pairwise_oracle_including_ties() {
        let mut rng = SeededRng::new(500);
        for trial in 0..50 {
            let n = 2 + rng.below(499) as usize;
            // Quantized scores force plenty of ties.
            let scores: Vec<f64> = (0..n).map(|_| rng.below(20) as f64 / 4.0).collect();
            let mut labels: Vec<u8> = (0..n).map(|_| u8::from(rng.chance(0.4))).collect();
            // Guarantee both classes.
            labels[0] = 0;
            labels[n - 1] = 1;
            let fast = auc_roc(&scores, &labels).unwrap();
            let slow = auc_pairwise(&scores, &labels);
            assert!(
                (fast - slow).abs() <= 1e-12,
                "trial {trial} n={n}: {fast} vs {slow}"
            );
        }
    }

    #[test]
    fn invariant_under_strictly_increasing_transform() {
        let mut rng = SeededRng::new(77);
        let scores: Vec<f64> = (0..300).map(|_| rng.normal()).collect();
        let labels: Vec<u8> = scores
            .iter()
            .map(|&s| u8::from(s + rng.normal() > 0.0))
            .collect();
        if labels.iter().all(|&l| l == labels[0]) {
            panic!("degenerate fixture");
        }
        let base = auc_roc(&scores, &labels).unwrap();
        let transformed: Vec<f64> = scores.iter().map(|&s| s.exp() + s.powi(3)).collect();
        let got = auc_roc(&transformed, &labels).unwrap();
        assert_eq!(base, got);
    }

    #[test]
    fn accuracy_counts_fraction() {
        assert_eq!(accuracy(&[1, 0, 1, 1], &[1, 1, 1, 0]).unwrap(), 0.5);
        assert!(matches!(
            accuracy(&[1], &[1, 0]),
            Err(MetricsError::LengthMismatch { .. })
        ));
        assert!(matches!(accuracy(&[], &[]), Err(MetricsError::Empty)));
    }
}
