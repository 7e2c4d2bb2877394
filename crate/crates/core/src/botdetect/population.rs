//! Whole-population scoring against a trained model.

use super::train::Model;
use super::{extract_features, UserClass};
use crate::corpus::UserTable;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Copy, Default)]
pub struct PopulationOptions {
    /// Apply the hard rule that verified accounts are human, overriding the
    /// learned model.
    pub verified_are_human: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PopulationRow {
    pub user_id: String,
    pub probability: f64,
    pub label: UserClass,
    pub complete: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PopulationSummary {
    pub n_users: usize,
    pub n_bots: usize,
    pub n_humans: usize,
    /// Absent for an empty population rather than NaN.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bot_fraction: Option<f64>,
    pub incomplete: usize,
}

/// Classify each user's last observed snapshot. Incomplete snapshots are
/// classified anyway but flagged and counted. Rows come back sorted by
/// user_id; scoring is parallel and order-independent.
pub fn classify_population(
    model: &Model,
    table: &UserTable,
    opts: PopulationOptions,
) -> (Vec<PopulationRow>, PopulationSummary) {
    let entries = table.iter_sorted();
    let rows: Vec<PopulationRow> = entries
        .par_iter()
        .map(|(user_id, entry)| {
            let features = extract_features(&entry.last_snapshot);
            let probability = model.predict_proba(&features);
            let mut label = if probability >= model.threshold {
                UserClass::Bot
            } else {
                UserClass::Human
            };
            if opts.verified_are_human && entry.last_snapshot.verified {
                label = UserClass::Human;
            }
            PopulationRow {
                user_id: (*user_id).clone(),
                probability,
                label,
                complete: features.complete,
            }
        })
        .collect();
    let n_bots = rows.iter().filter(|r| r.label == UserClass::Bot).count();
    let incomplete = rows.iter().filter(|r| !r.complete).count();
    let n_users = rows.len();
    let summary = PopulationSummary {
        n_users,
        n_bots,
        n_humans: n_users - n_bots,
        bot_fraction: if n_users == 0 {
            None
        } else {
            Some(n_bots as f64 / n_users as f64)
        },
        incomplete,
    };
    (rows, summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::botdetect::{train_logreg, FeatureVector, Hyperparameters, LabeledExample};
    use crate::corpus::{build_user_table, parse_record};

    fn model_favouring_low_statuses() -> Model {
        // Bots post a lot in this toy world.
        let mut examples = Vec::new();
        for i in 0..40 {
            let label = (i % 2) as u8;
            let mut values = [0.0; 10];
            values[0] = if label == 1 { 5_000.0 } else { 10.0 };
            examples.push(LabeledExample::new(
                FeatureVector {
                    values,
                    complete: true,
                },
                label,
                format!("e{i}"),
            ));
        }
        train_logreg(&examples, Hyperparameters::default()).unwrap()
    }

    fn corpus_line(user: &str, statuses: u64, verified: bool) -> String {
        format!(
            r#"{{"id":"t_{user}","created_at":10,"text":"x","user":{{"id":"{user}","statuses_count":{statuses},"followers_count":1,"friends_count":1,"favourites_count":1,"listed_count":1,"verified":{verified}}}}}"#
        )
    }

    #[test]
    fn empty_table_reports_absent_fraction() {
        let model = model_favouring_low_statuses();
        let (rows, summary) =
            classify_population(&model, &UserTable::default(), PopulationOptions::default());
        assert!(rows.is_empty());
        assert_eq!(summary.n_users, 0);
        assert_eq!(summary.bot_fraction, None);
    }

    #[test]
    fn partition_is_disjoint_and_total() {
        let model = model_favouring_low_statuses();
        let records: Vec<_> = (0..50)
            .map(|i| {
                let statuses = if i % 3 == 0 { 6_000 } else { 5 };
                parse_record(&corpus_line(&format!("u{i:02}"), statuses, false), 1).unwrap()
            })
            .collect();
        let table = build_user_table(&records);
        let (rows, summary) = classify_population(&model, &table, PopulationOptions::default());
        assert_eq!(rows.len(), 50);
        assert_eq!(summary.n_bots + summary.n_humans, summary.n_users);
        let bots = rows.iter().filter(|r| r.label == UserClass::Bot).count();
        assert_eq!(bots, summary.n_bots);
        assert_eq!(bots, 17); // i = 0,3,...,48
        // Sorted output.
        for w in rows.windows(2) {
            assert!(w[0].user_id < w[1].user_id);
        }
    }

    #[test]
    fn incomplete_snapshots_classified_but_counted() {
        let model = model_favouring_low_statuses();
        let line = r#"{"id":"t","created_at":1,"text":"x","user":{"id":"u1","statuses_count":9000}}"#;
        let table = build_user_table(&[parse_record(line, 1).unwrap()]);
        let (rows, summary) = classify_population(&model, &table, PopulationOptions::default());
        assert_eq!(rows.len(), 1);
        assert!(!rows[0].complete);
        assert_eq!(summary.incomplete, 1);
    }

    #[test]
    fn verified_override_flips_to_human() {
        let model = model_favouring_low_statuses();
        let records = vec![parse_record(&corpus_line("u1", 9_000, true), 1).unwrap()];
        let table = build_user_table(&records);
        let (rows, _) = classify_population(&model, &table, PopulationOptions::default());
        assert_eq!(rows[0].label, UserClass::Bot);
        let (rows, _) = classify_population(
            &model,
            &table,
            PopulationOptions {
                verified_are_human: true,
            },
        );
        assert_eq!(rows[0].label, UserClass::Human);
    }
}
