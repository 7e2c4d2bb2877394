//! Rank-frequency (Zipf-style) tables: entities ordered by descending count
//! with a deterministic tie-break, plus log-log points for plotting.

use serde::Serialize;
use std::collections::HashMap;

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct RankEntry {
    pub rank: usize,
    pub entity: String,
    pub count: u64,
}

#[derive(Debug, Clone, Serialize, Default)]
pub struct RankFrequency {
    pub entries: Vec<RankEntry>,
}

impl RankFrequency {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// (log10 rank, log10 count) pairs; zero-count entries are skipped.
    pub fn log_log_points(&self) -> Vec<(f64, f64)> {
        self.entries
            .iter()
            .filter(|e| e.count > 0)
            .map(|e| ((e.rank as f64).log10(), (e.count as f64).log10()))
            .collect()
    }

    pub fn total_mass(&self) -> u64 {
        self.entries.iter().map(|e| e.count).sum()
    }
}

/// Order counts by descending frequency; ties broken by entity string
/// ascending. Ranks run 1..=n.
pub fn rank_frequency(counts: &HashMap<String, u64>) -> RankFrequency {
    let mut pairs: Vec<(&String, &u64)> = counts.iter().collect();
    pairs.sort_by(|a, b| b.1.cmp(a.1).then_with(|| a.0.cmp(b.0)));
    RankFrequency {
        entries: pairs
            .into_iter()
            .enumerate()
            .map(|(i, (entity, &count))| RankEntry {
                rank: i + 1,
                entity: entity.clone(),
                count,
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(pairs: &[(&str, u64)]) -> HashMap<String, u64> {
        pairs.iter().map(|(e, c)| (e.to_string(), *c)).collect()
    }

    #[test]
    fn ties_break_by_entity_ascending() {
        let rf = rank_frequency(&counts(&[("a", 3), ("b", 1), ("c", 3)]));
        let got: Vec<(usize, &str, u64)> = rf
            .entries
            .iter()
            .map(|e| (e.rank, e.entity.as_str(), e.count))
            .collect();
        assert_eq!(got, vec![(1, "a", 3), (2, "c", 3), (3, "b", 1)]);
    }

    #[test]
    fn empty_map_empty_table() {
        let rf = rank_frequency(&HashMap::new());
        assert!(rf.is_empty());
        assert!(rf.log_log_points().is_empty());
    }

    #[test]
    fn random_fixture_is_nonincreasing_and_matches_sort_oracle() {
        let mut rng = crate::rng::SeededRng::new(31);
        let mut map = HashMap::new();
        for i in 0..1000 {
            map.insert(format!("e{i:04}"), rng.below(500));
        }
        let rf = rank_frequency(&map);
        assert_eq!(rf.len(), 1000);
        for w in rf.entries.windows(2) {
            assert!(w[0].count >= w[1].count);
            if w[0].count == w[1].count {
                assert!(w[0].entity < w[1].entity);
            }
        }
        assert_eq!(
            rf.entries.iter().map(|e| e.rank).collect::<Vec<_>>(),
            (1..=1000).collect::<Vec<_>>()
        );
        // Independent oracle: sort a plain vector the same way.
        let mut oracle: Vec<(String, u64)> = map.into_iter().collect();
        oracle.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        for (e, (entity, count)) in rf.entries.iter().zip(&oracle) {
            assert_eq!((&e.entity, e.count), (entity, *count));
        }
    }

    #[test]
    fn log_log_points_skip_zero_counts() {
        let rf = rank_frequency(&counts(&[("a", 10), ("b", 0)]));
        assert_eq!(rf.len(), 2);
        assert_eq!(rf.log_log_points().len(), 1);
    }
}
