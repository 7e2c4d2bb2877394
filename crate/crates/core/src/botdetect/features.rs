//! Snapshot-to-feature mapping.

use super::{FeatureVector, FEATURE_COUNT};
use crate::corpus::UserSnapshot;

/// Copy the five counts as reals and the five booleans as {0,1}, in the
/// fixed feature order. Absent counts become 0 and clear `complete`.
pub fn extract_features(snapshot: &UserSnapshot) -> FeatureVector {
    let count = |v: Option<u64>| v.map(|c| c as f64).unwrap_or(0.0);
    let flag = |b: bool| if b { 1.0 } else { 0.0 };
    let values: [f64; FEATURE_COUNT] = [
        count(snapshot.statuses_count),
        count(snapshot.followers_count),
        count(snapshot.friends_count),
        count(snapshot.favourites_count),
        count(snapshot.listed_count),
        flag(snapshot.default_profile),
        flag(snapshot.geo_enabled),
        flag(snapshot.profile_use_background_image),
        flag(snapshot.verified),
        flag(snapshot.protected),
    ];
    FeatureVector {
        values,
        complete: snapshot.counts_complete(),
    }
}
