//! Activity scoring, category choice, venue ranking and push timing.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::category::ActivityCategory;
use crate::condition::ConditionVector;
use crate::error::CoreError;
use crate::matrix::WeightMatrix;

/// Weight of catalog quality in a venue score; user affinity gets the rest.
pub const DEFAULT_QUALITY_BLEND: f64 = 0.5;

/// Affinity assumed for venues the user has no recorded preference for.
pub const DEFAULT_AFFINITY: f64 = 0.5;

/// Activity Recommendation Index, one score per category in canonical order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AriVector(pub [f64; 5]);

impl AriVector {
    pub fn get(&self, c: ActivityCategory) -> f64 {
        self.0[c.index()]
    }
}

/// `features · w` for an arbitrary 6-vector. Accumulates rows in ascending
/// order so results are bit-stable.
pub fn ari_from_features(features: &[f64; 6], w: &WeightMatrix) -> [f64; 5] {
    let rows = w.rows();
    let mut out = [0.0; 5];
    for (j, slot) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for (i, x) in features.iter().enumerate() {
            acc += x * rows[i][j];
        }
        *slot = acc;
    }
    out
}

pub fn compute_ari(pc: &ConditionVector, w: &WeightMatrix) -> AriVector {
    AriVector(ari_from_features(pc.as_array(), w))
}

/// Highest-scoring category; ties go to the earliest in canonical order.
pub fn select_category(ari: &AriVector) -> Result<ActivityCategory, CoreError> {
    if let Some(c) = ActivityCategory::ALL.iter().find(|c| ari.get(**c).is_nan()) {
        return Err(CoreError::NanScore(*c));
    }
    let mut best = ActivityCategory::OutdoorsRecreation;
    for c in ActivityCategory::ALL.into_iter().skip(1) {
        if ari.get(c) > ari.get(best) {
            best = c;
        }
    }
    Ok(best)
}

/// A concrete item that can be recommended.
#[derive(Debug, Clone, PartialEq)]
pub struct Venue {
    pub id: String,
    pub name: String,
    pub category: ActivityCategory,
    /// In `[0, 1]`.
    pub base_quality: f64,
}

impl Venue {
    pub fn new(
        id: impl Into<String>,
        name: impl Into<String>,
        category: ActivityCategory,
        base_quality: f64,
    ) -> Result<Self, CoreError> {
        if !(0.0..=1.0).contains(&base_quality) {
            return Err(CoreError::OutOfRange {
                field: "base_quality",
                value: base_quality,
                expected: "within [0, 1]",
            });
        }
        Ok(Venue {
            id: id.into(),
            name: name.into(),
            category,
            base_quality,
        })
    }
}

/// Returns the first duplicated venue id, if any.
pub fn duplicate_venue_id(catalog: &[Venue]) -> Option<&str> {
    let mut seen = BTreeMap::new();
    for v in catalog {
        if seen.insert(v.id.as_str(), ()).is_some() {
            return Some(v.id.as_str());
        }
    }
    None
}

/// Per-venue affinities in `[0, 1]`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct UserPreferences {
    affinity: BTreeMap<String, f64>,
}

impl UserPreferences {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, venue_id: impl Into<String>, affinity: f64) -> Result<(), CoreError> {
        if !(0.0..=1.0).contains(&affinity) {
            return Err(CoreError::OutOfRange {
                field: "affinity",
                value: affinity,
                expected: "within [0, 1]",
            });
        }
        self.affinity.insert(venue_id.into(), affinity);
        Ok(())
    }

    pub fn affinity(&self, venue_id: &str) -> f64 {
        self.affinity
            .get(venue_id)
            .copied()
            .unwrap_or(DEFAULT_AFFINITY)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.affinity.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankedVenue<'a> {
    pub venue: &'a Venue,
    pub score: f64,
}

/// Top-`k` venues of `category` using the default quality/affinity blend.
pub fn rank_items<'a>(
    category: ActivityCategory,
    catalog: &'a [Venue],
    prefs: &UserPreferences,
    k: usize,
) -> Vec<RankedVenue<'a>> {
    rank_items_blended(category, catalog, prefs, k, DEFAULT_QUALITY_BLEND)
}

/// Scores each venue as `blend * quality + (1 - blend) * affinity`, sorts by
/// score descending then id ascending.
pub fn rank_items_blended<'a>(
    category: ActivityCategory,
    catalog: &'a [Venue],
    prefs: &UserPreferences,
    k: usize,
    blend: f64,
) -> Vec<RankedVenue<'a>> {
    let mut ranked: Vec<_> = catalog
        .iter()
        .filter(|v| v.category == category)
        .map(|venue| RankedVenue {
            venue,
            score: blend * venue.base_quality + (1.0 - blend) * prefs.affinity(&venue.id),
        })
        .collect();
    ranked.sort_by(|a, b| {
        b.score
            .partial_cmp(&a.score)
            .unwrap_or(Ordering::Equal)
            .then_with(|| a.venue.id.cmp(&b.venue.id))
    });
    ranked.truncate(k);
    ranked
}

/// Change-point plus cooldown policy for proactive pushes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriggerParams {
    /// Minimum L∞ change of the condition vector.
    pub delta_threshold: f64,
    /// Seconds.
    pub cooldown: u64,
}

impl Default for TriggerParams {
    fn default() -> Self {
        TriggerParams {
            delta_threshold: 0.2,
            cooldown: 3600,
        }
    }
}

impl TriggerParams {
    pub fn validate(&self) -> Result<(), CoreError> {
        if !(self.delta_threshold.is_finite() && self.delta_threshold > 0.0) {
            return Err(CoreError::OutOfRange {
                field: "delta_threshold",
                value: self.delta_threshold,
                expected: "> 0",
            });
        }
        Ok(())
    }
}

/// Whether a recommendation should be pushed now.
pub fn should_push(
    prev: Option<&ConditionVector>,
    cur: &ConditionVector,
    last_push: Option<i64>,
    now: i64,
    p: &TriggerParams,
) -> bool {
    let Some(prev) = prev else {
        return true;
    };
    let cooled = match last_push {
        None => true,
        Some(t) => i128::from(now) - i128::from(t) >= i128::from(p.cooldown),
    };
    cooled && cur.linf_distance(prev) >= p.delta_threshold
}
