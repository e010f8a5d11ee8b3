//! Sensor features to normalized condition scores.
//!
//! Every score is a min-max normalization against a pair of anchors followed
//! by a clamp to `[0, 1]`:
//!
//! | condition | driving signal                                      |
//! |-----------|-----------------------------------------------------|
//! | active    | heart-rate mean and acceleration mean, mixed        |
//! | relaxed   | `1 - active`                                        |
//! | tired     | `1 - sleep in last 24 h / sleep target`             |
//! | drunk     | alcohol proxy mean                                  |
//! | hungry    | time since last feeding gesture / max gap           |
//! | stressed  | skin conductance mean                               |
//!
//! A condition whose channels are all missing keeps its previous value, or 0
//! without history. When history is supplied the raw scores are blended as
//! `beta * raw + (1 - beta) * previous`.

use alloc::vec::Vec;
use alloc::format;

use crate::condition::{Condition, ConditionVector};
use crate::error::{CoreError, Violation};
use crate::sensor::{Channel, WindowedFeatures};

/// Calibration anchors for [`infer_conditions`]. Defaults are engineering
/// choices, not measured values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InferenceParams {
    /// bpm
    pub hr_low: f64,
    pub hr_high: f64,
    /// m/s²
    pub accel_low: f64,
    pub accel_high: f64,
    /// Weight of heart rate in the active score; acceleration gets the rest.
    pub active_mix: f64,
    /// Seconds of sleep per 24 h that count as fully rested.
    pub sleep_target: f64,
    /// Seconds without a feeding gesture after which hunger saturates.
    pub gesture_gap_max: f64,
    pub alcohol_low: f64,
    pub alcohol_high: f64,
    /// µS
    pub sc_low: f64,
    pub sc_high: f64,
    /// Exponential smoothing factor applied when history is supplied.
    pub smoothing: f64,
}

impl Default for InferenceParams {
    fn default() -> Self {
        InferenceParams {
            hr_low: 60.0,
            hr_high: 180.0,
            accel_low: 0.5,
            accel_high: 8.0,
            active_mix: 0.7,
            sleep_target: 28_800.0,
            gesture_gap_max: 21_600.0,
            alcohol_low: 0.0,
            alcohol_high: 1.0,
            sc_low: 2.0,
            sc_high: 20.0,
            smoothing: 0.3,
        }
    }
}

/// Lists every violated invariant of `params`. An empty list means valid.
pub fn validate_params(params: &InferenceParams) -> Vec<Violation> {
    let mut out = Vec::new();
    let anchors = [
        ("active.hr_low/hr_high", params.hr_low, params.hr_high),
        ("active.accel_low/accel_high", params.accel_low, params.accel_high),
        ("drunk.alcohol_low/alcohol_high", params.alcohol_low, params.alcohol_high),
        ("stressed.sc_low/sc_high", params.sc_low, params.sc_high),
    ];
    for (field, lo, hi) in anchors {
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            out.push(Violation {
                field,
                message: format!("lower anchor {lo} must be below upper anchor {hi}"),
            });
        }
    }
    let positive = [
        ("tired.sleep_target", params.sleep_target),
        ("hungry.gesture_gap_max", params.gesture_gap_max),
    ];
    for (field, v) in positive {
        if !(v.is_finite() && v > 0.0) {
            out.push(Violation {
                field,
                message: format!("{v} must be finite and > 0"),
            });
        }
    }
    let unit = [
        ("active.mix", params.active_mix),
        ("smoothing", params.smoothing),
    ];
    for (field, v) in unit {
        if !(0.0..=1.0).contains(&v) {
            out.push(Violation {
                field,
                message: format!("{v} must lie in [0, 1]"),
            });
        }
    }
    out
}

fn min_max(x: f64, lo: f64, hi: f64) -> f64 {
    (x - lo) / (hi - lo)
}

fn clamp01(x: f64) -> f64 {
    if x.is_nan() {
        0.0
    } else {
        x.clamp(0.0, 1.0)
    }
}

fn mean_of(features: &WindowedFeatures, ch: Channel) -> Option<f64> {
    features.channel(ch).map(|s| s.mean)
}

/// Raw active score, renormalizing the mix when one channel is missing.
fn active_score(f: &WindowedFeatures, p: &InferenceParams) -> Option<f64> {
    let hr = mean_of(f, Channel::HeartRate).map(|m| min_max(m, p.hr_low, p.hr_high));
    let acc = mean_of(f, Channel::AccelMagnitude).map(|m| min_max(m, p.accel_low, p.accel_high));
    let raw = match (hr, acc) {
        (Some(h), Some(a)) => p.active_mix * h + (1.0 - p.active_mix) * a,
        (Some(h), None) => h,
        (None, Some(a)) => a,
        (None, None) => return None,
    };
    Some(clamp01(raw))
}

fn raw_scores(f: &WindowedFeatures, p: &InferenceParams) -> [Option<f64>; 6] {
    let active = active_score(f, p);
    let relaxed = active.map(|a| 1.0 - a);
    let tired = f
        .sleep_last_day
        .map(|s| clamp01(1.0 - s / p.sleep_target));
    let drunk = mean_of(f, Channel::AlcoholProxy)
        .map(|m| clamp01(min_max(m, p.alcohol_low, p.alcohol_high)));
    let hungry = f.last_feeding_gesture.map(|t| {
        if f.gesture_in_window() {
            0.0
        } else {
            clamp01((f.window_end - t) as f64 / p.gesture_gap_max)
        }
    });
    let stressed =
        mean_of(f, Channel::SkinConductance).map(|m| clamp01(min_max(m, p.sc_low, p.sc_high)));
    [active, relaxed, tired, drunk, hungry, stressed]
}

/// Maps windowed features to a condition vector.
///
/// Fails only when `params` is invalid.
pub fn infer_conditions(
    features: &WindowedFeatures,
    history: Option<&ConditionVector>,
    params: &InferenceParams,
) -> Result<ConditionVector, CoreError> {
    CoreError::from_violations(validate_params(params))?;

    let raw = raw_scores(features, params);
    let mut out = [0.0; 6];
    for c in Condition::ALL {
        let i = c.index();
        let prev = history.map(|h| h.get(c));
        out[i] = match (raw[i], prev) {
            (Some(r), Some(h)) => params.smoothing * r + (1.0 - params.smoothing) * h,
            (Some(r), None) => r,
            (None, Some(h)) => h,
            (None, None) => 0.0,
        };
    }
    Ok(ConditionVector::saturating(out))
}
