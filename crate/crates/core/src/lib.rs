//! Engine core for physiology-aware activity recommendation.
//!
//! Wearable sensor samples are windowed into per-channel features, mapped to a
//! six-component condition vector, multiplied with a 6×5 condition-to-category
//! weight matrix to score five activity categories, and the best category is
//! expanded into concrete venues. The weight matrix is learned from observed
//! choices with a multinomial logistic model; [`sim`] provides a synthetic
//! population with a planted matrix to check that learning works.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, configuration
//! and the command line live in the `physio-rec` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod category;
pub mod condition;
pub mod error;
pub mod inference;
pub mod learning;
pub mod matrix;
pub mod recommend;
pub mod sensor;
pub mod sim;

pub use category::ActivityCategory;
pub use condition::{Condition, ConditionVector};
pub use error::{CoreError, Violation};
pub use inference::{infer_conditions, validate_params, InferenceParams};
pub use learning::{fit, init_weights, update, FeedbackEvent, LearningParams, SignPrior};
pub use matrix::WeightMatrix;
pub use recommend::{
    compute_ari, rank_items, select_category, should_push, AriVector, RankedVenue, TriggerParams,
    UserPreferences, Venue,
};
pub use sensor::{window, Channel, ChannelStats, SensorSample, WindowSpec, WindowedFeatures};
pub use sim::{emit_sensor_log, evaluate_policy, generate_trajectory, sample_choice, SimConfig};

/// Number of physiological conditions (rows of the weight matrix).
pub const N_CONDITIONS: usize = 6;
/// Number of activity categories (columns of the weight matrix).
pub const N_CATEGORIES: usize = 5;
