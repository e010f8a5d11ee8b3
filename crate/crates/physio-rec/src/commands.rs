//! The command implementations behind the CLI. Each returns the single line
//! of JSON the command prints on standard output.

use std::path::Path;

use physio_rec_core::learning::fit;
use physio_rec_core::recommend::rank_items_blended;
use physio_rec_core::sim::simulate as run_simulation;
use physio_rec_core::{
    compute_ari, evaluate_policy, infer_conditions, init_weights as prior_weights, select_category,
    window, AriVector, ConditionVector, UserPreferences, WeightMatrix,
};
use serde::Serialize;

use crate::config::AppConfig;
use crate::error::{Error, Result};
use crate::formats::{parse_catalog, parse_preferences, parse_weights, weights_to_json};
use crate::fsio::{read_to_string, write_atomic};
use crate::sensor_log::parse_sensor_log;
use crate::trace::{parse_trace, write_trace};

#[derive(Debug, Serialize)]
pub struct PcOut {
    pub active: f64,
    pub relaxed: f64,
    pub tired: f64,
    pub drunk: f64,
    pub hungry: f64,
    pub stressed: f64,
}

impl From<&ConditionVector> for PcOut {
    fn from(pc: &ConditionVector) -> Self {
        let [active, relaxed, tired, drunk, hungry, stressed] = *pc.as_array();
        PcOut {
            active,
            relaxed,
            tired,
            drunk,
            hungry,
            stressed,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct AriOut {
    pub outdoors_recreation: f64,
    pub arts_entertainment: f64,
    pub food: f64,
    pub residence: f64,
    pub nightlife: f64,
}

impl From<&AriVector> for AriOut {
    fn from(a: &AriVector) -> Self {
        let [outdoors_recreation, arts_entertainment, food, residence, nightlife] = a.0;
        AriOut {
            outdoors_recreation,
            arts_entertainment,
            food,
            residence,
            nightlife,
        }
    }
}

#[derive(Debug, Serialize)]
struct ItemOut<'a> {
    id: &'a str,
    name: &'a str,
    category: &'a str,
    base_quality: f64,
    score: f64,
}

#[derive(Debug, Serialize)]
struct RecommendOut<'a> {
    pc: PcOut,
    ari: AriOut,
    category: &'a str,
    items: Vec<ItemOut<'a>>,
}

fn to_line<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("output serializes")
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

/// Condition vector at `now` for the sensor log at `log`, without history.
pub fn conditions_from_log(log: &Path, cfg: &AppConfig, now: i64) -> Result<ConditionVector> {
    let samples = parse_sensor_log(&read_to_string(log)?)?;
    let features = window(&samples, cfg.window()?, now)?;
    Ok(infer_conditions(&features, None, &cfg.inference_params())?)
}

pub fn load_weights(path: &Path, cfg: &AppConfig) -> Result<WeightMatrix> {
    if !path.exists() {
        return Err(Error::MissingWeights {
            path: path.to_path_buf(),
        });
    }
    parse_weights(&path_str(path), &read_to_string(path)?, cfg.w_max)
}

pub fn infer(log: &Path, cfg: &AppConfig, now: i64) -> Result<String> {
    let pc = conditions_from_log(log, cfg, now)?;
    Ok(to_line(&PcOut::from(&pc)))
}

/// Missing preference file means "no preferences"; the catalog is required.
pub fn recommend(log: &Path, cfg: &AppConfig, now: i64, k: usize) -> Result<String> {
    let w = load_weights(&cfg.weights_file(), cfg)?;
    let catalog_path = cfg.catalog_file();
    let catalog = parse_catalog(&path_str(&catalog_path), &read_to_string(&catalog_path)?)?;
    let prefs_path = cfg.preferences_file();
    let prefs = if prefs_path.exists() {
        parse_preferences(&path_str(&prefs_path), &read_to_string(&prefs_path)?)?
    } else {
        UserPreferences::new()
    };

    let pc = conditions_from_log(log, cfg, now)?;
    let ari = compute_ari(&pc, &w);
    let category = select_category(&ari)?;
    let ranked = rank_items_blended(category, &catalog, &prefs, k, cfg.blend_weight);
    let out = RecommendOut {
        pc: (&pc).into(),
        ari: (&ari).into(),
        category: category.as_str(),
        items: ranked
            .iter()
            .map(|r| ItemOut {
                id: &r.venue.id,
                name: &r.venue.name,
                category: r.venue.category.as_str(),
                base_quality: r.venue.base_quality,
                score: r.score,
            })
            .collect(),
    };
    Ok(to_line(&out))
}

pub fn simulate(cfg: &AppConfig, out: &Path) -> Result<String> {
    let steps = run_simulation(&cfg.sim_config()?, &cfg.inference_params(), cfg.window()?)?;
    write_atomic(out, write_trace(&steps).as_bytes())?;
    Ok(to_line(&serde_json::json!({
        "trace": path_str(out),
        "steps": steps.len(),
    })))
}

pub fn train(trace: &Path, cfg: &AppConfig, out: &Path) -> Result<String> {
    let steps = parse_trace(&path_str(trace), &read_to_string(trace)?)?;
    let events: Vec<_> = steps.iter().map(|s| s.feedback()).collect();
    let w = fit(&events, &cfg.sign_prior()?, &cfg.learning_params())?;
    write_atomic(out, weights_to_json(&w).as_bytes())?;
    Ok(to_line(&serde_json::json!({
        "weights": path_str(out),
        "events": events.len(),
    })))
}

/// Agreement between the learned matrix and the configured planted matrix
/// over every condition vector in the trace.
pub fn evaluate(trace: &Path, weights: &Path, cfg: &AppConfig) -> Result<String> {
    let steps = parse_trace(&path_str(trace), &read_to_string(trace)?)?;
    let learned = load_weights(weights, cfg)?;
    let truth = cfg.sim_config()?.w_true;
    let pcs: Vec<_> = steps.iter().map(|s| s.pc).collect();
    let agreement = evaluate_policy(&learned, &truth, &pcs)?;
    Ok(to_line(&serde_json::json!({ "agreement": agreement })))
}

pub fn init_weights(cfg: &AppConfig, out: &Path) -> Result<String> {
    let w = prior_weights(&cfg.sign_prior()?, cfg.init_magnitude)?.clamped(cfg.w_max);
    write_atomic(out, weights_to_json(&w).as_bytes())?;
    Ok(to_line(&serde_json::json!({ "weights": path_str(out) })))
}
