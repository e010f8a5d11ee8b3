//! Application configuration: one JSON file, every field optional.
//!
//! ```json
//! {
//!   "inference": { "hr_low": 60, "hr_high": 180, "smoothing": 0.3 },
//!   "window_seconds": 900,
//!   "learning": { "learning_rate": 0.1, "epochs": 20, "l2": 0.0001, "seed": 0 },
//!   "trigger": { "delta_threshold": 0.2, "cooldown": 3600 },
//!   "sim": { "seed": 42, "n_steps": 4000, "n_tourists": 5, "temperature": 0.5 },
//!   "catalog_path": "catalog.json",
//!   "weights_path": "weights.json"
//! }
//! ```
//!
//! Relative paths resolve against the directory holding the config file.

use std::path::{Path, PathBuf};

use physio_rec_core::matrix::DEFAULT_W_MAX;
use physio_rec_core::recommend::DEFAULT_QUALITY_BLEND;
use physio_rec_core::sim::DEFAULT_TRUE_SCALE;
use physio_rec_core::{
    init_weights, validate_params, InferenceParams, LearningParams, SignPrior, SimConfig,
    TriggerParams, WindowSpec,
};
use serde::{Deserialize, Serialize};

use crate::error::{from_json, Error, Result};
use crate::formats::MatrixDoc;
use crate::fsio;

/// Environment variable consulted when no `--config` is given.
pub const CONFIG_ENV: &str = "PHYSIO_REC_CONFIG";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InferenceSection {
    pub hr_low: f64,
    pub hr_high: f64,
    pub accel_low: f64,
    pub accel_high: f64,
    pub active_mix: f64,
    pub sleep_target: f64,
    pub gesture_gap_max: f64,
    pub alcohol_low: f64,
    pub alcohol_high: f64,
    pub sc_low: f64,
    pub sc_high: f64,
    pub smoothing: f64,
}

impl Default for InferenceSection {
    fn default() -> Self {
        let p = InferenceParams::default();
        InferenceSection {
            hr_low: p.hr_low,
            hr_high: p.hr_high,
            accel_low: p.accel_low,
            accel_high: p.accel_high,
            active_mix: p.active_mix,
            sleep_target: p.sleep_target,
            gesture_gap_max: p.gesture_gap_max,
            alcohol_low: p.alcohol_low,
            alcohol_high: p.alcohol_high,
            sc_low: p.sc_low,
            sc_high: p.sc_high,
            smoothing: p.smoothing,
        }
    }
}

impl From<&InferenceSection> for InferenceParams {
    fn from(s: &InferenceSection) -> Self {
        InferenceParams {
            hr_low: s.hr_low,
            hr_high: s.hr_high,
            accel_low: s.accel_low,
            accel_high: s.accel_high,
            active_mix: s.active_mix,
            sleep_target: s.sleep_target,
            gesture_gap_max: s.gesture_gap_max,
            alcohol_low: s.alcohol_low,
            alcohol_high: s.alcohol_high,
            sc_low: s.sc_low,
            sc_high: s.sc_high,
            smoothing: s.smoothing,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LearningSection {
    pub learning_rate: f64,
    pub epochs: usize,
    pub l2: f64,
    pub seed: u64,
}

impl Default for LearningSection {
    fn default() -> Self {
        let p = LearningParams::default();
        LearningSection {
            learning_rate: p.learning_rate,
            epochs: p.epochs,
            l2: p.l2,
            seed: p.seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TriggerSection {
    pub delta_threshold: f64,
    pub cooldown: u64,
}

impl Default for TriggerSection {
    fn default() -> Self {
        let p = TriggerParams::default();
        TriggerSection {
            delta_threshold: p.delta_threshold,
            cooldown: p.cooldown,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimSection {
    pub seed: u64,
    pub n_steps: usize,
    pub n_tourists: usize,
    pub temperature: f64,
    pub kappa: [f64; 6],
    pub sigma: [f64; 6],
    /// Planted matrix; defaults to the sign prior scaled by `true_scale`.
    pub w_true: Option<MatrixDoc<f64>>,
    pub true_scale: f64,
    pub step_seconds: i64,
    pub start_time: i64,
}

impl Default for SimSection {
    fn default() -> Self {
        let c = SimConfig::default();
        SimSection {
            seed: c.seed,
            n_steps: c.n_steps,
            n_tourists: c.n_tourists,
            temperature: c.temperature,
            kappa: c.kappa,
            sigma: c.sigma,
            w_true: None,
            true_scale: DEFAULT_TRUE_SCALE,
            step_seconds: c.step_seconds,
            start_time: c.start_time,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AppConfig {
    pub inference: InferenceSection,
    pub window_seconds: i64,
    pub learning: LearningSection,
    pub trigger: TriggerSection,
    pub sim: SimSection,
    /// Overrides the built-in sign prior.
    pub sign_prior: Option<MatrixDoc<i64>>,
    /// Scale used by `init-weights`.
    pub init_magnitude: f64,
    pub catalog_path: String,
    pub preferences_path: String,
    pub weights_path: String,
    /// Weight of catalog quality against user affinity when ranking venues.
    pub blend_weight: f64,
    pub w_max: f64,
    #[serde(skip)]
    base_dir: PathBuf,
}

impl Default for AppConfig {
    fn default() -> Self {
        AppConfig {
            inference: InferenceSection::default(),
            window_seconds: WindowSpec::DEFAULT_SECONDS,
            learning: LearningSection::default(),
            trigger: TriggerSection::default(),
            sim: SimSection::default(),
            sign_prior: None,
            init_magnitude: 1.0,
            catalog_path: "catalog.json".into(),
            preferences_path: "preferences.json".into(),
            weights_path: "weights.json".into(),
            blend_weight: DEFAULT_QUALITY_BLEND,
            w_max: DEFAULT_W_MAX,
            base_dir: PathBuf::from("."),
        }
    }
}

const CONTEXT: &str = "config";

impl AppConfig {
    /// Loads and validates a config file, or returns validated defaults when
    /// `path` is `None`.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            let cfg = AppConfig::default();
            cfg.validate()?;
            return Ok(cfg);
        };
        let text = fsio::read_to_string(path)?;
        let mut cfg = Self::parse(&text)?;
        cfg.base_dir = path
            .parent()
            .filter(|p| !p.as_os_str().is_empty())
            .map(Path::to_path_buf)
            .unwrap_or_else(|| PathBuf::from("."));
        Ok(cfg)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let cfg: AppConfig = from_json(CONTEXT, text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(v) = validate_params(&self.inference_params()).into_iter().next() {
            return Err(Error::schema(CONTEXT, format!("inference.{}", v.field), v.message));
        }
        self.window()?;
        self.learning_params()
            .validate()
            .map_err(|e| Error::schema(CONTEXT, "learning", e))?;
        self.trigger_params()
            .validate()
            .map_err(|e| Error::schema(CONTEXT, "trigger", e))?;
        let sim = self.sim_config()?;
        if let Some(v) = sim.validate().into_iter().next() {
            return Err(Error::schema(CONTEXT, v.field, v.message));
        }
        self.sign_prior()?;
        if !(0.0..=1.0).contains(&self.blend_weight) {
            return Err(Error::schema(CONTEXT, "blend_weight", "must lie in [0, 1]"));
        }
        if !(self.w_max.is_finite() && self.w_max > 0.0) {
            return Err(Error::schema(CONTEXT, "w_max", "must be finite and > 0"));
        }
        if !(self.init_magnitude.is_finite() && self.init_magnitude >= 0.0) {
            return Err(Error::schema(CONTEXT, "init_magnitude", "must be finite and >= 0"));
        }
        for (field, p) in [
            ("catalog_path", &self.catalog_path),
            ("preferences_path", &self.preferences_path),
            ("weights_path", &self.weights_path),
        ] {
            if p.is_empty() {
                return Err(Error::schema(CONTEXT, field, "must not be empty"));
            }
        }
        Ok(())
    }

    pub fn inference_params(&self) -> InferenceParams {
        (&self.inference).into()
    }

    pub fn window(&self) -> Result<WindowSpec> {
        WindowSpec::new(self.window_seconds).map_err(|e| Error::schema(CONTEXT, "window_seconds", e))
    }

    pub fn learning_params(&self) -> LearningParams {
        LearningParams {
            learning_rate: self.learning.learning_rate,
            epochs: self.learning.epochs,
            l2: self.learning.l2,
            seed: self.learning.seed,
            w_max: self.w_max,
        }
    }

    pub fn trigger_params(&self) -> TriggerParams {
        TriggerParams {
            delta_threshold: self.trigger.delta_threshold,
            cooldown: self.trigger.cooldown,
        }
    }

    pub fn sign_prior(&self) -> Result<SignPrior> {
        match &self.sign_prior {
            Some(doc) => doc.to_prior("config.sign_prior"),
            None => Ok(SignPrior::default()),
        }
    }

    pub fn sim_config(&self) -> Result<SimConfig> {
        let s = &self.sim;
        let w_true = match &s.w_true {
            Some(doc) => doc.to_weights("config.sim.w_true", self.w_max)?,
            None => init_weights(&self.sign_prior()?, s.true_scale)
                .map_err(|e| Error::schema(CONTEXT, "sim.true_scale", e))?,
        };
        Ok(SimConfig {
            seed: s.seed,
            n_steps: s.n_steps,
            n_tourists: s.n_tourists,
            temperature: s.temperature,
            kappa: s.kappa,
            sigma: s.sigma,
            w_true,
            step_seconds: s.step_seconds,
            start_time: s.start_time,
        })
    }

    pub fn resolve(&self, p: &str) -> PathBuf {
        let p = Path::new(p);
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    pub fn catalog_file(&self) -> PathBuf {
        self.resolve(&self.catalog_path)
    }

    pub fn preferences_file(&self) -> PathBuf {
        self.resolve(&self.preferences_path)
    }

    pub fn weights_file(&self) -> PathBuf {
        self.resolve(&self.weights_path)
    }
}
