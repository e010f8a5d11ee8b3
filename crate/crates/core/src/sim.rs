//! Synthetic tourists with a planted weight matrix.
//!
//! Each tourist follows mean-reverting, clipped Gaussian condition dynamics.
//! At every step the tourist picks a category from
//! `softmax(pc · W_true / temperature)`, and the simulator emits sensor
//! samples that the inference step maps back to the same condition vector.
//! Relaxed is kept at `1 - active` because that is how inference derives it.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::category::ActivityCategory;
use crate::condition::{Condition, ConditionVector};
use crate::error::{CoreError, Violation};
use crate::inference::{validate_params, InferenceParams};
use crate::learning::{init_weights, softmax, FeedbackEvent, SignPrior};
use crate::matrix::WeightMatrix;
use crate::recommend::{ari_from_features, compute_ari, select_category};
use crate::sensor::{Channel, SensorSample, WindowSpec, SLEEP_LOOKBACK_SECONDS};

/// Scale applied to the default sign prior to obtain the default planted matrix.
pub const DEFAULT_TRUE_SCALE: f64 = 2.0;

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub seed: u64,
    pub n_steps: usize,
    pub n_tourists: usize,
    /// Softmax temperature of the choice model.
    pub temperature: f64,
    /// Per-condition mean-reversion rate in `(0, 1]`.
    pub kappa: [f64; 6],
    /// Per-condition noise scale.
    pub sigma: [f64; 6],
    pub w_true: WeightMatrix,
    /// Seconds between consecutive steps of one tourist.
    pub step_seconds: i64,
    pub start_time: i64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            seed: 42,
            n_steps: 4000,
            n_tourists: 5,
            temperature: 0.5,
            kappa: [0.1; 6],
            sigma: [0.1; 6],
            w_true: init_weights(&SignPrior::default(), DEFAULT_TRUE_SCALE)
                .unwrap_or(WeightMatrix::ZERO),
            step_seconds: SLEEP_LOOKBACK_SECONDS,
            start_time: 1_600_000_000,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut push = |field: &'static str, ok: bool, message: &str| {
            if !ok {
                out.push(Violation {
                    field,
                    message: message.into(),
                });
            }
        };
        push("sim.n_steps", self.n_steps >= 1, "must be >= 1");
        push("sim.n_tourists", self.n_tourists >= 1, "must be >= 1");
        push(
            "sim.temperature",
            self.temperature.is_finite() && self.temperature > 0.0,
            "must be finite and > 0",
        );
        push(
            "sim.kappa",
            self.kappa.iter().all(|k| *k > 0.0 && *k <= 1.0),
            "every rate must lie in (0, 1]",
        );
        push(
            "sim.sigma",
            self.sigma.iter().all(|s| s.is_finite() && *s >= 0.0),
            "every noise scale must be finite and >= 0",
        );
        push("sim.step_seconds", self.step_seconds > 0, "must be > 0");
        out
    }

    fn rng(&self, tourist_index: usize, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(2 * tourist_index as u64 + stream);
        rng
    }

    /// Generator for a tourist's condition dynamics.
    pub fn trajectory_rng(&self, tourist_index: usize) -> ChaCha8Rng {
        self.rng(tourist_index, 0)
    }

    /// Generator for a tourist's category choices.
    pub fn choice_rng(&self, tourist_index: usize) -> ChaCha8Rng {
        self.rng(tourist_index, 1)
    }

    /// Timestamp of step `k` of any tourist.
    pub fn step_time(&self, k: usize) -> i64 {
        self.start_time + k as i64 * self.step_seconds
    }
}

fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    // Box-Muller; 1 - u keeps the log argument in (0, 1]
    let u1 = 1.0 - rng.random::<f64>();
    let u2 = rng.random::<f64>();
    libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(2.0 * core::f64::consts::PI * u2)
}

fn couple_relaxed(v: &mut [f64; 6]) {
    v[Condition::Relaxed.index()] = 1.0 - v[Condition::Active.index()];
}

/// Condition trajectory of one tourist, deterministic in `(seed, tourist_index)`.
pub fn generate_trajectory(
    cfg: &SimConfig,
    tourist_index: usize,
) -> Result<Vec<ConditionVector>, CoreError> {
    if tourist_index >= cfg.n_tourists {
        return Err(CoreError::TouristIndex {
            index: tourist_index,
            n_tourists: cfg.n_tourists,
        });
    }
    CoreError::from_violations(cfg.validate())?;

    let mut rng = cfg.trajectory_rng(tourist_index);
    let mut state = [0.0; 6];
    for v in state.iter_mut() {
        *v = rng.random::<f64>();
    }
    couple_relaxed(&mut state);

    let mut out = Vec::with_capacity(cfg.n_steps);
    out.push(ConditionVector::saturating(state));
    while out.len() < cfg.n_steps {
        for ((x, kappa), sigma) in state.iter_mut().zip(cfg.kappa).zip(cfg.sigma) {
            let xi = standard_normal(&mut rng);
            *x = (*x + kappa * (0.5 - *x) + sigma * xi).clamp(0.0, 1.0);
        }
        couple_relaxed(&mut state);
        out.push(ConditionVector::saturating(state));
    }
    Ok(out)
}

/// Draws a category from `softmax(pc · w_true / temperature)`.
pub fn sample_choice<R: Rng + ?Sized>(
    pc: &ConditionVector,
    w_true: &WeightMatrix,
    temperature: f64,
    rng: &mut R,
) -> ActivityCategory {
    let logits = ari_from_features(pc.as_array(), w_true).map(|z| z / temperature);
    let q = softmax(&logits);
    let u = rng.random::<f64>();
    let mut cum = 0.0;
    let mut fallback = ActivityCategory::OutdoorsRecreation;
    for c in ActivityCategory::ALL {
        let p = q[c.index()];
        if p > 0.0 {
            fallback = c;
        }
        cum += p;
        if u < cum {
            return c;
        }
    }
    fallback
}

/// Sensor samples for each step of a trajectory, grouped by step.
///
/// Step `k` sits at `cfg.step_time(k)`. Exact inversion needs
/// `step_seconds >= 86400` (the sleep horizon) and
/// `step_seconds >= gesture_gap_max`; shorter steps still produce valid
/// samples but re-inference of tiredness and hunger becomes approximate.
pub fn emit_sensor_steps(
    trajectory: &[ConditionVector],
    params: &InferenceParams,
    window: WindowSpec,
    cfg: &SimConfig,
) -> Result<Vec<Vec<SensorSample>>, CoreError> {
    CoreError::from_violations(validate_params(params))?;
    CoreError::from_violations(cfg.validate())?;

    let lerp = |c: f64, lo: f64, hi: f64| lo + c * (hi - lo);
    let mut sleep_log: Vec<(i64, f64)> = Vec::new();
    let mut steps = Vec::with_capacity(trajectory.len());

    for (k, pc) in trajectory.iter().enumerate() {
        let t = cfg.step_time(k);
        let a = pc[Condition::Active];
        let mut samples = Vec::with_capacity(7);

        let hungry_gap = libm::round(pc[Condition::Hungry] * params.gesture_gap_max) as i64;
        let gesture_t = if hungry_gap < window.duration() {
            t
        } else {
            t - hungry_gap
        };
        samples.push(SensorSample::new(gesture_t, Channel::FeedingGesture, 1.0)?);

        samples.push(SensorSample::new(
            t,
            Channel::HeartRate,
            lerp(a, params.hr_low, params.hr_high).clamp(20.0, 250.0),
        )?);
        samples.push(SensorSample::new(
            t,
            Channel::AccelMagnitude,
            lerp(a, params.accel_low, params.accel_high).max(0.0),
        )?);
        samples.push(SensorSample::new(
            t,
            Channel::SkinConductance,
            lerp(pc[Condition::Stressed], params.sc_low, params.sc_high).max(0.0),
        )?);
        samples.push(SensorSample::new(
            t,
            Channel::AlcoholProxy,
            lerp(pc[Condition::Drunk], params.alcohol_low, params.alcohol_high).clamp(0.0, 1.0),
        )?);

        let wanted = (1.0 - pc[Condition::Tired]) * params.sleep_target;
        sleep_log.retain(|(ts, _)| *ts > t - SLEEP_LOOKBACK_SECONDS);
        let already: f64 = sleep_log.iter().map(|(_, v)| v).sum();
        let sleep = (wanted - already).max(0.0);
        sleep_log.push((t, sleep));
        samples.push(SensorSample::new(t, Channel::SleepInterval, sleep)?);

        samples.sort_by_key(|s| s.timestamp);
        steps.push(samples);
    }
    Ok(steps)
}

/// Flat, time-sorted sensor log for a trajectory. See [`emit_sensor_steps`].
pub fn emit_sensor_log(
    trajectory: &[ConditionVector],
    params: &InferenceParams,
    window: WindowSpec,
    cfg: &SimConfig,
) -> Result<Vec<SensorSample>, CoreError> {
    let mut out: Vec<SensorSample> = emit_sensor_steps(trajectory, params, window, cfg)?
        .into_iter()
        .flatten()
        .collect();
    out.sort_by_key(|s| s.timestamp);
    Ok(out)
}

/// One simulated step of one tourist.
#[derive(Debug, Clone, PartialEq)]
pub struct SimStep {
    pub tourist: usize,
    pub timestamp: i64,
    pub pc: ConditionVector,
    pub samples: Vec<SensorSample>,
    pub chosen: ActivityCategory,
}

impl SimStep {
    pub fn feedback(&self) -> FeedbackEvent {
        FeedbackEvent {
            pc: self.pc,
            chosen: self.chosen,
            timestamp: self.timestamp,
        }
    }
}

/// Full trace of one tourist.
pub fn simulate_tourist(
    cfg: &SimConfig,
    tourist_index: usize,
    params: &InferenceParams,
    window: WindowSpec,
) -> Result<Vec<SimStep>, CoreError> {
    let trajectory = generate_trajectory(cfg, tourist_index)?;
    let samples = emit_sensor_steps(&trajectory, params, window, cfg)?;
    let mut rng = cfg.choice_rng(tourist_index);
    Ok(trajectory
        .into_iter()
        .zip(samples)
        .enumerate()
        .map(|(k, (pc, samples))| SimStep {
            tourist: tourist_index,
            timestamp: cfg.step_time(k),
            pc,
            samples,
            chosen: sample_choice(&pc, &cfg.w_true, cfg.temperature, &mut rng),
        })
        .collect())
}

/// Traces of every tourist, concatenated in tourist order.
pub fn simulate(
    cfg: &SimConfig,
    params: &InferenceParams,
    window: WindowSpec,
) -> Result<Vec<SimStep>, CoreError> {
    let mut out = Vec::with_capacity(cfg.n_steps * cfg.n_tourists);
    for i in 0..cfg.n_tourists {
        out.extend(simulate_tourist(cfg, i, params, window)?);
    }
    Ok(out)
}

/// Fraction of `test_pcs` on which both matrices recommend the same category.
pub fn evaluate_policy(
    w_learned: &WeightMatrix,
    w_true: &WeightMatrix,
    test_pcs: &[ConditionVector],
) -> Result<f64, CoreError> {
    if test_pcs.is_empty() {
        return Err(CoreError::Empty("test condition vectors"));
    }
    let mut agree = 0usize;
    for pc in test_pcs {
        let a = select_category(&compute_ari(pc, w_learned))?;
        let b = select_category(&compute_ari(pc, w_true))?;
        if a == b {
            agree += 1;
        }
    }
    Ok(agree as f64 / test_pcs.len() as f64)
}
