//! Learning the condition-to-category weight matrix from observed choices.
//!
//! The model is multinomial logistic regression without intercept: the
//! probability of choosing category `j` is `softmax(pc · W)[j]`, so the
//! learned object is exactly the matrix used for scoring. Training is plain
//! SGD with L2 shrinkage and a hard magnitude clamp.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::category::ActivityCategory;
use crate::condition::{Condition, ConditionVector};
use crate::error::CoreError;
use crate::matrix::{WeightMatrix, DEFAULT_W_MAX};
use crate::recommend::ari_from_features;

/// Magnitude of the prior-shaped starting point used by [`fit`].
pub const FIT_INIT_MAGNITUDE: f64 = 0.1;

/// Qualitative sign of each condition → category influence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignPrior([[i8; 5]; 6]);

impl SignPrior {
    pub fn new(rows: [[i8; 5]; 6]) -> Result<Self, CoreError> {
        if let Some(&bad) = rows.iter().flatten().find(|v| !matches!(v, -1..=1)) {
            return Err(CoreError::OutOfRange {
                field: "sign prior entry",
                value: f64::from(bad),
                expected: "one of -1, 0, +1",
            });
        }
        Ok(SignPrior(rows))
    }

    pub fn rows(&self) -> &[[i8; 5]; 6] {
        &self.0
    }

    pub fn get(&self, c: Condition, a: ActivityCategory) -> i8 {
        self.0[c.index()][a.index()]
    }
}

impl Default for SignPrior {
    /// Columns: outdoors, arts, food, residence, nightlife.
    fn default() -> Self {
        SignPrior([
            [1, 0, 0, 0, 1],    // active
            [0, 1, 0, 0, 0],    // relaxed
            [-1, 0, 0, 1, -1],  // tired
            [-1, 0, 0, 1, 0],   // drunk
            [0, 0, 1, 0, 0],    // hungry
            [1, 0, 0, 1, -1],   // stressed
        ])
    }
}

/// One observed choice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeedbackEvent {
    pub pc: ConditionVector,
    pub chosen: ActivityCategory,
    pub timestamp: i64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LearningParams {
    pub learning_rate: f64,
    pub epochs: usize,
    pub l2: f64,
    pub seed: u64,
    pub w_max: f64,
}

impl Default for LearningParams {
    fn default() -> Self {
        LearningParams {
            learning_rate: 0.1,
            epochs: 20,
            l2: 1e-4,
            seed: 0,
            w_max: DEFAULT_W_MAX,
        }
    }
}

impl LearningParams {
    pub fn validate(&self) -> Result<(), CoreError> {
        let checks = [
            ("learning_rate", self.learning_rate, self.learning_rate > 0.0, "> 0"),
            ("epochs", self.epochs as f64, self.epochs >= 1, ">= 1"),
            ("l2", self.l2, self.l2 >= 0.0, ">= 0"),
            ("w_max", self.w_max, self.w_max > 0.0, "> 0"),
        ];
        for (field, value, ok, expected) in checks {
            if !(ok && value.is_finite()) {
                return Err(CoreError::OutOfRange {
                    field,
                    value,
                    expected,
                });
            }
        }
        Ok(())
    }
}

pub fn init_weights(prior: &SignPrior, magnitude: f64) -> Result<WeightMatrix, CoreError> {
    WeightMatrix::from_fn(|c, a| f64::from(prior.get(c, a)) * magnitude)
}

/// Numerically stable softmax.
pub fn softmax(logits: &[f64; 5]) -> [f64; 5] {
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps = logits.map(|z| libm::exp(z - max));
    let total: f64 = exps.iter().sum();
    exps.map(|e| e / total)
}

/// Choice probabilities `softmax(pc · W)`.
pub fn choice_probabilities(w: &WeightMatrix, pc: &ConditionVector) -> [f64; 5] {
    softmax(&ari_from_features(pc.as_array(), w))
}

/// `log P(chosen | pc, W)`.
pub fn log_likelihood(w: &WeightMatrix, pc: &ConditionVector, chosen: ActivityCategory) -> f64 {
    let z = ari_from_features(pc.as_array(), w);
    let max = z.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lse = max + libm::log(z.iter().map(|v| libm::exp(v - max)).sum::<f64>());
    z[chosen.index()] - lse
}

/// Gradient of [`log_likelihood`] with respect to every weight:
/// `pc[i] * (y[j] - q[j])`.
pub fn log_likelihood_gradient(
    w: &WeightMatrix,
    pc: &ConditionVector,
    chosen: ActivityCategory,
) -> [[f64; 5]; 6] {
    let q = choice_probabilities(w, pc);
    let mut residual = q.map(|p| -p);
    residual[chosen.index()] += 1.0;
    pc.as_array().map(|x| residual.map(|r| x * r))
}

/// One SGD ascent step on the log-likelihood of `event`, with L2 shrinkage,
/// then clamps to `[-w_max, w_max]`.
pub fn update(w: &WeightMatrix, event: &FeedbackEvent, p: &LearningParams) -> WeightMatrix {
    let grad = log_likelihood_gradient(w, &event.pc, event.chosen);
    let mut rows = *w.rows();
    for (row, g_row) in rows.iter_mut().zip(grad.iter()) {
        for (v, g) in row.iter_mut().zip(g_row.iter()) {
            *v += p.learning_rate * g - p.learning_rate * p.l2 * *v;
            *v = v.clamp(-p.w_max, p.w_max);
        }
    }
    // every term above is finite for finite inputs
    WeightMatrix::new(rows).unwrap_or(*w)
}

/// Trains a weight matrix on `events`, starting from `prior` scaled by
/// [`FIT_INIT_MAGNITUDE`] and reshuffling the events every epoch.
pub fn fit(
    events: &[FeedbackEvent],
    prior: &SignPrior,
    p: &LearningParams,
) -> Result<WeightMatrix, CoreError> {
    if events.is_empty() {
        return Err(CoreError::Empty("feedback events"));
    }
    p.validate()?;
    let mut w = init_weights(prior, FIT_INIT_MAGNITUDE)?.clamped(p.w_max);
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut order: Vec<usize> = (0..events.len()).collect();
    for _ in 0..p.epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            w = update(&w, &events[i], p);
        }
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recommend::{compute_ari, select_category};
    use alloc::vec;

    fn pc(v: [f64; 6]) -> ConditionVector {
        ConditionVector::new(v).unwrap()
    }

    #[test]
    fn zero_magnitude_is_zero_matrix() {
        assert_eq!(init_weights(&SignPrior::default(), 0.0).unwrap(), WeightMatrix::ZERO);
    }

    #[test]
    fn init_scales_prior() {
        let w = init_weights(&SignPrior::default(), 0.5).unwrap();
        assert_eq!(w.get(Condition::Active, ActivityCategory::OutdoorsRecreation), 0.5);
        assert_eq!(w.get(Condition::Tired, ActivityCategory::Nightlife), -0.5);
    }

    #[test]
    fn prior_rejects_bad_entries() {
        let mut rows = [[0i8; 5]; 6];
        rows[1][1] = 2;
        assert!(SignPrior::new(rows).is_err());
    }

    #[test]
    fn zero_pc_only_shrinks() {
        let w = init_weights(&SignPrior::default(), 1.0).unwrap();
        let e = FeedbackEvent {
            pc: ConditionVector::ZERO,
            chosen: ActivityCategory::Food,
            timestamp: 0,
        };
        let no_l2 = LearningParams {
            l2: 0.0,
            ..Default::default()
        };
        assert_eq!(update(&w, &e, &no_l2), w);
        let p = LearningParams {
            l2: 0.5,
            ..Default::default()
        };
        let shrunk = update(&w, &e, &p);
        assert_eq!(shrunk, w.scaled(1.0 - 0.1 * 0.5).unwrap());
    }

    #[test]
    fn uniform_weights_move_toward_choice() {
        let w = WeightMatrix::new([[0.3; 5]; 6]).unwrap();
        let x = pc([0.2, 0.8, 0.5, 0.0, 1.0, 0.4]);
        let p = LearningParams {
            l2: 0.0,
            ..Default::default()
        };
        let e = FeedbackEvent {
            pc: x,
            chosen: ActivityCategory::Food,
            timestamp: 0,
        };
        let w2 = update(&w, &e, &p);
        for c in Condition::ALL {
            let xi = x.get(c);
            for a in ActivityCategory::ALL {
                let delta = w2.get(c, a) - w.get(c, a);
                // q is uniform 0.2
                let expected = if a == ActivityCategory::Food {
                    0.1 * xi * 0.8
                } else {
                    -0.1 * xi * 0.2
                };
                assert!((delta - expected).abs() < 1e-15, "{c} {a}: {delta} vs {expected}");
            }
        }
    }

    #[test]
    fn clamp_holds() {
        let w = WeightMatrix::new([[9.99; 5]; 6]).unwrap();
        let e = FeedbackEvent {
            pc: pc([1.0; 6]),
            chosen: ActivityCategory::Nightlife,
            timestamp: 0,
        };
        let p = LearningParams {
            learning_rate: 10.0,
            l2: 0.0,
            ..Default::default()
        };
        let w2 = update(&w, &e, &p);
        assert!(w2.max_abs() <= 10.0);
        assert_eq!(w2.get(Condition::Active, ActivityCategory::Nightlife), 10.0);
    }

    #[test]
    fn fit_requires_events() {
        assert_eq!(
            fit(&[], &SignPrior::default(), &LearningParams::default()),
            Err(CoreError::Empty("feedback events"))
        );
    }

    #[test]
    fn fit_converges_on_repeated_event() {
        let x = pc([0.9, 0.1, 0.2, 0.0, 0.1, 0.3]);
        let events = vec![
            FeedbackEvent {
                pc: x,
                chosen: ActivityCategory::Food,
                timestamp: 0,
            };
            50
        ];
        let w = fit(&events, &SignPrior::default(), &LearningParams::default()).unwrap();
        assert_eq!(select_category(&compute_ari(&x, &w)), Ok(ActivityCategory::Food));
    }

    #[test]
    fn fit_is_deterministic() {
        let events: Vec<_> = (0..40)
            .map(|i| FeedbackEvent {
                pc: pc([(i % 7) as f64 / 7.0, 0.5, (i % 3) as f64 / 3.0, 0.1, 0.2, 0.9]),
                chosen: ActivityCategory::ALL[i % 5],
                timestamp: i as i64,
            })
            .collect();
        let p = LearningParams {
            seed: 7,
            ..Default::default()
        };
        let a = fit(&events, &SignPrior::default(), &p).unwrap();
        let b = fit(&events, &SignPrior::default(), &p).unwrap();
        for (x, y) in a.rows().iter().flatten().zip(b.rows().iter().flatten()) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
    }

    #[test]
    fn softmax_sums_to_one() {
        let q = softmax(&[1000.0, 0.0, -1000.0, 3.0, 3.0]);
        assert!((q.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert_eq!(q[0], 1.0);
    }
}
