use core::ops::Index;

use crate::category::ActivityCategory;
use crate::condition::Condition;
use crate::error::CoreError;

/// Default magnitude bound for learned weights.
pub const DEFAULT_W_MAX: f64 = 10.0;

/// 6×5 condition-to-category weights. Rows follow [`Condition::ALL`],
/// columns follow [`ActivityCategory::ALL`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightMatrix([[f64; 5]; 6]);

impl WeightMatrix {
    pub const ZERO: WeightMatrix = WeightMatrix([[0.0; 5]; 6]);

    pub fn new(rows: [[f64; 5]; 6]) -> Result<Self, CoreError> {
        for row in &rows {
            for &v in row {
                if !v.is_finite() {
                    return Err(CoreError::OutOfRange {
                        field: "weight",
                        value: v,
                        expected: "finite",
                    });
                }
            }
        }
        Ok(WeightMatrix(rows))
    }

    /// Like [`WeightMatrix::new`] but also enforces `|w| <= w_max`.
    pub fn bounded(rows: [[f64; 5]; 6], w_max: f64) -> Result<Self, CoreError> {
        let w = Self::new(rows)?;
        if w.max_abs() > w_max {
            return Err(CoreError::OutOfRange {
                field: "weight",
                value: w.max_abs(),
                expected: "within [-w_max, w_max]",
            });
        }
        Ok(w)
    }

    pub fn from_fn(mut f: impl FnMut(Condition, ActivityCategory) -> f64) -> Result<Self, CoreError> {
        let mut rows = [[0.0; 5]; 6];
        for c in Condition::ALL {
            for a in ActivityCategory::ALL {
                rows[c.index()][a.index()] = f(c, a);
            }
        }
        Self::new(rows)
    }

    pub fn rows(&self) -> &[[f64; 5]; 6] {
        &self.0
    }

    pub fn get(&self, c: Condition, a: ActivityCategory) -> f64 {
        self.0[c.index()][a.index()]
    }

    pub fn scaled(&self, k: f64) -> Result<Self, CoreError> {
        Self::new(self.0.map(|row| row.map(|v| v * k)))
    }

    pub fn clamped(&self, w_max: f64) -> Self {
        WeightMatrix(self.0.map(|row| row.map(|v| v.clamp(-w_max, w_max))))
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .fold(0.0, |m, &v| m.max(libm::fabs(v)))
    }
}

impl Index<(Condition, ActivityCategory)> for WeightMatrix {
    type Output = f64;

    fn index(&self, (c, a): (Condition, ActivityCategory)) -> &f64 {
        &self.0[c.index()][a.index()]
    }
}
