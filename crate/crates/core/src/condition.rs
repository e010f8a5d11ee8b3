use core::fmt;
use core::ops::Index;

use crate::error::CoreError;

/// The six physiological conditions in canonical (row) order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    Active,
    Relaxed,
    Tired,
    Drunk,
    Hungry,
    Stressed,
}

impl Condition {
    pub const ALL: [Condition; 6] = [
        Condition::Active,
        Condition::Relaxed,
        Condition::Tired,
        Condition::Drunk,
        Condition::Hungry,
        Condition::Stressed,
    ];

    pub const fn index(self) -> usize {
        self as usize
    }

    pub const fn as_str(self) -> &'static str {
        match self {
            Condition::Active => "active",
            Condition::Relaxed => "relaxed",
            Condition::Tired => "tired",
            Condition::Drunk => "drunk",
            Condition::Hungry => "hungry",
            Condition::Stressed => "stressed",
        }
    }

    /// One-letter row label used in weight-matrix files.
    pub const fn short(self) -> &'static str {
        match self {
            Condition::Active => "a",
            Condition::Relaxed => "r",
            Condition::Tired => "t",
            Condition::Drunk => "d",
            Condition::Hungry => "h",
            Condition::Stressed => "s",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Normalized physiological condition scores, every component in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionVector([f64; 6]);

impl ConditionVector {
    pub const ZERO: ConditionVector = ConditionVector([0.0; 6]);

    pub fn new(values: [f64; 6]) -> Result<Self, CoreError> {
        for (c, v) in Condition::ALL.iter().zip(values) {
            if !v.is_finite() || !(0.0..=1.0).contains(&v) {
                return Err(CoreError::OutOfRange {
                    field: c.as_str(),
                    value: v,
                    expected: "finite and within [0, 1]",
                });
            }
        }
        Ok(ConditionVector(values))
    }

    /// Clamps every component into `[0, 1]`; non-finite values become 0.
    pub fn saturating(values: [f64; 6]) -> Self {
        ConditionVector(values.map(|v| if v.is_finite() { v.clamp(0.0, 1.0) } else { 0.0 }))
    }

    pub fn basis(c: Condition) -> Self {
        let mut v = [0.0; 6];
        v[c.index()] = 1.0;
        ConditionVector(v)
    }

    pub fn get(&self, c: Condition) -> f64 {
        self.0[c.index()]
    }

    pub fn as_array(&self) -> &[f64; 6] {
        &self.0
    }

    /// Largest absolute componentwise difference.
    pub fn linf_distance(&self, other: &ConditionVector) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| libm::fabs(a - b))
            .fold(0.0, f64::max)
    }
}

impl Index<Condition> for ConditionVector {
    type Output = f64;

    fn index(&self, c: Condition) -> &f64 {
        &self.0[c.index()]
    }
}
