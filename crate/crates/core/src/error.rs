use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::category::ActivityCategory;
use crate::sensor::Channel;

/// A single violated parameter invariant.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub field: &'static str,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

/// Wrapper so a list of violations can be printed as one message.
#[derive(Debug, Clone, PartialEq)]
pub struct Violations(pub Vec<Violation>);

impl fmt::Display for Violations {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CoreError {
    #[error("{channel} value {value} violates bound {bound}")]
    SampleOutOfRange {
        channel: Channel,
        value: f64,
        bound: &'static str,
    },
    #[error("samples not sorted by timestamp at index {index}")]
    Unsorted { index: usize },
    #[error("{field} = {value} is out of range ({expected})")]
    OutOfRange {
        field: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error("invalid configuration: {0}")]
    InvalidParams(Violations),
    #[error("score for {0} is NaN")]
    NanScore(ActivityCategory),
    #[error("{0} must not be empty")]
    Empty(&'static str),
    #[error("tourist index {index} out of range for {n_tourists} tourists")]
    TouristIndex { index: usize, n_tourists: usize },
}

impl CoreError {
    pub(crate) fn from_violations(v: Vec<Violation>) -> Result<(), CoreError> {
        if v.is_empty() {
            Ok(())
        } else {
            Err(CoreError::InvalidParams(Violations(v)))
        }
    }
}
