//! Sensor logs as JSON Lines: one `{"t": <int>, "ch": <name>, "v": <number>}`
//! object per line.

use physio_rec_core::sensor::sort_samples;
use physio_rec_core::{Channel, SensorSample};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct SampleIn {
    t: i64,
    ch: String,
    v: f64,
}

#[derive(Debug, Serialize)]
pub(crate) struct SampleOut<'a> {
    t: i64,
    ch: &'a str,
    v: f64,
}

impl SampleIn {
    pub(crate) fn into_sample(self, line: usize) -> Result<SensorSample> {
        let channel: Channel = self.ch.parse().map_err(|_| Error::Line {
            line,
            message: format!("unknown channel `{}`", self.ch),
        })?;
        SensorSample::new(self.t, channel, self.v).map_err(|source| Error::Sample { line, source })
    }
}

impl<'a> From<&'a SensorSample> for SampleOut<'a> {
    fn from(s: &'a SensorSample) -> Self {
        SampleOut {
            t: s.timestamp,
            ch: s.channel.as_str(),
            v: s.value,
        }
    }
}

/// Parses and validates a sensor log, returning samples sorted by timestamp
/// (stable for equal timestamps). Blank lines are skipped.
pub fn parse_sensor_log(text: &str) -> Result<Vec<SensorSample>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let rec: SampleIn = serde_json::from_str(raw).map_err(|e| Error::Line {
            line,
            message: e.to_string(),
        })?;
        out.push(rec.into_sample(line)?);
    }
    sort_samples(&mut out);
    Ok(out)
}

pub fn write_sensor_log(samples: &[SensorSample]) -> String {
    let mut out = String::new();
    for s in samples {
        // serializing a plain struct of numbers and strings cannot fail
        out.push_str(&serde_json::to_string(&SampleOut::from(s)).expect("sample serializes"));
        out.push('\n');
    }
    out
}
