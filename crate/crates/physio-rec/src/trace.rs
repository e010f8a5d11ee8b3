//! Simulation traces as JSON Lines, one step per line:
//! `{"t": .., "pc": [6 numbers], "chosen": .., "samples": [..], "tourist": ..}`.

use physio_rec_core::sim::SimStep;
use physio_rec_core::{ActivityCategory, ConditionVector};
use serde::{Deserialize, Serialize};

use crate::error::{from_json, Error, Result};
use crate::sensor_log::{SampleIn, SampleOut};

#[derive(Serialize)]
struct StepOut<'a> {
    t: i64,
    pc: [f64; 6],
    chosen: &'a str,
    samples: Vec<SampleOut<'a>>,
    tourist: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StepIn {
    t: i64,
    pc: [f64; 6],
    chosen: String,
    samples: Vec<SampleIn>,
    tourist: usize,
}

pub fn write_trace(steps: &[SimStep]) -> String {
    let mut out = String::new();
    for s in steps {
        let line = StepOut {
            t: s.timestamp,
            pc: *s.pc.as_array(),
            chosen: s.chosen.as_str(),
            samples: s.samples.iter().map(SampleOut::from).collect(),
            tourist: s.tourist,
        };
        out.push_str(&serde_json::to_string(&line).expect("trace step serializes"));
        out.push('\n');
    }
    out
}

/// Parses a trace; `name` is used in error messages.
pub fn parse_trace(name: &str, text: &str) -> Result<Vec<SimStep>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let context = format!("{name} line {line}");
        let step: StepIn = from_json(&context, raw)?;
        let pc = ConditionVector::new(step.pc).map_err(|e| Error::schema(&context, "pc", e))?;
        let chosen: ActivityCategory = step.chosen.parse().map_err(|_| {
            Error::schema(&context, "chosen", format!("unknown category `{}`", step.chosen))
        })?;
        let samples = step
            .samples
            .into_iter()
            .map(|s| s.into_sample(line))
            .collect::<Result<Vec<_>>>()?;
        out.push(SimStep {
            tourist: step.tourist,
            timestamp: step.t,
            pc,
            samples,
            chosen,
        });
    }
    Ok(out)
}
