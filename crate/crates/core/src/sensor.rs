//! Sensor samples and time-window aggregation.

use core::fmt;
use core::str::FromStr;

use crate::error::CoreError;

/// Heart-rate plausibility bounds in beats per minute.
pub const HEART_RATE_MIN: f64 = 20.0;
pub const HEART_RATE_MAX: f64 = 250.0;

/// Horizon for the sleep total that drives the tiredness score.
pub const SLEEP_LOOKBACK_SECONDS: i64 = 86_400;

/// Wearable sensor channels. Declaration order is the canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Channel {
    /// beats/min
    HeartRate,
    /// m/s², gravity removed
    AccelMagnitude,
    /// microsiemens
    SkinConductance,
    /// 1 per detected feeding gesture
    FeedingGesture,
    /// seconds of sleep ending at the sample timestamp
    SleepInterval,
    /// dimensionless, 0..1
    AlcoholProxy,
}

impl Channel {
    pub const ALL: [Channel; 6] = [
        Channel::HeartRate,
        Channel::AccelMagnitude,
        Channel::SkinConductance,
        Channel::FeedingGesture,
        Channel::SleepInterval,
        Channel::AlcoholProxy,
    ];

    pub const fn index(self) -> usize {
        self as usize
    }

    pub const fn as_str(self) -> &'static str {
        match self {
            Channel::HeartRate => "heart_rate",
            Channel::AccelMagnitude => "accel_magnitude",
            Channel::SkinConductance => "skin_conductance",
            Channel::FeedingGesture => "feeding_gesture",
            Channel::SleepInterval => "sleep_interval",
            Channel::AlcoholProxy => "alcohol_proxy",
        }
    }

    /// Checks `value` against the channel's physical range.
    pub fn validate(self, value: f64) -> Result<(), CoreError> {
        let bound = if !value.is_finite() {
            Some("finite")
        } else {
            match self {
                Channel::HeartRate if !(HEART_RATE_MIN..=HEART_RATE_MAX).contains(&value) => {
                    Some("[20, 250]")
                }
                Channel::AccelMagnitude | Channel::SkinConductance | Channel::SleepInterval
                    if value < 0.0 =>
                {
                    Some(">= 0")
                }
                Channel::FeedingGesture if value != 0.0 && value != 1.0 => Some("{0, 1}"),
                Channel::AlcoholProxy if !(0.0..=1.0).contains(&value) => Some("[0, 1]"),
                _ => None,
            }
        };
        match bound {
            Some(bound) => Err(CoreError::SampleOutOfRange {
                channel: self,
                value,
                bound,
            }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownChannel;

impl fmt::Display for UnknownChannel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown sensor channel")
    }
}

impl FromStr for Channel {
    type Err = UnknownChannel;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .iter()
            .copied()
            .find(|c| c.as_str() == s)
            .ok_or(UnknownChannel)
    }
}

/// One timestamped reading.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensorSample {
    /// Seconds since the Unix epoch.
    pub timestamp: i64,
    pub channel: Channel,
    pub value: f64,
}

impl SensorSample {
    pub fn new(timestamp: i64, channel: Channel, value: f64) -> Result<Self, CoreError> {
        channel.validate(value)?;
        Ok(SensorSample {
            timestamp,
            channel,
            value,
        })
    }
}

/// Stable sort by timestamp; samples sharing a timestamp keep their input order.
pub fn sort_samples(samples: &mut [SensorSample]) {
    samples.sort_by_key(|s| s.timestamp);
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowSpec {
    duration: i64,
}

impl WindowSpec {
    pub const DEFAULT_SECONDS: i64 = 900;

    pub fn new(duration: i64) -> Result<Self, CoreError> {
        if duration <= 0 {
            return Err(CoreError::OutOfRange {
                field: "window duration",
                value: duration as f64,
                expected: "> 0 seconds",
            });
        }
        Ok(WindowSpec { duration })
    }

    pub fn duration(&self) -> i64 {
        self.duration
    }

    /// True when `t` lies in `(t_now - duration, t_now]`.
    pub fn contains(&self, t_now: i64, t: i64) -> bool {
        t <= t_now && t > t_now - self.duration
    }
}

impl Default for WindowSpec {
    fn default() -> Self {
        WindowSpec {
            duration: Self::DEFAULT_SECONDS,
        }
    }
}

/// Aggregates of one channel over a window. Only built from at least one sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelStats {
    pub count: usize,
    pub sum: f64,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

impl ChannelStats {
    fn first(v: f64) -> Self {
        ChannelStats {
            count: 1,
            sum: v,
            mean: v,
            min: v,
            max: v,
        }
    }

    fn push(&mut self, v: f64) {
        self.count += 1;
        self.sum += v;
        self.min = self.min.min(v);
        self.max = self.max.max(v);
    }

    fn finish(&mut self) {
        // rounding in sum/count can land a hair outside [min, max]
        self.mean = (self.sum / self.count as f64).clamp(self.min, self.max);
    }

    /// Stats for a single repeated value, handy for building features by hand.
    pub fn constant(value: f64, count: usize) -> Self {
        let count = count.max(1);
        ChannelStats {
            count,
            sum: value * count as f64,
            mean: value,
            min: value,
            max: value,
        }
    }
}

/// Per-channel window aggregates plus the two longer-horizon signals the
/// tiredness and hunger scores need.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowedFeatures {
    pub window_end: i64,
    pub duration: i64,
    /// Indexed by [`Channel::index`]; `None` means no sample in the window.
    pub channels: [Option<ChannelStats>; 6],
    /// Timestamp of the latest feeding gesture at or before `window_end`,
    /// regardless of window.
    pub last_feeding_gesture: Option<i64>,
    /// Total sleep reported in `(window_end - 24h, window_end]`, `None` when
    /// no sleep sample falls in that range.
    pub sleep_last_day: Option<f64>,
}

impl WindowedFeatures {
    /// Features with every channel missing.
    pub fn empty(window_end: i64, spec: WindowSpec) -> Self {
        WindowedFeatures {
            window_end,
            duration: spec.duration(),
            channels: [None; 6],
            last_feeding_gesture: None,
            sleep_last_day: None,
        }
    }

    pub fn channel(&self, ch: Channel) -> Option<&ChannelStats> {
        self.channels[ch.index()].as_ref()
    }

    pub fn count(&self, ch: Channel) -> usize {
        self.channel(ch).map_or(0, |s| s.count)
    }

    pub fn is_missing(&self, ch: Channel) -> bool {
        self.channels[ch.index()].is_none()
    }

    /// True when a feeding gesture falls inside the current window.
    pub fn gesture_in_window(&self) -> bool {
        self.last_feeding_gesture
            .is_some_and(|t| t <= self.window_end && t > self.window_end - self.duration)
    }
}

/// Aggregates `samples` (sorted by timestamp) over `(t_now - duration, t_now]`.
pub fn window(
    samples: &[SensorSample],
    spec: WindowSpec,
    t_now: i64,
) -> Result<WindowedFeatures, CoreError> {
    if let Some(index) = samples
        .windows(2)
        .position(|w| w[1].timestamp < w[0].timestamp)
    {
        return Err(CoreError::Unsorted { index: index + 1 });
    }

    let mut out = WindowedFeatures::empty(t_now, spec);
    // everything after t_now is irrelevant
    let end = samples.partition_point(|s| s.timestamp <= t_now);
    let past = &samples[..end];

    for s in past {
        if spec.contains(t_now, s.timestamp) {
            match &mut out.channels[s.channel.index()] {
                Some(stats) => stats.push(s.value),
                slot @ None => *slot = Some(ChannelStats::first(s.value)),
            }
        }
        match s.channel {
            Channel::FeedingGesture if s.value >= 0.5 => {
                out.last_feeding_gesture = Some(s.timestamp);
            }
            Channel::SleepInterval if s.timestamp > t_now - SLEEP_LOOKBACK_SECONDS => {
                *out.sleep_last_day.get_or_insert(0.0) += s.value;
            }
            _ => {}
        }
    }
    for stats in out.channels.iter_mut().flatten() {
        stats.finish();
    }
    Ok(out)
}
