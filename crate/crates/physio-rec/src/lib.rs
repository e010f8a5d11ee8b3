//! File formats, configuration and command implementations around
//! [`physio_rec_core`].

pub mod commands;
pub mod config;
pub mod error;
pub mod formats;
pub mod fsio;
pub mod sensor_log;
pub mod trace;

pub use config::AppConfig;
pub use error::{Error, Result};
pub use sensor_log::{parse_sensor_log, write_sensor_log};
pub use trace::{parse_trace, write_trace};
