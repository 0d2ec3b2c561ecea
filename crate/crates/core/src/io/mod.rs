//! Configuration ingestion and persistence of series, snapshots and reports.

mod config;
mod snapshot;
mod timeseries;

pub use config::{load_config, parse_config};
pub use snapshot::{
    read_snapshot, read_snapshot_from, write_snapshot, write_snapshot_to, Snapshot, SNAPSHOT_MAGIC, SNAPSHOT_VERSION,
};
pub use timeseries::{
    read_aux, read_timeseries, read_timeseries_from, write_aux, write_timeseries, write_timeseries_to, AuxRow,
    TimeSeriesRow, AUX_HEADER, TIMESERIES_HEADER,
};

use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

/// Pretty-printed JSON with a trailing newline.
pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Error::Format(e.to_string()))?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}
