//! Experiment reports and atomic file output.

use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use lm_shotgun::analysis::TrialRecord;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Per-trial records of one group (a tuple case, a phase cell, ...).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecordGroup {
    pub label: String,
    pub records: Vec<TrialRecord>,
}

/// Totals of one record group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub label: String,
    pub trials: usize,
    pub events: usize,
    pub event_frequency: f64,
    pub mean_value: f64,
}

impl Aggregate {
    pub fn of(group: &RecordGroup) -> Self {
        let trials = group.records.len();
        let events = group.records.iter().filter(|r| r.event).count();
        let (frequency, mean) = if trials == 0 {
            (0.0, 0.0)
        } else {
            (
                events as f64 / trials as f64,
                group.records.iter().map(|r| r.value).sum::<f64>() / trials as f64,
            )
        };
        Aggregate {
            label: group.label.clone(),
            trials,
            events,
            event_frequency: frequency,
            mean_value: mean,
        }
    }
}

/// Everything one run produced, with the configuration needed to repeat it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub format_version: u32,
    pub artifact_version: String,
    pub command: String,
    pub config: Value,
    pub passed: Option<bool>,
    /// The library's report with per-trial records removed.
    pub summary: Value,
    pub aggregates: Vec<Aggregate>,
    pub records: Vec<RecordGroup>,
    pub wall_clock_ms: Option<u64>,
}

impl ExperimentReport {
    pub fn new(
        command: &str,
        config: &impl Serialize,
        summary: &impl Serialize,
        records: Vec<RecordGroup>,
    ) -> Self {
        let mut summary = serde_json::to_value(summary).expect("report types serialise");
        strip_records(&mut summary);
        ExperimentReport {
            format_version: lm_shotgun::FORMAT_VERSION,
            artifact_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            config: serde_json::to_value(config).expect("config types serialise"),
            passed: None,
            summary,
            aggregates: records.iter().map(Aggregate::of).collect(),
            records,
            wall_clock_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    /// Parses a report and checks that its aggregates match its records.
    pub fn from_json(text: &str) -> Result<Self> {
        let report: ExperimentReport =
            serde_json::from_str(text).context("parsing experiment report")?;
        if report.format_version != lm_shotgun::FORMAT_VERSION {
            bail!(
                "format_version {} is not supported (expected {})",
                report.format_version,
                lm_shotgun::FORMAT_VERSION
            );
        }
        if report.aggregates.len() != report.records.len() {
            bail!(
                "aggregates: {} entries for {} record groups",
                report.aggregates.len(),
                report.records.len()
            );
        }
        for (i, (agg, group)) in report.aggregates.iter().zip(&report.records).enumerate() {
            let expected = Aggregate::of(group);
            let close = |a: f64, b: f64| (a - b).abs() <= 1e-9 * (1.0 + b.abs());
            if agg.label != expected.label
                || agg.trials != expected.trials
                || agg.events != expected.events
                || !close(agg.event_frequency, expected.event_frequency)
                || !close(agg.mean_value, expected.mean_value)
            {
                bail!("aggregates[{i}] does not match records[{i}]");
            }
        }
        Ok(report)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::from_json(&text).with_context(|| format!("in {}", path.display()))
    }
}

fn strip_records(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("records");
            map.values_mut().for_each(strip_records);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_records),
        _ => {}
    }
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating a temporary file in {}", dir.display()))?;
    tmp.write_all(contents)
        .with_context(|| format!("writing {}", path.display()))?;
    tmp.persist(path)
        .with_context(|| format!("moving output into place at {}", path.display()))?;
    Ok(())
}

/// Writes to `path` atomically, or to standard output when `path` is `None`.
pub fn emit(path: Option<&Path>, contents: &str) -> Result<()> {
    match path {
        Some(p) => write_atomic(p, contents.as_bytes()),
        None => {
            std::io::stdout().write_all(contents.as_bytes())?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ExperimentReport {
        let records = vec![RecordGroup {
            label: "all".into(),
            records: (0..4)
                .map(|i| TrialRecord {
                    index: i,
                    seed: i,
                    event: i % 2 == 0,
                    value: i as f64,
                })
                .collect(),
        }];
        ExperimentReport::new(
            "test",
            &serde_json::json!({"n": 4}),
            &serde_json::json!({"records": [1], "x": 1}),
            records,
        )
    }

    #[test]
    fn aggregates_and_summary() {
        let r = sample();
        assert_eq!(r.aggregates[0].events, 2);
        assert_eq!(r.aggregates[0].mean_value, 1.5);
        assert_eq!(r.summary, serde_json::json!({"x": 1}));
        assert_eq!(ExperimentReport::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn tampered_aggregates_are_rejected() {
        let mut r = sample();
        r.aggregates[0].events = 3;
        let err = ExperimentReport::from_json(&r.to_json()).unwrap_err();
        assert!(err.to_string().contains("aggregates[0]"));
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.txt");
        write_atomic(&path, b"one").unwrap();
        write_atomic(&path, b"two").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
