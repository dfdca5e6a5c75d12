//! Batch front end: verification suites, spectra, eigenfunction checks and
//! the erratum ledger, rendered as JSON, CSV or text.

pub mod commands;
pub mod config;
pub mod report;

use std::path::Path;

use serde_json::{json, Value};

use qkepler_symbolic::Exec;

use config::{Command, Format, RunConfig};
use report::Output;

/// The `run` block of the report: the effective configuration.
pub fn run_block(cfg: &RunConfig) -> Value {
    let mut v = serde_json::to_value(cfg).expect("config serializes");
    if let Value::Object(m) = &mut v {
        m.remove("timings");
        m.remove("sequential");
        m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    }
    v
}

pub fn exec(cfg: &RunConfig) -> Exec {
    if cfg.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    }
}

/// Executes the configured command.
pub fn run(cfg: &RunConfig) -> Output {
    let run = run_block(cfg);
    let exec = exec(cfg);
    match &cfg.command {
        Command::Verify(a) => commands::verify::run(a, run, exec, cfg.timings),
        Command::Spectrum(a) => commands::spectrum::run(a, run, commands::suite::core_exec(exec)),
        Command::Wavecheck(a) => commands::wavecheck::run(a, run),
        Command::Erratum(a) => commands::erratum::run(a.all, a.points, cfg.seed, run, exec),
        Command::Suite => commands::suite::run(cfg.seed, run, exec, cfg.timings),
    }
}

/// The main rendering for the chosen format.
pub fn render(out: &Output, format: Format) -> String {
    match format {
        Format::Json => out.document.to_json(),
        Format::Text => out.document.to_text(),
        Format::Csv => match &out.csv {
            Some(csv) => csv.clone(),
            None => out.document.to_text(),
        },
    }
}

/// Writes the report in every available format plus the side files.
pub fn write_outputs(out: &Output, dir: &Path) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("report.json"), out.document.to_json())?;
    std::fs::write(dir.join("report.txt"), out.document.to_text())?;
    if let Some(csv) = &out.csv {
        std::fs::write(dir.join("report.csv"), csv)?;
    }
    for (rel, body) in &out.files {
        let path = dir.join(rel);
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)?;
        }
        std::fs::write(path, body)?;
    }
    Ok(())
}
