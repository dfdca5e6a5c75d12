//! Run configuration: command-line flags merged over an optional key=value file.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KindArg {
    Classical,
    Quantum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BracketArg {
    Standard,
    /// Opposite sign, `{x_i, p_j} = -delta_ij`.
    #[value(alias = "paper")]
    Reversed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectrumConventionArg {
    Reconciled,
    AsPrinted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WhichArg {
    Angular,
    Radial,
    Parabolic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AngularFormArg {
    AsPrinted,
    Corrected,
}

#[derive(Clone, Debug, Parser, Serialize)]
#[command(
    name = "qkepler",
    version,
    about = "Verify the quadratic algebra and spectrum of the non-central Kepler-Coulomb system"
)]
#[command(args_override_self = true)]
pub struct RunConfig {
    /// Plain key=value file; flags given on the command line take precedence.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Directory receiving the report, residual dumps and evidence files.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,

    /// Include wall-clock timings (makes reports run-dependent).
    #[arg(long, global = true)]
    pub timings: bool,

    /// Run sequentially instead of on the thread pool.
    #[arg(long, global = true)]
    pub sequential: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Exact verification of the integrals of motion and their algebra.
    Verify(VerifyArgs),
    /// Energy levels from the closed forms, the algebra and the numerical oracle.
    Spectrum(SpectrumArgs),
    /// Residual and normalization audit of an explicit eigenfunction.
    Wavecheck(WavecheckArgs),
    /// Consolidated ledger of printed forms that fail machine checks.
    Erratum(ErratumArgs),
    /// Every check with default settings in one report.
    Suite,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Dimension, 3 to 6.
    #[arg(long)]
    pub n: usize,
    /// Poisson-bracket sign convention for classical checks.
    #[arg(long, value_enum, default_value_t = BracketArg::Standard)]
    pub convention: BracketArg,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct Couplings {
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    pub c0: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub c1: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub c2: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    pub hbar: f64,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct SpectrumArgs {
    /// Dimension.
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub couplings: Couplings,
    #[arg(long, default_value_t = 3)]
    pub levels: usize,
    #[arg(long = "I", default_value_t = 0)]
    #[serde(rename = "I")]
    pub i: u32,
    #[arg(long, value_enum, default_value_t = SpectrumConventionArg::Reconciled)]
    pub convention: SpectrumConventionArg,
    /// Largest accepted pairwise relative deviation per level.
    #[arg(long, default_value_t = qkepler_core::BADGE_TOL)]
    pub badge_tol: f64,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct WavecheckArgs {
    #[arg(long, value_enum)]
    pub which: WhichArg,
    /// Dimension.
    #[arg(long, default_value_t = 3)]
    pub n_dim: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub couplings: Couplings,
    /// Principal quantum number (radial).
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub l: Option<u32>,
    #[arg(long = "I", default_value_t = 0)]
    #[serde(rename = "I")]
    pub i: u32,
    #[arg(long)]
    pub n1: Option<u32>,
    #[arg(long)]
    pub n2: Option<u32>,
    /// Jacobi indices of the angular factor.
    #[arg(long, value_enum, default_value_t = AngularFormArg::AsPrinted)]
    pub form: AngularFormArg,
    /// Largest accepted relative residual.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct ErratumArgs {
    /// Include the exact symbolic checks.
    #[arg(long)]
    pub all: bool,
    /// Number of random structure-function comparison points.
    #[arg(long, default_value_t = 20)]
    pub points: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("config line {line}: expected key=value, got '{text}'")]
    Syntax { line: usize, text: String },
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut out = BTreeMap::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) =
            line.split_once('=').ok_or_else(|| ConfigError::Syntax { line: k + 1, text: raw.to_string() })?;
        out.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(out)
}

fn flag_for(key: &str) -> String {
    if key == "I" {
        "--I".into()
    } else {
        format!("--{}", key.replace('_', "-"))
    }
}

/// Rewrites `argv` so that config-file settings come before the user's own
/// flags; the parser keeps the last occurrence, so flags win.
pub fn merge_config_args(argv: &[String]) -> Result<Vec<String>, ConfigError> {
    let pos = argv.iter().position(|a| a == "--config" || a.starts_with("--config="));
    let Some(pos) = pos else { return Ok(argv.to_vec()) };
    let path = match argv[pos].split_once('=') {
        Some((_, p)) => p.to_string(),
        None => match argv.get(pos + 1) {
            Some(p) => p.clone(),
            None => return Ok(argv.to_vec()),
        },
    };
    let text = std::fs::read_to_string(&path).map_err(|source| ConfigError::Read { path: path.clone(), source })?;
    let mut entries = parse_config(&text)?;
    let commands = ["verify", "spectrum", "wavecheck", "erratum", "suite"];
    let sub = argv.iter().skip(1).position(|a| commands.contains(&a.as_str())).map(|p| p + 1);
    let mut out: Vec<String> = argv[..1].to_vec();
    let (before, after): (Vec<String>, Vec<String>) = match sub {
        Some(s) => (argv[1..s].to_vec(), argv[s + 1..].to_vec()),
        None => (argv[1..].to_vec(), Vec::new()),
    };
    let command = match sub {
        Some(s) => Some(argv[s].clone()),
        None => entries.get("command").cloned(),
    };
    entries.remove("command");
    out.extend(before);
    if let Some(c) = command {
        out.push(c);
    }
    for (k, v) in entries {
        match v.as_str() {
            "true" => out.push(flag_for(&k)),
            "false" => {}
            _ => {
                out.push(flag_for(&k));
                out.push(v);
            }
        }
    }
    out.extend(after);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pairs_and_comments() {
        let m = parse_config("n = 4\n# note\nc1=0.1 # trailing\n\n").unwrap();
        assert_eq!(m.get("n").map(String::as_str), Some("4"));
        assert_eq!(m.get("c1").map(String::as_str), Some("0.1"));
        assert!(matches!(parse_config("oops"), Err(ConfigError::Syntax { line: 1, .. })));
    }
}
