//! Run configuration: command-line flags layered over an optional TOML file.

use std::fs;
use std::path::{Path, PathBuf};

use backstab::connectivity::MoveKind;
use backstab::Limits;
use clap::Args;
use serde::Deserialize;

use crate::CliError;

/// Flags shared by every subcommand. Each one can also be set in the file
/// named by `BACKSTAB_CONFIG`, under the same key; flags win.
#[derive(Debug, Clone, Default, Args)]
pub struct Options {
    /// Left factor, e.g. `1:[3,2,1]`.
    #[arg(long, global = true)]
    pub u: Option<String>,
    /// Right factor.
    #[arg(long, global = true)]
    pub v: Option<String>,
    /// A single permutation.
    #[arg(long, global = true)]
    pub w: Option<String>,
    /// Variable or position window `lo:hi`.
    #[arg(long, global = true, value_name = "LO:HI")]
    pub window: Option<String>,
    /// Sweep every pair (or object) of `S_n`, written `S3` or `3`.
    #[arg(long, global = true, value_name = "Sn")]
    pub scan: Option<String>,
    /// Move kind for `connect`: `bruhat`, `monk`, or `crossing`.
    #[arg(long, global = true)]
    pub kind: Option<String>,
    /// Use back-stable structure constants.
    #[arg(long, global = true)]
    pub back_stable: bool,
    /// Also run the brute-force oracles and report agreement.
    #[arg(long, global = true)]
    pub verify: bool,
    /// `ndjson` (default) or `table`.
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Seed for sampled suites.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Cap on the reduced words of any one permutation.
    #[arg(long = "max-rw", global = true)]
    pub max_rw: Option<u64>,
    /// Cap on the terms any one product may touch.
    #[arg(long = "max-terms", global = true)]
    pub max_terms: Option<u64>,
    /// Config file; defaults to `$BACKSTAB_CONFIG`.
    #[arg(long, global = true, env = "BACKSTAB_CONFIG", value_name = "FILE")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct FileConfig {
    u: Option<String>,
    v: Option<String>,
    w: Option<String>,
    window: Option<String>,
    scan: Option<toml::Value>,
    kind: Option<String>,
    back_stable: Option<bool>,
    verify: Option<bool>,
    format: Option<String>,
    seed: Option<u64>,
    max_rw: Option<u64>,
    max_terms: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Ndjson,
    Table,
}

/// Fully resolved settings for one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub u: Option<String>,
    pub v: Option<String>,
    pub w: Option<String>,
    pub window: Option<(i64, i64)>,
    pub scan: Option<i64>,
    pub kind: MoveKind,
    pub back_stable: bool,
    pub verify: bool,
    pub format: Format,
    pub seed: u64,
    pub limits: Limits,
}

fn read_file(path: &Path) -> Result<FileConfig, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text)
        .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
}

pub fn parse_window(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Usage(format!("window must look like lo:hi, got {s:?}"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

pub fn parse_scan(s: &str) -> Result<i64, CliError> {
    let t = s.trim();
    let digits = t.strip_prefix(['S', 's']).unwrap_or(t);
    match digits.parse::<i64>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(CliError::Usage(format!(
            "scan must look like S3 or 3, got {s:?}"
        ))),
    }
}

fn parse_format(s: &str) -> Result<Format, CliError> {
    match s.trim().to_ascii_lowercase().as_str() {
        "ndjson" | "json" | "records" => Ok(Format::Ndjson),
        "table" | "human" => Ok(Format::Table),
        other => Err(CliError::Usage(format!("unknown format {other:?}"))),
    }
}

impl RunConfig {
    pub fn resolve(opts: &Options) -> Result<RunConfig, CliError> {
        let file = match &opts.config {
            Some(path) if !path.as_os_str().is_empty() => read_file(path)?,
            _ => FileConfig::default(),
        };
        let scan = match (&opts.scan, &file.scan) {
            (Some(s), _) => Some(parse_scan(s)?),
            (None, Some(toml::Value::Integer(n))) => Some(parse_scan(&n.to_string())?),
            (None, Some(toml::Value::String(s))) => Some(parse_scan(s)?),
            (None, Some(other)) => return Err(CliError::Usage(format!("bad scan value {other}"))),
            (None, None) => None,
        };
        let window = opts
            .window
            .clone()
            .or(file.window)
            .map(|s| parse_window(&s))
            .transpose()?;
        let kind = match opts.kind.clone().or(file.kind) {
            Some(k) => k
                .parse()
                .map_err(|e: backstab::Error| CliError::Usage(e.to_string()))?,
            None => MoveKind::Bruhat,
        };
        let format = match opts.format.clone().or(file.format) {
            Some(f) => parse_format(&f)?,
            None => Format::Ndjson,
        };
        let defaults = Limits::default();
        let limits = Limits {
            max_reduced_words: opts
                .max_rw
                .or(file.max_rw)
                .unwrap_or(defaults.max_reduced_words),
            max_terms: opts
                .max_terms
                .or(file.max_terms)
                .unwrap_or(defaults.max_terms),
        };
        if limits.max_reduced_words == 0 || limits.max_terms == 0 {
            return Err(CliError::Usage("caps must be positive".into()));
        }
        Ok(RunConfig {
            u: opts.u.clone().or(file.u),
            v: opts.v.clone().or(file.v),
            w: opts.w.clone().or(file.w),
            window,
            scan,
            kind,
            back_stable: opts.back_stable || file.back_stable.unwrap_or(false),
            verify: opts.verify || file.verify.unwrap_or(false),
            format,
            seed: opts.seed.or(file.seed).unwrap_or(0),
            limits,
        })
    }
}
