use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_rational::BigRational;
use qhecke::scalar::parse_rational;

use crate::UsageError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Arithmetic {
    Exact,
    Numeric(BigRational),
}

/// Settings shared by every subcommand, resolved from (lowest first) the
/// built-in defaults, an optional key=value file, the environment and flags.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub arithmetic: Arithmetic,
    pub max_degree: Option<usize>,
    pub max_entries: usize,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            arithmetic: Arithmetic::Exact,
            max_degree: None,
            max_entries: qhecke::rmatrix::tensor::MAX_ENTRIES,
            cache_dir: None,
            format: Format::Json,
            output: None,
        }
    }
}

/// Overrides collected from the command line; `None` means "not given".
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub numeric: Option<String>,
    pub max_degree: Option<usize>,
    pub max_entries: Option<usize>,
    pub cache: Option<PathBuf>,
    pub format: Option<String>,
    pub output: Option<PathBuf>,
}

const KEYS: &str = "arithmetic (exact|numeric), v0, max_degree, max_entries, cache, format (json|table), output";

pub fn parse_key_values(text: &str) -> Result<BTreeMap<String, String>, UsageError> {
    let mut out = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            UsageError::new(format!("config line {} is not key=value", n + 1), KEYS)
        })?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn parse_v0(s: &str) -> Result<BigRational, UsageError> {
    let v0 = parse_rational(s).map_err(|e| UsageError::new(e.to_string(), "v0 = p/q with p/q > 0, != 1"))?;
    if v0 <= BigRational::from_integer(BigInt::from(0)) || v0 == BigRational::from_integer(BigInt::from(1)) {
        return Err(UsageError::new(format!("v0 = {v0} is not allowed"), "v0 = p/q with p/q > 0, != 1"));
    }
    Ok(v0)
}

fn parse_format(s: &str) -> Result<Format, UsageError> {
    match s {
        "json" => Ok(Format::Json),
        "table" => Ok(Format::Table),
        _ => Err(UsageError::new(format!("unknown format {s:?}"), "json | table")),
    }
}

fn parse_count(key: &str, s: &str) -> Result<usize, UsageError> {
    s.parse()
        .map_err(|_| UsageError::new(format!("{key} = {s:?} is not a non-negative integer"), KEYS))
}

impl RunConfig {
    fn apply_file(&mut self, kv: &BTreeMap<String, String>) -> Result<(), UsageError> {
        let mut numeric = None;
        let mut v0 = None;
        for (k, v) in kv {
            match k.as_str() {
                "arithmetic" => numeric = Some(v.as_str()),
                "v0" => v0 = Some(parse_v0(v)?),
                "max_degree" => self.max_degree = Some(parse_count(k, v)?),
                "max_entries" => self.max_entries = parse_count(k, v)?,
                "cache" => self.cache_dir = Some(PathBuf::from(v)),
                "format" => self.format = parse_format(v)?,
                "output" => self.output = Some(PathBuf::from(v)),
                _ => return Err(UsageError::new(format!("unknown config key {k:?}"), KEYS)),
            }
        }
        match (numeric, v0) {
            (None | Some("exact"), None) => {}
            (None | Some("numeric"), Some(v)) => self.arithmetic = Arithmetic::Numeric(v),
            (Some("numeric"), None) => {
                return Err(UsageError::new("arithmetic = numeric needs v0", KEYS));
            }
            (Some(other), _) => {
                return Err(UsageError::new(format!("arithmetic = {other:?} with these settings is not valid"), KEYS));
            }
        }
        Ok(())
    }

    pub fn resolve(file: Option<&Path>, env_cache: Option<PathBuf>, o: &Overrides) -> Result<Self, UsageError> {
        let mut cfg = RunConfig::default();
        if let Some(path) = file {
            let text = std::fs::read_to_string(path).map_err(|e| {
                UsageError::new(format!("cannot read config {}: {e}", path.display()), KEYS)
            })?;
            cfg.apply_file(&parse_key_values(&text)?)?;
        }
        if env_cache.is_some() {
            cfg.cache_dir = env_cache;
        }
        if let Some(v) = &o.numeric {
            cfg.arithmetic = Arithmetic::Numeric(parse_v0(v)?);
        }
        if o.max_degree.is_some() {
            cfg.max_degree = o.max_degree;
        }
        if let Some(m) = o.max_entries {
            cfg.max_entries = m;
        }
        if o.cache.is_some() {
            cfg.cache_dir = o.cache.clone();
        }
        if let Some(f) = &o.format {
            cfg.format = parse_format(f)?;
        }
        if o.output.is_some() {
            cfg.output = o.output.clone();
        }
        Ok(cfg)
    }
}
