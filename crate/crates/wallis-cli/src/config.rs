//! Sweep configuration: defaults, flat key=value config files, and the
//! flag-over-file merge.
//!
//! The file grammar is one `key = value` pair per line (`#` starts a
//! comment); repeating a key appends to its grid. Flags override the file
//! wholesale per key, so a flag never extends a file-defined grid.

use crate::report::Format;
use std::path::PathBuf;

/// Fully merged run configuration. Empty grids mean "use the suite's
/// built-in defaults".
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    /// Product/trial exponent grid.
    pub b: Vec<f64>,
    /// Product offset grid.
    pub a: Vec<f64>,
    /// Ambient dimension grid.
    pub n_dim: Vec<u32>,
    /// Angular momentum grid.
    pub ell: Vec<u32>,
    /// Continued-fraction argument grid.
    pub s: Vec<f64>,
    /// Nested-radical depth grid.
    pub n: Vec<u32>,
    /// Truncation index list for convergence tables.
    pub k: Vec<u64>,
    /// Continued-fraction depth list for convergence tables.
    pub depth: Vec<u64>,
    /// Acceptance tolerance.
    pub tol: f64,
    /// Output rendering.
    pub format: Format,
    /// Output file; stdout when absent.
    pub out: Option<PathBuf>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            b: Vec::new(),
            a: Vec::new(),
            n_dim: Vec::new(),
            ell: Vec::new(),
            s: Vec::new(),
            n: Vec::new(),
            k: Vec::new(),
            depth: Vec::new(),
            tol: 1e-9,
            format: Format::Table,
            out: None,
        }
    }
}

/// Key-value pairs from a config file body, in file order.
pub fn parse_pairs(body: &str) -> Result<Vec<(String, String)>, String> {
    let mut pairs = Vec::new();
    for (idx, raw) in body.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!("config line {}: expected key = value", idx + 1));
        };
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() || value.is_empty() {
            return Err(format!("config line {}: empty key or value", idx + 1));
        }
        pairs.push((key.to_string(), value.to_string()));
    }
    Ok(pairs)
}

fn push_parsed<T: std::str::FromStr>(grid: &mut Vec<T>, key: &str, value: &str) -> Result<(), String> {
    value
        .parse::<T>()
        .map(|v| grid.push(v))
        .map_err(|_| format!("config key {key}: cannot parse {value:?}"))
}

/// Applies config-file pairs onto defaults. Unknown keys are errors: a
/// misspelled grid silently shrinking a sweep would be worse than a refusal.
pub fn apply_pairs(cfg: &mut SweepConfig, pairs: &[(String, String)]) -> Result<(), String> {
    for (key, value) in pairs {
        match key.as_str() {
            "b" => push_parsed(&mut cfg.b, key, value)?,
            "a" => push_parsed(&mut cfg.a, key, value)?,
            "n_dim" => push_parsed(&mut cfg.n_dim, key, value)?,
            "ell" => push_parsed(&mut cfg.ell, key, value)?,
            "s" => push_parsed(&mut cfg.s, key, value)?,
            "n" => push_parsed(&mut cfg.n, key, value)?,
            "k" => push_parsed(&mut cfg.k, key, value)?,
            "depth" => push_parsed(&mut cfg.depth, key, value)?,
            "tol" => {
                cfg.tol = value
                    .parse::<f64>()
                    .map_err(|_| format!("config key tol: cannot parse {value:?}"))?;
            }
            "format" => {
                cfg.format = match value.to_ascii_lowercase().as_str() {
                    "csv" => Format::Csv,
                    "json" => Format::Json,
                    "table" => Format::Table,
                    other => return Err(format!("config key format: unknown format {other:?}")),
                };
            }
            "out" => cfg.out = Some(PathBuf::from(value)),
            other => return Err(format!("unknown config key {other:?}")),
        }
    }
    if !(cfg.tol.is_finite() && cfg.tol > 0.0) {
        return Err("tolerance must be positive and finite".into());
    }
    Ok(())
}

/// Flag-side grid override: a non-empty flag list replaces the file grid.
pub fn override_grid<T: Clone>(target: &mut Vec<T>, flag: &[T]) {
    if !flag.is_empty() {
        *target = flag.to_vec();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn repeated_keys_form_grids_and_comments_are_stripped() {
        let body = "b = 2\nb = 3 # odd, generalized\n\n# full line comment\ntol = 1e-8\nformat = json\n";
        let pairs = parse_pairs(body).unwrap();
        let mut cfg = SweepConfig::default();
        apply_pairs(&mut cfg, &pairs).unwrap();
        assert_eq!(cfg.b, vec![2.0, 3.0]);
        assert_eq!(cfg.tol, 1e-8);
        assert_eq!(cfg.format, Format::Json);
    }

    #[test]
    fn unknown_keys_and_bad_values_are_refused() {
        let mut cfg = SweepConfig::default();
        assert!(apply_pairs(&mut cfg, &[("bee".into(), "2".into())]).is_err());
        assert!(apply_pairs(&mut cfg, &[("b".into(), "two".into())]).is_err());
        assert!(parse_pairs("novalue\n").is_err());
    }

    #[test]
    fn flags_replace_file_grids_wholesale() {
        let mut grid = vec![2.0, 3.0];
        override_grid(&mut grid, &[6.0]);
        assert_eq!(grid, vec![6.0]);
        override_grid(&mut grid, &[]);
        assert_eq!(grid, vec![6.0]);
    }
}
