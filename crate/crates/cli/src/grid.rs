//! Parsers for the β-grid and coupling-range mini-languages.
//!
//! A β grid is a comma-separated list of tokens, each either
//! `log:lo:hi:count`, `lin:lo:hi:count`, a number, or `inf`. The tokens are
//! merged, sorted and de-duplicated. A range is `lo:hi:count` or one number.

use qudit_core::geometry::linspace;
use qudit_core::thermal::BetaGrid;

use crate::error::{CliError, CliResult};

fn number(s: &str, what: &str) -> CliResult<f64> {
    let v: f64 = s.trim().parse().map_err(|_| CliError::Config(format!("{what}: cannot parse '{s}' as a number")))?;
    if v.is_nan() {
        return Err(CliError::Config(format!("{what}: NaN is not allowed")));
    }
    Ok(v)
}

fn count(s: &str, what: &str) -> CliResult<usize> {
    let c: usize = s.trim().parse().map_err(|_| CliError::Config(format!("{what}: cannot parse '{s}' as a count")))?;
    if c == 0 {
        return Err(CliError::Config(format!("{what}: count must be positive")));
    }
    Ok(c)
}

/// Parses a β grid; `inject_zero` adds the exact β = 0 endpoint.
pub fn parse_beta_grid(spec: &str, inject_zero: bool) -> CliResult<Vec<f64>> {
    let mut parts = Vec::new();
    for token in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let fields: Vec<&str> = token.split(':').collect();
        let grid = match fields.as_slice() {
            ["log", lo, hi, n] => {
                BetaGrid::log(number(lo, "beta grid")?, number(hi, "beta grid")?, count(n, "beta grid")?)?
            }
            ["lin", lo, hi, n] => {
                BetaGrid::linear(number(lo, "beta grid")?, number(hi, "beta grid")?, count(n, "beta grid")?)?
            }
            [v] => {
                let v = if v.eq_ignore_ascii_case("inf") { f64::INFINITY } else { number(v, "beta grid")? };
                BetaGrid { values: vec![v] }
            }
            _ => return Err(CliError::Config(format!("beta grid: bad token '{token}'"))),
        };
        parts.push(grid);
    }
    if parts.is_empty() {
        return Err(CliError::Config("beta grid is empty".into()));
    }
    if inject_zero {
        parts.push(BetaGrid { values: vec![0.0] });
    }
    let merged = BetaGrid::merge(parts).values;
    if let Some(b) = merged.iter().find(|b| **b < 0.0) {
        return Err(CliError::Config(format!("beta grid: negative value {b}")));
    }
    Ok(merged)
}

/// Parses `lo:hi:count` or a single value.
pub fn parse_range(spec: &str, what: &str) -> CliResult<Vec<f64>> {
    let fields: Vec<&str> = spec.split(':').collect();
    let values = match fields.as_slice() {
        [v] => vec![number(v, what)?],
        [lo, hi, n] => {
            let (lo, hi) = (number(lo, what)?, number(hi, what)?);
            if !(lo.is_finite() && hi.is_finite()) || hi < lo {
                return Err(CliError::Config(format!("{what}: need finite lo <= hi in '{spec}'")));
            }
            linspace(lo, hi, count(n, what)?)
        }
        _ => return Err(CliError::Config(format!("{what}: expected lo:hi:count, got '{spec}'"))),
    };
    if values.iter().any(|v| !v.is_finite()) {
        return Err(CliError::Config(format!("{what}: values must be finite")));
    }
    Ok(values)
}

/// Parses a comma-separated list of numbers.
pub fn parse_list(spec: &str, what: &str) -> CliResult<Vec<f64>> {
    spec.split(',').map(|s| number(s, what)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_grid_with_zero() {
        let g = parse_beta_grid("log:1e-3:1e3:200", true).unwrap();
        assert_eq!(g.len(), 201);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[1], 1e-3);
        assert_eq!(g[200], 1e3);
    }

    #[test]
    fn mixed_tokens() {
        let g = parse_beta_grid("2, lin:0:1:3, inf, 0.5", false).unwrap();
        assert_eq!(g, vec![0.0, 0.5, 1.0, 2.0, f64::INFINITY]);
    }

    #[test]
    fn bad_grids() {
        for bad in ["", "log:0:1:3", "lin:1:0:3", "foo:1:2:3", "-1", "log:1:2:0", "nan", "log:1:2"] {
            assert!(parse_beta_grid(bad, true).is_err(), "{bad}");
        }
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("-1:1:3", "g").unwrap(), vec![-1.0, 0.0, 1.0]);
        assert_eq!(parse_range("2.5", "g").unwrap(), vec![2.5]);
        assert!(parse_range("1:0:3", "g").is_err());
        assert!(parse_range("1:2", "g").is_err());
        assert!(parse_range("inf", "g").is_err());
        assert_eq!(parse_list("1,-2, 3", "x").unwrap(), vec![1.0, -2.0, 3.0]);
    }
}
