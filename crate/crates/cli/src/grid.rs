//! Parameter grids given on the command line.
//!
//! Two spellings are accepted: `start:end:step` for an inclusive evenly
//! spaced range, and a comma-separated list of values.

use std::fmt;

/// Upper bound on the number of points in one grid.
const MAX_POINTS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct GridError(String);

impl fmt::Display for GridError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for GridError {}

fn parse_number(s: &str) -> Result<f64, GridError> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| GridError(format!("'{s}' is not a number")))?;
    if !v.is_finite() {
        return Err(GridError(format!("'{s}' is not finite")));
    }
    Ok(v)
}

/// Parses a grid specification into its points.
///
/// Range points are computed as `start + (end − start)·k/n` rather than by
/// repeated addition, so `0:1:0.01` yields exactly `k/100`.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, GridError> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err(GridError("empty grid".into()));
    }
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(GridError(format!(
                "range '{spec}' must have the form start:end:step"
            )));
        }
        let (start, end, step) = (
            parse_number(parts[0])?,
            parse_number(parts[1])?,
            parse_number(parts[2])?,
        );
        if !(step > 0.0) {
            return Err(GridError(format!("step {step} must be positive")));
        }
        if end < start {
            return Err(GridError(format!("end {end} is below start {start}")));
        }
        let span = (end - start) / step;
        let n = span.round();
        if (span - n).abs() > 1e-9 * span.max(1.0) {
            return Err(GridError(format!(
                "step {step} does not divide the range [{start}, {end}]"
            )));
        }
        if n >= MAX_POINTS as f64 {
            return Err(GridError(format!("range '{spec}' has too many points")));
        }
        let n = n as usize;
        if n == 0 {
            return Ok(vec![start]);
        }
        Ok((0..=n)
            .map(|k| start + (end - start) * k as f64 / n as f64)
            .collect())
    } else {
        spec.split(',').map(parse_number).collect()
    }
}

/// Sorted copy with duplicates removed, so rows come out in lexicographic
/// order of the swept parameters.
pub fn sorted_unique(mut values: Vec<f64>) -> Vec<f64> {
    values.sort_by(f64::total_cmp);
    values.dedup();
    values
}
