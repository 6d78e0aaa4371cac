//! Verification grids: the built-in parameter sweep and the CSV reader for
//! user-supplied point lists.

use std::fs;
use std::path::Path;

use polyint_core::{IntegralParams, Sign};

/// Header every grid file must start with.
pub const GRID_HEADER: &str = "sign,a,b,p,t";

/// The built-in sweep: both signs, q in {1/2, 1, 2, 3}, each q realized by
/// three (a, b) pairs including a negative-axis one, p in 0..=3, t in 1..=4.
/// 2 x 4 x 3 x 4 x 4 = 384 points, in a fixed order.
pub fn default_grid() -> Vec<IntegralParams> {
    let mut points = Vec::with_capacity(384);
    for sign in [Sign::Plus, Sign::Minus] {
        for q in [0.5f64, 1.0, 2.0, 3.0] {
            for (a, b) in [(q, 1.0), (2.0 * q, 2.0), (-q, -1.0)] {
                for p in 0..=3usize {
                    for t in 1..=4usize {
                        points.push(
                            IntegralParams::new(sign, a, b, p, t)
                                .expect("built-in grid points are valid"),
                        );
                    }
                }
            }
        }
    }
    points
}

/// Reads a grid file: CSV with header `sign,a,b,p,t`, one point per row.
/// Any structural or domain problem is a usage error, reported as a message.
pub fn parse_grid_file(path: &Path) -> Result<Vec<IntegralParams>, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read grid file {}: {e}", path.display()))?;
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    match lines.next() {
        Some(header) if header == GRID_HEADER => {}
        Some(header) => {
            return Err(format!(
                "grid file must start with header `{GRID_HEADER}`, found `{header}`"
            ))
        }
        None => return Err("grid file is empty".into()),
    }
    let mut points = Vec::new();
    for (i, line) in lines.enumerate() {
        let row = i + 2; // 1-based, after the header
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 5 {
            return Err(format!("grid row {row}: expected 5 fields, found {}", fields.len()));
        }
        let sign = match fields[0] {
            "plus" => Sign::Plus,
            "minus" => Sign::Minus,
            other => return Err(format!("grid row {row}: unknown sign `{other}`")),
        };
        let a: f64 = fields[1]
            .parse()
            .map_err(|_| format!("grid row {row}: bad a `{}`", fields[1]))?;
        let b: f64 = fields[2]
            .parse()
            .map_err(|_| format!("grid row {row}: bad b `{}`", fields[2]))?;
        let p: usize = fields[3]
            .parse()
            .map_err(|_| format!("grid row {row}: bad p `{}`", fields[3]))?;
        let t: usize = fields[4]
            .parse()
            .map_err(|_| format!("grid row {row}: bad t `{}`", fields[4]))?;
        let params = IntegralParams::new(sign, a, b, p, t)
            .map_err(|e| format!("grid row {row}: {e}"))?;
        points.push(params);
    }
    if points.is_empty() {
        return Err("grid file has no points".into());
    }
    Ok(points)
}
