//! File and stream handling: CSV tables, JSON documents, `-` for stdin.

use std::fs;
use std::io::Read;
use std::path::Path;

use crate::CliError;

/// Reads a file, or stdin when the path is `-`.
pub fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::input(format!("cannot read stdin: {e}")))?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::input(format!("cannot read {path}: {e}")))
    }
}

/// Parses comma-separated numeric rows. Lines starting with `#` and blank
/// lines are skipped.
pub fn parse_csv(text: &str) -> Result<Vec<Vec<f64>>, CliError> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row: Result<Vec<f64>, _> = line
            .split(',')
            .map(|cell| cell.trim().parse::<f64>())
            .collect();
        let row =
            row.map_err(|e| CliError::input(format!("line {}: not a number: {e}", lineno + 1)))?;
        if !row.iter().all(|x| x.is_finite()) {
            return Err(CliError::input(format!(
                "line {}: non-finite value",
                lineno + 1
            )));
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(CliError::input("no data rows".to_string()));
    }
    Ok(rows)
}

pub fn format_csv(rows: &[Vec<f64>]) -> String {
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row.iter().map(|x| format!("{x}")).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::input(format!("invalid {what} JSON: {e}")))
}

/// Writes to a file, or stdout when the target is `None` or `-`.
pub fn write_output(target: Option<&Path>, content: &str) -> Result<(), CliError> {
    match target {
        Some(p) if p.as_os_str() != "-" => fs::write(p, content)
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", p.display()))),
        _ => {
            print!("{content}");
            Ok(())
        }
    }
}
