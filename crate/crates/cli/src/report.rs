//! Deterministic report emission: JSON with sorted keys and stable float
//! formatting, CSV with fixed schemas.

use serde::Serialize;
use std::io::Write;

/// Serializes with sorted keys (via the value tree) and a trailing newline,
/// then writes to the path or stdout.
pub fn emit_json<T: Serialize>(value: &T, out: Option<&str>) -> Result<(), String> {
    let text = piqes_core::jsonio::to_sorted_json(value);
    emit_text(&text, out)
}

pub fn emit_text(text: &str, out: Option<&str>) -> Result<(), String> {
    match out {
        Some(path) => {
            let mut f =
                std::fs::File::create(path).map_err(|e| format!("cannot create {path}: {e}"))?;
            f.write_all(text.as_bytes())
                .map_err(|e| format!("cannot write {path}: {e}"))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Two-column (or more) CSV with a fixed header; floats use the shortest
/// round-trip representation so repeated runs are byte-identical.
pub fn csv_line(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| format!("{v}"))
        .collect::<Vec<_>>()
        .join(",")
}
