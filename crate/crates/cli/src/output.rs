//! Report envelope and atomic file output.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use crate::CliError;

pub const SCHEMA: u32 = 1;

/// Wraps a command's body with the fields every report carries.
pub fn envelope(command: &str, seed: u64, input: Option<&crate::input::InputInfo>, tolerances: Value, body: Value) -> Value {
    let mut report = json!({
        "schema": SCHEMA,
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "seed": seed,
        "input": input,
        "tolerances": tolerances,
    });
    if let (Value::Object(out), Value::Object(body)) = (&mut report, body) {
        out.extend(body);
    }
    report
}

pub fn to_json<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report types serialize")
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let io_err = |e: std::io::Error| CliError::Input(format!("cannot write {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(contents).map_err(io_err)?;
    tmp.as_file().sync_all().map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

/// Sends a report to `path` if given, otherwise to stdout.
pub fn emit(report: &Value, path: Option<&Path>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(report).expect("JSON values serialize") + "\n";
    match path {
        Some(p) => write_atomic(p, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_fields() {
        let r = envelope("rho", 7, None, json!({"tol": 1e-8}), json!({"objective": 5.0}));
        assert_eq!(r["schema"], 1);
        assert_eq!(r["seed"], 7);
        assert_eq!(r["objective"], 5.0);
        assert_eq!(r["tolerances"]["tol"], 1e-8);
        assert!(r["input"].is_null());
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.json");
        write_atomic(&path, b"first").unwrap();
        write_atomic(&path, b"second").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "second");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
