use std::fs;
use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Value};
use zdg_core::spectra::round_sig;

use crate::Exit;

pub const SCHEMA: u64 = 1;
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Floats go out with 12 significant digits; non-finite values become null.
pub fn num(v: f64) -> Value {
    if v.is_finite() {
        json!(round_sig(v, 12))
    } else {
        Value::Null
    }
}

/// The report envelope shared by every subcommand.
pub fn envelope(command: &str, records: Vec<Value>, extra: Map<String, Value>) -> Value {
    let mut top = Map::new();
    top.insert("schema".into(), json!(SCHEMA));
    top.insert("tool".into(), json!("zdg"));
    top.insert("version".into(), json!(VERSION));
    top.insert("command".into(), json!(command));
    top.extend(extra);
    top.insert("records".into(), Value::Array(records));
    Value::Object(top)
}

pub fn to_json(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report values serialize");
    s.push('\n');
    s
}

fn cell(v: Option<&Value>) -> String {
    match v {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(Value::Array(items)) => items.iter().map(|x| cell(Some(x))).collect::<Vec<_>>().join("; "),
        Some(other) => other.to_string(),
    }
}

/// Spectrum entries flattened to `value^multiplicity` pairs.
fn spectrum_cell(v: Option<&Value>) -> String {
    let Some(Value::Array(entries)) = v else {
        return String::new();
    };
    entries
        .iter()
        .map(|e| format!("{}^{}", cell(e.get("value")), cell(e.get("multiplicity"))))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Flat projection of the records; nested values are lossy.
pub fn to_csv(records: &[Value], columns: &[&str]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(columns)?;
    for r in records {
        let row: Vec<String> = columns
            .iter()
            .map(|c| match *c {
                "spectrum" | "computed" | "claimed" => {
                    spectrum_cell(r.get(*c).or_else(|| r.pointer(&format!("/evidence/{c}"))))
                }
                _ => cell(r.get(*c).or_else(|| r.pointer(&format!("/evidence/{c}")))),
            })
            .collect();
        w.write_record(&row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Opens the destination before any work is done so that an unwritable
/// path fails fast.
pub struct Sink {
    file: Option<fs::File>,
}

impl Sink {
    pub fn open(path: Option<&Path>) -> Result<Sink, Exit> {
        let file = match path {
            Some(p) => Some(fs::File::create(p).map_err(|e| Exit::unwritable(p, e))?),
            None => None,
        };
        Ok(Sink { file })
    }

    pub fn emit(self, text: &str, path: Option<&Path>) -> Result<(), Exit> {
        match (self.file, path) {
            (Some(mut f), Some(p)) => f.write_all(text.as_bytes()).map_err(|e| Exit::unwritable(p, e)),
            _ => {
                // a closed pipe (e.g. `| head`) is not an error
                let _ = std::io::stdout().lock().write_all(text.as_bytes());
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_are_rounded() {
        assert_eq!(num(1.0 / 3.0).to_string(), "0.333333333333");
        assert_eq!(num(f64::NAN), Value::Null);
    }

    #[test]
    fn csv_flattens_spectra() {
        let r = json!({"n": 8, "spectrum": [{"value": "-2", "kind": "int", "multiplicity": 1}], "tree": true});
        let out = to_csv(&[r], &["n", "spectrum", "tree", "missing"]).unwrap();
        assert_eq!(out, "n,spectrum,tree,missing\n8,-2^1,true,\n");
    }
}
