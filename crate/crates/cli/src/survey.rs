use std::env;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use zdg_core::number_theory::is_composite;
use zdg_core::spectra::SpectrumOptions;

use crate::analysis::{analyse, Variant};
use crate::report::VERSION;

pub const CACHE_ENV: &str = "ZDG_CACHE_DIR";
const DEFAULT_CACHE: &str = ".zdg-cache";

/// Cache directory when caching is on: `ZDG_CACHE_DIR`, else `.zdg-cache`.
pub fn cache_dir(enabled: bool) -> Option<PathBuf> {
    enabled.then(|| env::var_os(CACHE_ENV).map_or_else(|| PathBuf::from(DEFAULT_CACHE), PathBuf::from))
}

fn cache_key(n: u64, variant: Variant) -> String {
    let digest = Sha256::digest(format!("zdg {VERSION} {} {n}", variant.as_str()).as_bytes());
    hex::encode(digest)
}

fn load(dir: &Path, key: &str, n: u64, variant: Variant) -> Option<Value> {
    let text = fs::read_to_string(dir.join(format!("{key}.json"))).ok()?;
    let v: Value = serde_json::from_str(&text).ok()?;
    (v.get("n") == Some(&json!(n)) && v.get("variant") == Some(&json!(variant.as_str()))).then_some(v)
}

// Best effort: a failed write only costs a recomputation next time.
fn store(dir: &Path, key: &str, v: &Value) {
    if fs::create_dir_all(dir).is_err() {
        return;
    }
    let tmp = dir.join(format!("{key}.json.{}", std::process::id()));
    if fs::write(&tmp, v.to_string()).is_ok() {
        let _ = fs::rename(&tmp, dir.join(format!("{key}.json")));
    }
}

fn one(n: u64, variant: Variant, opts: &SpectrumOptions, cache: Option<&Path>) -> Value {
    let key = cache_key(n, variant);
    if let Some(v) = cache.and_then(|d| load(d, &key, n, variant)) {
        return v;
    }
    let v = analyse(n, variant, opts)
        .unwrap_or_else(|e| json!({"n": n, "variant": variant.as_str(), "error": e.to_string()}));
    if let Some(d) = cache {
        store(d, &key, &v);
    }
    v
}

/// One record per composite `n <= max_n`, in increasing `n` whatever the
/// worker count.
pub fn run(max_n: u64, variant: Variant, cache: Option<&Path>) -> Vec<Value> {
    let opts = SpectrumOptions::default();
    let ns: Vec<u64> = (4..=max_n).filter(|&n| is_composite(n)).collect();
    ns.into_par_iter().map(|n| one(n, variant, &opts, cache)).collect()
}

fn where_true(records: &[Value], field: &str) -> Vec<u64> {
    records
        .iter()
        .filter(|r| r.get(field) == Some(&Value::Bool(true)))
        .filter_map(|r| r.get("n").and_then(Value::as_u64))
        .collect()
}

pub fn summary(records: &[Value]) -> Map<String, Value> {
    let failures: Vec<u64> = records
        .iter()
        .filter(|r| r.get("trace_zero") != Some(&Value::Bool(true)))
        .filter_map(|r| r.get("n").and_then(Value::as_u64))
        .collect();
    let errors: Vec<u64> = records
        .iter()
        .filter(|r| r.get("error").is_some())
        .filter_map(|r| r.get("n").and_then(Value::as_u64))
        .collect();
    let mut m = Map::new();
    m.insert(
        "summary".into(),
        json!({
            "records": records.len(),
            "trees": where_true(records, "tree"),
            "stars": where_true(records, "star"),
            "complete": where_true(records, "complete"),
            "non_integral": records
                .iter()
                .filter(|r| r.get("integral") == Some(&Value::Bool(false)))
                .filter_map(|r| r.get("n").and_then(Value::as_u64))
                .collect::<Vec<_>>(),
            "trace_zero_failures": failures,
            "errors": errors,
        }),
    );
    m
}
