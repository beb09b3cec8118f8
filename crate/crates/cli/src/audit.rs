use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde_json::{json, Map, Value};
use zdg_core::audit::{audit, refutation_keys, AuditRequest, AuditVerdict, ClaimId, Params, Verdict};

use crate::Exit;

/// `all`, or a single id such as `3.1` / `Thm3.1`.
pub fn parse_theorem(s: &str) -> Result<Vec<ClaimId>, Exit> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(ClaimId::ALL.to_vec());
    }
    s.parse::<ClaimId>()
        .map(|id| vec![id])
        .map_err(|_| Exit::usage(format!("unknown theorem id {s:?}")))
}

/// Expected refutation keys, from an inline comma list or from a file with
/// one key per line (`#` starts a comment). Bare parameter keys like `n=8`
/// take the theorem prefix when a single theorem is audited.
pub fn parse_expected(arg: &str, claims: &[ClaimId]) -> Result<BTreeSet<String>, Exit> {
    let text = if Path::new(arg).is_file() {
        fs::read_to_string(arg).map_err(|e| Exit::usage(format!("cannot read {arg}: {e}")))?
    } else {
        arg.to_string()
    };
    let mut out = BTreeSet::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        for raw in line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            let (id, params) = match raw.split_once(':') {
                Some((id, params)) => (
                    id.parse::<ClaimId>()
                        .map_err(|_| Exit::usage(format!("unknown theorem id in {raw:?}")))?,
                    params,
                ),
                None if claims.len() == 1 => (claims[0], raw),
                None => {
                    return Err(Exit::usage(format!(
                        "expected refutation {raw:?} needs a theorem prefix when auditing several theorems"
                    )))
                }
            };
            let params: Params = params
                .parse()
                .map_err(|e| Exit::usage(format!("bad parameters in {raw:?}: {e}")))?;
            out.insert(format!("{id}:{params}"));
        }
    }
    Ok(out)
}

pub fn run(req: &AuditRequest) -> Vec<AuditVerdict> {
    req.tasks()
        .into_par_iter()
        .map(|(id, params)| audit(id, &params, &req.config))
        .collect()
}

pub struct Outcome {
    pub report_extra: Map<String, Value>,
    pub records: Vec<Value>,
    pub ok: bool,
    pub unexpected: Vec<String>,
    pub missing: Vec<String>,
}

pub fn summarise(verdicts: &[AuditVerdict], expected: Option<&BTreeSet<String>>) -> Outcome {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for v in verdicts {
        *counts.entry(format!("{:?}", v.verdict)).or_default() += 1;
    }
    for v in [
        Verdict::Verified,
        Verdict::Refuted,
        Verdict::MalformedClaim,
        Verdict::NotApplicable,
        Verdict::Skipped,
    ] {
        counts.entry(format!("{v:?}")).or_default();
    }
    let observed: BTreeSet<String> = refutation_keys(verdicts).into_iter().collect();
    let empty = BTreeSet::new();
    let want = expected.unwrap_or(&empty);
    let unexpected: Vec<String> = observed.difference(want).cloned().collect();
    let missing: Vec<String> = want.difference(&observed).cloned().collect();
    let ok = unexpected.is_empty() && missing.is_empty();

    let mut extra = Map::new();
    extra.insert("summary".into(), json!(counts));
    extra.insert("refutations".into(), json!(observed));
    extra.insert("expected_refutations".into(), json!(expected));
    extra.insert("expectation_met".into(), json!(ok));
    let records = verdicts
        .iter()
        .map(|v| {
            let mut r = serde_json::to_value(v).expect("verdicts serialize");
            r.as_object_mut()
                .expect("verdict is an object")
                .insert("key".into(), json!(v.key()));
            r
        })
        .collect();
    Outcome {
        report_extra: extra,
        records,
        ok,
        unexpected,
        missing,
    }
}

pub const COLUMNS: [&str; 9] = [
    "key",
    "claim",
    "params",
    "verdict",
    "order",
    "max_deviation",
    "claimed_trace",
    "failed_checks",
    "notes",
];
