//! Closed-form claims about these graphs, checked against computed ground truth.

mod checks;
mod claims;
mod compare;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{domain, Error};
use crate::number_theory::{factorize, is_composite, primes_up_to};
use crate::spectra::{round_sig, Spectrum, EXACT_CAP};

pub use checks::audit;
pub use claims::{claimed_spectrum, ClaimedSpectrum};
pub use compare::{compare_spectra, Comparison};

/// Identifier of an audited claim, written `3.1`, `4.3`, ...
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClaimId {
    T3_1,
    T3_2,
    T3_3,
    T3_4,
    T4_1,
    T4_2,
    T4_3,
    T5_1,
    T5_2,
    T5_3,
    T6_1,
    T6_2,
    T6_3,
    T6_4,
}

impl ClaimId {
    pub const ALL: [ClaimId; 14] = [
        ClaimId::T3_1,
        ClaimId::T3_2,
        ClaimId::T3_3,
        ClaimId::T3_4,
        ClaimId::T4_1,
        ClaimId::T4_2,
        ClaimId::T4_3,
        ClaimId::T5_1,
        ClaimId::T5_2,
        ClaimId::T5_3,
        ClaimId::T6_1,
        ClaimId::T6_2,
        ClaimId::T6_3,
        ClaimId::T6_4,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ClaimId::T3_1 => "3.1",
            ClaimId::T3_2 => "3.2",
            ClaimId::T3_3 => "3.3",
            ClaimId::T3_4 => "3.4",
            ClaimId::T4_1 => "4.1",
            ClaimId::T4_2 => "4.2",
            ClaimId::T4_3 => "4.3",
            ClaimId::T5_1 => "5.1",
            ClaimId::T5_2 => "5.2",
            ClaimId::T5_3 => "5.3",
            ClaimId::T6_1 => "6.1",
            ClaimId::T6_2 => "6.2",
            ClaimId::T6_3 => "6.3",
            ClaimId::T6_4 => "6.4",
        }
    }

    pub fn claim(&self) -> &'static TheoremClaim {
        REGISTRY.iter().find(|c| c.id == *self).expect("every id is registered")
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        let t = t
            .strip_prefix("Thm")
            .or_else(|| t.strip_prefix("thm"))
            .unwrap_or(t)
            .trim();
        ClaimId::ALL
            .into_iter()
            .find(|c| c.as_str() == t)
            .ok_or_else(|| domain(format!("unknown theorem id '{s}'")))
    }
}

impl Serialize for ClaimId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Parameters of one audited instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Params {
    N { n: u64 },
    Prime { p: u64 },
    PrimePower { p: u64, t: u32 },
    Pair { p1: u64, p2: u64 },
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Params::N { n } => write!(f, "n={n}"),
            Params::Prime { p } => write!(f, "p={p}"),
            Params::PrimePower { p, t } => write!(f, "p={p};t={t}"),
            Params::Pair { p1, p2 } => write!(f, "p1={p1};p2={p2}"),
        }
    }
}

impl FromStr for Params {
    type Err = Error;

    /// Parses the `Display` form.
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut kv = BTreeMap::new();
        for part in s.split(';') {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| domain(format!("malformed parameters '{s}'")))?;
            let v: u64 = v
                .trim()
                .parse()
                .map_err(|_| domain(format!("malformed value in '{s}'")))?;
            kv.insert(k.trim().to_string(), v);
        }
        let keys: Vec<&str> = kv.keys().map(String::as_str).collect();
        match keys.as_slice() {
            ["n"] => Ok(Params::N { n: kv["n"] }),
            ["p"] => Ok(Params::Prime { p: kv["p"] }),
            ["p", "t"] => Ok(Params::PrimePower {
                p: kv["p"],
                t: u32::try_from(kv["t"]).map_err(|_| domain("t out of range"))?,
            }),
            ["p1", "p2"] => Ok(Params::Pair {
                p1: kv["p1"],
                p2: kv["p2"],
            }),
            _ => Err(domain(format!("unrecognized parameter set '{s}'"))),
        }
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// What a claim asserts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimKind {
    Spectrum,
    Structure,
    Integrality,
    Energy,
}

/// Parameter family a claim ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Distinct primes `p1 < p2`.
    OrderedPair,
    /// Distinct primes in either order.
    Pair,
    Prime,
    PrimePower,
    Composite,
}

/// One registered claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TheoremClaim {
    pub id: ClaimId,
    pub kind: ClaimKind,
    pub family: Family,
    /// The claim in one line.
    pub statement: &'static str,
}

pub const REGISTRY: [TheoremClaim; 14] = [
    TheoremClaim {
        id: ClaimId::T3_1,
        kind: ClaimKind::Spectrum,
        family: Family::OrderedPair,
        statement: "spec ecc(Γ(Z_{p1 p2})) = {-2^(p1+p2-4), (2p1-4)^1, (2p2-4)^1}",
    },
    TheoremClaim {
        id: ClaimId::T3_2,
        kind: ClaimKind::Spectrum,
        family: Family::Prime,
        statement: "spec ecc(Γ(Z_{p^3})), p != 2 = {-1^(p-2), -2^(p^2-p-1), (2p^2-2p-2)^1, ((p^3-4p^2+p+4)/(2p^2-2p-2))^1}",
    },
    TheoremClaim {
        id: ClaimId::T3_3,
        kind: ClaimKind::Spectrum,
        family: Family::Prime,
        statement: "spec ecc(Γ(Z_{p^4})) = {-2^(p^2(p-1)), 0^(p^2-1), (-1-p-p^3 -/+ L)^1}, L^2 = 2+2p+p^2+2p^3-10p^4+4p^5+p^6",
    },
    TheoremClaim {
        id: ClaimId::T3_4,
        kind: ClaimKind::Spectrum,
        family: Family::Pair,
        statement: "spec ecc(Γ(Z_{p1^2 p2})) = {0^(p1^2+2p1-4), -2^(p1(p2-1)), (2p2-6)^1, (2(p1-1)(p2-1)-4)^1} plus the roots of a stated rational function",
    },
    TheoremClaim {
        id: ClaimId::T4_1,
        kind: ClaimKind::Structure,
        family: Family::Composite,
        statement: "a tree of order >= 3 has least ecc eigenvalue <= -2, with equality iff it is a star",
    },
    TheoremClaim {
        id: ClaimId::T4_2,
        kind: ClaimKind::Structure,
        family: Family::Composite,
        statement: "the eccentricity matrix of a tree is irreducible",
    },
    TheoremClaim {
        id: ClaimId::T4_3,
        kind: ClaimKind::Structure,
        family: Family::Composite,
        statement: "Γ(Z_n) is a tree iff n = 2p, p prime; Γ(Z_{2p}) is a star",
    },
    TheoremClaim {
        id: ClaimId::T5_1,
        kind: ClaimKind::Integrality,
        family: Family::PrimePower,
        statement: "ecc(Γ(Z_{p^t})) has integral spectrum iff t = 2, then {(p-2)^1, -1^(p-2)}",
    },
    TheoremClaim {
        id: ClaimId::T5_2,
        kind: ClaimKind::Integrality,
        family: Family::PrimePower,
        statement: "ecc(Γ_E(Z_{p^t})), t >= 2, is integral: {-1^(|Z*|-1), (|Z*|-1)^1}, |Z*| = p^(t-1)-1",
    },
    TheoremClaim {
        id: ClaimId::T5_3,
        kind: ClaimKind::Spectrum,
        family: Family::Prime,
        statement: "spec ecc(Γ(Z_p x Z_p)) = {-2^(2(p-1)), (2p-6)^2}",
    },
    TheoremClaim {
        id: ClaimId::T6_1,
        kind: ClaimKind::Energy,
        family: Family::OrderedPair,
        statement: "energy of ecc of the complement of Γ(Z_{p1 p2}) is 2(p1+p2-4)",
    },
    TheoremClaim {
        id: ClaimId::T6_2,
        kind: ClaimKind::Energy,
        family: Family::Prime,
        statement: "energy of ecc of the complement of Γ(Z_{p^3}) is 2p(p-1)-2",
    },
    TheoremClaim {
        id: ClaimId::T6_3,
        kind: ClaimKind::Energy,
        family: Family::OrderedPair,
        statement: "|E(G) - E(complement G)| <= 3(p1+p2-2)^2 for G = Γ(Z_{p1 p2})",
    },
    TheoremClaim {
        id: ClaimId::T6_4,
        kind: ClaimKind::Energy,
        family: Family::Prime,
        statement: "|E(G) - E(complement G)| <= 3(p^2-1)^2 for G = Γ(Z_{p^3})",
    },
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Verdict {
    Verified,
    Refuted,
    NotApplicable,
    MalformedClaim,
    Skipped,
}

impl Verdict {
    /// Refuted and malformed claims both count as refutations.
    pub fn is_refutation(&self) -> bool {
        matches!(self, Verdict::Refuted | Verdict::MalformedClaim)
    }
}

fn ser_rounded<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_some(&round_sig(*x, 12)),
        None => s.serialize_none(),
    }
}

/// Machine-checkable support for a verdict.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Evidence {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed: Option<Spectrum>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub char_poly: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claimed: Option<Spectrum>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claimed_multiplicity_total: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claimed_trace: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claimed_trace_zero: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_rounded")]
    pub max_deviation: Option<f64>,
    /// `(claimed, computed)` values of the worst-matching pair.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_pair: Option<(String, String)>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failed_checks: Vec<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub facts: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Evidence {
    pub(crate) fn fact(&mut self, key: &str, value: impl ToString) {
        self.facts.insert(key.to_string(), value.to_string());
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditVerdict {
    pub claim: ClaimId,
    pub params: Params,
    pub verdict: Verdict,
    pub evidence: Evidence,
}

impl AuditVerdict {
    /// `claim:params`, the form used in expected-refutation lists.
    pub fn key(&self) -> String {
        format!("{}:{}", self.claim, self.params)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditConfig {
    /// Tolerance for comparisons that involve a float on either side.
    pub tol: f64,
    /// Orders up to this use exact characteristic polynomials.
    pub exact_cap: usize,
    /// Instances with larger matrices are skipped.
    pub max_order: usize,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            tol: 1e-7,
            exact_cap: EXACT_CAP,
            max_order: 400,
        }
    }
}

/// Which instances to audit.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditRequest {
    pub claims: Vec<ClaimId>,
    /// Upper limit for the primes of prime-parameterised families.
    pub primes_up_to: u64,
    /// Lower limit for those primes; `None` means 3 for the `p1 p2` spectrum
    /// claim (whose statement fails at `p1 = 2`) and 2 elsewhere.
    pub min_prime: Option<u64>,
    /// Upper limit for `n` (and for `p^t`) in the other families.
    pub max_n: u64,
    pub config: AuditConfig,
}

impl Default for AuditRequest {
    fn default() -> Self {
        AuditRequest {
            claims: ClaimId::ALL.to_vec(),
            primes_up_to: 31,
            min_prime: None,
            max_n: 128,
            config: AuditConfig::default(),
        }
    }
}

impl AuditRequest {
    fn min_prime_for(&self, id: ClaimId) -> u64 {
        self.min_prime.unwrap_or(if id == ClaimId::T3_1 { 3 } else { 2 })
    }

    /// Every `(claim, params)` instance, sorted.
    pub fn tasks(&self) -> Vec<(ClaimId, Params)> {
        let mut out = Vec::new();
        for &id in &self.claims {
            let lo = self.min_prime_for(id);
            let primes: Vec<u64> = primes_up_to(self.primes_up_to)
                .into_iter()
                .filter(|&p| p >= lo)
                .collect();
            match id.claim().family {
                Family::OrderedPair => {
                    for (i, &p1) in primes.iter().enumerate() {
                        for &p2 in &primes[i + 1..] {
                            out.push((id, Params::Pair { p1, p2 }));
                        }
                    }
                }
                Family::Pair => {
                    for &p1 in &primes {
                        for &p2 in &primes {
                            if p1 != p2 {
                                out.push((id, Params::Pair { p1, p2 }));
                            }
                        }
                    }
                }
                Family::Prime => out.extend(primes.iter().map(|&p| (id, Params::Prime { p }))),
                Family::PrimePower => {
                    for n in 4..=self.max_n {
                        if let Ok(f) = factorize(n) {
                            if let Some((p, t)) = f.as_prime_power() {
                                if t >= 2 && p >= lo {
                                    out.push((id, Params::PrimePower { p, t }));
                                }
                            }
                        }
                    }
                }
                Family::Composite => out.extend(
                    (4..=self.max_n)
                        .filter(|&n| is_composite(n))
                        .map(|n| (id, Params::N { n })),
                ),
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// Audits every instance of the request, sorted by `(claim, params)`.
pub fn run_audits(req: &AuditRequest) -> Vec<AuditVerdict> {
    req.tasks()
        .into_iter()
        .map(|(id, params)| audit(id, &params, &req.config))
        .collect()
}

/// Keys of the refuted and malformed verdicts, sorted.
pub fn refutation_keys(verdicts: &[AuditVerdict]) -> Vec<String> {
    let mut keys: Vec<String> = verdicts
        .iter()
        .filter(|v| v.verdict.is_refutation())
        .map(AuditVerdict::key)
        .collect();
    keys.sort();
    keys
}
