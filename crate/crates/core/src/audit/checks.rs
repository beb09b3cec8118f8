use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::claims::{claimed_spectrum, not_applicable, require_distinct_primes, require_prime, ClaimedSpectrum};
use super::compare::{compare_spectra, trace_of};
use super::{AuditConfig, AuditVerdict, ClaimId, ClaimKind, Evidence, Params, Verdict};
use crate::ecc::{eccentricity_matrix, is_irreducible};
use crate::error::{Error, Result};
use crate::exact::{is_integral_spectrum, IntMatrix};
use crate::graph::{
    build_extended_zdg, build_zdg, build_zdg_zp_x_zp, complement, is_complete, is_star, is_tree, Graph,
};
use crate::number_theory::{is_composite, is_prime};
use crate::spectra::{
    energy, exact_energy, spectrum, trace_vanishes, SpecValue, Spectrum, SpectrumMode, SpectrumOptions,
};

fn verdict(id: ClaimId, params: &Params, verdict: Verdict, evidence: Evidence) -> AuditVerdict {
    AuditVerdict {
        claim: id,
        params: *params,
        verdict,
        evidence,
    }
}

/// `NotApplicable` for hypothesis failures, `Skipped` for anything else
/// that stopped the computation.
fn from_error(id: ClaimId, params: &Params, e: Error, mut ev: Evidence) -> AuditVerdict {
    let v = match e {
        Error::NotApplicable(_) => Verdict::NotApplicable,
        _ => Verdict::Skipped,
    };
    ev.notes.push(e.to_string());
    verdict(id, params, v, ev)
}

fn options(cfg: &AuditConfig) -> SpectrumOptions {
    SpectrumOptions {
        mode: SpectrumMode::Auto,
        exact_cap: cfg.exact_cap,
        ..SpectrumOptions::default()
    }
}

/// The graph whose eccentricity matrix a claim is about.
fn subject(id: ClaimId, params: &Params) -> Result<Graph> {
    match (id, *params) {
        (ClaimId::T3_1 | ClaimId::T6_3, Params::Pair { p1, p2 }) => {
            require_distinct_primes(id, params, p1, p2)?;
            build_zdg(p1 * p2)
        }
        (ClaimId::T6_1, Params::Pair { p1, p2 }) => {
            require_distinct_primes(id, params, p1, p2)?;
            Ok(complement(&build_zdg(p1 * p2)?))
        }
        (ClaimId::T3_4, Params::Pair { p1, p2 }) => {
            require_distinct_primes(id, params, p1, p2)?;
            build_zdg(p1 * p1 * p2)
        }
        (ClaimId::T3_2 | ClaimId::T6_4, Params::Prime { p }) => {
            require_prime(id, params, p)?;
            build_zdg(p * p * p)
        }
        (ClaimId::T6_2, Params::Prime { p }) => {
            require_prime(id, params, p)?;
            Ok(complement(&build_zdg(p * p * p)?))
        }
        (ClaimId::T3_3, Params::Prime { p }) => {
            require_prime(id, params, p)?;
            build_zdg(p.pow(4))
        }
        (ClaimId::T5_3, Params::Prime { p }) => {
            require_prime(id, params, p)?;
            build_zdg_zp_x_zp(p)
        }
        (ClaimId::T5_1 | ClaimId::T5_2, Params::PrimePower { p, t }) => {
            require_prime(id, params, p)?;
            if t < 2 {
                return Err(not_applicable(id, params, "requires t >= 2"));
            }
            let n = p
                .checked_pow(t)
                .ok_or_else(|| not_applicable(id, params, "p^t overflows"))?;
            if id == ClaimId::T5_1 {
                build_zdg(n)
            } else {
                build_extended_zdg(n)
            }
        }
        (ClaimId::T4_1 | ClaimId::T4_2 | ClaimId::T4_3, Params::N { n }) => {
            if !is_composite(n) {
                return Err(not_applicable(id, params, "n must be composite"));
            }
            build_zdg(n)
        }
        _ => Err(not_applicable(id, params, "parameters do not fit this claim")),
    }
}

/// Eccentricity matrix of the subject, refusing orders above the cap.
fn subject_matrix(id: ClaimId, params: &Params, cfg: &AuditConfig, ev: &mut Evidence) -> Result<(Graph, IntMatrix)> {
    let g = subject(id, params)?;
    ev.order = Some(g.order());
    if g.order() > cfg.max_order {
        return Err(Error::Oversize {
            order: g.order(),
            cap: cfg.max_order,
        });
    }
    let m = eccentricity_matrix(&g);
    Ok((g, m))
}

/// Computed spectrum, recorded in the evidence, after the trace and count
/// sanity checks.
fn ground_truth(m: &IntMatrix, cfg: &AuditConfig, ev: &mut Evidence) -> Result<Spectrum> {
    let s = spectrum(m, &options(cfg))?;
    let n = m.order();
    ev.computed = Some(s.clone());
    ev.char_poly = s.char_poly().map(ToString::to_string);
    ev.residual = s.residual().map(ToString::to_string);
    if s.total() != n {
        return Err(Error::Sanity(format!(
            "computed multiplicities sum to {} for order {n}",
            s.total()
        )));
    }
    if !trace_vanishes(&s) {
        return Err(Error::Sanity("computed eigenvalues do not sum to zero".into()));
    }
    Ok(s)
}

/// Claimed-side evidence; returns whether the multiplicity count fits.
fn record_claim(claim: &ClaimedSpectrum, order: usize, tol: f64, ev: &mut Evidence) -> bool {
    let total = claim.spectrum.total();
    let (trace, zero) = trace_of(&claim.spectrum, tol);
    ev.claimed = Some(claim.spectrum.clone());
    ev.claimed_multiplicity_total = Some(total);
    ev.claimed_trace = Some(trace.clone());
    ev.claimed_trace_zero = Some(zero);
    ev.notes.extend(claim.notes.iter().cloned());
    if !zero {
        ev.failed_checks
            .push(format!("trace-zero: claimed eigenvalues sum to {trace}"));
    }
    if total != order {
        ev.failed_checks.push(format!(
            "multiplicity count: claimed multiplicities sum to {total} for order {order}"
        ));
        return false;
    }
    true
}

/// Compares a claimed spectrum with the computed one and settles the verdict.
fn settle(claim: &ClaimedSpectrum, computed: &Spectrum, order: usize, tol: f64, ev: &mut Evidence) -> Verdict {
    let count_ok = record_claim(claim, order, tol, ev);
    let cmp = compare_spectra(&claim.spectrum, computed, tol);
    if let Some((a, b)) = &cmp.worst {
        ev.max_deviation = Some(cmp.max_deviation);
        ev.worst_pair = Some((a.to_string(), b.to_string()));
    }
    if !count_ok {
        return Verdict::MalformedClaim;
    }
    if cmp.matches {
        Verdict::Verified
    } else {
        if let Some((a, b)) = &cmp.worst {
            ev.failed_checks
                .push(format!("eigenvalue mismatch: claimed {a} against computed {b}"));
        }
        Verdict::Refuted
    }
}

fn audit_spectral(id: ClaimId, params: &Params, cfg: &AuditConfig) -> Result<(Verdict, Evidence)> {
    let mut ev = Evidence::default();
    let claim = claimed_spectrum(id, params)?;
    let run = (|| {
        let (_, m) = subject_matrix(id, params, cfg, &mut ev)?;
        let s = ground_truth(&m, cfg, &mut ev)?;
        Ok::<_, Error>((m.order(), s))
    })();
    match run {
        Ok((order, s)) => {
            let v = settle(&claim, &s, order, cfg.tol, &mut ev);
            Ok((v, ev))
        }
        Err(e) => {
            ev.notes.push(e.to_string());
            Ok((Verdict::Skipped, ev))
        }
    }
}

fn audit_integrality(id: ClaimId, params: &Params, cfg: &AuditConfig) -> Result<(Verdict, Evidence)> {
    let mut ev = Evidence::default();
    let Params::PrimePower { t, .. } = *params else {
        return Err(not_applicable(id, params, "parameters do not fit this claim"));
    };
    let (g, m) = match subject_matrix(id, params, cfg, &mut ev) {
        Ok(x) => x,
        Err(e @ Error::NotApplicable(_)) => return Err(e),
        Err(e) => {
            ev.notes.push(e.to_string());
            return Ok((Verdict::Skipped, ev));
        }
    };
    if m.order() > cfg.exact_cap {
        ev.notes.push(format!(
            "integrality needs exact arithmetic; order {} exceeds {}",
            m.order(),
            cfg.exact_cap
        ));
        return Ok((Verdict::Skipped, ev));
    }
    let s = match ground_truth(&m, cfg, &mut ev) {
        Ok(s) => s,
        Err(e) => {
            ev.notes.push(e.to_string());
            return Ok((Verdict::Skipped, ev));
        }
    };
    let cert = is_integral_spectrum(&m);
    let claimed_integral = id == ClaimId::T5_2 || t == 2;
    ev.fact("integral", cert.integral);
    ev.fact("claimed_integral", claimed_integral);
    if id == ClaimId::T5_2 {
        ev.fact("complete", is_complete(&g));
    }
    let mut v = Verdict::Verified;
    if cert.integral != claimed_integral {
        ev.failed_checks.push(format!(
            "integrality: computed {} but claimed {}",
            cert.integral, claimed_integral
        ));
        v = Verdict::Refuted;
    }
    if let Ok(claim) = claimed_spectrum(id, params) {
        match settle(&claim, &s, m.order(), cfg.tol, &mut ev) {
            Verdict::Verified => {}
            Verdict::MalformedClaim => v = Verdict::MalformedClaim,
            _ if v != Verdict::MalformedClaim => v = Verdict::Refuted,
            _ => {}
        }
    }
    Ok((v, ev))
}

fn audit_structure(id: ClaimId, params: &Params, cfg: &AuditConfig) -> Result<(Verdict, Evidence)> {
    let mut ev = Evidence::default();
    let Params::N { n } = *params else {
        return Err(not_applicable(id, params, "parameters do not fit this claim"));
    };
    let g = subject(id, params)?;
    ev.order = Some(g.order());
    let tree = is_tree(&g);
    let star = is_star(&g);
    ev.fact("tree", tree);
    ev.fact("star", star);
    match id {
        ClaimId::T4_3 => {
            let two_p = n % 2 == 0 && is_prime(n / 2);
            ev.fact("n_is_2p", two_p);
            if tree && !two_p {
                ev.failed_checks
                    .push(format!("structure: Γ(Z_{n}) is a tree but {n} is not 2p"));
            }
            if two_p && !tree {
                ev.failed_checks
                    .push(format!("structure: {n} = 2p but Γ(Z_{n}) is not a tree"));
            }
            if two_p && !star {
                ev.failed_checks
                    .push(format!("structure: {n} = 2p but Γ(Z_{n}) is not a star"));
            }
        }
        ClaimId::T4_2 => {
            if !tree {
                return Err(not_applicable(id, params, "Γ(Z_n) is not a tree"));
            }
            let irreducible = is_irreducible(&eccentricity_matrix(&g));
            ev.fact("irreducible", irreducible);
            if !irreducible {
                ev.failed_checks
                    .push("irreducibility: eccentricity matrix is reducible".into());
            }
        }
        ClaimId::T4_1 => {
            if !tree {
                return Err(not_applicable(id, params, "Γ(Z_n) is not a tree"));
            }
            if g.order() < 3 {
                return Err(not_applicable(
                    id,
                    params,
                    "trees of order below 3 (K1, P2) are excluded",
                ));
            }
            if g.order() > cfg.max_order {
                ev.notes.push(format!("order {} exceeds {}", g.order(), cfg.max_order));
                return Ok((Verdict::Skipped, ev));
            }
            let s = match ground_truth(&eccentricity_matrix(&g), cfg, &mut ev) {
                Ok(s) => s,
                Err(e) => {
                    ev.notes.push(e.to_string());
                    return Ok((Verdict::Skipped, ev));
                }
            };
            let least = s.least().map_or(0.0, SpecValue::to_f64);
            ev.fact("least_eigenvalue", SpecValue::Float(least));
            let at_minus_two = (least + 2.0).abs() <= cfg.tol;
            if least > -2.0 + cfg.tol {
                ev.failed_checks
                    .push(format!("least eigenvalue {} exceeds -2", SpecValue::Float(least)));
            }
            if at_minus_two != star {
                ev.failed_checks
                    .push(format!("least eigenvalue equals -2: {at_minus_two}, but star: {star}"));
            }
        }
        _ => unreachable!("structure claims are 4.1 to 4.3"),
    }
    let v = if ev.failed_checks.is_empty() {
        Verdict::Verified
    } else {
        Verdict::Refuted
    };
    Ok((v, ev))
}

fn audit_energy(id: ClaimId, params: &Params, cfg: &AuditConfig) -> Result<(Verdict, Evidence)> {
    let mut ev = Evidence::default();
    let (g, m) = match subject_matrix(id, params, cfg, &mut ev) {
        Ok(x) => x,
        Err(e @ Error::NotApplicable(_)) => return Err(e),
        Err(e) => {
            ev.notes.push(e.to_string());
            return Ok((Verdict::Skipped, ev));
        }
    };
    let s = match ground_truth(&m, cfg, &mut ev) {
        Ok(s) => s,
        Err(e) => {
            ev.notes.push(e.to_string());
            return Ok((Verdict::Skipped, ev));
        }
    };
    match (id, *params) {
        (ClaimId::T6_1 | ClaimId::T6_2, _) => {
            let claimed: i64 = match *params {
                Params::Pair { p1, p2 } => 2 * (p1 as i64 + p2 as i64 - 4),
                Params::Prime { p } => 2 * p as i64 * (p as i64 - 1) - 2,
                _ => unreachable!("subject() accepted the parameters"),
            };
            ev.fact("claimed_energy", claimed);
            let claimed_q = BigRational::from_integer(claimed.into());
            let (ok, dev) = match exact_energy(&s) {
                Some(e) => {
                    ev.fact("energy", SpecValue::rational(e.clone()));
                    let d = (&e - &claimed_q).abs();
                    (d.is_zero(), d.to_f64().unwrap_or(f64::INFINITY))
                }
                None => {
                    let e = energy(&s);
                    ev.fact("energy", SpecValue::Float(e));
                    let d = (e - claimed as f64).abs();
                    (d <= cfg.tol, d)
                }
            };
            ev.max_deviation = Some(dev);
            if ok {
                Ok((Verdict::Verified, ev))
            } else {
                ev.failed_checks.push("energy mismatch".into());
                Ok((Verdict::Refuted, ev))
            }
        }
        (ClaimId::T6_3 | ClaimId::T6_4, _) => {
            let (bound, eig_bound) = match *params {
                Params::Pair { p1, p2 } => {
                    let k = (p1 + p2 - 2) as f64;
                    (3.0 * k * k, 2.0 * k)
                }
                Params::Prime { p } => {
                    let k = (p * p - 1) as f64;
                    (3.0 * k * k, 2.0 * k)
                }
                _ => unreachable!("subject() accepted the parameters"),
            };
            let comp = eccentricity_matrix(&complement(&g));
            let sc = match spectrum(&comp, &options(cfg)) {
                Ok(sc) => sc,
                Err(e) => {
                    ev.notes.push(e.to_string());
                    return Ok((Verdict::Skipped, ev));
                }
            };
            let (eg, ec) = (energy(&s), energy(&sc));
            let gap = (eg - ec).abs();
            let max_abs = s
                .values_f64()
                .into_iter()
                .chain(sc.values_f64())
                .fold(0.0f64, |acc, v| acc.max(v.abs()));
            ev.fact("energy", SpecValue::Float(eg));
            ev.fact("energy_complement", SpecValue::Float(ec));
            ev.fact("gap", SpecValue::Float(gap));
            ev.fact("bound", SpecValue::Float(bound));
            ev.fact("max_abs_eigenvalue", SpecValue::Float(max_abs));
            ev.fact("eigenvalue_bound", SpecValue::Float(eig_bound));
            ev.fact("eigenvalue_bound_holds", max_abs <= eig_bound + cfg.tol);
            if gap <= bound {
                Ok((Verdict::Verified, ev))
            } else {
                ev.failed_checks.push(format!("energy gap {gap} exceeds {bound}"));
                Ok((Verdict::Refuted, ev))
            }
        }
        _ => unreachable!("energy claims are 6.1 to 6.4"),
    }
}

/// Audits one claim at one parameter point.
pub fn audit(id: ClaimId, params: &Params, cfg: &AuditConfig) -> AuditVerdict {
    let result = match id.claim().kind {
        ClaimKind::Spectrum => audit_spectral(id, params, cfg),
        ClaimKind::Integrality => audit_integrality(id, params, cfg),
        ClaimKind::Structure => audit_structure(id, params, cfg),
        ClaimKind::Energy => audit_energy(id, params, cfg),
    };
    match result {
        Ok((v, ev)) => verdict(id, params, v, ev),
        Err(e) => from_error(id, params, e, Evidence::default()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(id: ClaimId, params: Params) -> AuditVerdict {
        audit(id, &params, &AuditConfig::default())
    }

    #[test]
    fn semiprime_family_verified() {
        let v = run(ClaimId::T3_1, Params::Pair { p1: 5, p2: 7 });
        assert_eq!(v.verdict, Verdict::Verified, "{v:?}");
        assert_eq!(v.evidence.max_deviation, Some(0.0));
    }

    #[test]
    fn semiprime_claim_fails_with_two() {
        let v = run(ClaimId::T3_1, Params::Pair { p1: 2, p2: 7 });
        assert_eq!(v.verdict, Verdict::Refuted);
    }

    #[test]
    fn prime_cube_refuted_with_trace_violation() {
        let v = run(ClaimId::T3_2, Params::Prime { p: 3 });
        assert_eq!(v.verdict, Verdict::Refuted);
        assert_eq!(v.evidence.claimed_trace.as_deref(), Some("-6/5"));
        assert_eq!(v.evidence.claimed_trace_zero, Some(false));
        assert_eq!(v.evidence.residual.as_deref(), Some("x^2 - 11*x - 2"));
        assert_eq!(
            run(ClaimId::T3_2, Params::Prime { p: 2 }).verdict,
            Verdict::NotApplicable
        );
    }

    #[test]
    fn malformed_counts() {
        for (id, p) in [
            (ClaimId::T3_3, 2),
            (ClaimId::T3_3, 3),
            (ClaimId::T5_3, 3),
            (ClaimId::T5_3, 5),
        ] {
            let v = run(id, Params::Prime { p });
            assert_eq!(v.verdict, Verdict::MalformedClaim, "{id} p={p}");
            assert!(v
                .evidence
                .failed_checks
                .iter()
                .any(|c| c.starts_with("multiplicity count")));
        }
        let v = run(ClaimId::T3_4, Params::Pair { p1: 2, p2: 3 });
        assert_eq!(v.verdict, Verdict::MalformedClaim);
    }

    #[test]
    fn tree_structure() {
        assert_eq!(run(ClaimId::T4_3, Params::N { n: 14 }).verdict, Verdict::Verified);
        assert_eq!(run(ClaimId::T4_3, Params::N { n: 15 }).verdict, Verdict::Verified);
        for n in [8, 9] {
            let v = run(ClaimId::T4_3, Params::N { n });
            assert_eq!(v.verdict, Verdict::Refuted, "n={n}");
            assert_eq!(v.evidence.facts["tree"], "true");
            assert_eq!(v.evidence.facts["n_is_2p"], "false");
        }
        assert_eq!(run(ClaimId::T4_1, Params::N { n: 14 }).verdict, Verdict::Verified);
        assert_eq!(run(ClaimId::T4_1, Params::N { n: 9 }).verdict, Verdict::NotApplicable);
        assert_eq!(run(ClaimId::T4_1, Params::N { n: 12 }).verdict, Verdict::NotApplicable);
        assert_eq!(run(ClaimId::T4_2, Params::N { n: 8 }).verdict, Verdict::Verified);
        assert_eq!(run(ClaimId::T4_3, Params::N { n: 7 }).verdict, Verdict::NotApplicable);
    }

    #[test]
    fn integrality_claims() {
        let v = run(ClaimId::T5_1, Params::PrimePower { p: 5, t: 2 });
        assert_eq!(v.verdict, Verdict::Verified, "{v:?}");
        let v = run(ClaimId::T5_1, Params::PrimePower { p: 2, t: 3 });
        assert_eq!(v.verdict, Verdict::Verified);
        assert_eq!(v.evidence.facts["integral"], "false");
        let v = run(ClaimId::T5_2, Params::PrimePower { p: 3, t: 2 });
        assert_eq!(v.verdict, Verdict::Verified);
        let v = run(ClaimId::T5_2, Params::PrimePower { p: 2, t: 6 });
        assert_eq!(v.verdict, Verdict::Verified);
        assert_eq!(v.evidence.facts["complete"], "true");
    }

    #[test]
    fn energy_claims() {
        assert_eq!(
            run(ClaimId::T6_1, Params::Pair { p1: 5, p2: 7 }).verdict,
            Verdict::Verified
        );
        let v = run(ClaimId::T6_2, Params::Prime { p: 3 });
        assert_eq!(v.verdict, Verdict::Verified);
        assert_eq!(v.evidence.facts["energy"], "10");
        let v = run(ClaimId::T6_3, Params::Pair { p1: 3, p2: 5 });
        assert_eq!(v.verdict, Verdict::Verified);
        assert_eq!(v.evidence.facts["bound"], "108");
        assert_eq!(v.evidence.facts["eigenvalue_bound_holds"], "true");
        assert_eq!(run(ClaimId::T6_4, Params::Prime { p: 5 }).verdict, Verdict::Verified);
    }

    #[test]
    fn oversize_instances_are_skipped() {
        let cfg = AuditConfig {
            max_order: 10,
            ..AuditConfig::default()
        };
        let v = audit(ClaimId::T3_1, &Params::Pair { p1: 7, p2: 11 }, &cfg);
        assert_eq!(v.verdict, Verdict::Skipped);
        assert_eq!(v.evidence.order, Some(16));
    }

    #[test]
    fn evidence_is_deterministic() {
        let a = serde_json::to_string(&run(ClaimId::T3_2, Params::Prime { p: 5 })).unwrap();
        let b = serde_json::to_string(&run(ClaimId::T3_2, Params::Prime { p: 5 })).unwrap();
        assert_eq!(a, b);
    }
}
