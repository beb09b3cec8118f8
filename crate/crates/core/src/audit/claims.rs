//! Claimed spectra, as stated closed forms evaluated at concrete parameters.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use super::{ClaimId, Params};
use crate::error::{Error, Result};
use crate::number_theory::is_prime;
use crate::spectra::{SpecValue, Spectrum};

/// A claimed spectrum plus anything notable about how it was produced.
#[derive(Debug, Clone, PartialEq)]
pub struct ClaimedSpectrum {
    pub spectrum: Spectrum,
    pub notes: Vec<String>,
}

pub(crate) fn not_applicable(id: ClaimId, params: &Params, why: &str) -> Error {
    Error::NotApplicable(format!("{id} at {params}: {why}"))
}

fn int(v: i128) -> SpecValue {
    SpecValue::Int(BigInt::from(v))
}

fn frac(n: i128, d: i128) -> SpecValue {
    SpecValue::rational(BigRational::new(n.into(), d.into()))
}

/// Counts below zero cannot be multiplicities; clamp to zero and note it.
fn mult(v: i128, notes: &mut Vec<String>, what: &str) -> usize {
    if v < 0 {
        notes.push(format!("{what} has negative multiplicity {v}"));
        0
    } else {
        v as usize
    }
}

pub(crate) fn require_prime(id: ClaimId, params: &Params, p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(not_applicable(id, params, &format!("{p} is not prime")))
    }
}

pub(crate) fn require_distinct_primes(id: ClaimId, params: &Params, p1: u64, p2: u64) -> Result<()> {
    require_prime(id, params, p1)?;
    require_prime(id, params, p2)?;
    if p1 == p2 {
        return Err(not_applicable(id, params, "primes must be distinct"));
    }
    Ok(())
}

/// All complex roots of a real polynomial given in descending coefficients,
/// by Durand–Kerner iteration.
pub(crate) fn complex_roots(desc: &[f64]) -> Vec<Complex64> {
    let lead = desc[0];
    let monic: Vec<f64> = desc.iter().map(|c| c / lead).collect();
    let deg = monic.len() - 1;
    let eval = |z: Complex64| monic.iter().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
    let radius = 1.0 + monic[1..].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let unit = seed / seed.norm();
    let mut z: Vec<Complex64> = (0..deg).map(|k| unit.powu(k as u32 + 1) * radius).collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-15 * radius {
            break;
        }
    }
    z.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    z
}

/// The stated spectrum for spectral claims; `NotApplicable` for parameters
/// outside the claim's hypotheses or for non-spectral claims.
pub fn claimed_spectrum(id: ClaimId, params: &Params) -> Result<ClaimedSpectrum> {
    let mut notes = Vec::new();
    let entries: Vec<(SpecValue, usize)> = match (id, *params) {
        (ClaimId::T3_1, Params::Pair { p1, p2 }) => {
            require_distinct_primes(id, params, p1, p2)?;
            let (a, b) = (p1 as i128, p2 as i128);
            vec![
                (int(-2), mult(a + b - 4, &mut notes, "-2")),
                (int(2 * a - 4), 1),
                (int(2 * b - 4), 1),
            ]
        }
        (ClaimId::T3_2, Params::Prime { p }) => {
            require_prime(id, params, p)?;
            if p == 2 {
                return Err(not_applicable(id, params, "the claim excludes p = 2"));
            }
            let q = p as i128;
            vec![
                (int(-1), mult(q - 2, &mut notes, "-1")),
                (int(-2), mult(q * q - q - 1, &mut notes, "-2")),
                (int(2 * q * q - 2 * q - 2), 1),
                (frac(q * q * q - 4 * q * q + q + 4, 2 * q * q - 2 * q - 2), 1),
            ]
        }
        (ClaimId::T3_3, Params::Prime { p }) => {
            require_prime(id, params, p)?;
            let q = p as f64;
            let lambda =
                (2.0 + 2.0 * q + q.powi(2) + 2.0 * q.powi(3) - 10.0 * q.powi(4) + 4.0 * q.powi(5) + q.powi(6)).sqrt();
            let base = -1.0 - q - q.powi(3);
            let pi = p as i128;
            vec![
                (int(-2), mult(pi * pi * (pi - 1), &mut notes, "-2")),
                (int(0), mult(pi * pi - 1, &mut notes, "0")),
                (SpecValue::Float(base - lambda), 1),
                (SpecValue::Float(base + lambda), 1),
            ]
        }
        (ClaimId::T3_4, Params::Pair { p1, p2 }) => {
            require_distinct_primes(id, params, p1, p2)?;
            let (a, b) = (p1 as i128, p2 as i128);
            let mut explicit = vec![
                (int(0), mult(a * a + 2 * a - 4, &mut notes, "0")),
                (int(-2), mult(a * (b - 1), &mut notes, "-2")),
                (int(2 * b - 6), 1),
                (int(2 * (a - 1) * (b - 1) - 4), 1),
            ];
            // the (-x)^(p1 - 2) factor
            explicit.push((int(0), mult(a - 2, &mut notes, "theta zero root")));
            // numerator of the remaining rational factor once the
            // denominator is cleared, q = p2 - 1
            let q = (b - 1) as f64;
            let bf = b as f64;
            let quartic = [
                -q,
                2.0 * q * (bf - 3.0),
                -9.0 * q * q - 4.0 * q,
                18.0 * q * q - 44.0 * q + 4.0 * q * (bf - 2.0),
                36.0 * q * q - 36.0 * q,
            ];
            let roots = complex_roots(&quartic);
            let scale = roots.iter().fold(1.0f64, |m, z| m.max(z.norm()));
            for z in roots {
                if z.im.abs() > 1e-9 * scale {
                    notes.push(format!("theta root {:.12}{:+.12}i is not real", z.re, z.im));
                }
                // a root landing on a listed eigenvalue is merged into it
                let hit = explicit
                    .iter_mut()
                    .find(|(v, _)| (v.to_f64() - z.re).abs() <= 1e-9 * scale);
                match hit {
                    Some((_, m)) => *m += 1,
                    None => explicit.push((SpecValue::Float(z.re), 1)),
                }
            }
            explicit
        }
        (ClaimId::T5_1, Params::PrimePower { p, t }) => {
            require_prime(id, params, p)?;
            if t != 2 {
                return Err(not_applicable(
                    id,
                    params,
                    "a closed-form spectrum is stated only for t = 2",
                ));
            }
            let q = p as i128;
            vec![(int(q - 2), 1), (int(-1), mult(q - 2, &mut notes, "-1"))]
        }
        (ClaimId::T5_2, Params::PrimePower { p, t }) => {
            require_prime(id, params, p)?;
            if t < 2 {
                return Err(not_applicable(id, params, "requires t >= 2"));
            }
            let z = (p as i128).pow(t - 1) - 1;
            vec![(int(-1), mult(z - 1, &mut notes, "-1")), (int(z - 1), 1)]
        }
        (ClaimId::T5_3, Params::Prime { p }) => {
            require_prime(id, params, p)?;
            let q = p as i128;
            vec![(int(-2), mult(2 * (q - 1), &mut notes, "-2")), (int(2 * q - 6), 2)]
        }
        _ => return Err(not_applicable(id, params, "no claimed spectrum for these parameters")),
    };
    Ok(ClaimedSpectrum {
        spectrum: Spectrum::from_entries(entries),
        notes,
    })
}
