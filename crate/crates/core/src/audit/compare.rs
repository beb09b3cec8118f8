use num_traits::{Signed, ToPrimitive, Zero};

use crate::spectra::{SpecValue, Spectrum};

/// Outcome of matching a claimed multiset against a computed one.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub matches: bool,
    /// Largest `|claimed - computed|` over matched pairs.
    pub max_deviation: f64,
    /// `(claimed, computed)` at the largest deviation.
    pub worst: Option<(SpecValue, SpecValue)>,
}

/// `|a - b|`, exactly when both sides have exact rational forms (floats
/// convert to the rational they store).
fn deviation(a: &SpecValue, b: &SpecValue) -> f64 {
    match (a.to_rational(), b.to_rational()) {
        (Some(x), Some(y)) => (x - y).abs().to_f64().unwrap_or(f64::INFINITY),
        _ => (a.to_f64() - b.to_f64()).abs(),
    }
}

/// Order-free multiset comparison. Both sides are sorted, then paired
/// position by position, which is the optimal pairing on the real line.
/// Exact pairs must agree exactly; any pair with a float side must agree
/// within `tol`. Multisets of different sizes never match.
pub fn compare_spectra(claimed: &Spectrum, computed: &Spectrum, tol: f64) -> Comparison {
    let a = claimed.values();
    let b = computed.values();
    let mut out = Comparison {
        matches: a.len() == b.len(),
        max_deviation: 0.0,
        worst: None,
    };
    for (x, y) in a.iter().zip(&b) {
        let d = deviation(x, y);
        let ok = if x.is_exact() && y.is_exact() {
            x.to_rational() == y.to_rational()
        } else {
            d <= tol
        };
        if !ok {
            out.matches = false;
        }
        if out.worst.is_none() || d > out.max_deviation {
            out.max_deviation = d;
            out.worst = Some((x.clone(), y.clone()));
        }
    }
    out
}

/// Claimed trace as a printable value, and whether it is zero (exactly for
/// exact multisets, within `tol * order` otherwise).
pub(crate) fn trace_of(s: &Spectrum, tol: f64) -> (String, bool) {
    match s.exact_trace() {
        Some(t) => {
            let zero = t.is_zero();
            (SpecValue::rational(t).to_string(), zero)
        }
        None => {
            let t = s.float_trace();
            let zero = t.abs() <= tol * (s.total().max(1) as f64);
            (SpecValue::Float(t).to_string(), zero)
        }
    }
}
