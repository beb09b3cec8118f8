//! Symmetric eigenvalues, spectra with multiplicities, energy and spectral radius.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::ecc::eccentricity_matrix;
use crate::error::{domain, Error, Result};
use crate::exact::{char_poly, integer_roots, IntMatrix, IntPolynomial};
use crate::graph::{build_zdg, complement};
use crate::number_theory::is_prime;

pub const JACOBI_TOL: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;
pub const CLUSTER_TOL: f64 = 1e-6;
pub const EXACT_CAP: usize = 150;

/// Eigenvalues (ascending) and, column `k` of `vectors`, the matching
/// eigenvector. `vectors` is row-major `n x n`.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<f64>,
}

fn check_symmetric(a: &[f64], n: usize) -> Result<f64> {
    if a.len() != n * n {
        return Err(domain(format!("expected {} entries, got {}", n * n, a.len())));
    }
    let scale = a.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
    for i in 0..n {
        for j in i + 1..n {
            let gap = (a[i * n + j] - a[j * n + i]).abs();
            if gap > 1e-12 * scale || gap.is_nan() {
                return Err(Error::NotSymmetric { i, j, gap });
            }
        }
    }
    Ok(a.iter().map(|v| v * v).sum::<f64>().sqrt())
}

fn off_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi. Stops when the off-diagonal Frobenius norm falls below
/// `tol * max(1, ||A||_F)`.
fn jacobi(a: &[f64], n: usize, tol: f64, want_vectors: bool) -> Result<SymmetricEigen> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(domain("tolerance must be positive"));
    }
    let frob = check_symmetric(a, n)?;
    let target = tol * frob.max(1.0);
    let mut a = a.to_vec();
    let mut v = if want_vectors {
        let mut id = vec![0.0; n * n];
        for i in 0..n {
            id[i * n + i] = 1.0;
        }
        id
    } else {
        Vec::new()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a, n);
        if off <= target {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::Convergence { sweeps, off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                if want_vectors {
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let vectors = if want_vectors {
        let mut out = vec![0.0; n * n];
        for (new, &old) in order.iter().enumerate() {
            for k in 0..n {
                out[k * n + new] = v[k * n + old];
            }
        }
        out
    } else {
        Vec::new()
    };
    Ok(SymmetricEigen { values, vectors })
}

/// Eigenvalues and eigenvectors of a symmetric row-major `n x n` matrix.
pub fn symmetric_eigen(a: &[f64], n: usize, tol: f64) -> Result<SymmetricEigen> {
    jacobi(a, n, tol, true)
}

/// Ascending eigenvalues of a symmetric row-major `n x n` matrix.
pub fn eigenvalues_symmetric(a: &[f64], n: usize, tol: f64) -> Result<Vec<f64>> {
    Ok(jacobi(a, n, tol, false)?.values)
}

/// Groups sorted values into `(mean, count)` runs; a run starts a new
/// cluster once a value is more than `tol` above the run's first value.
pub fn cluster(sorted: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    let mut start = 0;
    while start < sorted.len() {
        let first = sorted[start];
        let mut end = start + 1;
        while end < sorted.len() && sorted[end] - first <= tol {
            end += 1;
        }
        let run = &sorted[start..end];
        out.push((run.iter().sum::<f64>() / run.len() as f64, run.len()));
        start = end;
    }
    out
}

/// Rounds to `digits` significant digits and prints the shortest form.
/// Magnitudes below `1e-12` print as `0`: they are rounding noise around a
/// zero eigenvalue.
pub fn format_float(v: f64, digits: usize) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v.abs() < 1e-12 {
        return "0".to_string();
    }
    let rounded: f64 = format!("{:.*e}", digits.saturating_sub(1), v)
        .parse()
        .expect("formatted float parses");
    if rounded == 0.0 {
        "0".to_string()
    } else {
        rounded.to_string()
    }
}

/// `v` rounded to `digits` significant digits.
pub fn round_sig(v: f64, digits: usize) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{:.*e}", digits.saturating_sub(1), v)
        .parse()
        .expect("formatted float parses")
}

/// An eigenvalue, exact when it is known exactly.
#[derive(Debug, Clone, PartialEq)]
pub enum SpecValue {
    Int(BigInt),
    Rational(BigRational),
    Float(f64),
}

impl SpecValue {
    /// Exact rationals with denominator 1 become `Int`.
    pub fn rational(q: BigRational) -> SpecValue {
        if q.is_integer() {
            SpecValue::Int(q.to_integer())
        } else {
            SpecValue::Rational(q)
        }
    }

    pub fn int(v: i64) -> SpecValue {
        SpecValue::Int(BigInt::from(v))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            SpecValue::Int(v) => v.to_f64().unwrap_or(f64::NAN),
            SpecValue::Rational(q) => q.to_f64().unwrap_or(f64::NAN),
            SpecValue::Float(f) => *f,
        }
    }

    /// Exact value; floats convert to the rational they represent.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            SpecValue::Int(v) => Some(BigRational::from_integer(v.clone())),
            SpecValue::Rational(q) => Some(q.clone()),
            SpecValue::Float(f) => BigRational::from_float(*f),
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, SpecValue::Float(_))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SpecValue::Int(_) => "int",
            SpecValue::Rational(_) => "rational",
            SpecValue::Float(_) => "float",
        }
    }

    /// Total order by numeric value; exact pairs compare exactly.
    pub fn cmp_value(&self, other: &SpecValue) -> Ordering {
        match (self.is_exact(), other.is_exact()) {
            (true, true) => self.to_rational().cmp(&other.to_rational()),
            _ => self.to_f64().total_cmp(&other.to_f64()),
        }
    }
}

impl fmt::Display for SpecValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecValue::Int(v) => write!(f, "{v}"),
            SpecValue::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            SpecValue::Float(v) => f.write_str(&format_float(*v, 12)),
        }
    }
}

impl Serialize for SpecValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Multiset of eigenvalues as strictly increasing `(value, multiplicity)` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    entries: Vec<(SpecValue, usize)>,
    cluster_tol: Option<f64>,
    char_poly: Option<IntPolynomial>,
    residual: Option<IntPolynomial>,
}

impl Spectrum {
    /// Sorts and merges equal exact values; zero multiplicities are dropped.
    pub fn from_entries(entries: Vec<(SpecValue, usize)>) -> Spectrum {
        let mut entries: Vec<(SpecValue, usize)> = entries.into_iter().filter(|(_, m)| *m > 0).collect();
        entries.sort_by(|a, b| a.0.cmp_value(&b.0));
        let mut merged: Vec<(SpecValue, usize)> = Vec::with_capacity(entries.len());
        for (v, m) in entries {
            match merged.last_mut() {
                Some((last, lm)) if last.is_exact() && v.is_exact() && last.cmp_value(&v) == Ordering::Equal => {
                    *lm += m
                }
                _ => merged.push((v, m)),
            }
        }
        Spectrum {
            entries: merged,
            cluster_tol: None,
            char_poly: None,
            residual: None,
        }
    }

    pub fn entries(&self) -> &[(SpecValue, usize)] {
        &self.entries
    }

    pub fn total(&self) -> usize {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    /// Clustering tolerance used for the float entries, if any.
    pub fn cluster_tol(&self) -> Option<f64> {
        self.cluster_tol
    }

    /// Exact characteristic polynomial, present for exact-mode spectra.
    pub fn char_poly(&self) -> Option<&IntPolynomial> {
        self.char_poly.as_ref()
    }

    /// Factor left after removing integer roots (exact mode only).
    pub fn residual(&self) -> Option<&IntPolynomial> {
        self.residual.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.entries.iter().all(|(v, _)| v.is_exact())
    }

    /// Every eigenvalue, repeated by multiplicity, ascending.
    pub fn values(&self) -> Vec<SpecValue> {
        self.entries
            .iter()
            .flat_map(|(v, m)| std::iter::repeat_n(v.clone(), *m))
            .collect()
    }

    pub fn values_f64(&self) -> Vec<f64> {
        self.values().iter().map(SpecValue::to_f64).collect()
    }

    /// Exact eigenvalue sum when every value is exact.
    pub fn exact_trace(&self) -> Option<BigRational> {
        self.is_exact().then(|| {
            self.entries.iter().fold(BigRational::zero(), |acc, (v, m)| {
                acc + v.to_rational().expect("exact") * BigRational::from_integer((*m).into())
            })
        })
    }

    pub fn float_trace(&self) -> f64 {
        self.entries.iter().map(|(v, m)| v.to_f64() * *m as f64).sum()
    }

    pub fn least(&self) -> Option<&SpecValue> {
        self.entries.first().map(|(v, _)| v)
    }

    pub fn largest(&self) -> Option<&(SpecValue, usize)> {
        self.entries.last()
    }
}

impl Serialize for Spectrum {
    /// A list of `{value, kind, multiplicity}` records.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            value: &'a SpecValue,
            kind: &'static str,
            multiplicity: usize,
        }
        s.collect_seq(self.entries.iter().map(|(v, m)| Entry {
            value: v,
            kind: v.kind(),
            multiplicity: *m,
        }))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumMode {
    Exact,
    Float,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumOptions {
    pub mode: SpectrumMode,
    pub exact_cap: usize,
    pub cluster_tol: f64,
    pub jacobi_tol: f64,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions {
            mode: SpectrumMode::Auto,
            exact_cap: EXACT_CAP,
            cluster_tol: CLUSTER_TOL,
            jacobi_tol: JACOBI_TOL,
        }
    }
}

impl SpectrumOptions {
    pub fn with_mode(mode: SpectrumMode) -> Self {
        SpectrumOptions {
            mode,
            ..Self::default()
        }
    }

    /// Mode actually used for a matrix of this order.
    pub fn resolve(&self, order: usize) -> Result<SpectrumMode> {
        match self.mode {
            SpectrumMode::Auto if order <= self.exact_cap => Ok(SpectrumMode::Exact),
            SpectrumMode::Auto => Ok(SpectrumMode::Float),
            SpectrumMode::Exact if order > self.exact_cap => Err(Error::Oversize {
                order,
                cap: self.exact_cap,
            }),
            m => Ok(m),
        }
    }
}

/// Spectrum of a symmetric integer matrix.
///
/// Exact mode: integer roots of the exact characteristic polynomial become
/// `Int` entries; the remaining roots are the Jacobi eigenvalues left after
/// removing, for each integer root, its multiplicity's worth of nearest
/// values, clustered and tagged `Float`.
pub fn spectrum(m: &IntMatrix, opts: &SpectrumOptions) -> Result<Spectrum> {
    let n = m.order();
    let mode = opts.resolve(n)?;
    let floats = eigenvalues_symmetric(&m.to_f64(), n, opts.jacobi_tol)?;
    match mode {
        SpectrumMode::Float => {
            let entries = cluster(&floats, opts.cluster_tol)
                .into_iter()
                .map(|(v, k)| (SpecValue::Float(v), k))
                .collect();
            let mut s = Spectrum::from_entries(entries);
            s.cluster_tol = Some(opts.cluster_tol);
            Ok(s)
        }
        _ => {
            let cp = char_poly(m);
            let roots = integer_roots(&cp);
            let mut rest = floats;
            let mut entries: Vec<(SpecValue, usize)> = Vec::new();
            for (r, mult) in &roots.roots {
                let target = r.to_f64().unwrap_or(f64::NAN);
                for _ in 0..*mult {
                    let idx = rest
                        .iter()
                        .enumerate()
                        .min_by(|a, b| (a.1 - target).abs().total_cmp(&(b.1 - target).abs()))
                        .map(|(i, _)| i)
                        .expect("as many float eigenvalues as polynomial roots");
                    rest.remove(idx);
                }
                entries.push((SpecValue::Int(r.clone()), *mult));
            }
            let has_floats = !rest.is_empty();
            entries.extend(
                cluster(&rest, opts.cluster_tol)
                    .into_iter()
                    .map(|(v, k)| (SpecValue::Float(v), k)),
            );
            let mut s = Spectrum::from_entries(entries);
            s.cluster_tol = has_floats.then_some(opts.cluster_tol);
            s.char_poly = Some(cp);
            s.residual = Some(roots.residual);
            Ok(s)
        }
    }
}

/// Whether the eigenvalues sum to zero, as the trace of a zero-diagonal
/// matrix must: exactly from the characteristic polynomial when there is
/// one, else within `1e-7` per vertex.
pub fn trace_vanishes(s: &Spectrum) -> bool {
    let n = s.total();
    match s.char_poly() {
        Some(cp) if n > 0 => cp.coeffs().get(n - 1).is_none_or(Zero::is_zero),
        Some(_) => true,
        None => s.float_trace().abs() <= 1e-7 * n.max(1) as f64,
    }
}

pub fn energy(s: &Spectrum) -> f64 {
    s.entries().iter().map(|(v, m)| v.to_f64().abs() * *m as f64).sum()
}

/// Energy as an exact rational when every eigenvalue is exact.
pub fn exact_energy(s: &Spectrum) -> Option<BigRational> {
    s.is_exact().then(|| {
        s.entries().iter().fold(BigRational::zero(), |acc, (v, m)| {
            acc + v.to_rational().expect("exact").abs() * BigRational::from_integer((*m).into())
        })
    })
}

pub fn spectral_radius(s: &Spectrum) -> f64 {
    s.entries().iter().map(|(v, _)| v.to_f64().abs()).fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyReport {
    pub energy: f64,
    pub spectral_radius: f64,
    pub least_eigenvalue: f64,
    pub exact_energy: Option<String>,
}

pub fn energy_report(s: &Spectrum) -> EnergyReport {
    EnergyReport {
        energy: energy(s),
        spectral_radius: spectral_radius(s),
        least_eigenvalue: s.least().map_or(0.0, SpecValue::to_f64),
        exact_energy: exact_energy(s).map(|q| SpecValue::rational(q).to_string()),
    }
}

/// Families where the energy gap bound is stated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapFamily {
    /// `n = p1 * p2`, distinct primes.
    Semiprime { p1: u64, p2: u64 },
    /// `n = p^3`.
    PrimeCube { p: u64 },
}

impl GapFamily {
    pub fn n(&self) -> u64 {
        match *self {
            GapFamily::Semiprime { p1, p2 } => p1 * p2,
            GapFamily::PrimeCube { p } => p * p * p,
        }
    }

    pub fn bound(&self) -> f64 {
        match *self {
            GapFamily::Semiprime { p1, p2 } => 3.0 * ((p1 + p2 - 2) as f64).powi(2),
            GapFamily::PrimeCube { p } => 3.0 * ((p * p - 1) as f64).powi(2),
        }
    }

    fn check(&self) -> Result<()> {
        match *self {
            GapFamily::Semiprime { p1, p2 } if is_prime(p1) && is_prime(p2) && p1 != p2 => Ok(()),
            GapFamily::PrimeCube { p } if is_prime(p) => Ok(()),
            other => Err(Error::NotApplicable(format!("{other:?} is not a prime family"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyGap {
    pub energy_graph: f64,
    pub energy_complement: f64,
    pub gap: f64,
    pub bound: f64,
    pub within_bound: bool,
}

/// `|E(ε(G)) - E(ε(complement G))|` for `G = Γ(Z_n)` against the stated bound.
pub fn energy_gap(family: GapFamily, opts: &SpectrumOptions) -> Result<EnergyGap> {
    family.check()?;
    let g = build_zdg(family.n())?;
    let e_g = energy(&spectrum(&eccentricity_matrix(&g), opts)?);
    let e_c = energy(&spectrum(&eccentricity_matrix(&complement(&g)), opts)?);
    let gap = (e_g - e_c).abs();
    let bound = family.bound();
    Ok(EnergyGap {
        energy_graph: e_g,
        energy_complement: e_c,
        gap,
        bound,
        within_bound: gap <= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_extended_zdg, Graph};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ecc_of(g: &Graph) -> IntMatrix {
        eccentricity_matrix(g)
    }

    #[test]
    fn diagonal_input() {
        let a = [3.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 2.0];
        assert_eq!(eigenvalues_symmetric(&a, 3, 1e-12).unwrap(), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn rejects_asymmetric_and_bad_tolerance() {
        let a = [0.0, 1.0, 2.0, 0.0];
        assert!(matches!(
            eigenvalues_symmetric(&a, 2, 1e-12),
            Err(Error::NotSymmetric { .. })
        ));
        assert!(eigenvalues_symmetric(&[1.0], 1, 0.0).is_err());
    }

    #[test]
    fn z8_float_eigenvalues() {
        let m = ecc_of(&build_zdg(8).unwrap());
        let ev = eigenvalues_symmetric(&m.to_f64(), 3, 1e-12).unwrap();
        let r3 = 3f64.sqrt();
        for (got, want) in ev.iter().zip([-2.0, 1.0 - r3, 1.0 + r3]) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
    }

    #[test]
    fn z27_float_eigenvalues() {
        let m = ecc_of(&build_zdg(27).unwrap());
        let ev = eigenvalues_symmetric(&m.to_f64(), 8, 1e-12).unwrap();
        let d = 129f64.sqrt();
        let want = [-2.0, -2.0, -2.0, -2.0, -2.0, -1.0, (11.0 - d) / 2.0, (11.0 + d) / 2.0];
        for (got, want) in ev.iter().zip(want) {
            assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        }
    }

    #[test]
    fn backward_error_on_random_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let n = rng.gen_range(2..25);
            let mut a = vec![0.0; n * n];
            for i in 0..n {
                for j in i..n {
                    let v: f64 = rng.gen_range(-10.0..10.0);
                    a[i * n + j] = v;
                    a[j * n + i] = v;
                }
            }
            let eig = symmetric_eigen(&a, n, 1e-12).unwrap();
            let norm = a.iter().map(|v| v * v).sum::<f64>().sqrt();
            let mut resid = 0.0;
            for i in 0..n {
                for k in 0..n {
                    let av: f64 = (0..n).map(|j| a[i * n + j] * eig.vectors[j * n + k]).sum();
                    let r = av - eig.vectors[i * n + k] * eig.values[k];
                    resid += r * r;
                }
            }
            assert!(resid.sqrt() <= 1e-8 * norm, "residual {}", resid.sqrt());
            assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn clustering() {
        let c = cluster(&[-2.0, -2.0 + 1e-9, -1.0, 3.0, 3.0 + 2e-6], 1e-6);
        assert_eq!(c.len(), 4);
        assert_eq!(c[0].1, 2);
        assert!((c[0].0 + 2.0).abs() < 1e-8);
    }

    #[test]
    fn float_formatting() {
        assert_eq!(format_float(2.732050807568877, 12), "2.73205080757");
        assert_eq!(format_float(-2.0000000000001, 12), "-2");
        assert_eq!(format_float(-1e-17, 12), "0");
        assert_eq!(format_float(123456789012345.0, 12), "123456789012000");
    }

    #[test]
    fn exact_spectra() {
        let s = spectrum(&ecc_of(&Graph::complete_on(4)), &SpectrumOptions::default()).unwrap();
        assert_eq!(s.entries(), &[(SpecValue::int(-1), 3), (SpecValue::int(3), 1)]);

        let s = spectrum(&ecc_of(&build_zdg(35).unwrap()), &SpectrumOptions::default()).unwrap();
        assert_eq!(
            s.entries(),
            &[(SpecValue::int(-2), 8), (SpecValue::int(6), 1), (SpecValue::int(10), 1)]
        );
        assert_eq!(energy(&s), 32.0);
        assert_eq!(spectral_radius(&s), 10.0);
        assert_eq!(exact_energy(&s), Some(BigRational::from_integer(32.into())));

        let s = spectrum(&ecc_of(&build_extended_zdg(8).unwrap()), &SpectrumOptions::default()).unwrap();
        assert_eq!(s.entries(), &[(SpecValue::int(-1), 2), (SpecValue::int(2), 1)]);
        assert_eq!(s.char_poly().unwrap(), &IntPolynomial::from_i64(&[-2, -3, 0, 1]));
    }

    #[test]
    fn exact_mode_with_residual() {
        let s = spectrum(&ecc_of(&build_zdg(8).unwrap()), &SpectrumOptions::default()).unwrap();
        assert_eq!(s.total(), 3);
        assert_eq!(s.entries()[0], (SpecValue::int(-2), 1));
        assert!(matches!(s.entries()[1].0, SpecValue::Float(_)));
        assert_eq!(s.residual().unwrap(), &IntPolynomial::from_i64(&[-2, -2, 1]));
        assert_eq!(s.cluster_tol(), Some(CLUSTER_TOL));
        assert!(exact_energy(&s).is_none());
    }

    #[test]
    fn zero_matrix() {
        for mode in [SpectrumMode::Exact, SpectrumMode::Float] {
            let s = spectrum(&IntMatrix::zeros(3), &SpectrumOptions::with_mode(mode)).unwrap();
            assert_eq!(energy(&s), 0.0);
            assert_eq!(spectral_radius(&s), 0.0);
            assert_eq!(s.total(), 3);
        }
    }

    #[test]
    fn oversize_exact_request() {
        let opts = SpectrumOptions {
            mode: SpectrumMode::Exact,
            exact_cap: 2,
            ..SpectrumOptions::default()
        };
        assert_eq!(
            spectrum(&IntMatrix::zeros(3), &opts),
            Err(Error::Oversize { order: 3, cap: 2 })
        );
        let auto = SpectrumOptions {
            exact_cap: 2,
            ..SpectrumOptions::default()
        };
        assert!(spectrum(&IntMatrix::zeros(3), &auto).unwrap().char_poly().is_none());
    }

    #[test]
    fn complement_energy_and_gap() {
        let g = complement(&build_zdg(35).unwrap());
        let s = spectrum(&ecc_of(&g), &SpectrumOptions::default()).unwrap();
        assert_eq!(exact_energy(&s), Some(BigRational::from_integer(16.into())));

        let gap = energy_gap(GapFamily::Semiprime { p1: 5, p2: 7 }, &SpectrumOptions::default()).unwrap();
        assert_eq!(gap.gap, 16.0);
        assert_eq!(gap.bound, 300.0);
        assert!(gap.within_bound);

        let cube = energy_gap(GapFamily::PrimeCube { p: 3 }, &SpectrumOptions::default()).unwrap();
        assert_eq!(cube.energy_complement, 10.0);

        assert!(matches!(
            energy_gap(GapFamily::Semiprime { p1: 4, p2: 7 }, &SpectrumOptions::default()),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn from_entries_merges_and_sorts() {
        let s = Spectrum::from_entries(vec![
            (SpecValue::int(2), 1),
            (SpecValue::rational(BigRational::new((-4).into(), 2.into())), 1),
            (SpecValue::int(-2), 2),
            (SpecValue::Float(0.5), 0),
        ]);
        assert_eq!(s.entries(), &[(SpecValue::int(-2), 3), (SpecValue::int(2), 1)]);
    }
}
