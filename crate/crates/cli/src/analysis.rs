use clap::ValueEnum;
use serde_json::{json, Value};
use zdg_core::ecc::{eccentricity_matrix, is_irreducible};
use zdg_core::exact::IntMatrix;
use zdg_core::graph::{
    build_compressed_zdg, build_extended_zdg, build_zdg, complement, is_complete, is_connected, is_star, is_tree, Graph,
};
use zdg_core::spectra::{energy_report, spectrum, trace_vanishes, SpectrumMode, SpectrumOptions};
use zdg_core::Result;

use crate::report::num;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Zdg,
    Extended,
    Compressed,
    Complement,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Zdg => "zdg",
            Variant::Extended => "extended",
            Variant::Compressed => "compressed",
            Variant::Complement => "complement",
        }
    }

    pub fn build(self, n: u64) -> Result<Graph> {
        match self {
            Variant::Zdg => build_zdg(n),
            Variant::Extended => build_extended_zdg(n),
            Variant::Compressed => build_compressed_zdg(n),
            Variant::Complement => build_zdg(n).map(|g| complement(&g)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Exact,
    Float,
    Auto,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Float => "float",
            Method::Auto => "auto",
        }
    }

    pub fn options(self) -> SpectrumOptions {
        SpectrumOptions::with_mode(match self {
            Method::Exact => SpectrumMode::Exact,
            Method::Float => SpectrumMode::Float,
            Method::Auto => SpectrumMode::Auto,
        })
    }
}

pub fn record(n: u64, variant: Variant, g: &Graph, m: &IntMatrix, opts: &SpectrumOptions) -> Result<Value> {
    let s = spectrum(m, opts)?;
    let e = energy_report(&s);
    Ok(json!({
        "n": n,
        "variant": variant.as_str(),
        "vertices": g.order(),
        "edges": g.edge_count(),
        "method": if s.char_poly().is_some() { "exact" } else { "float" },
        "spectrum": s,
        "char_poly": s.char_poly().map(ToString::to_string),
        "residual": s.residual().map(ToString::to_string),
        "integral": s.residual().map(|r| r.degree() == 0),
        "trace_zero": trace_vanishes(&s),
        "energy": num(e.energy),
        "exact_energy": e.exact_energy,
        "spectral_radius": num(e.spectral_radius),
        "least_eigenvalue": num(e.least_eigenvalue),
        "irreducible": is_irreducible(m),
        "connected": is_connected(g),
        "tree": is_tree(g),
        "star": is_star(g),
        "complete": is_complete(g),
    }))
}

/// Builds the graph for `n` and analyses it.
pub fn analyse(n: u64, variant: Variant, opts: &SpectrumOptions) -> Result<Value> {
    let g = variant.build(n)?;
    let m = eccentricity_matrix(&g);
    record(n, variant, &g, &m, opts)
}

pub const COLUMNS: [&str; 17] = [
    "n",
    "variant",
    "vertices",
    "edges",
    "method",
    "spectrum",
    "char_poly",
    "integral",
    "trace_zero",
    "energy",
    "spectral_radius",
    "least_eigenvalue",
    "irreducible",
    "connected",
    "tree",
    "star",
    "complete",
];
