use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use qmi_orbits::{Shape, Spectrum};

use crate::SpectrumArgs;

fn parse_numbers(text: &str) -> Option<Vec<f64>> {
    let trimmed = text.trim().trim_start_matches('[').trim_end_matches(']');
    let v: Option<Vec<f64>> = trimmed
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().ok())
        .collect();
    v.filter(|v| !v.is_empty())
}

/// Reads weights inline or from a file (comma/whitespace separated, or a JSON array).
pub fn weights(source: &str) -> Result<Vec<f64>> {
    if let Some(v) = parse_numbers(source) {
        return Ok(v);
    }
    let path = Path::new(source);
    let text = fs::read_to_string(path).with_context(|| format!("reading spectrum file {}", path.display()))?;
    match parse_numbers(&text) {
        Some(v) => Ok(v),
        None => bail!("{} does not contain a list of numbers", path.display()),
    }
}

pub fn shape(s: &str) -> Result<Shape> {
    s.parse::<Shape>().map_err(|e| anyhow::anyhow!("{e}"))
}

fn default_dims(n: usize) -> Result<(usize, usize)> {
    Ok(match n {
        4 => (2, 2),
        6 => (2, 3),
        9 => (3, 3),
        16 => (4, 4),
        _ => bail!("cannot infer dimensions for {n} entries; pass --dims"),
    })
}

/// Weights are normalised on load, so `6,5,4,3,2,1` is accepted; lists already summing to 1
/// are kept as written.
pub fn spectrum(args: &SpectrumArgs) -> Result<Spectrum> {
    let w = weights(&args.spectrum)?;
    let dims = match &args.dims {
        Some(d) => shape(d)?.dims(),
        None => default_dims(w.len())?,
    };
    if w.len() != dims.0 * dims.1 {
        bail!("{} entries do not fit dimensions {}x{}", w.len(), dims.0, dims.1);
    }
    if w.iter().any(|x| !x.is_finite() || *x < 0.0) {
        bail!("spectrum entries must be finite and non-negative");
    }
    let total: f64 = w.iter().sum();
    let s = if (total - 1.0).abs() <= 1e-9 { Spectrum::new(w, dims) } else { Spectrum::from_weights(w, dims) };
    s.map_err(Into::into)
}
