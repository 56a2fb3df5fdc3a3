//! Probability vectors, Shannon entropy and simplex sampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Entries in `[-NEG_CLAMP, 0)` are treated as zero.
pub const NEG_CLAMP: f64 = 1e-12;

/// Global eigenvalues of a bipartite state, sorted non-increasing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    values: Vec<f64>,
    dims: (usize, usize),
}

impl Spectrum {
    /// Builds a spectrum from a vector that must already sum to one (within 1e-9); entries are
    /// sorted but not rescaled.
    pub fn new(values: Vec<f64>, dims: (usize, usize)) -> Result<Self> {
        let s = check_entries(&values)?;
        if (s - 1.0).abs() > 1e-9 {
            return Err(Error::Domain(format!("spectrum sums to {s}, expected 1")));
        }
        Self::build(values, dims, 1.0)
    }

    /// Builds a spectrum from non-negative weights with positive sum, normalising them.
    pub fn from_weights(values: Vec<f64>, dims: (usize, usize)) -> Result<Self> {
        let s = check_entries(&values)?;
        if s <= 0.0 {
            return Err(Error::Domain("weights must have positive sum".into()));
        }
        Self::build(values, dims, s)
    }

    fn build(values: Vec<f64>, dims: (usize, usize), scale: f64) -> Result<Self> {
        let (da, db) = dims;
        if da == 0 || db == 0 {
            return Err(Error::Domain("subsystem dimensions must be positive".into()));
        }
        if values.len() != da * db {
            return Err(Error::DimensionMismatch { expected: da * db, got: values.len() });
        }
        let mut v: Vec<f64> = values.iter().map(|&x| x.max(0.0) / scale).collect();
        v.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { values: v, dims })
    }

    /// Two-qubit spectrum.
    pub fn qubits(values: [f64; 4]) -> Result<Self> {
        Self::new(values.to_vec(), (2, 2))
    }

    pub fn uniform(dims: (usize, usize)) -> Self {
        let d = dims.0 * dims.1;
        Self { values: vec![1.0 / d as f64; d], dims }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `λ_i` with 1-based index, matching the usual labelling of sorted eigenvalues.
    pub fn lambda(&self, i: usize) -> f64 {
        self.values[i - 1]
    }

    pub fn entropy(&self) -> f64 {
        entropy_unchecked(&self.values)
    }

    /// True when all consecutive entries differ by more than `tol`.
    pub fn is_strict(&self, tol: f64) -> bool {
        self.values.windows(2).all(|w| w[0] - w[1] > tol)
    }
}

fn check_entries(p: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &x in p {
        if !x.is_finite() || x < -NEG_CLAMP {
            return Err(Error::Domain(format!("invalid probability entry {x}")));
        }
        s += x.max(0.0);
    }
    Ok(s)
}

fn entropy_unchecked(p: &[f64]) -> f64 {
    -p.iter().filter(|&&x| x > 0.0).map(|&x| x * x.log2()).sum::<f64>()
}

/// `-Σ p log2 p` with `0 log 0 = 0`. The vector is used as given, not renormalised.
pub fn shannon_entropy(p: &[f64]) -> Result<f64> {
    check_entries(p)?;
    Ok(entropy_unchecked(p).max(0.0))
}

/// Binary entropy in bits.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(-NEG_CLAMP..=1.0 + NEG_CLAMP).contains(&x) {
        return Err(Error::Domain(format!("binary entropy argument {x} outside [0,1]")));
    }
    let x = x.clamp(0.0, 1.0);
    Ok(entropy_unchecked(&[x, 1.0 - x]))
}

/// Binary entropy for arguments known to lie in `[0,1]` up to rounding.
pub(crate) fn h2(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    entropy_unchecked(&[x, 1.0 - x])
}

/// Entropy of a vector of (possibly slightly negative) eigenvalues.
pub(crate) fn entropy_of_eigenvalues(ev: &[f64]) -> f64 {
    entropy_unchecked(ev)
}

pub fn sorted_desc(p: &[f64]) -> Vec<f64> {
    let mut v = p.to_vec();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Flat Dirichlet sample on the simplex (normalised i.i.d. unit exponentials), sorted non-increasing.
pub fn sample_spectrum(dims: (usize, usize), seed: u64, full_rank: bool) -> Result<Spectrum> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_spectrum_with(&mut rng, dims, full_rank)
}

pub fn sample_spectrum_with<R: Rng + ?Sized>(rng: &mut R, dims: (usize, usize), full_rank: bool) -> Result<Spectrum> {
    let d = dims.0 * dims.1;
    if d < 2 {
        return Err(Error::Domain("need at least two levels".into()));
    }
    loop {
        let w: Vec<f64> = (0..d).map(|_| rng.sample::<f64, _>(Exp1)).collect();
        let s = Spectrum::from_weights(w, dims)?;
        if !full_rank || s.values[d - 1] > 1e-9 {
            return Ok(s);
        }
    }
}
