//! Maximally and minimally correlated states on a unitary orbit.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{cr, CMat};
use crate::spectra::{h2, Spectrum};
use crate::states::{qmi, DensityMatrix};
use crate::tableaux::{table_mi, Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremumKind {
    Max,
    Min,
}

#[derive(Clone, Debug)]
pub struct OrbitExtremum {
    pub state: DensityMatrix,
    /// Bits.
    pub qmi_value: f64,
    pub kind: ExtremumKind,
}

/// Generalised Bell vector `(I ⊗ X^m Z^n)|Φ+⟩` with clock `Z` and shift `X`.
pub fn bell_vector(d: usize, m: usize, n: usize) -> Vec<Complex64> {
    let mut v = vec![cr(0.0); d * d];
    let norm = 1.0 / (d as f64).sqrt();
    for j in 0..d {
        let phase = 2.0 * std::f64::consts::PI * ((n * j) % d) as f64 / d as f64;
        v[j * d + (j + m) % d] = Complex64::from_polar(norm, phase);
    }
    v
}

/// `Σ_i λ_i |Φ_i⟩⟨Φ_i|` with Bell index `i = m d + n`. Its QMI is `2 log2 d - H(Λ)`.
pub fn rho_max(spectrum: &Spectrum) -> Result<OrbitExtremum> {
    let (da, db) = spectrum.dims();
    if da != db {
        return Err(Error::Unsupported(format!(
            "no maximally correlated construction for unequal dimensions {da}x{db}; the QMI is bounded by {}",
            max_qmi_upper_bound((da, db))
        )));
    }
    let d = da;
    let mut m = CMat::zeros(d * d, d * d);
    for (i, &l) in spectrum.values().iter().enumerate() {
        if l == 0.0 {
            continue;
        }
        let v = nalgebra::DVector::from_vec(bell_vector(d, i / d, i % d));
        m += &v * v.adjoint() * cr(l);
    }
    let state = DensityMatrix::new(m, (d, d))?;
    let qmi_value = 2.0 * (d as f64).log2() - spectrum.entropy();
    Ok(OrbitExtremum { state, qmi_value, kind: ExtremumKind::Max })
}

/// Classical state with the table written on the diagonal row-major.
pub fn rho_min(spectrum: &Spectrum, table: &Table) -> Result<OrbitExtremum> {
    if table.shape().dims() != spectrum.dims() {
        return Err(Error::DimensionMismatch { expected: spectrum.len(), got: table.shape().size() });
    }
    if !table.is_arrangement_of(spectrum) {
        return Err(Error::Domain("table entries are not a rearrangement of the spectrum".into()));
    }
    let state = DensityMatrix::from_diagonal(table.entries(), spectrum.dims())?;
    Ok(OrbitExtremum { state, qmi_value: table_mi(table), kind: ExtremumKind::Min })
}

/// Two-qubit QMI range on the orbit: `2 - H(λ1+λ2) - H(λ1+λ3)`.
pub fn delta_i(spectrum: &Spectrum) -> Result<f64> {
    if spectrum.dims() != (2, 2) {
        return Err(Error::Unsupported("delta_i needs a two-qubit spectrum".into()));
    }
    let l = |i| spectrum.lambda(i);
    Ok(2.0 - h2(l(1) + l(2)) - h2(l(1) + l(3)))
}

/// Documented upper bound `log2(d_A d_B)` used when no maximiser is constructed.
pub fn max_qmi_upper_bound(dims: (usize, usize)) -> f64 {
    ((dims.0 * dims.1) as f64).log2()
}

/// QMI recomputed from the state, for cross-checking the closed forms.
pub fn recomputed(ex: &OrbitExtremum) -> f64 {
    qmi(&ex.state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableaux::{Pattern, Shape};

    fn sp(v: [f64; 4]) -> Spectrum {
        Spectrum::qubits(v).unwrap()
    }

    #[test]
    fn rho_max_examples() {
        let e = rho_max(&sp([1.0, 0.0, 0.0, 0.0])).unwrap();
        assert!((e.qmi_value - 2.0).abs() < 1e-12 && (recomputed(&e) - 2.0).abs() < 1e-9);
        let e = rho_max(&Spectrum::uniform((2, 2))).unwrap();
        assert!(e.qmi_value.abs() < 1e-12 && recomputed(&e).abs() < 1e-9);
        let e = rho_max(&sp([0.6, 0.3, 0.1, 0.0])).unwrap();
        assert!((e.qmi_value - 0.70454).abs() < 5e-6);
        assert!((recomputed(&e) - e.qmi_value).abs() < 1e-9);
        let ev = e.state.eigenvalues();
        for (x, y) in ev.iter().zip([0.6, 0.3, 0.1, 0.0]) {
            assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn rho_max_qutrits_and_unequal() {
        let s = Spectrum::from_weights((1..=9).rev().map(f64::from).collect(), (3, 3)).unwrap();
        let e = rho_max(&s).unwrap();
        assert!((recomputed(&e) - e.qmi_value).abs() < 1e-9);
        let s = Spectrum::uniform((2, 3));
        assert!(matches!(rho_max(&s), Err(Error::Unsupported(_))));
    }

    #[test]
    fn rho_min_and_delta_i() {
        let s = sp([0.6, 0.3, 0.1, 0.0]);
        let t = Pattern::identity(Shape::new(2, 2).unwrap()).fill(&s).unwrap();
        let e = rho_min(&s, &t).unwrap();
        assert!((e.qmi_value - 0.05483).abs() < 1e-5);
        let h = |x: f64| -x * x.log2() - (1.0 - x) * (1.0 - x).log2();
        let oracle = h(0.1) + h(0.3) + 0.6 * 0.6f64.log2() + 0.3 * 0.3f64.log2() + 0.1 * 0.1f64.log2();
        assert!((e.qmi_value - oracle).abs() < 1e-12);
        assert!((recomputed(&e) - e.qmi_value).abs() < 1e-9);
        let d = delta_i(&s).unwrap();
        assert!((d - 0.64971).abs() < 5e-6);
        assert!((d - (rho_max(&s).unwrap().qmi_value - e.qmi_value)).abs() < 1e-12);
        assert!((delta_i(&sp([1.0, 0.0, 0.0, 0.0])).unwrap() - 2.0).abs() < 1e-12);
        assert!(delta_i(&Spectrum::uniform((2, 2))).unwrap().abs() < 1e-12);
        let other = sp([0.5, 0.3, 0.2, 0.0]);
        assert!(rho_min(&other, &t).is_err());
    }
}
