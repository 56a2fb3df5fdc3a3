//! Small dense complex linear algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn identity(d: usize) -> CMat {
    CMat::identity(d, d)
}

pub fn from_real_diagonal(diag: &[f64]) -> CMat {
    CMat::from_diagonal(&DVector::from_iterator(diag.len(), diag.iter().map(|&x| cr(x))))
}

pub fn from_real_rows(d: usize, rows: &[f64]) -> CMat {
    CMat::from_row_iterator(d, d, rows.iter().map(|&x| cr(x)))
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

pub fn dagger(m: &CMat) -> CMat {
    m.adjoint()
}

/// Largest entrywise modulus of `m - m†`.
pub fn hermiticity_residual(m: &CMat) -> f64 {
    max_abs(&(m - m.adjoint()))
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest entrywise modulus of `U†U - I`.
pub fn unitarity_residual(u: &CMat) -> f64 {
    let n = u.nrows();
    max_abs(&(u.adjoint() * u - identity(n)))
}

pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

pub fn trace(m: &CMat) -> Complex64 {
    m.diagonal().iter().sum()
}

/// Eigenvalues of a Hermitian matrix, ascending. Only the Hermitian part is used.
pub fn hermitian_eigenvalues(m: &CMat) -> Vec<f64> {
    let h = (m + m.adjoint()) * cr(0.5);
    let mut ev: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

/// Eigen-decomposition `(values ascending, column eigenvectors)` of a Hermitian matrix.
pub fn hermitian_eigh(m: &CMat) -> (Vec<f64>, CMat) {
    let h = (m + m.adjoint()) * cr(0.5);
    let eig = SymmetricEigen::new(h);
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vecs = CMat::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        vecs.set_column(k, &eig.eigenvectors.column(i));
    }
    (values, vecs)
}

/// `exp(i s G)` for Hermitian `G`.
pub fn expm_i_hermitian(g: &CMat, s: f64) -> CMat {
    let (w, v) = hermitian_eigh(g);
    let phases = DVector::from_iterator(w.len(), w.iter().map(|&x| Complex64::from_polar(1.0, s * x)));
    &v * CMat::from_diagonal(&phases) * v.adjoint()
}

/// Pauli matrices `(X, Y, Z)`.
pub fn paulis() -> [CMat; 3] {
    let z0 = cr(0.0);
    let x = CMat::from_row_slice(2, 2, &[z0, cr(1.0), cr(1.0), z0]);
    let y = CMat::from_row_slice(2, 2, &[z0, c(0.0, -1.0), c(0.0, 1.0), z0]);
    let z = CMat::from_row_slice(2, 2, &[cr(1.0), z0, z0, cr(-1.0)]);
    [x, y, z]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_dims_and_entries() {
        let [x, _, z] = paulis();
        let k = kron(&x, &z);
        assert_eq!(k.shape(), (4, 4));
        assert_eq!(k[(0, 2)], cr(1.0));
        assert_eq!(k[(1, 3)], cr(-1.0));
    }

    #[test]
    fn eigenvalues_of_pauli_y() {
        let [_, y, _] = paulis();
        let ev = hermitian_eigenvalues(&y);
        assert!((ev[0] + 1.0).abs() < 1e-12 && (ev[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn expm_is_unitary_and_matches_rotation() {
        let [_, y, _] = paulis();
        let u = expm_i_hermitian(&y, 0.3);
        assert!(unitarity_residual(&u) < 1e-12);
        // exp(i s Y) = cos s I + i sin s Y
        assert!((u[(0, 0)].re - 0.3f64.cos()).abs() < 1e-12);
        assert!((u[(0, 1)].re - 0.3f64.sin()).abs() < 1e-12);
    }
}
