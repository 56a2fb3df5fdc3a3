//! Bipartite density matrices, partial traces, QMI and two-qubit X-states.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, cr, CMat};
use crate::region::MarginalPoint;
use crate::spectra::{entropy_of_eigenvalues, Spectrum};
use crate::SCHEMA_VERSION;

pub const HERMITIAN_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
pub const NEG_EIGEN_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
}

/// Hermitian, positive, unit-trace matrix on `C^{d_A} ⊗ C^{d_B}`.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    matrix: CMat,
    dims: (usize, usize),
}

impl DensityMatrix {
    pub fn new(matrix: CMat, dims: (usize, usize)) -> Result<Self> {
        let d = dims.0 * dims.1;
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::DimensionMismatch { expected: d, got: matrix.nrows() });
        }
        let herm = linalg::hermiticity_residual(&matrix);
        if herm > HERMITIAN_TOL {
            return Err(Error::InvalidState(format!("not Hermitian (residual {herm:e})")));
        }
        let tr = linalg::trace(&matrix);
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        let ev = linalg::hermitian_eigenvalues(&matrix);
        if ev[0] < -NEG_EIGEN_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {}", ev[0])));
        }
        Ok(Self { matrix, dims })
    }

    pub(crate) fn new_unchecked(matrix: CMat, dims: (usize, usize)) -> Self {
        Self { matrix, dims }
    }

    pub fn from_diagonal(diag: &[f64], dims: (usize, usize)) -> Result<Self> {
        Self::new(linalg::from_real_diagonal(diag), dims)
    }

    /// Classical state with the spectrum on the diagonal in sorted order.
    pub fn diagonal_of(spectrum: &Spectrum) -> Self {
        Self::new_unchecked(linalg::from_real_diagonal(spectrum.values()), spectrum.dims())
    }

    pub fn maximally_mixed(dims: (usize, usize)) -> Self {
        let d = dims.0 * dims.1;
        Self::new_unchecked(linalg::identity(d) * cr(1.0 / d as f64), dims)
    }

    /// `|ψ⟩⟨ψ|` for a (not necessarily normalised) vector.
    pub fn pure(psi: &[num_complex::Complex64], dims: (usize, usize)) -> Result<Self> {
        let v = nalgebra::DVector::from_column_slice(psi);
        let n = v.norm_squared();
        if n <= 0.0 {
            return Err(Error::InvalidState("zero vector".into()));
        }
        Self::new(&v * v.adjoint() * cr(1.0 / n), dims)
    }

    pub fn product(a: &DensityMatrix, b: &DensityMatrix) -> Self {
        let dims = (a.dim(), b.dim());
        Self::new_unchecked(linalg::kron(&a.matrix, &b.matrix), dims)
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn is_two_qubit(&self) -> bool {
        self.dims == (2, 2)
    }

    /// `U ρ U†`.
    pub fn evolve(&self, u: &CMat) -> Result<Self> {
        if u.nrows() != self.dim() || u.ncols() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: u.nrows() });
        }
        let m = u * &self.matrix * u.adjoint();
        Ok(Self::new_unchecked((&m + m.adjoint()) * cr(0.5), self.dims))
    }

    pub fn partial_trace(&self, keep: Subsystem) -> DensityMatrix {
        let (da, db) = self.dims;
        let m = &self.matrix;
        match keep {
            Subsystem::A => {
                let mut r = CMat::zeros(da, da);
                for i in 0..da {
                    for k in 0..da {
                        r[(i, k)] = (0..db).map(|j| m[(i * db + j, k * db + j)]).sum();
                    }
                }
                Self::new_unchecked(r, (da, 1))
            }
            Subsystem::B => {
                let mut r = CMat::zeros(db, db);
                for j in 0..db {
                    for l in 0..db {
                        r[(j, l)] = (0..da).map(|i| m[(i * db + j, i * db + l)]).sum();
                    }
                }
                Self::new_unchecked(r, (1, db))
            }
        }
    }

    /// Projection onto the diagonal of the computational product basis.
    pub fn dephased(&self) -> Self {
        let diag: Vec<f64> = self.matrix.diagonal().iter().map(|z| z.re).collect();
        Self::new_unchecked(linalg::from_real_diagonal(&diag), self.dims)
    }

    pub fn diagonal(&self) -> Vec<f64> {
        self.matrix.diagonal().iter().map(|z| z.re).collect()
    }

    /// Eigenvalues, sorted non-increasing.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev = linalg::hermitian_eigenvalues(&self.matrix);
        ev.reverse();
        ev
    }

    pub fn spectrum(&self) -> Spectrum {
        let ev: Vec<f64> = self.eigenvalues().into_iter().map(|x| x.max(0.0)).collect();
        Spectrum::from_weights(ev, self.dims).expect("density matrix has positive trace")
    }

    /// Von Neumann entropy in bits.
    pub fn entropy(&self) -> f64 {
        entropy_of_eigenvalues(&self.eigenvalues())
    }

    pub fn to_json(&self) -> DensityMatrixJson {
        let d = self.dim();
        let rows = |f: fn(&num_complex::Complex64) -> f64| -> Vec<Vec<f64>> {
            (0..d).map(|i| (0..d).map(|j| f(&self.matrix[(i, j)])).collect()).collect()
        };
        DensityMatrixJson {
            schema_version: SCHEMA_VERSION,
            dims: [self.dims.0, self.dims.1],
            real_part: rows(|z| z.re),
            imag_part: rows(|z| z.im),
        }
    }

    pub fn from_json(j: &DensityMatrixJson) -> Result<Self> {
        let d = j.dims[0] * j.dims[1];
        if j.real_part.len() != d || j.imag_part.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: j.real_part.len() });
        }
        let mut m = CMat::zeros(d, d);
        for i in 0..d {
            if j.real_part[i].len() != d || j.imag_part[i].len() != d {
                return Err(Error::DimensionMismatch { expected: d, got: j.real_part[i].len() });
            }
            for k in 0..d {
                m[(i, k)] = linalg::c(j.real_part[i][k], j.imag_part[i][k]);
            }
        }
        Self::new(m, (j.dims[0], j.dims[1]))
    }
}

/// Row-major JSON interchange form.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DensityMatrixJson {
    pub schema_version: u32,
    pub dims: [usize; 2],
    pub real_part: Vec<Vec<f64>>,
    pub imag_part: Vec<Vec<f64>>,
}

/// `S(ρ_A) + S(ρ_B) - S(ρ)` in bits.
pub fn qmi(rho: &DensityMatrix) -> f64 {
    rho.partial_trace(Subsystem::A).entropy() + rho.partial_trace(Subsystem::B).entropy() - rho.entropy()
}

/// Smallest eigenvalue of each two-qubit marginal.
pub fn marginal_point(rho: &DensityMatrix) -> Result<MarginalPoint> {
    if !rho.is_two_qubit() {
        return Err(Error::Unsupported(format!("marginal point needs two qubits, got {:?}", rho.dims())));
    }
    let a = linalg::hermitian_eigenvalues(rho.partial_trace(Subsystem::A).matrix())[0];
    let b = linalg::hermitian_eigenvalues(rho.partial_trace(Subsystem::B).matrix())[0];
    Ok(MarginalPoint::clamped(a, b))
}

/// Excited-level populations `(⟨1|ρ_A|1⟩, ⟨1|ρ_B|1⟩)` of a two-qubit state.
pub fn excited_populations(rho: &DensityMatrix) -> (f64, f64) {
    let d = rho.diagonal();
    (d[2] + d[3], d[1] + d[3])
}

/// `Tr(ρ H)`; errors if the imaginary residue exceeds 1e-10.
pub fn energy(rho: &DensityMatrix, hamiltonian: &CMat) -> Result<f64> {
    if hamiltonian.nrows() != rho.dim() || hamiltonian.ncols() != rho.dim() {
        return Err(Error::DimensionMismatch { expected: rho.dim(), got: hamiltonian.nrows() });
    }
    let e = linalg::trace(&(rho.matrix() * hamiltonian));
    if e.im.abs() > 1e-10 {
        return Err(Error::InvalidState(format!("energy has imaginary part {}", e.im)));
    }
    Ok(e.re)
}

/// Local qubit Hamiltonian `|1⟩⟨1|`.
pub fn local_hamiltonian() -> CMat {
    linalg::from_real_diagonal(&[0.0, 1.0])
}

/// `H_A ⊗ I + I ⊗ H_B = |01⟩⟨01| + |10⟩⟨10| + 2|11⟩⟨11|`.
pub fn two_qubit_hamiltonian() -> CMat {
    linalg::from_real_diagonal(&[0.0, 1.0, 1.0, 2.0])
}

/// Correlation matrix `t_ij = Tr(σ_i ⊗ σ_j ρ)` over the Pauli triple (X, Y, Z).
pub fn t_matrix(rho: &DensityMatrix) -> Result<[[f64; 3]; 3]> {
    if !rho.is_two_qubit() {
        return Err(Error::Unsupported("T-matrix needs two qubits".into()));
    }
    let p = linalg::paulis();
    let mut t = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            t[i][j] = linalg::trace(&(linalg::kron(&p[i], &p[j]) * rho.matrix())).re;
        }
    }
    Ok(t)
}

/// Two-qubit state with support on the diagonal and anti-diagonal, parameterised by
/// the populations it rotates and two mixing cosines.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct XState {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub cos_theta: f64,
    pub cos_phi: f64,
}

impl XState {
    pub fn new(populations: [f64; 4], cos_theta: f64, cos_phi: f64) -> Result<Self> {
        let [alpha, beta, gamma, delta] = populations;
        let s: f64 = populations.iter().sum();
        if (s - 1.0).abs() > 1e-12 || populations.iter().any(|&x| x < -1e-12) {
            return Err(Error::Domain(format!("populations {populations:?} are not a distribution")));
        }
        if cos_theta.abs() > 1.0 + 1e-12 || cos_phi.abs() > 1.0 + 1e-12 {
            return Err(Error::Domain("cosines must lie in [-1,1]".into()));
        }
        Ok(Self { alpha, beta, gamma, delta, cos_theta: cos_theta.clamp(-1.0, 1.0), cos_phi: cos_phi.clamp(-1.0, 1.0) })
    }

    /// Dense 4×4 matrix; sines are taken non-negative.
    pub fn matrix(&self) -> CMat {
        let (a, b, g, d) = (self.alpha, self.beta, self.gamma, self.delta);
        let (ct, cp) = (self.cos_theta, self.cos_phi);
        let st = (1.0 - ct * ct).max(0.0).sqrt();
        let sp = (1.0 - cp * cp).max(0.0).sqrt();
        let mut m = [0.0; 16];
        m[0] = 0.5 * (a + d + (a - d) * cp);
        m[15] = 0.5 * (a + d - (a - d) * cp);
        m[3] = 0.5 * (d - a) * sp;
        m[12] = m[3];
        m[5] = 0.5 * (b + g + (b - g) * ct);
        m[10] = 0.5 * (b + g - (b - g) * ct);
        m[6] = 0.5 * (g - b) * st;
        m[9] = m[6];
        linalg::from_real_rows(4, &m)
    }

    pub fn materialize(&self) -> DensityMatrix {
        DensityMatrix::new_unchecked(self.matrix(), (2, 2))
    }

    /// Excited populations `(e_A, e_B)` of the two marginals (both diagonal).
    pub fn excited_populations(&self) -> (f64, f64) {
        let u = (self.beta - self.gamma) * self.cos_theta;
        let v = (self.alpha - self.delta) * self.cos_phi;
        (0.5 * (1.0 - u - v), 0.5 * (1.0 + u - v))
    }
}

/// Closed-form marginal point of an X-state; folds each excited population into `[0, 1/2]`.
pub fn x_state_marginals(x: &XState) -> MarginalPoint {
    let (ea, eb) = x.excited_populations();
    MarginalPoint::clamped(ea.min(1.0 - ea), eb.min(1.0 - eb))
}
