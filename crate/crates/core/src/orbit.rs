//! Elementary two-qubit unitaries, Haar sampling, marginal sweeps, triple points
//! and the global-demon scenario.

use std::f64::consts::PI;

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, cr, CMat};
use crate::region::MarginalPoint;
use crate::spectra::Spectrum;
use crate::states::{
    energy, excited_populations, marginal_point, qmi, DensityMatrix, DensityMatrixJson, Subsystem, XState,
};

/// Unitarity tolerance on `U†U - I`.
pub const UNITARY_TOL: f64 = 1e-10;
/// Default number of angles in a sweep.
pub const DEFAULT_SWEEP_STEPS: usize = 256;

#[derive(Clone, Debug)]
pub struct UnitaryMatrix(CMat);

impl UnitaryMatrix {
    pub fn new(m: CMat) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch { expected: m.nrows(), got: m.ncols() });
        }
        let r = linalg::unitarity_residual(&m);
        if r > UNITARY_TOL {
            return Err(Error::Domain(format!("matrix is not unitary (residual {r:e})")));
        }
        Ok(Self(m))
    }

    pub fn identity(d: usize) -> Self {
        Self(linalg::identity(d))
    }

    pub fn matrix(&self) -> &CMat {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn dagger(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn then(&self, next: &UnitaryMatrix) -> Self {
        Self(&next.0 * &self.0)
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        rho.evolve(&self.0)
    }

    pub fn commutes_with(&self, h: &CMat, tol: f64) -> bool {
        linalg::max_abs(&linalg::commutator(&self.0, h)) < tol
    }
}

fn rotation(i: usize, j: usize, angle: f64) -> UnitaryMatrix {
    let (s, c) = (angle / 2.0).sin_cos();
    let mut m = linalg::identity(4);
    m[(i, i)] = cr(c);
    m[(j, j)] = cr(c);
    m[(i, j)] = cr(s);
    m[(j, i)] = cr(-s);
    UnitaryMatrix(m)
}

/// Rotation by `θ/2` in the degenerate subspace `{|01⟩, |10⟩}`; commutes with the bare Hamiltonian.
pub fn u_odd(theta: f64) -> UnitaryMatrix {
    rotation(1, 2, theta)
}

/// Rotation by `φ/2` in `{|00⟩, |11⟩}`.
pub fn u_even(phi: f64) -> UnitaryMatrix {
    rotation(0, 3, phi)
}

/// Rotation by `ξ/2` in `{|00⟩, |01⟩}`.
pub fn u_tilde(xi: f64) -> UnitaryMatrix {
    rotation(0, 1, xi)
}

/// Swap of the two qubits.
pub fn swap_gate() -> UnitaryMatrix {
    UnitaryMatrix(linalg::from_real_rows(4, &[1., 0., 0., 0., 0., 0., 1., 0., 0., 1., 0., 0., 0., 0., 0., 1.]))
}

/// Haar-random unitary: QR of a complex Ginibre matrix with the phases of `diag(R)` absorbed.
pub fn haar_unitary(d: usize, seed: u64) -> Result<UnitaryMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    haar_unitary_with(&mut rng, d)
}

pub fn haar_unitary_with<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Result<UnitaryMatrix> {
    if d < 2 {
        return Err(Error::Domain("Haar sampling needs d >= 2".into()));
    }
    let z = CMat::from_fn(d, d, |_, _| {
        Complex64::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
    });
    let qr = z.qr();
    let (q, r) = (qr.q(), qr.r());
    let phases = DVector::from_iterator(
        d,
        (0..d).map(|i| {
            let x = r[(i, i)];
            if x.norm() > 0.0 {
                x / x.norm()
            } else {
                cr(1.0)
            }
        }),
    );
    Ok(UnitaryMatrix(q * CMat::from_diagonal(&phases)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Odd,
    Even,
    Tilde,
}

impl Family {
    pub fn unitary(&self, angle: f64) -> UnitaryMatrix {
        match self {
            Family::Odd => u_odd(angle),
            Family::Even => u_even(angle),
            Family::Tilde => u_tilde(angle),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "odd" => Ok(Family::Odd),
            "even" => Ok(Family::Even),
            "tilde" => Ok(Family::Tilde),
            _ => Err(Error::Domain(format!("unknown unitary family '{s}'"))),
        }
    }
}

/// Marginal data along a one-parameter unitary family.
#[derive(Clone, Debug, Serialize)]
pub struct SweepTrace {
    pub family: Family,
    /// Radians, uniform on `[0, π]`.
    pub angles: Vec<f64>,
    pub cos_angles: Vec<f64>,
    /// Folded into `[0, 1/2]`.
    pub points: Vec<MarginalPoint>,
    /// Unfolded excited-level populations `(e_A, e_B)`.
    pub excited: Vec<(f64, f64)>,
    /// Bits.
    pub qmi: Vec<f64>,
}

pub fn sweep(rho0: &DensityMatrix, family: Family, n_steps: usize) -> Result<SweepTrace> {
    if !rho0.is_two_qubit() {
        return Err(Error::Unsupported("sweeps act on two qubits".into()));
    }
    if n_steps < 2 {
        return Err(Error::Domain("a sweep needs at least two steps".into()));
    }
    let mut t = SweepTrace {
        family,
        angles: Vec::with_capacity(n_steps),
        cos_angles: Vec::with_capacity(n_steps),
        points: Vec::with_capacity(n_steps),
        excited: Vec::with_capacity(n_steps),
        qmi: Vec::with_capacity(n_steps),
    };
    for k in 0..n_steps {
        let a = PI * k as f64 / (n_steps - 1) as f64;
        let rho = family.unitary(a).apply(rho0)?;
        t.angles.push(a);
        t.cos_angles.push(a.cos());
        t.points.push(marginal_point(&rho)?);
        t.excited.push(excited_populations(&rho));
        t.qmi.push(qmi(&rho));
    }
    Ok(t)
}

fn require_qubits(spectrum: &Spectrum) -> Result<[f64; 4]> {
    if spectrum.dims() != (2, 2) {
        return Err(Error::Unsupported("operation needs a two-qubit spectrum".into()));
    }
    let v = spectrum.values();
    Ok([v[0], v[1], v[2], v[3]])
}

/// Classical representatives of the three QMI classes of diagonal orderings:
/// `diag(λ1,λ2,λ3,λ4)`, `diag(λ2,λ1,λ3,λ4)`, `diag(λ3,λ1,λ2,λ4)`.
pub fn tau_states(spectrum: &Spectrum) -> Result<[DensityMatrix; 3]> {
    let [l1, l2, l3, l4] = require_qubits(spectrum)?;
    Ok([
        DensityMatrix::from_diagonal(&[l1, l2, l3, l4], (2, 2))?,
        DensityMatrix::from_diagonal(&[l2, l1, l3, l4], (2, 2))?,
        DensityMatrix::from_diagonal(&[l3, l1, l2, l4], (2, 2))?,
    ])
}

/// Three X-states on one orbit sharing the marginal point `λ_A = λ_B = (1 - (λ3 - λ4))/2`
/// without being related by local unitaries or swap.
pub fn triple_point_states(spectrum: &Spectrum) -> Result<[DensityMatrix; 3]> {
    let [l1, l2, l3, l4] = require_qubits(spectrum)?;
    if !spectrum.is_strict(1e-9) {
        return Err(Error::Precondition("triple points need a strictly decreasing spectrum".into()));
    }
    Ok([
        XState::new([l1, l2, l3, l4], 0.0, (l3 - l4) / (l1 - l4))?.materialize(),
        XState::new([l2, l1, l3, l4], 0.0, (l3 - l4) / (l2 - l4))?.materialize(),
        XState::new([l3, l1, l2, l4], 0.0, 1.0)?.materialize(),
    ])
}

/// Marginal points reached from the classical representatives by the three elementary
/// families: `U_even(φ) U_odd(θ)` on each representative over an `n × n` angle grid, and
/// `Ũ(ξ)` on `ρ(λ1..λ4, cosθ, 1)` over an `n × n` grid. The Ũ points are also mirrored
/// across `λ_A = λ_B` (the swap gate maps the orbit to itself).
pub fn coverage_points(spectrum: &Spectrum, n: usize) -> Result<Vec<MarginalPoint>> {
    let [l1, l2, l3, l4] = require_qubits(spectrum)?;
    let n = n.max(2);
    let grid = |k: usize| -1.0 + 2.0 * k as f64 / (n - 1) as f64;
    let mut pts = Vec::with_capacity(5 * n * n);
    for pops in [[l1, l2, l3, l4], [l2, l1, l3, l4], [l3, l1, l2, l4]] {
        for i in 0..n {
            for j in 0..n {
                let x = XState {
                    alpha: pops[0],
                    beta: pops[1],
                    gamma: pops[2],
                    delta: pops[3],
                    cos_theta: grid(i),
                    cos_phi: grid(j),
                };
                pts.push(marginal_point(&x.materialize())?);
            }
        }
    }
    let base = pts.len();
    for i in 0..n {
        let rho = XState { alpha: l1, beta: l2, gamma: l3, delta: l4, cos_theta: grid(i), cos_phi: 1.0 }.materialize();
        for j in 0..n {
            let xi = PI * j as f64 / (n - 1) as f64;
            pts.push(marginal_point(&u_tilde(xi).apply(&rho)?)?);
        }
    }
    let mirrored: Vec<MarginalPoint> = pts[base..].iter().map(|p| p.swapped()).collect();
    pts.extend(mirrored);
    Ok(pts)
}

/// Shifts `|Tr[UρU† H^k] - Tr[ρ H^k]|` for `k = 1..=k_max`.
#[derive(Clone, Debug, Serialize)]
pub struct MomentReport {
    pub shifts: Vec<f64>,
}

impl MomentReport {
    pub fn max_shift(&self) -> f64 {
        self.shifts.iter().copied().fold(0.0, f64::max)
    }
}

pub fn secu_moment_check(
    rho: &DensityMatrix,
    hamiltonian: &CMat,
    u: &UnitaryMatrix,
    k_max: usize,
) -> Result<MomentReport> {
    let evolved = u.apply(rho)?;
    let mut hk = linalg::identity(rho.dim());
    let mut shifts = Vec::with_capacity(k_max);
    for _ in 0..k_max {
        hk = &hk * hamiltonian;
        shifts.push((energy(&evolved, &hk)? - energy(rho, &hk)?).abs());
    }
    Ok(MomentReport { shifts })
}

/// Local energies `(E_A, E_B)` for `H_A = H_B = |1⟩⟨1|`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct LocalEnergies {
    pub e_a: f64,
    pub e_b: f64,
}

impl LocalEnergies {
    pub fn of(rho: &DensityMatrix) -> Self {
        let (e_a, e_b) = excited_populations(rho);
        Self { e_a, e_b }
    }

    pub fn total(&self) -> f64 {
        self.e_a + self.e_b
    }
}

/// A local observer's product description, a correlated state with the same marginals,
/// and a state on its orbit with the same total energy but less correlation.
#[derive(Clone, Debug, Serialize)]
pub struct DemonReport {
    pub spectrum: Vec<f64>,
    pub lambda_a: f64,
    pub lambda_b: f64,
    pub cos_phi: f64,
    pub cos_phi_prime: f64,
    pub qmi_observer: f64,
    pub qmi_demon: f64,
    pub qmi_final: f64,
    pub energies_initial: LocalEnergies,
    pub energies_final: LocalEnergies,
    pub total_energy_initial: f64,
    pub total_energy_final: f64,
    /// Largest deviation between the correlated state's marginals and the observer's.
    pub marginal_mismatch: f64,
    /// Largest off-diagonal modulus in the final marginals.
    pub final_marginal_coherence: f64,
    pub final_marginals_thermal: bool,
    /// Largest deviation between the final spectrum and the input spectrum.
    pub final_spectrum_deviation: f64,
    pub rho_observer: DensityMatrixJson,
    pub rho_demon: DensityMatrixJson,
    pub gamma_final: DensityMatrixJson,
}

pub fn demon_scenario(lambda_b: f64, spectrum: &Spectrum) -> Result<DemonReport> {
    let [l1, l2, l3, l4] = require_qubits(spectrum)?;
    let lambda_a = lambda_b - (l2 - l3);
    if !(0.0..=0.5).contains(&lambda_b) || !(0.0..=0.5).contains(&lambda_a) {
        return Err(Error::Precondition(format!(
            "marginals ({lambda_a}, {lambda_b}) must lie in [0, 1/2]; lambda_a = lambda_b - (l2 - l3)"
        )));
    }
    if l1 - l4 <= 1e-12 {
        return Err(Error::Precondition("need l1 > l4".into()));
    }
    let cos_phi = (1.0 - lambda_a - lambda_b) / (l1 - l4);
    if cos_phi.abs() > 1.0 + 1e-12 {
        return Err(Error::Precondition(format!(
            "cos(phi) = {cos_phi} outside [-1,1]; requires lambda_a >= l3 + l4 = {}",
            l3 + l4
        )));
    }
    let rho_a = DensityMatrix::from_diagonal(&[1.0 - lambda_a, lambda_a], (2, 1))?;
    let rho_b = DensityMatrix::from_diagonal(&[1.0 - lambda_b, lambda_b], (1, 2))?;
    let observer = DensityMatrix::product(&rho_a, &rho_b);
    let demon = XState::new([l1, l2, l3, l4], 1.0, cos_phi)?.materialize();

    let e0 = LocalEnergies::of(&demon);
    if l1 - l3 <= 1e-12 {
        return Err(Error::Precondition("need l1 > l3 for the final state".into()));
    }
    let cos_phi_prime = (1.0 - e0.total()) / (l1 - l3);
    if cos_phi_prime.abs() > 1.0 + 1e-12 {
        return Err(Error::Precondition(format!(
            "energy {} unreachable by the final ansatz (cos(phi') = {cos_phi_prime})",
            e0.total()
        )));
    }
    // |00⟩,|11⟩ mix λ1 and λ3; λ2 sits on |01⟩ and λ4 on |10⟩.
    let gamma = XState::new([l1, l2, l4, l3], 1.0, cos_phi_prime)?.materialize();
    let e1 = LocalEnergies::of(&gamma);

    let mismatch = [Subsystem::A, Subsystem::B]
        .iter()
        .map(|&s| {
            let target = if s == Subsystem::A { &rho_a } else { &rho_b };
            linalg::max_abs(&(demon.partial_trace(s).matrix() - target.matrix()))
        })
        .fold(0.0, f64::max);
    let coherence = [Subsystem::A, Subsystem::B]
        .iter()
        .map(|&s| gamma.partial_trace(s).matrix()[(0, 1)].norm())
        .fold(0.0, f64::max);
    let spec_dev = gamma.eigenvalues().iter().zip(spectrum.values()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);

    Ok(DemonReport {
        spectrum: spectrum.values().to_vec(),
        lambda_a,
        lambda_b,
        cos_phi,
        cos_phi_prime,
        qmi_observer: qmi(&observer),
        qmi_demon: qmi(&demon),
        qmi_final: qmi(&gamma),
        energies_initial: e0,
        energies_final: e1,
        total_energy_initial: e0.total(),
        total_energy_final: e1.total(),
        marginal_mismatch: mismatch,
        final_marginal_coherence: coherence,
        final_marginals_thermal: coherence < 1e-12,
        final_spectrum_deviation: spec_dev,
        rho_observer: observer.to_json(),
        rho_demon: demon.to_json(),
        gamma_final: gamma.to_json(),
    })
}
