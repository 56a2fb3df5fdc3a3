//! Collision-model equilibration with dephasing, the qubit-qutrit counterexample and
//! the heat-flow inequality.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, cr, CMat};
use crate::orbit::{haar_unitary_with, u_odd, UnitaryMatrix};
use crate::spectra::Spectrum;
use crate::states::{energy, excited_populations, qmi, two_qubit_hamiltonian, DensityMatrix, Subsystem, XState};
use crate::tableaux::{minimal_table, table_mi, Pattern, Shape};

/// Off-diagonal magnitude below which a matrix counts as diagonal.
pub const DIAGONAL_TOL: f64 = 1e-12;
/// Slack on the heat-flow inequality.
pub const HEAT_FLOW_SLACK: f64 = 1e-9;

/// What happens to the joint state after each interaction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CollisionMode {
    /// Project onto the computational basis, keeping classical correlations.
    Dephase,
    /// Replace the state by the product of its marginals.
    Decorrelate,
}

fn diagonal_two_qubit(sigma: &DensityMatrix) -> Result<[f64; 4]> {
    if !sigma.is_two_qubit() {
        return Err(Error::Unsupported("collision model is defined for two qubits".into()));
    }
    let m = sigma.matrix();
    for i in 0..4 {
        for j in 0..4 {
            if i != j && m[(i, j)].norm() > DIAGONAL_TOL {
                return Err(Error::Precondition("collision input must be diagonal".into()));
            }
        }
    }
    let d = sigma.diagonal();
    Ok([d[0], d[1], d[2], d[3]])
}

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("collision parameter p = {p} outside [0,1]")));
    }
    Ok(())
}

/// One interaction `U_odd(2 acos √p)` followed by dephasing.
/// Middle populations become `(p λ2 + (1-p) λ3, (1-p) λ2 + p λ3)`.
pub fn collide_once(sigma: &DensityMatrix, p: f64) -> Result<DensityMatrix> {
    collide_once_with(sigma, p, CollisionMode::Dephase)
}

pub fn collide_once_with(sigma: &DensityMatrix, p: f64, mode: CollisionMode) -> Result<DensityMatrix> {
    diagonal_two_qubit(sigma)?;
    check_p(p)?;
    let rho = u_odd(2.0 * p.sqrt().acos()).apply(sigma)?;
    Ok(match mode {
        CollisionMode::Dephase => rho.dephased(),
        CollisionMode::Decorrelate => {
            // Renormalize: the product squares any trace error, which otherwise doubles every step.
            let d =
                DensityMatrix::product(&rho.partial_trace(Subsystem::A), &rho.partial_trace(Subsystem::B)).diagonal();
            let t: f64 = d.iter().sum();
            let d: Vec<f64> = d.iter().map(|x| x / t).collect();
            DensityMatrix::from_diagonal(&d, sigma.dims())?
        }
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CollisionStep {
    pub step: usize,
    pub p: f64,
    /// Populations of `|00⟩, |01⟩, |10⟩, |11⟩` after the step.
    pub diagonal: [f64; 4],
    /// Sorted spectrum after dephasing.
    pub spectrum: Vec<f64>,
    pub lambda2: f64,
    pub lambda3: f64,
    /// `|λ2 - λ3|` of the middle populations.
    pub gap: f64,
    pub s_a: f64,
    pub s_b: f64,
    pub entropy: f64,
    /// Global entropy of the interacted state before dephasing.
    pub entropy_before_dephasing: f64,
    pub qmi: f64,
}

/// Step 0 is the initial state; step `n` follows the `n`-th schedule entry.
#[derive(Clone, Debug, Serialize)]
pub struct CollisionTrajectory {
    pub mode: CollisionMode,
    pub steps: Vec<CollisionStep>,
}

impl CollisionTrajectory {
    pub fn gaps(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.gap).collect()
    }

    pub fn last(&self) -> &CollisionStep {
        self.steps.last().expect("trajectory has the initial step")
    }
}

fn record(step: usize, p: f64, s: &DensityMatrix, pre_entropy: f64) -> CollisionStep {
    let d = s.diagonal();
    CollisionStep {
        step,
        p,
        diagonal: [d[0], d[1], d[2], d[3]],
        spectrum: s.spectrum().values().to_vec(),
        lambda2: d[1],
        lambda3: d[2],
        gap: (d[1] - d[2]).abs(),
        s_a: s.partial_trace(Subsystem::A).entropy(),
        s_b: s.partial_trace(Subsystem::B).entropy(),
        entropy: s.entropy(),
        entropy_before_dephasing: pre_entropy,
        qmi: qmi(s),
    }
}

/// Iterates [`collide_once`] over an explicit schedule of `p` values.
pub fn run_collisions(sigma0: &DensityMatrix, schedule: &[f64]) -> Result<CollisionTrajectory> {
    run_collisions_with(sigma0, schedule, CollisionMode::Dephase)
}

pub fn run_collisions_with(
    sigma0: &DensityMatrix,
    schedule: &[f64],
    mode: CollisionMode,
) -> Result<CollisionTrajectory> {
    let d = diagonal_two_qubit(sigma0)?;
    if d[0] < d[1].max(d[2]) - DIAGONAL_TOL || d[3] > d[1].min(d[2]) + DIAGONAL_TOL {
        return Err(Error::Precondition(
            "initial state must be in minimal form: largest population on |00>, smallest on |11>".into(),
        ));
    }
    let mut steps = vec![record(0, 1.0, sigma0, sigma0.entropy())];
    let mut sigma = sigma0.clone();
    for (n, &p) in schedule.iter().enumerate() {
        check_p(p)?;
        let rho = u_odd(2.0 * p.sqrt().acos()).apply(&sigma)?;
        let pre = rho.entropy();
        sigma = collide_once_with(&sigma, p, mode)?;
        steps.push(record(n + 1, p, &sigma, pre));
    }
    Ok(CollisionTrajectory { mode, steps })
}

/// Whether the qutrit precondition (row-sorted table is the minimiser) is enforced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MinimalityCheck {
    Strict,
    ReportOnly,
}

#[derive(Clone, Debug, Serialize)]
pub struct QutritReport {
    pub spectrum: Vec<f64>,
    pub before: String,
    pub after: String,
    pub qmi_before: f64,
    pub qmi_after: f64,
    pub increased: bool,
    pub after_is_young: bool,
    /// Label of the actual minimising Young tableau.
    pub minimal_pattern: String,
    pub row_sorted_is_minimal: bool,
}

/// Swaps the populations of `|01⟩` and `|10⟩` (ranks 2 and 4, an energy-conserving
/// permutation for a qubit-qutrit pair) in the row-sorted table.
pub fn qutrit_counterexample(spectrum: &Spectrum, check: MinimalityCheck) -> Result<QutritReport> {
    if spectrum.dims() != (2, 3) {
        return Err(Error::Unsupported("counterexample is for a qubit-qutrit pair".into()));
    }
    let shape = Shape::new(2, 3)?;
    let sorted = Pattern::identity(shape);
    let min = minimal_table(spectrum)?;
    let v_sorted = crate::tableaux::pattern_entropy_sum(spectrum.values(), sorted.ranks(), shape);
    let v_min = crate::tableaux::pattern_entropy_sum(spectrum.values(), min.pattern.ranks(), shape);
    let row_sorted_is_minimal = v_sorted <= v_min + crate::tableaux::TIE_TOL;
    if check == MinimalityCheck::Strict && !row_sorted_is_minimal {
        return Err(Error::Precondition(format!(
            "row-sorted table is not minimal; the minimiser is {}",
            min.pattern.label()
        )));
    }
    let after = sorted.swapped(1, 3);
    let qmi_before = table_mi(&sorted.fill(spectrum)?);
    let qmi_after = table_mi(&after.fill(spectrum)?);
    Ok(QutritReport {
        spectrum: spectrum.values().to_vec(),
        before: sorted.label(),
        after: after.label(),
        qmi_before,
        qmi_after,
        increased: qmi_after > qmi_before,
        after_is_young: after.is_young(),
        minimal_pattern: min.pattern.label(),
        row_sorted_is_minimal,
    })
}

/// Both sides of `Q_A (β_A - β_B) >= ΔI` in nats, with `β = ln((1 - λ)/λ)`.
#[derive(Clone, Debug, Serialize)]
pub struct HeatFlowReport {
    pub lambda_a: f64,
    pub lambda_b: f64,
    pub beta_a: f64,
    pub beta_b: f64,
    pub t_a: f64,
    pub t_b: f64,
    pub q_a: f64,
    pub q_b: f64,
    pub energy_drift: f64,
    pub delta_i_bits: f64,
    pub delta_i_nats: f64,
    /// `Q_A (β_A - β_B)`.
    pub lhs: f64,
    pub holds: bool,
}

fn inverse_temperature(pop: f64) -> Result<f64> {
    if !(pop > 0.0 && pop < 1.0) || (pop - 0.5).abs() < 1e-12 {
        return Err(Error::Precondition(format!("excited population {pop} does not define a finite temperature")));
    }
    Ok(((1.0 - pop) / pop).ln())
}

/// Checks the heat-flow inequality for `ρ → UρU†`. `ΔI = I(UρU†) - I(ρ)`, converted to nats.
pub fn heat_flow_check(rho: &DensityMatrix, u: &UnitaryMatrix) -> Result<HeatFlowReport> {
    if !rho.is_two_qubit() || u.dim() != 4 {
        return Err(Error::Unsupported("heat-flow check is for two qubits".into()));
    }
    for s in [Subsystem::A, Subsystem::B] {
        let c = rho.partial_trace(s).matrix()[(0, 1)].norm();
        if c > 1e-9 {
            return Err(Error::Precondition(format!("marginal {s:?} is not thermal (coherence {c:e})")));
        }
    }
    let h = two_qubit_hamiltonian();
    let after = u.apply(rho)?;
    let drift = energy(&after, &h)? - energy(rho, &h)?;
    if drift.abs() >= 1e-9 {
        return Err(Error::Precondition(format!("unitary changes the energy by {drift:e}")));
    }
    let (ea, eb) = excited_populations(rho);
    let (ea2, eb2) = excited_populations(&after);
    let beta_a = inverse_temperature(ea)?;
    let beta_b = inverse_temperature(eb)?;
    let q_a = ea2 - ea;
    let delta_i_bits = qmi(&after) - qmi(rho);
    let delta_i_nats = delta_i_bits * std::f64::consts::LN_2;
    let lhs = q_a * (beta_a - beta_b);
    Ok(HeatFlowReport {
        lambda_a: ea,
        lambda_b: eb,
        beta_a,
        beta_b,
        t_a: 1.0 / beta_a,
        t_b: 1.0 / beta_b,
        q_a,
        q_b: eb2 - eb,
        energy_drift: drift,
        delta_i_bits,
        delta_i_nats,
        lhs,
        holds: lhs >= delta_i_nats - HEAT_FLOW_SLACK,
    })
}

/// Random X-state with thermal marginals, locally flipped so both excited populations are
/// below 1/2 (and at least 1e-6 away from it).
pub fn sample_thermal_state<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    loop {
        let w: Vec<f64> = (0..4).map(|_| rng.sample::<f64, _>(Exp1)).collect();
        let s: f64 = w.iter().sum();
        let pops = [w[0] / s, w[1] / s, w[2] / s, 1.0 - (w[0] + w[1] + w[2]) / s];
        let x = XState {
            alpha: pops[0],
            beta: pops[1],
            gamma: pops[2],
            delta: pops[3],
            cos_theta: rng.random_range(-1.0..=1.0),
            cos_phi: rng.random_range(-1.0..=1.0),
        };
        let (ea, eb) = x.excited_populations();
        if (ea - 0.5).abs() < 1e-6 || (eb - 0.5).abs() < 1e-6 || ea.min(eb) < 1e-9 {
            continue;
        }
        let mut rho = x.materialize();
        let flip = |a: bool, b: bool| {
            let xa = if a { pauli_x() } else { linalg::identity(2) };
            let xb = if b { pauli_x() } else { linalg::identity(2) };
            linalg::kron(&xa, &xb)
        };
        rho = rho.evolve(&flip(ea > 0.5, eb > 0.5)).expect("dimensions match");
        return rho;
    }
}

fn pauli_x() -> CMat {
    linalg::paulis()[0].clone()
}

/// Energy-conserving unitary for `rho`: with probability 1/2 a block-diagonal unitary
/// on the energy eigenspaces (commutes with `H`), otherwise one that conserves only the mean
/// energy, found by bisection along `exp(i s G) W` where `W` sends the eigenbasis of `rho`
/// to its lowest- or highest-energy diagonal arrangement and `G` is a random Hermitian matrix.
pub fn sample_energy_conserving_unitary<R: Rng + ?Sized>(rng: &mut R, rho: &DensityMatrix) -> Result<UnitaryMatrix> {
    if rho.dim() != 4 {
        return Err(Error::Unsupported("sampler is for two qubits".into()));
    }
    if rng.random_bool(0.5) {
        return strong_energy_conserving(rng);
    }
    weak_energy_conserving(rng, rho)
}

pub fn strong_energy_conserving<R: Rng + ?Sized>(rng: &mut R) -> Result<UnitaryMatrix> {
    let v = haar_unitary_with(rng, 2)?;
    let mut m = CMat::zeros(4, 4);
    m[(0, 0)] = num_complex::Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
    m[(3, 3)] = num_complex::Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
    for i in 0..2 {
        for j in 0..2 {
            m[(1 + i, 1 + j)] = v.matrix()[(i, j)];
        }
    }
    UnitaryMatrix::new(m)
}

fn gue<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMat {
    let z = CMat::from_fn(d, d, |_, _| {
        num_complex::Complex64::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
    });
    (&z + z.adjoint()) * cr(0.5)
}

pub fn weak_energy_conserving<R: Rng + ?Sized>(rng: &mut R, rho: &DensityMatrix) -> Result<UnitaryMatrix> {
    let h = two_qubit_hamiltonian();
    let target = energy(rho, &h)?;
    let (_, vecs) = linalg::hermitian_eigh(rho.matrix());
    // Eigenvalues ascending: the largest goes to |00⟩ for the lowest energy.
    let low_order = [3usize, 1, 2, 0];
    let high_order = [0usize, 1, 2, 3];
    let arrangement = |order: [usize; 4]| {
        let mut m = CMat::zeros(4, 4);
        for (basis, &k) in order.iter().enumerate() {
            for j in 0..4 {
                m[(basis, j)] = vecs[(j, k)].conj();
            }
        }
        m
    };
    let e_of = |u: &CMat| energy(&rho.evolve(u).expect("4x4"), &h).expect("4x4") - target;
    for _ in 0..64 {
        let start = if rng.random_bool(0.5) { arrangement(low_order) } else { arrangement(high_order) };
        let f0 = e_of(&start);
        if f0.abs() < 1e-13 {
            return UnitaryMatrix::new(start);
        }
        let g = gue(rng, 4);
        let path = |s: f64| linalg::expm_i_hermitian(&g, s) * &start;
        let step = 0.05;
        let mut lo = 0.0;
        let mut flo = f0;
        let mut bracket = None;
        for k in 1..=200 {
            let s = k as f64 * step;
            let fs = e_of(&path(s));
            if fs.signum() != flo.signum() || fs == 0.0 {
                bracket = Some((lo, s));
                break;
            }
            lo = s;
            flo = fs;
        }
        let Some((mut a, mut b)) = bracket else { continue };
        let fa0 = e_of(&path(a));
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            let fm = e_of(&path(mid));
            if fm.abs() < 1e-14 {
                a = mid;
                b = mid;
                break;
            }
            if fm.signum() == fa0.signum() {
                a = mid;
            } else {
                b = mid;
            }
        }
        let u = path(0.5 * (a + b));
        if e_of(&u).abs() < 1e-12 {
            return UnitaryMatrix::new(u);
        }
    }
    Err(Error::Domain("failed to find an energy-conserving unitary".into()))
}

/// Aggregate of [`heat_flow_check`] over seeded samples.
#[derive(Clone, Debug, Serialize)]
pub struct HeatFlowSurvey {
    pub samples: u64,
    pub seed: u64,
    pub violations: u64,
    /// Smallest `lhs - ΔI` in nats.
    pub min_margin: f64,
    /// Per-sample reports, in sample order, when requested.
    pub reports: Vec<HeatFlowReport>,
}

/// Checks `samples` pairs from [`sample_thermal_state`] and [`sample_energy_conserving_unitary`].
/// Sample `k` draws from ChaCha stream `k` of `seed`, so results do not depend on thread count.
pub fn heat_flow_survey(samples: u64, seed: u64, keep_reports: bool) -> Result<HeatFlowSurvey> {
    let reports: Vec<HeatFlowReport> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k);
            let rho = sample_thermal_state(&mut rng);
            let u = sample_energy_conserving_unitary(&mut rng, &rho)?;
            heat_flow_check(&rho, &u)
        })
        .collect::<Result<_>>()?;
    let violations = reports.iter().filter(|r| !r.holds).count() as u64;
    let min_margin = reports.iter().map(|r| r.lhs - r.delta_i_nats).fold(f64::INFINITY, f64::min);
    Ok(HeatFlowSurvey {
        samples,
        seed,
        violations,
        min_margin,
        reports: if keep_reports { reports } else { Vec::new() },
    })
}
