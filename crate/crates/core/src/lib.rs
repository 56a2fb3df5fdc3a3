//! Quantum mutual information (QMI) of bipartite states along unitary orbits.
//!
//! The crate covers the whole chain from probability-vector primitives up to
//! the combinatorics of eigenvalue tables:
//!
//! - [`spectra`]: spectra, Shannon and binary entropy, simplex sampling.
//! - [`states`]: bipartite density matrices, partial traces, QMI, X-states.
//! - [`extremal`]: maximally and minimally correlated states on an orbit.
//! - [`region`]: the two-qubit set of compatible marginal eigenvalues and its
//!   energy-constrained subset.
//! - [`orbit`]: elementary two-qubit unitaries, Haar sampling, sweeps,
//!   triple points and the global-demon scenario.
//! - [`collision`]: collision-model equilibration and the heat-flow bound.
//! - [`tableaux`]: eigenvalue tables, Young tableaux, minimiser search.
//! - [`majorization`]: majorization, swap graphs on Young tableaux and the
//!   see-saw relations.
//!
//! All entropies are in bits. Basis states `|i_A j_B>` map to row
//! `i_A * d_B + j_B` everywhere.

pub mod collision;
pub mod error;
pub mod extremal;
pub mod linalg;
pub mod majorization;
pub mod orbit;
pub mod region;
pub mod spectra;
pub mod states;
pub mod tableaux;

pub use error::{Error, Result};
pub use orbit::UnitaryMatrix;
pub use region::{MarginalPoint, Region};
pub use spectra::Spectrum;
pub use states::{DensityMatrix, Subsystem, XState};
pub use tableaux::{Pattern, Shape, Table, YoungSet};

/// Version tag written into every JSON/CSV artifact.
pub const SCHEMA_VERSION: u32 = 1;
