// SPDX-License-Identifier: Apache-2.0

//! Performance of CSS quantum codes under microscopically modeled noise.
//!
//! The crate evaluates the code-averaged recovery fidelity `p_N(τ_d)` of an
//! `[n, k, d]` CSS code whose qubits dephase through spin-star baths, either
//! through a brute-force dense route (partial traces of the system–bath
//! propagator, or the Pauli-basis chi matrix of the induced channel) or a
//! magnetization-sector fast path that scales to hundreds of bath spins.
//! It also compares local and global faulty control fields through their
//! averaged gate fidelities.

pub mod channel;
pub mod code;
pub mod error;
pub mod evaluator;
pub mod gate;
pub mod linalg;
pub mod model;
pub mod pauli;
pub mod quadrature;
pub mod sum;
pub mod validation;

pub use channel::{ChiMatrix, KrausSet};
pub use code::{CodeParams, CorrectableMode};
pub use error::{Error, Result};
pub use evaluator::{Method, PerformanceCurve};
pub use model::{BathSpec, ModelConfig, NoiseModel, ThermalState, Topology};
pub use pauli::{PauliString, Phase};

/// Complex scalar used for every dense operator in the crate.
pub type C64 = num_complex::Complex64;

/// Formats a float with 17 significant digits, the precision used for every
/// numeric artifact the crate writes.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}
