// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("qubit count mismatch: {left} vs {right}")]
    QubitMismatch { left: usize, right: usize },

    #[error("{what} needs {required} qubits/spins, above the dense cap of {cap}")]
    DenseCapExceeded {
        what: &'static str,
        required: usize,
        cap: usize,
    },

    #[error("invalid Pauli string {0:?}")]
    InvalidPauli(String),

    #[error("invalid code parameters: {0}")]
    InvalidCode(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("weight {w} out of range 0..={n}")]
    WeightOutOfRange { w: usize, n: usize },

    #[error("invalid noise model: {0}")]
    InvalidModel(String),

    #[error("sector evaluation requires symmetric couplings; use the dense path")]
    AsymmetricCouplings,

    #[error("no feasible evaluation path for model {0}")]
    NoFeasiblePath(String),

    #[error("imaginary residue {residue:e} of a nominally real quantity exceeds {tolerance:e}")]
    ImaginaryResidue { residue: f64, tolerance: f64 },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("quadrature did not reach tolerance {target:e} (estimate {estimate:e})")]
    QuadratureFailed { target: f64, estimate: f64 },

    #[error("Hölder ordering violated by {violation:e} at {case}")]
    HolderViolation { violation: f64, case: String },
}
