// SPDX-License-Identifier: Apache-2.0

//! Small dense linear-algebra helpers on `DMatrix<C64>`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::C64;

/// Largest total spin count (system plus bath) handled by dense routes.
pub const DENSE_SPIN_CAP: usize = 14;

pub fn dagger(m: &DMatrix<C64>) -> DMatrix<C64> {
    m.adjoint()
}

pub fn identity(dim: usize) -> DMatrix<C64> {
    DMatrix::identity(dim, dim)
}

/// Largest entry modulus.
pub fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn is_hermitian(m: &DMatrix<C64>, tol: f64) -> bool {
    m.is_square() && max_abs(&(m - m.adjoint())) <= tol
}

pub(crate) fn spins_for_dim(dim: usize) -> Option<usize> {
    dim.is_power_of_two().then(|| dim.trailing_zeros() as usize)
}

pub(crate) fn check_spin_cap(what: &'static str, spins: usize) -> Result<()> {
    if spins > DENSE_SPIN_CAP {
        Err(Error::DenseCapExceeded {
            what,
            required: spins,
            cap: DENSE_SPIN_CAP,
        })
    } else {
        Ok(())
    }
}

/// Eigendecomposition of a Hermitian generator, reusable for `exp(-iτH)` at
/// many times.
#[derive(Debug, Clone)]
pub struct Propagator {
    vectors: DMatrix<C64>,
    energies: DVector<f64>,
}

impl Propagator {
    pub fn new(h: &DMatrix<C64>) -> Result<Self> {
        let dim = h.nrows();
        let spins = spins_for_dim(dim)
            .ok_or_else(|| Error::Dimension(format!("Hamiltonian dimension {dim} is not a power of two")))?;
        check_spin_cap("propagator", spins)?;
        if !is_hermitian(h, 1e-12 * (1.0 + max_abs(h))) {
            return Err(Error::Dimension("Hamiltonian is not Hermitian".into()));
        }
        let eig = SymmetricEigen::new(h.clone());
        Ok(Self {
            vectors: eig.eigenvectors,
            energies: eig.eigenvalues,
        })
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    /// `U = exp(-iτH) = V diag(e^{-iτλ}) V†`.
    pub fn at(&self, tau: f64) -> DMatrix<C64> {
        let mut scaled = self.vectors.clone();
        for (j, &e) in self.energies.iter().enumerate() {
            let phase = C64::from_polar(1.0, -tau * e);
            for z in scaled.column_mut(j).iter_mut() {
                *z *= phase;
            }
        }
        scaled * self.vectors.adjoint()
    }
}

/// `exp(-iτH)` for a Hermitian `h`.
pub fn propagator(h: &DMatrix<C64>, tau: f64) -> Result<DMatrix<C64>> {
    Ok(Propagator::new(h)?.at(tau))
}

/// In-place Walsh–Hadamard transform: `out[z] = Σ_d (-1)^{popcount(z & d)} v[d]`.
pub(crate) fn walsh_hadamard(v: &mut [C64]) {
    let len = v.len();
    debug_assert!(len.is_power_of_two());
    let mut h = 1;
    while h < len {
        for block in (0..len).step_by(2 * h) {
            for i in block..block + h {
                let a = v[i];
                let b = v[i + h];
                v[i] = a + b;
                v[i + h] = a - b;
            }
        }
        h *= 2;
    }
}
