// SPDX-License-Identifier: Apache-2.0

//! Brute-force evaluation from the system–bath propagator.
//!
//! `p_N(τ) = 4^{-n} Σ_{υ} Tr[Tr_S(U† Σ_υ) Tr_S(Σ_υ U) ρ_B]`, summed over the
//! correctable strings `υ`, with the partial traces taken literally.

use nalgebra::DMatrix;

use crate::channel::KrausSet;
use crate::code::{enumerate_correctable, CodeParams, CorrectableMode};
use crate::error::{Error, Result};
use crate::linalg::{check_spin_cap, spins_for_dim, Propagator};
use crate::model::NoiseModel;
use crate::pauli::PauliString;
use crate::sum::ComplexNeumaierSum;
use crate::C64;

/// Tolerance on the imaginary part of nominally real results.
pub const IMAGINARY_TOLERANCE: f64 = 1e-12;

pub(crate) fn real_part(z: C64) -> Result<f64> {
    if z.im.abs() > IMAGINARY_TOLERANCE {
        Err(Error::ImaginaryResidue {
            residue: z.im.abs(),
            tolerance: IMAGINARY_TOLERANCE,
        })
    } else {
        Ok(z.re)
    }
}

struct Dims {
    system: usize,
    bath: usize,
}

fn split_dims(u: &DMatrix<C64>, n: usize) -> Result<Dims> {
    if !u.is_square() {
        return Err(Error::Dimension(format!("propagator is {}x{}", u.nrows(), u.ncols())));
    }
    let total = spins_for_dim(u.nrows())
        .ok_or_else(|| Error::Dimension(format!("propagator dimension {} is not a power of two", u.nrows())))?;
    check_spin_cap("dense evaluation", total)?;
    if total < n {
        return Err(Error::Dimension(format!(
            "propagator on {total} spins cannot host {n} qubits"
        )));
    }
    Ok(Dims {
        system: 1 << n,
        bath: 1 << (total - n),
    })
}

/// `Tr_S((Σ_υ ⊗ I_B) U)` as a bath operator.
pub fn partial_trace_with(u: &DMatrix<C64>, upsilon: &PauliString) -> Result<DMatrix<C64>> {
    let dims = split_dims(u, upsilon.num_qubits())?;
    let db = dims.bath;
    let mut m = DMatrix::zeros(db, db);
    for s in 0..dims.system {
        let (amp, r) = upsilon.apply_to_basis(s);
        // (Σ_υ)_{r,s} = amp, so the system trace picks U[(s,b), (r,b')].
        for b in 0..db {
            for bp in 0..db {
                m[(b, bp)] += amp * u[(s * db + b, r * db + bp)];
            }
        }
    }
    Ok(m)
}

/// Per-string summands `4^{-n} Tr[M_υ† M_υ ρ_B]` with `M_υ = Tr_S(Σ_υ U)`.
pub fn direct_terms(
    u: &DMatrix<C64>,
    rho_b: &DMatrix<C64>,
    code: &CodeParams,
    mode: CorrectableMode,
) -> Result<Vec<(PauliString, C64)>> {
    let dims = split_dims(u, code.n)?;
    if rho_b.nrows() != dims.bath || rho_b.ncols() != dims.bath {
        return Err(Error::Dimension(format!(
            "bath state is {}x{}, expected {}x{}",
            rho_b.nrows(),
            rho_b.ncols(),
            dims.bath,
            dims.bath
        )));
    }
    let norm = 1.0 / (dims.system * dims.system) as f64;
    enumerate_correctable(code, mode)
        .into_iter()
        .map(|ups| {
            let m = partial_trace_with(u, &ups)?;
            let term = (m.adjoint() * &m * rho_b).trace() * norm;
            Ok((ups, term))
        })
        .collect()
}

/// `p_N` from a propagator and initial bath state, by literal partial traces.
pub fn performance_direct(
    u: &DMatrix<C64>,
    rho_b: &DMatrix<C64>,
    code: &CodeParams,
    mode: CorrectableMode,
) -> Result<f64> {
    let mut acc = ComplexNeumaierSum::new();
    for (_, term) in direct_terms(u, rho_b, code, mode)? {
        acc.add(term);
    }
    real_part(acc.value())
}

/// Kraus operators `E_{i,j} = √λ_i ⟨b_j|U|b_i⟩` for a bath state diagonal in
/// the dense bath basis with eigenvalues `lambda`. Zero-weight columns are
/// skipped; operators are ordered by `i`, then `j`.
pub fn kraus_from_propagator(u: &DMatrix<C64>, lambda: &[f64], n: usize) -> Result<KrausSet> {
    let dims = split_dims(u, n)?;
    let db = dims.bath;
    if lambda.len() != db {
        return Err(Error::Dimension(format!(
            "{} bath weights for bath dimension {db}",
            lambda.len()
        )));
    }
    let ds = dims.system;
    let mut ops = Vec::new();
    for (i, &li) in lambda.iter().enumerate() {
        if li == 0.0 {
            continue;
        }
        let amp = li.sqrt();
        for j in 0..db {
            let e = DMatrix::from_fn(ds, ds, |s, sp| u[(s * db + j, sp * db + i)] * amp);
            ops.push(e);
        }
    }
    KrausSet::new(n, ops)
}

/// Reusable dense evaluator for one model: the Hamiltonian is diagonalized
/// once and `U(τ)` rebuilt per time.
pub struct DenseEvaluator {
    propagator: Propagator,
    rho_b: DMatrix<C64>,
    code: CodeParams,
}

impl DenseEvaluator {
    pub fn new(model: &NoiseModel) -> Result<Self> {
        let h = model.dense_hamiltonian()?;
        Ok(Self {
            propagator: Propagator::new(&h)?,
            rho_b: model.bath_density()?,
            code: model.code,
        })
    }

    pub fn propagator_at(&self, tau: f64) -> DMatrix<C64> {
        self.propagator.at(tau)
    }

    pub fn bath_density(&self) -> &DMatrix<C64> {
        &self.rho_b
    }

    pub fn performance(&self, tau: f64, mode: CorrectableMode) -> Result<f64> {
        performance_direct(&self.propagator.at(tau), &self.rho_b, &self.code, mode)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{chi_from_kraus, performance_from_chi};
    use crate::linalg::{identity, propagator};
    use crate::model::{BathSpec, ThermalState, Topology};
    use approx::assert_abs_diff_eq;

    fn diag(values: &[f64]) -> DMatrix<C64> {
        DMatrix::from_fn(values.len(), values.len(), |r, c| {
            if r == c {
                C64::new(values[r], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    #[test]
    fn single_qubit_single_spin_is_cos_squared() {
        // g σ_z Z, bath fixed in |↑⟩: p_N = |Tr e^{-igτσ_z}|²/4 = cos²(gτ)
        let g = 1.0;
        let h = diag(&[g, -g, -g, g]);
        let rho_b = diag(&[1.0, 0.0]);
        let code = CodeParams::new(1, 0, 1).unwrap();
        for tau in [0.0, 0.3, 1.1, 2.9] {
            let u = propagator(&h, tau).unwrap();
            let p = performance_direct(&u, &rho_b, &code, CorrectableMode::TotalWeight).unwrap();
            assert_abs_diff_eq!(p, (g * tau).cos().powi(2), epsilon = 1e-14);
        }
    }

    #[test]
    fn kraus_at_zero_time() {
        let lambda = ThermalState::new(2, 0.4).basis_weights();
        let u = identity(16);
        let k = kraus_from_propagator(&u, &lambda, 2).unwrap();
        assert_eq!(k.len(), 16);
        for (idx, e) in k.operators().iter().enumerate() {
            let (i, j) = (idx / 4, idx % 4);
            let expected = if i == j {
                identity(4) * C64::new(lambda[i].sqrt(), 0.0)
            } else {
                DMatrix::zeros(4, 4)
            };
            assert!(crate::linalg::max_abs(&(e - expected)) < 1e-15);
        }
    }

    #[test]
    fn kraus_pure_bath_is_single_unitary() {
        let g = 0.9;
        let tau = 0.7;
        let u = propagator(&diag(&[g, -g, -g, g]), tau).unwrap();
        let k = kraus_from_propagator(&u, &[1.0, 0.0], 1).unwrap();
        let nonzero: Vec<_> = k
            .operators()
            .iter()
            .filter(|e| crate::linalg::max_abs(e) > 0.0)
            .collect();
        assert_eq!(nonzero.len(), 1);
        let e = nonzero[0];
        assert!((e[(0, 0)] - C64::from_polar(1.0, -g * tau)).norm() < 1e-15);
        assert!((e[(1, 1)] - C64::from_polar(1.0, g * tau)).norm() < 1e-15);
    }

    #[test]
    fn kraus_completeness_thermal_bath() {
        let bath = BathSpec {
            topology: Topology::SharedNonlocal,
            spins: 3,
            omega: 1.0,
            beta_omega: 0.5,
            g: 1.0,
            coupling_table: None,
        };
        let model = NoiseModel::new(CodeParams::new(1, 0, 1).unwrap(), bath, 0.0, None).unwrap();
        let ev = DenseEvaluator::new(&model).unwrap();
        let lambda = ThermalState::new(3, 0.5).basis_weights();
        for tau in [0.0, 0.4, 2.2] {
            let k = kraus_from_propagator(&ev.propagator_at(tau), &lambda, 1).unwrap();
            assert!(k.completeness_error() < 1e-10);
        }
    }

    #[test]
    fn chi_route_agrees_on_three_qubits() {
        let bath = BathSpec {
            topology: Topology::SharedNonlocal,
            spins: 2,
            omega: 1.0,
            beta_omega: 0.3,
            g: 1.0,
            coupling_table: None,
        };
        let code = CodeParams::new(3, 1, 3).unwrap();
        let model = NoiseModel::new(code, bath, 0.1, None).unwrap();
        let ev = DenseEvaluator::new(&model).unwrap();
        let lambda = ThermalState::new(2, 0.3).basis_weights();
        for tau in [0.0, 0.37, 1.4] {
            let u = ev.propagator_at(tau);
            let chi = chi_from_kraus(&kraus_from_propagator(&u, &lambda, 3).unwrap());
            for mode in [CorrectableMode::TotalWeight, CorrectableMode::CssSplit] {
                let direct = performance_direct(&u, ev.bath_density(), &code, mode).unwrap();
                let via_chi = performance_from_chi(&chi, &code, mode).unwrap();
                assert_abs_diff_eq!(direct, via_chi, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn dimension_errors() {
        let code = CodeParams::new(2, 1, 1).unwrap();
        let u = identity(8);
        assert!(performance_direct(&u, &identity(4), &code, CorrectableMode::TotalWeight).is_err());
        assert!(kraus_from_propagator(&u, &[1.0], 2).is_err());
        assert!(performance_direct(&identity(6), &identity(3), &code, CorrectableMode::TotalWeight).is_err());
    }
}
