// SPDX-License-Identifier: Apache-2.0

//! Spin-star dephasing models and their thermal bath states.
//!
//! Spins use `Z = ±1`; a dense basis bit of 0 is spin up (`+1`). Sectors are
//! labelled by the number `k` of down spins, with bath magnetization
//! `N − 2k` and internal energy `Ω (N − 2k)`.
//!
//! Every Hamiltonian in the catalog is diagonal in the computational basis:
//!
//! * two-body: `Σ_m Σ_i g_{mi} σ_z^m Z_i` over the bath spins coupled to qubit `m`
//! * bath: `Ω Σ_i Z_i` over all bath spins
//! * three-body: `Σ_{j,k} G_{jk} σ_z^j σ_z^k B_{jk}` where `G_{jk} = g′` for
//!   `j < k` (zero otherwise) unless a pair table overrides it, and `B_{jk}`
//!   is the total bath magnetization for a shared bath or `B_j + B_k` (the
//!   magnetizations of the two qubits' own baths) for local topologies.

use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::code::CodeParams;
use crate::error::{Error, Result};
use crate::linalg::check_spin_cap;
use crate::sum::NeumaierSum;
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Topology {
    /// Every qubit owns a bath of `N` spins.
    PerQubitLocal,
    /// All qubits share one bath of `N` spins.
    SharedNonlocal,
    /// `N` spins split evenly into one bath of `N/n` spins per qubit.
    LocalSplit,
}

impl Topology {
    pub fn as_str(self) -> &'static str {
        match self {
            Topology::PerQubitLocal => "per-qubit-local",
            Topology::SharedNonlocal => "shared-nonlocal",
            Topology::LocalSplit => "local-split",
        }
    }

    pub fn is_local(self) -> bool {
        !matches!(self, Topology::SharedNonlocal)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InteractionFamily {
    Dephasing2Body,
    Dephasing3Body,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BathSpec {
    pub topology: Topology,
    /// Per qubit for `PerQubitLocal`, total otherwise.
    pub spins: usize,
    /// Internal bath frequency entering the propagator.
    pub omega: f64,
    /// Inverse temperature times `Ω`; the only way temperature enters.
    pub beta_omega: f64,
    /// Symmetric system–bath coupling.
    pub g: f64,
    /// Optional `n × spins_per_bath` table of `g_{mi}`; overrides `g`.
    pub coupling_table: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub code: CodeParams,
    pub bath: BathSpec,
    /// Three-body coupling `g′`.
    pub gprime: f64,
    /// Optional `n × n` table `G_{jk}` replacing the `j < k` default.
    pub pair_table: Option<Vec<Vec<f64>>>,
    pub family: InteractionFamily,
}

fn default_omega() -> f64 {
    1.0
}

fn default_g() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeConfig {
    pub n: usize,
    pub k: usize,
    pub d: usize,
}

/// Serializable model description, resolved by [`build_model`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub code: CodeConfig,
    pub topology: Topology,
    pub spins: usize,
    pub beta_omega: f64,
    #[serde(default = "default_omega")]
    pub omega: f64,
    #[serde(default = "default_g")]
    pub g: f64,
    #[serde(default)]
    pub gprime: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coupling_table: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair_table: Option<Vec<Vec<f64>>>,
}

pub fn build_model(config: &ModelConfig) -> Result<NoiseModel> {
    let code = CodeParams::new(config.code.n, config.code.k, config.code.d)?;
    let bath = BathSpec {
        topology: config.topology,
        spins: config.spins,
        omega: config.omega,
        beta_omega: config.beta_omega,
        g: config.g,
        coupling_table: config.coupling_table.clone(),
    };
    NoiseModel::new(code, bath, config.gprime, config.pair_table.clone())
}

impl NoiseModel {
    pub fn new(code: CodeParams, bath: BathSpec, gprime: f64, pair_table: Option<Vec<Vec<f64>>>) -> Result<Self> {
        let n = code.n;
        let bad = |msg: String| Err(Error::InvalidModel(msg));
        if bath.topology == Topology::LocalSplit && !bath.spins.is_multiple_of(n) {
            return bad(format!("local-split needs n = {n} to divide N = {}", bath.spins));
        }
        for (name, v) in [
            ("omega", bath.omega),
            ("beta_omega", bath.beta_omega),
            ("g", bath.g),
            ("gprime", gprime),
        ] {
            if v.is_nan() || (name != "beta_omega" && !v.is_finite()) {
                return bad(format!("{name} = {v} is not a number"));
            }
        }
        let beta_negative = if bath.omega == 0.0 {
            bath.beta_omega != 0.0
        } else {
            bath.beta_omega / bath.omega < 0.0
        };
        if beta_negative {
            return bad(format!(
                "beta_omega = {} with omega = {} implies negative beta",
                bath.beta_omega, bath.omega
            ));
        }
        let per_bath = match bath.topology {
            Topology::LocalSplit => bath.spins / n,
            _ => bath.spins,
        };
        if let Some(table) = &bath.coupling_table {
            if table.len() != n || table.iter().any(|row| row.len() != per_bath) {
                return bad(format!("coupling table must be {n} x {per_bath}"));
            }
            if table.iter().flatten().any(|v| !v.is_finite()) {
                return bad("coupling table has non-finite entries".into());
            }
        }
        if let Some(table) = &pair_table {
            if table.len() != n || table.iter().any(|row| row.len() != n) {
                return bad(format!("pair table must be {n} x {n}"));
            }
            if table.iter().flatten().any(|v| !v.is_finite()) {
                return bad("pair table has non-finite entries".into());
            }
        }
        let three_body = gprime != 0.0
            || pair_table
                .as_ref()
                .is_some_and(|t| t.iter().flatten().any(|&v| v != 0.0));
        let family = if three_body {
            InteractionFamily::Dephasing3Body
        } else {
            InteractionFamily::Dephasing2Body
        };
        Ok(Self {
            code,
            bath,
            gprime,
            pair_table,
            family,
        })
    }

    pub fn n(&self) -> usize {
        self.code.n
    }

    /// Spins in each bath a qubit couples to.
    pub fn spins_per_bath(&self) -> usize {
        match self.bath.topology {
            Topology::LocalSplit => self.bath.spins / self.code.n,
            _ => self.bath.spins,
        }
    }

    pub fn bath_count(&self) -> usize {
        if self.bath.topology.is_local() {
            self.code.n
        } else {
            1
        }
    }

    pub fn total_bath_spins(&self) -> usize {
        self.bath_count() * self.spins_per_bath()
    }

    pub fn total_spins(&self) -> usize {
        self.code.n + self.total_bath_spins()
    }

    /// Global index of spin `i` of the bath coupled to qubit `m`.
    pub fn bath_spin(&self, m: usize, i: usize) -> usize {
        if self.bath.topology.is_local() {
            m * self.spins_per_bath() + i
        } else {
            i
        }
    }

    pub fn coupling(&self, m: usize, i: usize) -> f64 {
        self.bath.coupling_table.as_ref().map_or(self.bath.g, |t| t[m][i])
    }

    pub fn pair_coupling(&self, j: usize, k: usize) -> f64 {
        match &self.pair_table {
            Some(t) => t[j][k],
            None if j < k => self.gprime,
            None => 0.0,
        }
    }

    /// The common `g` when every `g_{mi}` is equal.
    pub fn symmetric_g(&self) -> Option<f64> {
        match &self.bath.coupling_table {
            None => Some(self.bath.g),
            Some(t) => {
                let first = t.iter().flatten().next().copied().unwrap_or(self.bath.g);
                t.iter().flatten().all(|&v| v == first).then_some(first)
            }
        }
    }

    /// The common `g′` when the pair table has the default `j < k` shape.
    pub fn symmetric_gprime(&self) -> Option<f64> {
        let n = self.code.n;
        match &self.pair_table {
            None => Some(self.gprime),
            Some(t) => {
                let first = if n >= 2 { t[0][1] } else { 0.0 };
                (0..n)
                    .all(|j| (0..n).all(|k| t[j][k] == if j < k { first } else { 0.0 }))
                    .then_some(first)
            }
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric_g().is_some() && self.symmetric_gprime().is_some()
    }

    /// Sector distribution of one coupled bath.
    pub fn thermal_state(&self) -> ThermalState {
        ThermalState::new(self.spins_per_bath(), self.bath.beta_omega)
    }

    /// Diagonal of the Hamiltonian in the dense basis: system qubits first
    /// (qubit 0 most significant), then bath spins in global index order.
    pub fn diagonal_energies(&self) -> Result<Vec<f64>> {
        check_spin_cap("dense Hamiltonian", self.total_spins())?;
        let n = self.code.n;
        let nb = self.total_bath_spins();
        let per_bath = self.spins_per_bath();
        let local = self.bath.topology.is_local();
        let dim = 1usize << (n + nb);
        let mut out = Vec::with_capacity(dim);
        for idx in 0..dim {
            let s = idx >> nb;
            let b = idx & ((1usize << nb) - 1);
            let sz = |m: usize| if (s >> (n - 1 - m)) & 1 == 0 { 1.0 } else { -1.0 };
            let bz = |i: usize| if (b >> (nb - 1 - i)) & 1 == 0 { 1.0 } else { -1.0 };
            let bath_mag = |m: usize| -> f64 { (0..per_bath).map(|i| bz(self.bath_spin(m, i))).sum() };
            let total_mag: f64 = (0..nb).map(bz).sum();

            let mut e = NeumaierSum::new();
            for m in 0..n {
                for i in 0..per_bath {
                    e.add(self.coupling(m, i) * sz(m) * bz(self.bath_spin(m, i)));
                }
            }
            e.add(self.bath.omega * total_mag);
            for j in 0..n {
                for k in 0..n {
                    let gjk = self.pair_coupling(j, k);
                    if gjk == 0.0 {
                        continue;
                    }
                    let field = if local { bath_mag(j) + bath_mag(k) } else { total_mag };
                    e.add(gjk * sz(j) * sz(k) * field);
                }
            }
            out.push(e.value());
        }
        Ok(out)
    }

    /// The model Hamiltonian as a dense Hermitian matrix.
    pub fn dense_hamiltonian(&self) -> Result<DMatrix<C64>> {
        let diag = self.diagonal_energies()?;
        let dim = diag.len();
        let mut h = DMatrix::zeros(dim, dim);
        for (i, e) in diag.into_iter().enumerate() {
            h[(i, i)] = C64::new(e, 0.0);
        }
        Ok(h)
    }

    /// Bath density matrix in the dense bath basis: a product of thermal
    /// states, hence the thermal state of all bath spins.
    pub fn bath_density(&self) -> Result<DMatrix<C64>> {
        let nb = self.total_bath_spins();
        check_spin_cap("bath density", nb)?;
        let weights = ThermalState::new(nb, self.bath.beta_omega).basis_weights();
        let dim = weights.len();
        let mut rho = DMatrix::zeros(dim, dim);
        for (i, w) in weights.into_iter().enumerate() {
            rho[(i, i)] = C64::new(w, 0.0);
        }
        Ok(rho)
    }

    pub fn tag(&self) -> String {
        format!("{self}")
    }
}

impl fmt::Display for NoiseModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{},{},{}] {} N={} beta_omega={} g'={}",
            self.code.n,
            self.code.k,
            self.code.d,
            self.bath.topology.as_str(),
            self.bath.spins,
            self.bath.beta_omega,
            self.gprime
        )?;
        if self.bath.coupling_table.is_some() || self.pair_table.is_some() {
            write!(f, " (tabulated)")?;
        }
        Ok(())
    }
}

/// `ln(2 cosh x)`, stable for large `|x|`.
fn ln_two_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p()
}

/// Magnetization-sector weights of `N` free spins in `H_B = Ω Σ Z_i` at
/// inverse temperature `β`, with `x = βΩ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalState {
    spins: usize,
    beta_omega: f64,
    /// `P_k` for `k = 0..=N` down spins, degeneracy included.
    weights: Vec<f64>,
    /// `ln Z = N ln(2 cosh βΩ)`.
    log_partition: f64,
}

impl ThermalState {
    pub fn new(spins: usize, beta_omega: f64) -> Self {
        let n = spins;
        let x = beta_omega;
        if x.is_infinite() {
            // ground sector only
            let mut weights = vec![0.0; n + 1];
            weights[if x > 0.0 { n } else { 0 }] = 1.0;
            return Self {
                spins,
                beta_omega,
                weights,
                log_partition: f64::INFINITY,
            };
        }
        let log_partition = n as f64 * ln_two_cosh(x);
        let mut ln_binom = 0.0;
        let mut weights: Vec<f64> = (0..=n)
            .map(|k| {
                if k > 0 {
                    ln_binom += ((n - k + 1) as f64).ln() - (k as f64).ln();
                }
                (ln_binom - x * (n as f64 - 2.0 * k as f64) - log_partition).exp()
            })
            .collect();
        // absorb the rounding of the log-space terms
        let total: f64 = weights.iter().copied().collect::<NeumaierSum>().value();
        weights.iter_mut().for_each(|w| *w /= total);
        Self {
            spins,
            beta_omega,
            weights,
            log_partition,
        }
    }

    pub fn spins(&self) -> usize {
        self.spins
    }

    pub fn beta_omega(&self) -> f64 {
        self.beta_omega
    }

    /// `P_k`, indexed by number of down spins.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Bath magnetization `N − 2k` of sector `k`.
    pub fn magnetization(&self, k: usize) -> f64 {
        self.spins as f64 - 2.0 * k as f64
    }

    pub fn log_partition(&self) -> f64 {
        self.log_partition
    }

    /// Weight of a single basis state with `k` down spins.
    pub fn state_weight(&self, k: usize) -> f64 {
        let x = self.beta_omega;
        if x.is_infinite() {
            let ground = if x > 0.0 { self.spins } else { 0 };
            return if k == ground { 1.0 } else { 0.0 };
        }
        (-x * self.magnetization(k) - self.log_partition).exp()
    }

    /// Eigenvalues `λ_b` of the bath density matrix over the `2^N` basis
    /// states in dense order.
    pub fn basis_weights(&self) -> Vec<f64> {
        let per_sector: Vec<f64> = (0..=self.spins).map(|k| self.state_weight(k)).collect();
        (0..1usize << self.spins)
            .map(|b| per_sector[b.count_ones() as usize])
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn bath(topology: Topology, spins: usize, beta_omega: f64) -> BathSpec {
        BathSpec {
            topology,
            spins,
            omega: 1.0,
            beta_omega,
            g: 1.0,
            coupling_table: None,
        }
    }

    fn binom(n: usize, k: usize) -> f64 {
        (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    }

    #[test]
    fn infinite_temperature_is_binomial() {
        let t = ThermalState::new(6, 0.0);
        for k in 0..=6 {
            assert_abs_diff_eq!(t.weights()[k], binom(6, k) / 64.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn empty_bath() {
        let t = ThermalState::new(0, 0.3);
        assert_eq!(t.weights(), &[1.0]);
    }

    #[test]
    fn zero_temperature_is_all_down() {
        let t = ThermalState::new(5, f64::INFINITY);
        assert_eq!(t.weights(), &[0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        let t = ThermalState::new(5, 800.0);
        assert_abs_diff_eq!(t.weights()[5], 1.0, epsilon = 1e-15);
        assert!(t.weights().iter().all(|w| w.is_finite()));
    }

    #[test]
    fn weights_normalized_and_match_partition() {
        for &(n, x) in &[(7, 0.01), (196, 0.01), (196, 0.5), (40, -1.3)] {
            let t = ThermalState::new(n, x);
            let total: f64 = t.weights().iter().sum();
            assert_abs_diff_eq!(total, 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(t.log_partition(), n as f64 * (2.0 * f64::cosh(x)).ln(), epsilon = 1e-10);
            assert!(t.weights().iter().all(|&w| w >= 0.0));
        }
        let t = ThermalState::new(4, 0.7);
        let z = (2.0 * 0.7f64.cosh()).powi(4);
        for k in 0..=4 {
            let expected = binom(4, k) * (-0.7 * (4.0 - 2.0 * k as f64)).exp() / z;
            assert_abs_diff_eq!(t.weights()[k], expected, epsilon = 1e-15);
        }
    }

    #[test]
    fn basis_weights_depend_on_sector_only() {
        let t = ThermalState::new(4, 0.4);
        let w = t.basis_weights();
        assert_abs_diff_eq!(w.iter().sum::<f64>(), 1.0, epsilon = 1e-14);
        // relabelling spins permutes basis states within a sector
        for b in 0..16usize {
            let rotated = ((b << 1) | (b >> 3)) & 0xF;
            assert_eq!(w[b], w[rotated]);
        }
    }

    #[test]
    fn build_model_paper_configurations() {
        let cfg = |topology, spins| ModelConfig {
            code: CodeConfig { n: 7, k: 1, d: 3 },
            topology,
            spins,
            beta_omega: 0.01,
            omega: 1.0,
            g: 1.0,
            gprime: 0.0,
            coupling_table: None,
            pair_table: None,
        };
        let m = build_model(&cfg(Topology::SharedNonlocal, 7)).unwrap();
        assert_eq!(m.family, InteractionFamily::Dephasing2Body);
        assert_eq!(m.total_bath_spins(), 7);

        let m = build_model(&cfg(Topology::PerQubitLocal, 7)).unwrap();
        assert_eq!((m.bath_count(), m.spins_per_bath(), m.total_bath_spins()), (7, 7, 49));

        let split = build_model(&cfg(Topology::LocalSplit, 196)).unwrap();
        let shared = build_model(&cfg(Topology::SharedNonlocal, 196)).unwrap();
        assert_eq!(split.total_bath_spins(), shared.total_bath_spins());
        assert_eq!(split.spins_per_bath(), 28);

        let mut three = cfg(Topology::SharedNonlocal, 7);
        three.gprime = 0.1;
        assert_eq!(build_model(&three).unwrap().family, InteractionFamily::Dephasing3Body);
    }

    #[test]
    fn build_model_rejects_invalid() {
        let base = ModelConfig {
            code: CodeConfig { n: 7, k: 1, d: 3 },
            topology: Topology::LocalSplit,
            spins: 10,
            beta_omega: 0.01,
            omega: 1.0,
            g: 1.0,
            gprime: 0.0,
            coupling_table: None,
            pair_table: None,
        };
        assert!(matches!(build_model(&base), Err(Error::InvalidModel(_))));
        let mut neg = base.clone();
        neg.spins = 14;
        neg.beta_omega = -0.5;
        assert!(matches!(build_model(&neg), Err(Error::InvalidModel(_))));
        let mut table = base.clone();
        table.spins = 14;
        table.coupling_table = Some(vec![vec![1.0; 3]; 7]);
        assert!(matches!(build_model(&table), Err(Error::InvalidModel(_))));
        let mut code = base;
        code.code.d = 9;
        assert!(matches!(build_model(&code), Err(Error::InvalidCode(_))));
    }

    #[test]
    fn single_pair_spectrum() {
        let mut b = bath(Topology::SharedNonlocal, 1, 0.0);
        b.omega = 0.0;
        b.g = 0.8;
        let m = NoiseModel::new(CodeParams::new(1, 0, 1).unwrap(), b, 0.0, None).unwrap();
        assert_eq!(m.diagonal_energies().unwrap(), vec![0.8, -0.8, -0.8, 0.8]);
    }

    #[test]
    fn hamiltonians_are_diagonal() {
        for topology in [Topology::PerQubitLocal, Topology::SharedNonlocal, Topology::LocalSplit] {
            let spins = if topology == Topology::PerQubitLocal { 1 } else { 2 };
            let m = NoiseModel::new(
                CodeParams::synthetic(2, 1).unwrap(),
                bath(topology, spins, 0.2),
                0.1,
                None,
            )
            .unwrap();
            let h = m.dense_hamiltonian().unwrap();
            for r in 0..h.nrows() {
                for c in 0..h.ncols() {
                    if r != c {
                        assert_eq!(h[(r, c)], C64::new(0.0, 0.0));
                    }
                }
            }
        }
    }

    #[test]
    fn three_body_term_is_collective() {
        // g′ Σ_{j<k} σ_z^j σ_z^k ⊗ B = g′ (S_z² − n)/2 ⊗ B
        for n in 2..=4 {
            let spins = 2;
            let mut b = bath(Topology::SharedNonlocal, spins, 0.0);
            b.omega = 0.0;
            b.g = 0.0;
            let m = NoiseModel::new(CodeParams::synthetic(n, 1).unwrap(), b, 0.1, None).unwrap();
            let e = m.diagonal_energies().unwrap();
            for (idx, &energy) in e.iter().enumerate() {
                let s = idx >> spins;
                let bb = idx & 3;
                let sz: f64 = (0..n).map(|j| if (s >> j) & 1 == 0 { 1.0 } else { -1.0 }).sum();
                let bz: f64 = (0..spins).map(|i| if (bb >> i) & 1 == 0 { 1.0 } else { -1.0 }).sum();
                assert_abs_diff_eq!(energy, 0.1 * (sz * sz - n as f64) / 2.0 * bz, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn local_split_is_a_sum_of_independent_models() {
        let split = NoiseModel::new(
            CodeParams::synthetic(2, 1).unwrap(),
            bath(Topology::LocalSplit, 4, 0.0),
            0.0,
            None,
        )
        .unwrap();
        let single = NoiseModel::new(
            CodeParams::new(1, 0, 1).unwrap(),
            bath(Topology::SharedNonlocal, 2, 0.0),
            0.0,
            None,
        )
        .unwrap();
        let mut a = split.diagonal_energies().unwrap();
        let e1 = single.diagonal_energies().unwrap();
        let mut b: Vec<f64> = e1.iter().flat_map(|x| e1.iter().map(move |y| x + y)).collect();
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-14);
        }
    }

    #[test]
    fn dense_cap_enforced() {
        let m = NoiseModel::new(CodeParams::steane(), bath(Topology::SharedNonlocal, 8, 0.0), 0.0, None).unwrap();
        assert!(matches!(m.dense_hamiltonian(), Err(Error::DenseCapExceeded { .. })));
    }

    #[test]
    fn symmetry_detection() {
        let mut b = bath(Topology::SharedNonlocal, 2, 0.0);
        b.coupling_table = Some(vec![vec![0.5, 0.5], vec![0.5, 0.5]]);
        let m = NoiseModel::new(CodeParams::synthetic(2, 0).unwrap(), b.clone(), 0.0, None).unwrap();
        assert_eq!(m.symmetric_g(), Some(0.5));
        b.coupling_table = Some(vec![vec![0.5, 0.4], vec![0.5, 0.5]]);
        let m = NoiseModel::new(
            CodeParams::synthetic(2, 0).unwrap(),
            b,
            0.0,
            Some(vec![vec![0.0, 0.2], vec![0.2, 0.0]]),
        )
        .unwrap();
        assert_eq!(m.symmetric_g(), None);
        assert_eq!(m.symmetric_gprime(), None);
    }
}
