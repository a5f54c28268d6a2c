// SPDX-License-Identifier: Apache-2.0

//! Magnetization-sector evaluation for symmetric commuting models.
//!
//! With symmetric couplings the propagator restricted to a bath basis state
//! depends only on the sector magnetizations `b_k = N − 2k`, so the bath
//! trace collapses to a sum over at most `N + 1` sectors per bath. Only
//! Z-type correctable strings contribute (the propagator is diagonal) and
//! the internal bath term drops out of every `|Tr|²`.

use crate::code::{enumerate_correctable, CodeParams, CorrectableMode};
use crate::error::{Error, Result};
use crate::model::{NoiseModel, ThermalState};
use crate::sum::{ComplexNeumaierSum, NeumaierSum};
use crate::C64;

use super::dense::real_part;

/// Precomputed, time-independent data for one model.
pub(crate) struct SectorPlan {
    n: usize,
    g: f64,
    gprime: f64,
    local: bool,
    thermal: ThermalState,
    /// Z masks of the contributing correctable strings, qubit `m` in bit `m`.
    z_strings: Vec<u64>,
    /// Highest weight `w` such that every Z string of weight `w` is correctable.
    max_weight: usize,
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

impl SectorPlan {
    pub(crate) fn new(model: &NoiseModel, mode: CorrectableMode) -> Result<Self> {
        let (Some(g), Some(gprime)) = (model.symmetric_g(), model.symmetric_gprime()) else {
            return Err(Error::AsymmetricCouplings);
        };
        let code: &CodeParams = &model.code;
        let z_strings: Vec<u64> = enumerate_correctable(code, mode)
            .into_iter()
            .filter(|p| p.is_z_type())
            .map(|p| p.z_mask())
            .collect();
        Ok(Self {
            n: code.n,
            g,
            gprime,
            local: model.bath.topology.is_local(),
            thermal: model.thermal_state(),
            z_strings,
            max_weight: code.t.min(code.n),
        })
    }

    pub(crate) fn evaluate(&self, tau: f64) -> Result<f64> {
        match (self.local, self.gprime == 0.0) {
            (false, true) => Ok(self.shared_two_body(tau)),
            (false, false) => self.shared_three_body(tau),
            (true, true) => Ok(self.local_two_body(tau)),
            (true, false) => self.local_three_body(tau),
        }
    }

    /// `Σ_w C(n,w) cos^{2(n−w)}θ sin^{2w}θ` summed over correctable weights.
    fn product_sum(&self, cos2: f64, sin2: f64) -> f64 {
        let n = self.n;
        (0..=self.max_weight)
            .map(|w| binomial(n, w) * cos2.powi((n - w) as i32) * sin2.powi(w as i32))
            .collect::<NeumaierSum>()
            .value()
    }

    fn shared_two_body(&self, tau: f64) -> f64 {
        let mut acc = NeumaierSum::new();
        for (k, &pk) in self.thermal.weights().iter().enumerate() {
            let theta = self.g * tau * self.thermal.magnetization(k);
            let (s, c) = theta.sin_cos();
            acc.add(pk * self.product_sum(c * c, s * s));
        }
        acc.value()
    }

    fn local_two_body(&self, tau: f64) -> f64 {
        let mut f0 = NeumaierSum::new();
        let mut f1 = NeumaierSum::new();
        for (k, &pk) in self.thermal.weights().iter().enumerate() {
            let theta = self.g * tau * self.thermal.magnetization(k);
            let (s, c) = theta.sin_cos();
            f0.add(pk * c * c);
            f1.add(pk * s * s);
        }
        self.product_sum(f0.value(), f1.value())
    }

    /// Magnetization of system state `s` (bit `m` set = qubit `m` down).
    fn magnetization(&self, s: usize) -> f64 {
        self.n as f64 - 2.0 * s.count_ones() as f64
    }

    fn shared_three_body(&self, tau: f64) -> Result<f64> {
        let n = self.n;
        let dim = 1usize << n;
        let norm = 1.0 / dim as f64;
        // system energy per unit bath magnetization: g M + g′ Σ_{j<k} z_j z_k
        let energy: Vec<f64> = (0..dim)
            .map(|s| {
                let m = self.magnetization(s);
                self.g * m + self.gprime * (m * m - n as f64) / 2.0
            })
            .collect();
        let mut total = NeumaierSum::new();
        for (k, &pk) in self.thermal.weights().iter().enumerate() {
            if pk == 0.0 {
                continue;
            }
            let bk = self.thermal.magnetization(k);
            let phases: Vec<C64> = energy.iter().map(|e| C64::from_polar(1.0, -tau * bk * e)).collect();
            let mut sector = NeumaierSum::new();
            for &z in &self.z_strings {
                let mut tr = ComplexNeumaierSum::new();
                for (s, ph) in phases.iter().enumerate() {
                    let sign = if (z as usize & s).count_ones().is_multiple_of(2) {
                        1.0
                    } else {
                        -1.0
                    };
                    tr.add(ph * sign);
                }
                sector.add((tr.value() * norm).norm_sqr());
            }
            total.add(pk * sector.value());
        }
        Ok(total.value())
    }

    fn local_three_body(&self, tau: f64) -> Result<f64> {
        let n = self.n;
        let dim = 1usize << n;
        let width = 2 * n + 1;
        // Qubit m's own bath sees c_m(s) = z_m (g + g′ (M(s) − z_m)); key it by (z_m, M).
        let key = |s: usize, m: usize| -> usize {
            let down = (s >> m) & 1;
            let mag = (n as i64 - 2 * s.count_ones() as i64 + n as i64) as usize;
            down * width + mag
        };
        let coupling = |down: usize, mag_idx: usize| -> f64 {
            let z = if down == 0 { 1.0 } else { -1.0 };
            let m = mag_idx as f64 - n as f64;
            z * (self.g + self.gprime * (m - z))
        };
        let keys = 2 * width;
        let mut table = vec![C64::new(0.0, 0.0); keys * keys];
        for a in 0..keys {
            let ca = coupling(a / width, a % width);
            for b in 0..keys {
                let cb = coupling(b / width, b % width);
                let mut acc = ComplexNeumaierSum::new();
                for (k, &pk) in self.thermal.weights().iter().enumerate() {
                    let bk = self.thermal.magnetization(k);
                    acc.add(C64::from_polar(pk, -tau * bk * (ca - cb)));
                }
                table[a * keys + b] = acc.value();
            }
        }
        // K(d) = Σ_υ (-1)^{υ·d}
        let kernel: Vec<f64> = (0..dim)
            .map(|d| {
                self.z_strings
                    .iter()
                    .map(|&z| {
                        if (z as usize & d).count_ones().is_multiple_of(2) {
                            1.0
                        } else {
                            -1.0
                        }
                    })
                    .sum()
            })
            .collect();
        let state_keys: Vec<Vec<usize>> = (0..dim).map(|s| (0..n).map(|m| key(s, m)).collect()).collect();
        let mut total = ComplexNeumaierSum::new();
        for s in 0..dim {
            for sp in 0..dim {
                let kd = kernel[s ^ sp];
                if kd == 0.0 {
                    continue;
                }
                let mut prod = C64::new(kd, 0.0);
                for m in 0..n {
                    prod *= table[state_keys[s][m] * keys + state_keys[sp][m]];
                }
                total.add(prod);
            }
        }
        real_part(total.value() / (dim * dim) as f64)
    }
}

/// `p_N(τ)` at a single time for a symmetric model.
pub fn performance_sector_at(model: &NoiseModel, mode: CorrectableMode, tau: f64) -> Result<f64> {
    SectorPlan::new(model, mode)?.evaluate(tau)
}
