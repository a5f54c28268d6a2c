// SPDX-License-Identifier: Apache-2.0

//! Cross-checks of the three evaluation routes on small instances.
//!
//! Each instance is evaluated by the sector path, by literal partial traces
//! of the dense propagator, and through the chi matrix of the Kraus set the
//! propagator induces. The dense partial-trace value is the reference.

use rayon::prelude::*;
use serde::Serialize;

use crate::channel::{chi_from_kraus, performance_from_chi};
use crate::code::{CodeParams, CorrectableMode};
use crate::error::Result;
use crate::evaluator::{kraus_from_propagator, linspace, performance_direct, performance_sector_at, DenseEvaluator};
use crate::model::{BathSpec, NoiseModel, Topology};

/// Grid points per instance.
pub const VALIDATION_POINTS: usize = 64;

/// Largest total bath size in the catalog.
pub const MAX_BATH_SPINS: usize = 4;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceResult {
    pub model: String,
    pub mode: CorrectableMode,
    pub sector_deviation: f64,
    pub chi_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub instances: Vec<InstanceResult>,
    pub points: usize,
}

impl ValidationReport {
    pub fn max_sector_deviation(&self) -> f64 {
        self.instances.iter().map(|r| r.sector_deviation).fold(0.0, f64::max)
    }

    pub fn max_chi_deviation(&self) -> f64 {
        self.instances.iter().map(|r| r.chi_deviation).fold(0.0, f64::max)
    }

    pub fn max_deviation(&self) -> f64 {
        self.max_sector_deviation().max(self.max_chi_deviation())
    }

    pub fn passes(&self, threshold: f64) -> bool {
        self.max_deviation() < threshold
    }
}

/// Per-bath sizes whose total bath is at most [`MAX_BATH_SPINS`] spins.
fn bath_sizes(topology: Topology, n: usize) -> Vec<usize> {
    match topology {
        Topology::SharedNonlocal => (1..=MAX_BATH_SPINS).collect(),
        Topology::PerQubitLocal => (1..=MAX_BATH_SPINS / n).collect(),
        Topology::LocalSplit => (1..=MAX_BATH_SPINS / n).map(|k| k * n).collect(),
    }
}

/// Every topology, `g′ ∈ {0, 0.1 g}`, `n ∈ {1, 2, 3}` with `t ∈ {0, 1}`,
/// and every bath size allowed by [`MAX_BATH_SPINS`].
pub fn catalog(beta_omega: f64) -> Vec<NoiseModel> {
    let mut out = Vec::new();
    for topology in [Topology::PerQubitLocal, Topology::SharedNonlocal, Topology::LocalSplit] {
        for gprime in [0.0, 0.1] {
            for n in 1..=3 {
                for t in 0..=1 {
                    for spins in bath_sizes(topology, n) {
                        let bath = BathSpec {
                            topology,
                            spins,
                            omega: 1.0,
                            beta_omega,
                            g: 1.0,
                            coupling_table: None,
                        };
                        let code = CodeParams::synthetic(n, t).expect("t <= n");
                        out.push(NoiseModel::new(code, bath, gprime, None).expect("catalog model"));
                    }
                }
            }
        }
    }
    out
}

fn check_instance(model: &NoiseModel, mode: CorrectableMode, grid: &[f64]) -> Result<InstanceResult> {
    let ev = DenseEvaluator::new(model)?;
    let rho = ev.bath_density();
    let lambda: Vec<f64> = (0..rho.nrows()).map(|i| rho[(i, i)].re).collect();
    let mut sector_deviation = 0.0f64;
    let mut chi_deviation = 0.0f64;
    for &tau in grid {
        let u = ev.propagator_at(tau);
        let direct = performance_direct(&u, rho, &model.code, mode)?;
        let sector = performance_sector_at(model, mode, tau)?;
        let chi = chi_from_kraus(&kraus_from_propagator(&u, &lambda, model.n())?);
        let via_chi = performance_from_chi(&chi, &model.code, mode)?;
        sector_deviation = sector_deviation.max((sector - direct).abs());
        chi_deviation = chi_deviation.max((via_chi - direct).abs());
    }
    Ok(InstanceResult {
        model: model.tag(),
        mode,
        sector_deviation,
        chi_deviation,
    })
}

/// Runs the catalog in both correctable modes on `points` times in `[0, π]`.
pub fn run_suite(models: &[NoiseModel], points: usize) -> Result<ValidationReport> {
    let grid = linspace(0.0, std::f64::consts::PI, points);
    let jobs: Vec<(&NoiseModel, CorrectableMode)> = models
        .iter()
        .flat_map(|m| [CorrectableMode::TotalWeight, CorrectableMode::CssSplit].map(|mode| (m, mode)))
        .collect();
    let instances = jobs
        .par_iter()
        .map(|&(m, mode)| check_instance(m, mode, &grid))
        .collect::<Result<Vec<_>>>()?;
    Ok(ValidationReport { instances, points })
}

/// The default suite: the full catalog at `βΩ = 0.3` on [`VALIDATION_POINTS`] points.
pub fn default_suite() -> Result<ValidationReport> {
    run_suite(&catalog(0.3), VALIDATION_POINTS)
}
