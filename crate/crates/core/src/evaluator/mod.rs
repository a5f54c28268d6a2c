// SPDX-License-Identifier: Apache-2.0

//! `p_N(τ_d)` curves over a dimensionless time grid `gτ_d`.
//!
//! Two routes exist: [`dense`] evaluates the partial-trace formula on the
//! full system–bath propagator and serves as the oracle; [`sector`] reduces
//! symmetric models to magnetization sectors and scales to large baths.
//! [`sweep`] picks the sector route whenever the model allows it.

pub mod dense;
pub mod sector;

use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::CorrectableMode;
use crate::error::{Error, Result};
use crate::model::NoiseModel;
use crate::{fmt17, linalg};

pub use dense::{direct_terms, kraus_from_propagator, partial_trace_with, performance_direct, DenseEvaluator};
pub use sector::performance_sector_at;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Dense,
    Sector,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Dense => "dense",
            Method::Sector => "sector",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerformanceCurve {
    /// Dimensionless times `gτ_d`.
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub model: String,
    pub mode: CorrectableMode,
    pub method: Method,
}

/// Number of points in the default grid.
pub const DEFAULT_GRID_POINTS: usize = 512;

/// `points` evenly spaced values from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let last = (points - 1) as f64;
            (0..points)
                .map(|i| {
                    if i == points - 1 {
                        stop
                    } else {
                        start + (stop - start) * (i as f64 / last)
                    }
                })
                .collect()
        }
    }
}

/// `gτ_d` from 0 to π with 512 points.
pub fn default_grid() -> Vec<f64> {
    linspace(0.0, std::f64::consts::PI, DEFAULT_GRID_POINTS)
}

fn collect_grid(grid: &[f64], f: impl Fn(f64) -> Result<f64> + Sync) -> Result<Vec<f64>> {
    // Each slot is filled independently, so the output does not depend on scheduling.
    grid.par_iter().map(|&tau| f(tau)).collect()
}

/// Sector-route curve. Requires symmetric couplings.
pub fn performance_sector(model: &NoiseModel, mode: CorrectableMode, grid: &[f64]) -> Result<PerformanceCurve> {
    let plan = sector::SectorPlan::new(model, mode)?;
    let values = collect_grid(grid, |tau| plan.evaluate(tau))?;
    Ok(PerformanceCurve {
        grid: grid.to_vec(),
        values,
        model: model.tag(),
        mode,
        method: Method::Sector,
    })
}

/// Dense-route curve. Limited by the dense spin cap.
pub fn performance_dense(model: &NoiseModel, mode: CorrectableMode, grid: &[f64]) -> Result<PerformanceCurve> {
    let ev = DenseEvaluator::new(model)?;
    let values = collect_grid(grid, |tau| ev.performance(tau, mode))?;
    Ok(PerformanceCurve {
        grid: grid.to_vec(),
        values,
        model: model.tag(),
        mode,
        method: Method::Dense,
    })
}

/// The route `sweep` would take for `model`.
pub fn select_method(model: &NoiseModel) -> Result<Method> {
    if model.is_symmetric() {
        Ok(Method::Sector)
    } else if model.total_spins() <= linalg::DENSE_SPIN_CAP {
        Ok(Method::Dense)
    } else {
        Err(Error::NoFeasiblePath(model.tag()))
    }
}

/// One curve per model on a shared grid, in model order.
pub fn sweep(models: &[NoiseModel], mode: CorrectableMode, grid: &[f64]) -> Result<Vec<PerformanceCurve>> {
    models
        .iter()
        .map(|m| match select_method(m)? {
            Method::Sector => performance_sector(m, mode, grid),
            Method::Dense => performance_dense(m, mode, grid),
        })
        .collect()
}

/// Writes `g_tau,p_N` for one curve or `g_tau,p_N,p_N_second,diff` for two,
/// with `diff = p_N − p_N_second`.
pub fn write_curves_csv<W: Write>(curves: &[PerformanceCurve], mut w: W) -> io::Result<()> {
    let invalid = |msg: &str| io::Error::new(io::ErrorKind::InvalidInput, msg.to_string());
    match curves {
        [one] => {
            writeln!(w, "g_tau,p_N")?;
            for (t, v) in one.grid.iter().zip(&one.values) {
                writeln!(w, "{},{}", fmt17(*t), fmt17(*v))?;
            }
        }
        [a, b] => {
            if a.grid != b.grid {
                return Err(invalid("curves are on different grids"));
            }
            writeln!(w, "g_tau,p_N,p_N_second,diff")?;
            for ((t, x), y) in a.grid.iter().zip(&a.values).zip(&b.values) {
                writeln!(w, "{},{},{},{}", fmt17(*t), fmt17(*x), fmt17(*y), fmt17(x - y))?;
            }
        }
        _ => return Err(invalid("CSV export takes one or two curves")),
    }
    Ok(())
}

/// `first − second` pointwise.
pub fn difference(first: &PerformanceCurve, second: &PerformanceCurve) -> Vec<f64> {
    first.values.iter().zip(&second.values).map(|(a, b)| a - b).collect()
}
