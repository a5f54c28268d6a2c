// SPDX-License-Identifier: Apache-2.0

//! Experiment execution and artifact output.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use corrperf::evaluator::{self, linspace, PerformanceCurve};
use corrperf::gate::{self, GateNoiseSpec, GateRow, NoiseDistribution};
use corrperf::model::{build_model, ModelConfig};
use corrperf::validation::{self, ValidationReport};
use corrperf::{fmt17, Error, NoiseModel, Topology};
use serde::Serialize;
use tempfile::NamedTempFile;

use crate::config::{Experiment, ExperimentConfig, GateDistribution};

/// Largest deviation `validate` tolerates between evaluation routes.
pub const VALIDATION_THRESHOLD: f64 = 1e-9;

#[derive(Debug)]
pub enum RunError {
    Config(String),
    Infeasible(String),
    ValidationFailed(f64),
    Runtime(String),
}

impl RunError {
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::Config(_) => 2,
            RunError::Infeasible(_) => 3,
            RunError::ValidationFailed(_) | RunError::Runtime(_) => 1,
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Config(m) => write!(f, "invalid config: {m}"),
            RunError::Infeasible(m) => write!(f, "infeasible: {m}"),
            RunError::ValidationFailed(d) => {
                write!(
                    f,
                    "validation failed: max deviation {} >= {}",
                    fmt17(*d),
                    fmt17(VALIDATION_THRESHOLD)
                )
            }
            RunError::Runtime(m) => write!(f, "{m}"),
        }
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::NoFeasiblePath(_) | Error::AsymmetricCouplings | Error::DenseCapExceeded { .. } => {
                RunError::Infeasible(msg)
            }
            Error::InvalidModel(_)
            | Error::InvalidCode(_)
            | Error::InvalidDistribution(_)
            | Error::WeightOutOfRange { .. }
            | Error::InvalidPauli(_) => RunError::Config(msg),
            _ => RunError::Runtime(msg),
        }
    }
}

impl From<io::Error> for RunError {
    fn from(e: io::Error) -> Self {
        RunError::Runtime(e.to_string())
    }
}

/// Writes `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// `out.csv` → `out.manifest.json`.
pub fn manifest_path(output: &Path) -> PathBuf {
    output.with_extension("manifest.json")
}

#[derive(Serialize)]
struct Manifest<'a> {
    software: &'static str,
    version: &'static str,
    config: &'a ExperimentConfig,
    artifacts: Vec<String>,
    models: Vec<String>,
    methods: Vec<&'static str>,
}

fn model_config(config: &ExperimentConfig, topology: Topology, gprime: f64) -> Result<NoiseModel, RunError> {
    let bath = config
        .bath
        .as_ref()
        .ok_or_else(|| RunError::Config("missing bath".into()))?;
    Ok(build_model(&ModelConfig {
        code: config.code,
        topology,
        spins: bath.spins,
        beta_omega: bath.beta_omega,
        omega: bath.omega,
        g: 1.0,
        gprime,
        coupling_table: None,
        pair_table: None,
    })?)
}

/// The two models compared by a performance experiment, first minus second.
fn experiment_models(config: &ExperimentConfig) -> Result<Vec<NoiseModel>, RunError> {
    let gp = config.couplings.gprime_ratio;
    match config.experiment {
        Experiment::LocalVsNonlocal => Ok(vec![
            model_config(config, Topology::PerQubitLocal, gp)?,
            model_config(config, Topology::SharedNonlocal, gp)?,
        ]),
        Experiment::SameSize => Ok(vec![
            model_config(config, Topology::LocalSplit, gp)?,
            model_config(config, Topology::SharedNonlocal, gp)?,
        ]),
        Experiment::ThreeBody => {
            let topology = config.bath.as_ref().map_or(Topology::SharedNonlocal, |b| b.topology);
            Ok(vec![
                model_config(config, topology, 0.0)?,
                model_config(config, topology, gp)?,
            ])
        }
        _ => Err(RunError::Config("not a performance experiment".into())),
    }
}

pub fn curves(config: &ExperimentConfig) -> Result<Vec<PerformanceCurve>, RunError> {
    let models = experiment_models(config)?;
    let grid = linspace(config.grid.start, config.grid.stop, config.grid.points);
    Ok(evaluator::sweep(&models, config.mode, &grid)?)
}

fn gate_rows(config: &ExperimentConfig) -> Result<Vec<GateRow>, RunError> {
    let g = config
        .gate
        .as_ref()
        .ok_or_else(|| RunError::Config("missing gate".into()))?;
    let distribution = match g.distribution {
        GateDistribution::Gaussian => NoiseDistribution::Gaussian { sigma: 1.0 },
        GateDistribution::Uniform => NoiseDistribution::Uniform { half_width: 1.0 },
    };
    let spec = GateNoiseSpec {
        n: g.n,
        rotation: g.rotation,
        distribution,
        mean: g.mean,
        mode: g.mode,
    };
    let scales = linspace(g.scales.start, g.scales.stop, g.scales.points);
    Ok(gate::scale_sweep(&spec, &scales)?)
}

fn finish(
    config: &ExperimentConfig,
    csv: Vec<u8>,
    models: Vec<String>,
    methods: Vec<&'static str>,
) -> Result<PathBuf, RunError> {
    let output = config
        .output
        .clone()
        .ok_or_else(|| RunError::Config("missing output".into()))?;
    let manifest_file = manifest_path(&output);
    let manifest = Manifest {
        software: "corrperf",
        version: env!("CARGO_PKG_VERSION"),
        config,
        artifacts: vec![output.display().to_string(), manifest_file.display().to_string()],
        models,
        methods,
    };
    let mut json = serde_json::to_vec_pretty(&manifest).map_err(|e| RunError::Runtime(e.to_string()))?;
    json.push(b'\n');
    if let Some(dir) = output.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    write_atomic(&output, &csv)?;
    write_atomic(&manifest_file, &json)?;
    Ok(output)
}

pub fn print_validation(report: &ValidationReport, out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "instances: {} x {} points", report.instances.len(), report.points)?;
    writeln!(out, "max sector deviation: {}", fmt17(report.max_sector_deviation()))?;
    writeln!(out, "max chi deviation: {}", fmt17(report.max_chi_deviation()))?;
    let max = report.max_deviation();
    let relation = if max < VALIDATION_THRESHOLD { "<" } else { ">=" };
    writeln!(
        out,
        "max deviation {} {relation} {}",
        fmt17(max),
        fmt17(VALIDATION_THRESHOLD)
    )
}

pub fn run_validation(points: usize, out: &mut impl Write) -> Result<(), RunError> {
    let report = validation::run_suite(&validation::catalog(0.3), points)?;
    print_validation(&report, out)?;
    if report.passes(VALIDATION_THRESHOLD) {
        Ok(())
    } else {
        Err(RunError::ValidationFailed(report.max_deviation()))
    }
}

/// Runs one experiment and writes its artifacts. Progress goes to `out`.
pub fn run(config: &ExperimentConfig, out: &mut impl Write) -> Result<(), RunError> {
    match config.experiment {
        Experiment::Validate => run_validation(validation::VALIDATION_POINTS, out),
        Experiment::FaultyGate => {
            let rows = gate_rows(config)?;
            let mut csv = Vec::new();
            gate::write_gate_csv(&rows, &mut csv)?;
            let path = finish(config, csv, Vec::new(), Vec::new())?;
            let gap = rows
                .iter()
                .map(|r| r.f_local - r.f_global)
                .fold(f64::NEG_INFINITY, f64::max);
            writeln!(out, "wrote {} ({} rows)", path.display(), rows.len())?;
            writeln!(out, "max f_local - f_global: {}", fmt17(gap))?;
            Ok(())
        }
        _ => {
            let curves = curves(config)?;
            let mut csv = Vec::new();
            evaluator::write_curves_csv(&curves, &mut csv)?;
            let diff = evaluator::difference(&curves[0], &curves[1]);
            let models = curves.iter().map(|c| c.model.clone()).collect();
            let methods = curves.iter().map(|c| c.method.as_str()).collect();
            let path = finish(config, csv, models, methods)?;
            let lo = diff.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = diff.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            writeln!(out, "wrote {} ({} rows)", path.display(), diff.len())?;
            writeln!(out, "diff range: [{}, {}]", fmt17(lo), fmt17(hi))?;
            Ok(())
        }
    }
}
