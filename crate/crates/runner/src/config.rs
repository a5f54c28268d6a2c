// SPDX-License-Identifier: Apache-2.0

//! Experiment configuration: a single JSON document plus `--set` overrides.

use std::fs;
use std::path::{Path, PathBuf};

use corrperf::gate::MomentMode;
use corrperf::model::CodeConfig;
use corrperf::{CorrectableMode, Topology};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    /// Per-qubit local baths of `N` spins against one shared bath of `N` spins.
    LocalVsNonlocal,
    /// `N` spins split across the qubits against the same `N` spins shared.
    SameSize,
    /// Two-body against two- plus three-body coupling on one topology.
    ThreeBody,
    FaultyGate,
    Validate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BathConfig {
    pub spins: usize,
    pub beta_omega: f64,
    /// Used by `three-body`; the comparison experiments fix their own pair.
    #[serde(default = "default_topology")]
    pub topology: Topology,
    #[serde(default = "one")]
    pub omega: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CouplingsConfig {
    /// `g′ / g`, with `g = 1`.
    #[serde(default)]
    pub gprime_ratio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(default)]
    pub start: f64,
    #[serde(default = "pi")]
    pub stop: f64,
    #[serde(default = "default_points")]
    pub points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GateDistribution {
    Gaussian,
    Uniform,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateConfig {
    pub n: usize,
    /// `τ_r g`.
    #[serde(default = "one")]
    pub rotation: f64,
    pub distribution: GateDistribution,
    /// Distribution scales (`σ` or half width) to sweep.
    pub scales: GridConfig,
    #[serde(default)]
    pub mean: f64,
    #[serde(default)]
    pub mode: MomentMode,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    #[serde(default = "steane")]
    pub code: CodeConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bath: Option<BathConfig>,
    #[serde(default)]
    pub couplings: CouplingsConfig,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub mode: CorrectableMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gate: Option<GateConfig>,
}

fn one() -> f64 {
    1.0
}

fn pi() -> f64 {
    std::f64::consts::PI
}

fn default_points() -> usize {
    corrperf::evaluator::DEFAULT_GRID_POINTS
}

fn default_topology() -> Topology {
    Topology::SharedNonlocal
}

fn steane() -> CodeConfig {
    CodeConfig { n: 7, k: 1, d: 3 }
}

impl Default for CouplingsConfig {
    fn default() -> Self {
        Self { gprime_ratio: 0.0 }
    }
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            start: 0.0,
            stop: pi(),
            points: default_points(),
        }
    }
}

impl ExperimentConfig {
    /// Checks cross-field requirements that the schema alone cannot express.
    pub fn check(&self) -> Result<(), String> {
        let needs_bath = matches!(
            self.experiment,
            Experiment::LocalVsNonlocal | Experiment::SameSize | Experiment::ThreeBody
        );
        if needs_bath && self.bath.is_none() {
            return Err(format!("experiment {:?} needs a `bath` section", self.experiment));
        }
        if self.experiment == Experiment::FaultyGate && self.gate.is_none() {
            return Err("experiment faulty-gate needs a `gate` section".into());
        }
        if self.experiment != Experiment::Validate && self.output.is_none() {
            return Err("missing `output` path".into());
        }
        for grid in std::iter::once(&self.grid).chain(self.gate.as_ref().map(|g| &g.scales)) {
            if !grid.start.is_finite() || !grid.stop.is_finite() || grid.points == 0 {
                return Err("grid needs finite bounds and at least one point".into());
            }
        }
        if !self.couplings.gprime_ratio.is_finite() {
            return Err("gprime_ratio must be finite".into());
        }
        Ok(())
    }
}

/// Parses an override value as JSON, falling back to a bare string.
fn parse_scalar(raw: &str) -> Value {
    serde_json::from_str::<Value>(raw)
        .ok()
        .filter(|v| !v.is_object() && !v.is_array())
        .unwrap_or_else(|| Value::String(raw.to_string()))
}

/// Applies one `dotted.path=value` override to a JSON document.
pub fn apply_override(doc: &mut Value, assignment: &str) -> Result<(), String> {
    let (path, raw) = assignment
        .split_once('=')
        .ok_or_else(|| format!("override `{assignment}` is not key=value"))?;
    let keys: Vec<&str> = path.split('.').collect();
    if keys.iter().any(|k| k.is_empty()) {
        return Err(format!("override path `{path}` has an empty segment"));
    }
    let mut node = doc;
    for key in &keys[..keys.len() - 1] {
        let obj = node
            .as_object_mut()
            .ok_or_else(|| format!("override path `{path}` crosses a non-object"))?;
        node = obj.entry(key.to_string()).or_insert_with(|| Value::Object(Map::new()));
    }
    let obj = node
        .as_object_mut()
        .ok_or_else(|| format!("override path `{path}` crosses a non-object"))?;
    let last = keys[keys.len() - 1];
    if obj.get(last).is_some_and(|v| v.is_object() || v.is_array()) {
        return Err(format!("override `{path}` targets a non-scalar field"));
    }
    obj.insert(last.to_string(), parse_scalar(raw));
    Ok(())
}

/// Resolves a JSON document and overrides into a checked config.
pub fn resolve(mut doc: Value, overrides: &[String]) -> Result<ExperimentConfig, String> {
    for o in overrides {
        apply_override(&mut doc, o)?;
    }
    let config: ExperimentConfig = serde_json::from_value(doc).map_err(|e| e.to_string())?;
    config.check()?;
    Ok(config)
}

pub fn load(path: &Path, overrides: &[String]) -> Result<ExperimentConfig, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| format!("{} is not JSON: {e}", path.display()))?;
    resolve(doc, overrides)
}
