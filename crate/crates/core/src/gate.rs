// SPDX-License-Identifier: Apache-2.0

//! Averaged fidelity of a faulty `Z` rotation under local or global control.
//!
//! A control field `B = B_ideal + W` rotates each of `n` qubits by
//! `τ_r g B`. Writing `r = τ_r g` and `c(x) = cos x`, the noise-averaged
//! fidelities are
//!
//! * local control (independent `W_i` per qubit): `F_local = (E[c(r W)])^n`
//! * global control (one `W` for all qubits): `F_global = E[c(r W)^n]`
//!
//! and `F_local <= F_global` whenever the ordering of moments holds, which
//! [`holder_check`] verifies over a grid. In [`MomentMode::Squared`] `c` is
//! `cos²`, the moment obtained from `|Tr(V†U)|² / d²`.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fmt17;
use crate::quadrature::{integrate, integrate_real_line, Estimate};
use crate::sum::NeumaierSum;

/// Absolute error target of every quadrature.
pub const QUADRATURE_TOLERANCE: f64 = 1e-12;

/// Distribution of the field error `W` (before the mean offset).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum NoiseDistribution {
    Gaussian {
        sigma: f64,
    },
    /// Uniform on `[-half_width, half_width]`.
    Uniform {
        half_width: f64,
    },
    /// Point masses `(value, weight)`; weights must sum to 1.
    Discrete {
        points: Vec<(f64, f64)>,
    },
}

impl NoiseDistribution {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidDistribution(msg));
        match self {
            NoiseDistribution::Gaussian { sigma } if !(sigma.is_finite() && *sigma >= 0.0) => {
                bad(format!("sigma = {sigma}"))
            }
            NoiseDistribution::Uniform { half_width } if !(half_width.is_finite() && *half_width >= 0.0) => {
                bad(format!("half_width = {half_width}"))
            }
            NoiseDistribution::Discrete { points } => {
                if points.is_empty() {
                    return bad("no points".into());
                }
                if points.iter().any(|&(x, w)| !x.is_finite() || !w.is_finite() || w < 0.0) {
                    return bad("non-finite value or negative weight".into());
                }
                let total: f64 = points.iter().map(|p| p.1).sum();
                if (total - 1.0).abs() > 1e-12 {
                    return bad(format!("weights sum to {total}"));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// `σ`, the half width, or the largest `|value|` of a discrete law.
    pub fn scale(&self) -> f64 {
        match self {
            NoiseDistribution::Gaussian { sigma } => *sigma,
            NoiseDistribution::Uniform { half_width } => *half_width,
            NoiseDistribution::Discrete { points } => points.iter().map(|p| p.0.abs()).fold(0.0, f64::max),
        }
    }

    /// Same family with a new scale. Discrete laws are rescaled pointwise.
    pub fn with_scale(&self, scale: f64) -> Self {
        match self {
            NoiseDistribution::Gaussian { .. } => NoiseDistribution::Gaussian { sigma: scale },
            NoiseDistribution::Uniform { .. } => NoiseDistribution::Uniform { half_width: scale },
            NoiseDistribution::Discrete { points } => {
                let old = self.scale();
                let factor = if old == 0.0 { 0.0 } else { scale / old };
                NoiseDistribution::Discrete {
                    points: points.iter().map(|&(x, w)| (x * factor, w)).collect(),
                }
            }
        }
    }

    /// Characteristic function `E[cos(u W)]` of the symmetric families.
    fn cos_transform(&self, u: f64) -> Option<f64> {
        match self {
            NoiseDistribution::Gaussian { sigma } => Some((-(u * sigma).powi(2) / 2.0).exp()),
            NoiseDistribution::Uniform { half_width } => {
                let x = u * half_width;
                Some(if x == 0.0 { 1.0 } else { x.sin() / x })
            }
            NoiseDistribution::Discrete { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MomentMode {
    /// Cosine moments as in the local/global formulas.
    #[default]
    AsPrinted,
    /// `cos²` in place of `cos`.
    Squared,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateNoiseSpec {
    pub n: usize,
    /// Dimensionless rotation strength `τ_r g`.
    pub rotation: f64,
    pub distribution: NoiseDistribution,
    /// Mean offset of `W`.
    #[serde(default)]
    pub mean: f64,
    #[serde(default)]
    pub mode: MomentMode,
}

impl GateNoiseSpec {
    pub fn new(n: usize, rotation: f64, distribution: NoiseDistribution) -> Self {
        Self {
            n,
            rotation,
            distribution,
            mean: 0.0,
            mode: MomentMode::AsPrinted,
        }
    }

    fn validate(&self) -> Result<()> {
        self.distribution.validate()?;
        if !self.rotation.is_finite() || !self.mean.is_finite() {
            return Err(Error::InvalidDistribution("non-finite rotation or mean".into()));
        }
        Ok(())
    }

    fn moment_base(&self, x: f64) -> f64 {
        match self.mode {
            MomentMode::AsPrinted => x.cos(),
            MomentMode::Squared => x.cos().powi(2),
        }
    }

    /// `E[h(W)]`, by quadrature for continuous laws and exactly otherwise.
    fn expectation(&self, h: impl Fn(f64) -> f64) -> Result<Estimate> {
        let mu = self.mean;
        let exact = |value| Ok(Estimate { value, error: 0.0 });
        match &self.distribution {
            NoiseDistribution::Gaussian { sigma } if *sigma == 0.0 => exact(h(mu)),
            NoiseDistribution::Uniform { half_width } if *half_width == 0.0 => exact(h(mu)),
            NoiseDistribution::Gaussian { sigma } => {
                let norm = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
                integrate_real_line(
                    |x| h(mu + sigma * x) * norm * (-0.5 * x * x).exp(),
                    QUADRATURE_TOLERANCE,
                )
            }
            NoiseDistribution::Uniform { half_width } => {
                integrate(|x| 0.5 * h(mu + half_width * x), -1.0, 1.0, QUADRATURE_TOLERANCE)
            }
            NoiseDistribution::Discrete { points } => exact(
                points
                    .iter()
                    .map(|&(x, w)| w * h(mu + x))
                    .collect::<NeumaierSum>()
                    .value(),
            ),
        }
    }

    fn local_estimate(&self) -> Result<Estimate> {
        self.validate()?;
        let r = self.rotation;
        let m1 = self.expectation(|w| self.moment_base(r * w))?;
        let n = self.n as i32;
        let value = m1.value.powi(n);
        let error = if self.n == 0 {
            0.0
        } else {
            self.n as f64 * m1.value.abs().powi(n - 1) * m1.error
        };
        Ok(Estimate { value, error })
    }

    fn global_estimate(&self) -> Result<Estimate> {
        // n = 1 must coincide bit-for-bit with the local route
        if self.n == 1 {
            return self.local_estimate();
        }
        self.validate()?;
        let r = self.rotation;
        let n = self.n as i32;
        self.expectation(|w| self.moment_base(r * w).powi(n))
    }
}

/// `F_local = (E[cos(τ_r g W)])^n`.
pub fn fidelity_local(spec: &GateNoiseSpec) -> Result<f64> {
    Ok(spec.local_estimate()?.value)
}

/// `F_global = E[cos(τ_r g W)^n]`.
pub fn fidelity_global(spec: &GateNoiseSpec) -> Result<f64> {
    Ok(spec.global_estimate()?.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GateFidelityResult {
    pub f_local: f64,
    pub f_global: f64,
    /// Larger of the two propagated quadrature error estimates.
    pub error_estimate: f64,
}

pub fn evaluate(spec: &GateNoiseSpec) -> Result<GateFidelityResult> {
    let local = spec.local_estimate()?;
    let global = spec.global_estimate()?;
    Ok(GateFidelityResult {
        f_local: local.value,
        f_global: global.value,
        error_estimate: local.error.max(global.error),
    })
}

/// Closed forms for the Gaussian and uniform families through the cosine
/// power-reduction `cos^m x = 2^{-m} Σ_j C(m,j) cos((m−2j)x)`. Returns
/// `(F_local, F_global)`, or `None` for discrete laws.
pub fn closed_form(spec: &GateNoiseSpec) -> Option<(f64, f64)> {
    let dist = &spec.distribution;
    dist.cos_transform(0.0)?;
    let r = spec.rotation;
    let mu = spec.mean;
    // E[cos^m(r W)] with W = μ + X, X symmetric
    let power_moment = |m: usize| -> f64 {
        let mut binom = 1.0;
        let mut acc = NeumaierSum::new();
        for j in 0..=m {
            if j > 0 {
                binom = binom * (m - j + 1) as f64 / j as f64;
            }
            let freq = (m as f64 - 2.0 * j as f64) * r;
            acc.add(binom * (freq * mu).cos() * dist.cos_transform(freq).expect("symmetric law"));
        }
        acc.value() / 2f64.powi(m as i32)
    };
    let (base, per_qubit) = match spec.mode {
        MomentMode::AsPrinted => (1, spec.n),
        MomentMode::Squared => (2, 2 * spec.n),
    };
    Some((power_moment(base).powi(spec.n as i32), power_moment(per_qubit)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HolderReport {
    pub cases: usize,
    /// Largest `F_local − F_global` seen (negative when strictly ordered).
    pub max_violation: f64,
    /// Largest `|F_local − F_global|` among `n = 1` cases.
    pub max_n1_gap: f64,
}

/// Checks `F_local <= F_global + tolerance` on every spec.
pub fn holder_check(specs: &[GateNoiseSpec], tolerance: f64) -> Result<HolderReport> {
    let mut report = HolderReport {
        cases: 0,
        max_violation: f64::NEG_INFINITY,
        max_n1_gap: 0.0,
    };
    for spec in specs {
        let r = evaluate(spec)?;
        let violation = r.f_local - r.f_global;
        if violation > tolerance {
            return Err(Error::HolderViolation {
                violation,
                case: format!("{spec:?}"),
            });
        }
        report.cases += 1;
        report.max_violation = report.max_violation.max(violation);
        if spec.n == 1 {
            report.max_n1_gap = report.max_n1_gap.max(violation.abs());
        }
    }
    Ok(report)
}

/// Cartesian grid of specs: every distribution × rotation × qubit count.
pub fn holder_grid(
    distributions: &[NoiseDistribution],
    rotations: &[f64],
    ns: &[usize],
    mode: MomentMode,
) -> Vec<GateNoiseSpec> {
    let mut out = Vec::new();
    for d in distributions {
        for &rotation in rotations {
            for &n in ns {
                let mut spec = GateNoiseSpec::new(n, rotation, d.clone());
                spec.mode = mode;
                out.push(spec);
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GateRow {
    /// `τ_r g` times the distribution scale.
    pub a: f64,
    pub f_local: f64,
    pub f_global: f64,
}

/// Evaluates `base` with its distribution rescaled to each of `scales`.
pub fn scale_sweep(base: &GateNoiseSpec, scales: &[f64]) -> Result<Vec<GateRow>> {
    scales
        .iter()
        .map(|&s| {
            let mut spec = base.clone();
            spec.distribution = base.distribution.with_scale(s);
            let r = evaluate(&spec)?;
            Ok(GateRow {
                a: spec.rotation * s,
                f_local: r.f_local,
                f_global: r.f_global,
            })
        })
        .collect()
}

/// CSV with columns `a,f_local,f_global`.
pub fn write_gate_csv<W: Write>(rows: &[GateRow], mut w: W) -> io::Result<()> {
    writeln!(w, "a,f_local,f_global")?;
    for row in rows {
        writeln!(w, "{},{},{}", fmt17(row.a), fmt17(row.f_local), fmt17(row.f_global))?;
    }
    Ok(())
}
