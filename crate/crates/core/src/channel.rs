// SPDX-License-Identifier: Apache-2.0

//! Linear maps in the tensor-Pauli basis.
//!
//! A map `N(ρ) = Σ_α c_α E_α ρ E_α†` is expanded as
//! `N(ρ) = Σ_{p,q} e_{p,q} Σ_p ρ Σ_q` with
//! `e_{p,q} = Σ_α c_α a_{α,p} conj(a_{α,q})` and `a_{α,p} = Tr(Σ_p E_α) / 2^n`.
//! With this normalization a trace-preserving channel has `Σ_p e_{p,p} = 1`.
//!
//! `ChiMatrix` is stored sparsely: physical noise models put weight on few
//! Pauli strings, and `4^n × 4^n` dense storage is out of reach at `n = 7`.

use std::collections::BTreeMap;
use std::io::{self, Write};

use nalgebra::DMatrix;

use crate::code::{enumerate_correctable, CodeParams, CorrectableMode};
use crate::error::{Error, Result};
use crate::linalg::{identity, max_abs, walsh_hadamard};
use crate::pauli::{to_basis_order, PauliString};
use crate::sum::NeumaierSum;
use crate::{fmt17, C64};

/// Largest system size accepted for Kraus operators and Pauli coefficient
/// vectors (`4^n` entries).
pub const KRAUS_QUBIT_CAP: usize = 10;

/// Operators of a CP map, or of a Hermitian map when real weights are given.
#[derive(Debug, Clone)]
pub struct KrausSet {
    n: usize,
    operators: Vec<DMatrix<C64>>,
    weights: Option<Vec<f64>>,
}

impl KrausSet {
    pub fn new(n: usize, operators: Vec<DMatrix<C64>>) -> Result<Self> {
        if n > KRAUS_QUBIT_CAP {
            return Err(Error::DenseCapExceeded {
                what: "Kraus operators",
                required: n,
                cap: KRAUS_QUBIT_CAP,
            });
        }
        let dim = 1usize << n;
        for (i, e) in operators.iter().enumerate() {
            if e.nrows() != dim || e.ncols() != dim {
                return Err(Error::Dimension(format!(
                    "operator {i} is {}x{}, expected {dim}x{dim}",
                    e.nrows(),
                    e.ncols()
                )));
            }
        }
        Ok(Self {
            n,
            operators,
            weights: None,
        })
    }

    /// Hermitian map `Σ_α c_α F_α ρ F_α†` with real, possibly negative, `c_α`.
    pub fn hermitian(n: usize, operators: Vec<DMatrix<C64>>, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != operators.len() {
            return Err(Error::Dimension(format!(
                "{} weights for {} operators",
                weights.len(),
                operators.len()
            )));
        }
        let mut set = Self::new(n, operators)?;
        set.weights = Some(weights);
        Ok(set)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn operators(&self) -> &[DMatrix<C64>] {
        &self.operators
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    fn weight(&self, alpha: usize) -> f64 {
        self.weights.as_ref().map_or(1.0, |w| w[alpha])
    }

    /// `Σ_α c_α E_α ρ E_α†`.
    pub fn apply(&self, rho: &DMatrix<C64>) -> DMatrix<C64> {
        let dim = 1usize << self.n;
        let mut out = DMatrix::zeros(dim, dim);
        for (alpha, e) in self.operators.iter().enumerate() {
            out += (e * rho * e.adjoint()) * C64::new(self.weight(alpha), 0.0);
        }
        out
    }

    /// `max |Σ_α c_α E_α† E_α − I|`.
    pub fn completeness_error(&self) -> f64 {
        let dim = 1usize << self.n;
        let mut sum = DMatrix::zeros(dim, dim);
        for (alpha, e) in self.operators.iter().enumerate() {
            sum += (e.adjoint() * e) * C64::new(self.weight(alpha), 0.0);
        }
        max_abs(&(sum - identity(dim)))
    }

    pub fn identity_channel(n: usize) -> Result<Self> {
        Self::new(n, vec![identity(1 << n)])
    }

    /// `(1-p) ρ + p ZρZ`.
    pub fn dephasing(p: f64) -> Self {
        let z = pauli_matrix("Z");
        Self::new(
            1,
            vec![
                identity(2) * C64::new((1.0 - p).sqrt(), 0.0),
                z * C64::new(p.sqrt(), 0.0),
            ],
        )
        .expect("single qubit")
    }

    /// `(1-p) ρ + (p/3)(XρX + YρY + ZρZ)`.
    pub fn depolarizing(p: f64) -> Self {
        let s = C64::new((p / 3.0).sqrt(), 0.0);
        Self::new(
            1,
            vec![
                identity(2) * C64::new((1.0 - p).sqrt(), 0.0),
                pauli_matrix("X") * s,
                pauli_matrix("Y") * s,
                pauli_matrix("Z") * s,
            ],
        )
        .expect("single qubit")
    }

    pub fn amplitude_damping(gamma: f64) -> Self {
        let zero = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        let e0 = DMatrix::from_row_slice(2, 2, &[one, zero, zero, C64::new((1.0 - gamma).sqrt(), 0.0)]);
        let e1 = DMatrix::from_row_slice(2, 2, &[zero, C64::new(gamma.sqrt(), 0.0), zero, zero]);
        Self::new(1, vec![e0, e1]).expect("single qubit")
    }
}

fn pauli_matrix(s: &str) -> DMatrix<C64> {
    s.parse::<PauliString>()
        .and_then(|p| p.dense_matrix())
        .expect("valid literal")
}

/// `a_p = Tr(Σ_p E) / 2^n` for every string `p`, indexed by `PauliString::index`.
pub fn pauli_coefficients(e: &DMatrix<C64>, n: usize) -> Vec<C64> {
    let dim = 1usize << n;
    let scale = 1.0 / dim as f64;
    let mut out = vec![C64::new(0.0, 0.0); dim * dim];
    let mut v = vec![C64::new(0.0, 0.0); dim];
    // Tr(Σ_{x,z} E) = i^{|x∧z|} Σ_d (-1)^{z·d} E[d, d⊕x], a Walsh–Hadamard transform in d.
    for x in 0..dim as u64 {
        let xb = to_basis_order(x, n) as usize;
        for (d, slot) in v.iter_mut().enumerate() {
            *slot = e[(d, d ^ xb)];
        }
        walsh_hadamard(&mut v);
        for z in 0..dim as u64 {
            let zb = to_basis_order(z, n) as usize;
            let p = PauliString::new(n, x, z).expect("in range");
            let phase = crate::pauli::Phase::from_exponent((x & z).count_ones()).to_complex();
            out[p.index()] = phase * v[zb] * scale;
        }
    }
    out
}

/// Coefficients `e_{p,q}` of a linear map in the tensor-Pauli basis.
#[derive(Debug, Clone, PartialEq)]
pub struct ChiMatrix {
    n: usize,
    entries: BTreeMap<(usize, usize), C64>,
}

impl ChiMatrix {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            entries: BTreeMap::new(),
        }
    }

    /// Builds from explicit `(p, q, e_pq)` triples; repeated pairs accumulate.
    pub fn from_entries(n: usize, items: impl IntoIterator<Item = (PauliString, PauliString, C64)>) -> Result<Self> {
        let mut chi = Self::zero(n);
        for (p, q, v) in items {
            for s in [p, q] {
                if s.num_qubits() != n {
                    return Err(Error::QubitMismatch {
                        left: n,
                        right: s.num_qubits(),
                    });
                }
            }
            *chi.entries.entry((p.index(), q.index())).or_default() += v;
        }
        Ok(chi)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn get(&self, p: &PauliString, q: &PauliString) -> C64 {
        self.entries.get(&(p.index(), q.index())).copied().unwrap_or_default()
    }

    /// Stored entries as `(p, q, e_pq)`, ordered by `(p, q)` index.
    pub fn entries(&self) -> impl Iterator<Item = (PauliString, PauliString, C64)> + '_ {
        self.entries.iter().map(|(&(p, q), &v)| {
            (
                PauliString::from_index(self.n, p),
                PauliString::from_index(self.n, q),
                v,
            )
        })
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// `Σ_p e_{p,p}`; equals 1 for trace-preserving maps.
    pub fn trace(&self) -> C64 {
        self.entries.iter().filter(|((p, q), _)| p == q).map(|(_, v)| *v).sum()
    }

    /// Real parts of the diagonal entries, dense over all `4^n` strings.
    pub fn diagonal(&self) -> ChiDiagonal {
        let mut values = vec![0.0; 1usize << (2 * self.n)];
        for (&(p, q), v) in &self.entries {
            if p == q {
                values[p] = v.re;
            }
        }
        ChiDiagonal { n: self.n, values }
    }

    /// Largest `|e_{p,q} − conj(e_{q,p})|`.
    pub fn hermiticity_error(&self) -> f64 {
        self.entries
            .iter()
            .map(|(&(p, q), v)| {
                let w = self.entries.get(&(q, p)).copied().unwrap_or_default();
                (v - w.conj()).norm()
            })
            .fold(0.0, f64::max)
    }

    /// `Σ_{p,q} e_{p,q} Σ_p ρ Σ_q`.
    pub fn apply(&self, rho: &DMatrix<C64>) -> Result<DMatrix<C64>> {
        let dim = 1usize << self.n;
        if rho.nrows() != dim || rho.ncols() != dim {
            return Err(Error::Dimension(format!(
                "input is {}x{}, expected {dim}x{dim}",
                rho.nrows(),
                rho.ncols()
            )));
        }
        let mut out = DMatrix::zeros(dim, dim);
        for (p, q, v) in self.entries() {
            out += (p.dense_matrix()? * rho * q.dense_matrix()?) * v;
        }
        Ok(out)
    }

    /// Chi matrix of `self ⊗ other`, with `self` acting on the leading qubits.
    pub fn tensor(&self, other: &ChiMatrix) -> Result<ChiMatrix> {
        let n = self.n + other.n;
        let mut out = ChiMatrix::zero(n);
        for (p1, q1, v1) in self.entries() {
            for (p2, q2, v2) in other.entries() {
                let p = p1.tensor(&p2)?;
                let q = q1.tensor(&q2)?;
                out.entries.insert((p.index(), q.index()), v1 * v2);
            }
        }
        Ok(out)
    }

    /// `self ⊗ self ⊗ … ⊗ self` with `copies` factors.
    pub fn tensor_power(&self, copies: usize) -> Result<ChiMatrix> {
        let mut out = ChiMatrix::from_entries(
            0,
            [(PauliString::identity(0), PauliString::identity(0), C64::new(1.0, 0.0))],
        )?;
        for _ in 0..copies {
            out = out.tensor(self)?;
        }
        Ok(out)
    }

    fn filtered(&self, keep: impl Fn(&PauliString, &PauliString) -> bool) -> ChiMatrix {
        let entries = self
            .entries()
            .filter(|(p, q, _)| keep(p, q))
            .map(|(p, q, v)| ((p.index(), q.index()), v))
            .collect();
        ChiMatrix { n: self.n, entries }
    }

    /// Entrywise sum.
    pub fn add(&self, other: &ChiMatrix) -> Result<ChiMatrix> {
        if self.n != other.n {
            return Err(Error::QubitMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = self.clone();
        for (&k, &v) in &other.entries {
            *out.entries.entry(k).or_default() += v;
        }
        Ok(out)
    }

    /// Entrywise comparison up to `tol`, treating absent entries as zero.
    pub fn max_difference(&self, other: &ChiMatrix) -> f64 {
        let keys = self.entries.keys().chain(other.entries.keys());
        keys.map(|k| {
            let a = self.entries.get(k).copied().unwrap_or_default();
            let b = other.entries.get(k).copied().unwrap_or_default();
            (a - b).norm()
        })
        .fold(0.0, f64::max)
    }
}

/// Number of sites where `p` or `q` is non-identity.
pub fn joint_weight(p: &PauliString, q: &PauliString) -> usize {
    (p.support() | q.support()).count_ones() as usize
}

/// Chi matrix of a Kraus set: `e_{p,q} = Σ_α c_α a_{α,p} conj(a_{α,q})`.
///
/// Accumulation runs over `α` in order, then over the nonzero coefficients
/// of each operator in string order, so the result is reproducible and
/// exactly Hermitian.
pub fn chi_from_kraus(k: &KrausSet) -> ChiMatrix {
    let n = k.num_qubits();
    let mut chi = ChiMatrix::zero(n);
    for (alpha, e) in k.operators().iter().enumerate() {
        let c = k.weight(alpha);
        let coeffs: Vec<(usize, C64)> = pauli_coefficients(e, n)
            .into_iter()
            .enumerate()
            .filter(|(_, a)| *a != C64::new(0.0, 0.0))
            .collect();
        for &(p, ap) in &coeffs {
            for &(q, aq) in &coeffs {
                *chi.entries.entry((p, q)).or_default() += (ap * aq.conj()).scale(c);
            }
        }
    }
    chi
}

/// Diagonal `e_{p,p}` over all `4^n` strings, indexed by `PauliString::index`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChiDiagonal {
    n: usize,
    values: Vec<f64>,
}

impl ChiDiagonal {
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, p: &PauliString) -> f64 {
        self.values[p.index()]
    }

    /// Diagonal of `self ⊗ other`.
    pub fn tensor(&self, other: &ChiDiagonal) -> Result<ChiDiagonal> {
        let n = self.n + other.n;
        if n > KRAUS_QUBIT_CAP {
            return Err(Error::DenseCapExceeded {
                what: "chi diagonal",
                required: n,
                cap: KRAUS_QUBIT_CAP,
            });
        }
        let mut values = vec![0.0; 1usize << (2 * n)];
        for p1 in PauliString::all(self.n) {
            let v1 = self.values[p1.index()];
            if v1 == 0.0 {
                continue;
            }
            for p2 in PauliString::all(other.n) {
                let p = p1.tensor(&p2)?;
                values[p.index()] = v1 * other.values[p2.index()];
            }
        }
        Ok(ChiDiagonal { n, values })
    }

    /// `Σ_{p correctable} e_{p,p}` in enumeration order.
    pub fn performance(&self, code: &CodeParams, mode: CorrectableMode) -> Result<f64> {
        if code.n != self.n {
            return Err(Error::QubitMismatch {
                left: code.n,
                right: self.n,
            });
        }
        Ok(enumerate_correctable(code, mode)
            .iter()
            .map(|p| self.values[p.index()])
            .collect::<NeumaierSum>()
            .value())
    }

    /// CSV with columns `pauli_string,e_pp_real`, one row per string in
    /// index order.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "pauli_string,e_pp_real")?;
        for p in PauliString::all(self.n) {
            writeln!(w, "{p},{}", fmt17(self.values[p.index()]))?;
        }
        Ok(())
    }
}

/// Diagonal-only chi route: `e_{p,p} = Σ_α c_α |a_{α,p}|²`.
pub fn chi_diagonal_from_kraus(k: &KrausSet) -> ChiDiagonal {
    let n = k.num_qubits();
    let mut values = vec![0.0; 1usize << (2 * n)];
    for (alpha, e) in k.operators().iter().enumerate() {
        let c = k.weight(alpha);
        for (slot, a) in values.iter_mut().zip(pauli_coefficients(e, n)) {
            *slot += c * a.norm_sqr();
        }
    }
    ChiDiagonal { n, values }
}

/// Weight-`w` submap: entries whose per-site array `(p_i + q_i)` has exactly
/// `w` nonzero positions.
pub fn submap(chi: &ChiMatrix, w: usize) -> Result<ChiMatrix> {
    if w > chi.n {
        return Err(Error::WeightOutOfRange { w, n: chi.n });
    }
    Ok(chi.filtered(|p, q| joint_weight(p, q) == w))
}

/// Splits `chi` into its correctable and uncorrectable parts.
///
/// In total-weight mode the correctable part is `Σ_{w<=t} submap(chi, w)`.
/// In css-split mode an entry is correctable when the X components and the
/// Z components of `p` and `q` jointly touch at most `t` sites each.
pub fn correctable_split(chi: &ChiMatrix, code: &CodeParams, mode: CorrectableMode) -> Result<(ChiMatrix, ChiMatrix)> {
    if chi.n != code.n {
        return Err(Error::QubitMismatch {
            left: chi.n,
            right: code.n,
        });
    }
    let t = code.t;
    let keep = move |p: &PauliString, q: &PauliString| match mode {
        CorrectableMode::TotalWeight => joint_weight(p, q) <= t,
        CorrectableMode::CssSplit => {
            (p.x_mask() | q.x_mask()).count_ones() as usize <= t && (p.z_mask() | q.z_mask()).count_ones() as usize <= t
        }
    };
    Ok((chi.filtered(keep), chi.filtered(move |p, q| !keep(p, q))))
}

/// `p_N = Σ_{p correctable} e_{p,p}`.
pub fn performance_from_chi(chi: &ChiMatrix, code: &CodeParams, mode: CorrectableMode) -> Result<f64> {
    if chi.n != code.n {
        return Err(Error::QubitMismatch {
            left: chi.n,
            right: code.n,
        });
    }
    Ok(enumerate_correctable(code, mode)
        .iter()
        .map(|p| chi.get(p, p).re)
        .collect::<NeumaierSum>()
        .value())
}

/// Probability of at most `t` errors among `n` independent sites, each
/// erring with probability `p`: `Σ_{c<=t} C(n,c) (1-p)^{n-c} p^c`.
pub fn independent_closed_form(n: usize, t: usize, p: f64) -> f64 {
    let mut binom = 1.0;
    let mut acc = NeumaierSum::new();
    for c in 0..=t.min(n) {
        if c > 0 {
            binom = binom * (n - c + 1) as f64 / c as f64;
        }
        acc.add(binom * (1.0 - p).powi((n - c) as i32) * p.powi(c as i32));
    }
    acc.value()
}
