// SPDX-License-Identifier: Apache-2.0

//! Code parameters and the correctable Pauli index sets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{PauliString, MAX_QUBITS};

/// `[n, k, d]` parameters together with the correctable weight `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub t: usize,
}

impl CodeParams {
    pub fn new(n: usize, k: usize, d: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::InvalidCode(format!("n = {n} out of range")));
        }
        if k >= n {
            return Err(Error::InvalidCode(format!("k = {k} must be below n = {n}")));
        }
        if d == 0 || d > n {
            return Err(Error::InvalidCode(format!("d = {d} must lie in 1..={n}")));
        }
        Ok(Self {
            n,
            k,
            d,
            t: (d - 1) / 2,
        })
    }

    /// The Steane `[7,1,3]` code.
    pub fn steane() -> Self {
        Self::new(7, 1, 3).expect("valid parameters")
    }

    /// A stand-in "code" that corrects every error of weight up to `t` on
    /// `n` qubits. Only `n` and `t` enter the performance measure, so this is
    /// how downsized instances (e.g. `n = 2, t = 1`) are checked against the
    /// dense route. `d` is set to `2t + 1` and `k` to 0; `d <= n` is not
    /// enforced.
    pub fn synthetic(n: usize, t: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS || t > n {
            return Err(Error::InvalidCode(format!("synthetic code n = {n}, t = {t}")));
        }
        Ok(Self {
            n,
            k: 0,
            d: 2 * t + 1,
            t,
        })
    }
}

/// How the bound `|υ| <= t` is read for strings mixing X and Z components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorrectableMode {
    /// Total weight (non-identity factors) at most `t`.
    #[default]
    TotalWeight,
    /// X-part weight at most `t` and Z-part weight at most `t`.
    CssSplit,
}

impl CorrectableMode {
    pub fn contains(self, p: &PauliString, t: usize) -> bool {
        match self {
            CorrectableMode::TotalWeight => p.weight() <= t,
            CorrectableMode::CssSplit => p.x_weight() <= t && p.z_weight() <= t,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CorrectableMode::TotalWeight => "total-weight",
            CorrectableMode::CssSplit => "css-split",
        }
    }
}

/// Masks on `n` bits with at most `t` bits set, ascending.
fn masks_up_to_weight(n: usize, t: usize) -> Vec<u64> {
    fn extend(start: usize, n: usize, left: usize, acc: u64, out: &mut Vec<u64>) {
        out.push(acc);
        if left == 0 {
            return;
        }
        for j in start..n {
            extend(j + 1, n, left - 1, acc | (1u64 << j), out);
        }
    }
    let mut out = Vec::new();
    extend(0, n, t.min(n), 0, &mut out);
    out.sort_unstable();
    out
}

/// Correctable strings for `code` in ascending `(z_mask, x_mask)` order.
pub fn enumerate_correctable(code: &CodeParams, mode: CorrectableMode) -> Vec<PauliString> {
    let n = code.n;
    let t = code.t;
    let mut out = Vec::new();
    match mode {
        CorrectableMode::TotalWeight => {
            for support in masks_up_to_weight(n, t) {
                // Each support qubit is X, Y or Z: choose x ⊆ support, z ⊆ support
                // with x | z = support.
                let mut x = support;
                loop {
                    let z_forced = support & !x;
                    let mut extra = x;
                    loop {
                        out.push(PauliString::new(n, x, z_forced | extra).expect("in range"));
                        if extra == 0 {
                            break;
                        }
                        extra = (extra - 1) & x;
                    }
                    if x == 0 {
                        break;
                    }
                    x = (x - 1) & support;
                }
            }
        }
        CorrectableMode::CssSplit => {
            let masks = masks_up_to_weight(n, t);
            for &z in &masks {
                for &x in &masks {
                    out.push(PauliString::new(n, x, z).expect("in range"));
                }
            }
        }
    }
    out.sort_unstable_by_key(|p| (p.z_mask(), p.x_mask()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn code_params() {
        let c = CodeParams::steane();
        assert_eq!((c.n, c.k, c.d, c.t), (7, 1, 3, 1));
        assert_eq!(CodeParams::new(5, 1, 5).unwrap().t, 2);
        assert!(CodeParams::new(3, 3, 1).is_err());
        assert!(CodeParams::new(3, 1, 4).is_err());
        assert_eq!(CodeParams::synthetic(2, 1).unwrap().t, 1);
        assert!(CodeParams::synthetic(2, 3).is_err());
    }

    fn brute(n: usize, t: usize, mode: CorrectableMode) -> Vec<PauliString> {
        PauliString::all(n).filter(|p| mode.contains(p, t)).collect::<Vec<_>>()
    }

    #[test]
    fn steane_counts() {
        let c = CodeParams::steane();
        let tw = enumerate_correctable(&c, CorrectableMode::TotalWeight);
        assert_eq!(tw.len(), 22);
        let css = enumerate_correctable(&c, CorrectableMode::CssSplit);
        assert_eq!(css.len(), 64);
        // brute-force over all 4^7 strings
        assert_eq!(brute(7, 1, CorrectableMode::CssSplit).len(), 64);
    }

    #[test]
    fn matches_brute_force_in_order() {
        for n in 1..=5 {
            for t in 0..=n {
                let code = CodeParams::synthetic(n, t).unwrap();
                for mode in [CorrectableMode::TotalWeight, CorrectableMode::CssSplit] {
                    // brute force enumerates by index = (z << n) | x, i.e. the same order
                    assert_eq!(
                        enumerate_correctable(&code, mode),
                        brute(n, t, mode),
                        "n={n} t={t} {mode:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn trivial_code_is_identity_only() {
        let code = CodeParams::new(1, 0, 1).unwrap();
        for mode in [CorrectableMode::TotalWeight, CorrectableMode::CssSplit] {
            assert_eq!(enumerate_correctable(&code, mode), vec![PauliString::identity(1)]);
        }
    }

    #[test]
    fn modes_agree_on_z_type_and_at_t_zero() {
        for n in 1..=6 {
            for t in 0..=n.min(3) {
                let code = CodeParams::synthetic(n, t).unwrap();
                let tw = enumerate_correctable(&code, CorrectableMode::TotalWeight);
                let css = enumerate_correctable(&code, CorrectableMode::CssSplit);
                let ztw: Vec<_> = tw.iter().filter(|p| p.is_z_type()).collect();
                let zcss: Vec<_> = css.iter().filter(|p| p.is_z_type()).collect();
                assert_eq!(ztw, zcss);
                if t == 0 {
                    assert_eq!(tw, css);
                }
            }
        }
    }
}
