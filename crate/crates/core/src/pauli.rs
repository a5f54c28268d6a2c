// SPDX-License-Identifier: Apache-2.0

//! n-qubit tensor Pauli operators in bit-pair form.
//!
//! Qubit `j` is stored in bit `j` of both masks and printed as character `j`
//! of the string form. In dense matrices qubit 0 is the most significant
//! tensor factor, so `"ZI"` is `Z ⊗ I`.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::C64;

/// Largest qubit count a `PauliString` can hold.
pub const MAX_QUBITS: usize = 64;

/// Largest qubit count for which `dense_matrix` materializes a matrix.
pub const DENSE_PAULI_CAP: usize = 10;

/// Scalar phase in `{1, i, -1, -i}`, stored as the exponent of `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    One,
    I,
    MinusOne,
    MinusI,
}

impl Phase {
    pub fn from_exponent(k: u32) -> Self {
        match k % 4 {
            0 => Phase::One,
            1 => Phase::I,
            2 => Phase::MinusOne,
            _ => Phase::MinusI,
        }
    }

    pub fn exponent(self) -> u32 {
        match self {
            Phase::One => 0,
            Phase::I => 1,
            Phase::MinusOne => 2,
            Phase::MinusI => 3,
        }
    }

    pub fn to_complex(self) -> C64 {
        match self {
            Phase::One => C64::new(1.0, 0.0),
            Phase::I => C64::new(0.0, 1.0),
            Phase::MinusOne => C64::new(-1.0, 0.0),
            Phase::MinusI => C64::new(0.0, -1.0),
        }
    }
}

impl Mul for Phase {
    type Output = Phase;

    // i^a · i^b = i^(a+b)
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Phase) -> Phase {
        Phase::from_exponent(self.exponent() + rhs.exponent())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SinglePauli {
    I,
    X,
    Y,
    Z,
}

/// Tensor product of single-qubit Paulis on `n` qubits.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: u64,
    z: u64,
}

fn mask_for(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Reverses the low `n` bits so that qubit 0 lands on the most significant
/// bit of a dense basis index.
pub(crate) fn to_basis_order(mask: u64, n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        mask.reverse_bits() >> (64 - n)
    }
}

impl PauliString {
    pub fn new(n: usize, x_mask: u64, z_mask: u64) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::InvalidPauli(format!("{n} qubits exceeds {MAX_QUBITS}")));
        }
        let m = mask_for(n);
        if x_mask & !m != 0 || z_mask & !m != 0 {
            return Err(Error::InvalidPauli(format!(
                "masks ({x_mask:#b}, {z_mask:#b}) have bits beyond {n} qubits"
            )));
        }
        Ok(Self {
            n,
            x: x_mask,
            z: z_mask,
        })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_QUBITS);
        Self { n, x: 0, z: 0 }
    }

    /// `pauli` on `qubit`, identity elsewhere.
    pub fn single(n: usize, qubit: usize, pauli: SinglePauli) -> Self {
        assert!(qubit < n && n <= MAX_QUBITS);
        let bit = 1u64 << qubit;
        let (x, z) = match pauli {
            SinglePauli::I => (0, 0),
            SinglePauli::X => (bit, 0),
            SinglePauli::Y => (bit, bit),
            SinglePauli::Z => (0, bit),
        };
        Self { n, x, z }
    }

    pub fn from_index(n: usize, index: usize) -> Self {
        let m = mask_for(n);
        let index = index as u64;
        Self {
            n,
            x: index & m,
            z: if n >= 64 { 0 } else { (index >> n) & m },
        }
    }

    /// Position of this string in the `(z_mask, x_mask)` ordering used by
    /// chi matrices: `(z << n) | x`. Only meaningful for `n <= 31`.
    pub fn index(&self) -> usize {
        ((self.z << self.n) | self.x) as usize
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn get(&self, qubit: usize) -> SinglePauli {
        let xb = (self.x >> qubit) & 1 == 1;
        let zb = (self.z >> qubit) & 1 == 1;
        match (xb, zb) {
            (false, false) => SinglePauli::I,
            (true, false) => SinglePauli::X,
            (true, true) => SinglePauli::Y,
            (false, true) => SinglePauli::Z,
        }
    }

    pub fn support(&self) -> u64 {
        self.x | self.z
    }

    /// Number of non-identity tensor factors.
    pub fn weight(&self) -> usize {
        self.support().count_ones() as usize
    }

    /// Number of qubits carrying an X component (X or Y).
    pub fn x_weight(&self) -> usize {
        self.x.count_ones() as usize
    }

    /// Number of qubits carrying a Z component (Z or Y).
    pub fn z_weight(&self) -> usize {
        self.z.count_ones() as usize
    }

    /// True when every factor is I or Z, i.e. the operator is diagonal.
    pub fn is_z_type(&self) -> bool {
        self.x == 0
    }

    /// Product `self · other = phase · result`.
    pub fn multiply(&self, other: &PauliString) -> Result<(PauliString, Phase)> {
        if self.n != other.n {
            return Err(Error::QubitMismatch {
                left: self.n,
                right: other.n,
            });
        }
        // Σ(x,z) = i^{|x∧z|} X^x Z^z; moving Z^{z1} past X^{x2} costs (-1)^{|z1∧x2|}.
        let x = self.x ^ other.x;
        let z = self.z ^ other.z;
        let k = (self.x & self.z).count_ones()
            + (other.x & other.z).count_ones()
            + 2 * (self.z & other.x).count_ones()
            + 3 * (x & z).count_ones();
        Ok((PauliString { n: self.n, x, z }, Phase::from_exponent(k)))
    }

    /// Action on a computational basis state: `Σ|c⟩ = amplitude · |image⟩`.
    /// `c` uses dense ordering (qubit 0 most significant).
    pub fn apply_to_basis(&self, c: usize) -> (C64, usize) {
        let xb = to_basis_order(self.x, self.n) as usize;
        let zb = to_basis_order(self.z, self.n) as usize;
        let k = (self.x & self.z).count_ones() + 2 * (zb & c).count_ones();
        (Phase::from_exponent(k).to_complex(), c ^ xb)
    }

    pub fn dense_matrix(&self) -> Result<DMatrix<C64>> {
        if self.n > DENSE_PAULI_CAP {
            return Err(Error::DenseCapExceeded {
                what: "dense Pauli matrix",
                required: self.n,
                cap: DENSE_PAULI_CAP,
            });
        }
        let dim = 1usize << self.n;
        let mut m = DMatrix::zeros(dim, dim);
        for c in 0..dim {
            let (amp, r) = self.apply_to_basis(c);
            m[(r, c)] = amp;
        }
        Ok(m)
    }

    /// Concatenation `self ⊗ other`, with `self` on the leading qubits.
    pub fn tensor(&self, other: &PauliString) -> Result<PauliString> {
        let n = self.n + other.n;
        PauliString::new(n, self.x | (other.x << self.n), self.z | (other.z << self.n))
    }

    /// All `4^n` strings in ascending `(z_mask, x_mask)` order.
    pub fn all(n: usize) -> impl Iterator<Item = PauliString> {
        assert!(n <= 31, "enumerating 4^{n} strings is not supported");
        (0..1usize << (2 * n)).map(move |i| PauliString::from_index(n, i))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.n {
            let c = match self.get(j) {
                SinglePauli::I => 'I',
                SinglePauli::X => 'X',
                SinglePauli::Y => 'Y',
                SinglePauli::Z => 'Z',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let n = s.chars().count();
        if n > MAX_QUBITS {
            return Err(Error::InvalidPauli(s.to_string()));
        }
        let (mut x, mut z) = (0u64, 0u64);
        for (j, c) in s.chars().enumerate() {
            let bit = 1u64 << j;
            match c {
                'I' => {}
                'X' => x |= bit,
                'Y' => {
                    x |= bit;
                    z |= bit;
                }
                'Z' => z |= bit,
                _ => return Err(Error::InvalidPauli(s.to_string())),
            }
        }
        Ok(Self { n, x, z })
    }
}
