//! Pauli strings with phase-tracked products, and sparse Pauli sums.
//!
//! A string over `{I, X, Y, Z}` of length `n` is stored as a pair of bit
//! masks in computational-basis index order: character `k` (the `k`-th tensor
//! factor from the left) maps to bit `n - 1 - k` of the basis index. This
//! matches the Kronecker ordering used by [`crate::DenseOperator`].
//!
//! Internally a string is `i^{#Y} · X^x · Z^z`, so that `Y = i·X·Z`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest supported string length.
pub const MAX_PAULI_QUBITS: usize = 63;

const I_POW: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, -1.0),
];

/// `i^k` for `k` taken mod 4.
#[inline]
pub fn i_pow(k: u32) -> Complex64 {
    I_POW[(k & 3) as usize]
}

/// A Hermitian, unitary tensor product of single-qubit Pauli operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    n_qubits: usize,
    x: u64,
    z: u64,
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Self {
        Self { n_qubits, x: 0, z: 0 }
    }

    /// Builds a string from raw masks (basis-index bit order).
    pub fn from_masks(n_qubits: usize, x: u64, z: u64) -> Self {
        let mask = if n_qubits >= 64 { u64::MAX } else { (1u64 << n_qubits) - 1 };
        Self { n_qubits, x: x & mask, z: z & mask }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    /// Number of non-identity factors.
    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()) % 2 == 0
    }

    /// `self · other = i^k · P`, returned as `(k mod 4, P)`.
    pub fn mul(&self, other: &Self) -> (u32, PauliString) {
        debug_assert_eq!(self.n_qubits, other.n_qubits);
        let x = self.x ^ other.x;
        let z = self.z ^ other.z;
        let product = PauliString { n_qubits: self.n_qubits, x, z };
        // X^x1 Z^z1 X^x2 Z^z2 = (-1)^{|z1 & x2|} X^{x1^x2} Z^{z1^z2}
        let sign = 2 * ((self.z & other.x).count_ones() % 2);
        let k = self.y_count() + other.y_count() + sign + 4 - product.y_count() % 4;
        (k % 4, product)
    }

    /// Action on a basis state: `P|b⟩ = phase · |b ^ x⟩`.
    #[inline]
    pub fn apply_to_basis(&self, b: u64) -> (Complex64, u64) {
        let k = self.y_count() + 2 * ((b & self.z).count_ones() % 2);
        (i_pow(k), b ^ self.x)
    }

    /// Dense `2^n × 2^n` matrix.
    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let dim = 1usize << self.n_qubits;
        let mut m = DMatrix::zeros(dim, dim);
        for col in 0..dim as u64 {
            let (phase, row) = self.apply_to_basis(col);
            m[(row as usize, col as usize)] = phase;
        }
        m
    }

    /// Axis character of qubit `k` (leftmost is `k = 0`).
    pub fn axis(&self, k: usize) -> char {
        let bit = 1u64 << (self.n_qubits - 1 - k);
        match (self.x & bit != 0, self.z & bit != 0) {
            (false, false) => 'I',
            (true, false) => 'X',
            (true, true) => 'Y',
            (false, true) => 'Z',
        }
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.n_qubits {
            write!(f, "{}", self.axis(k))?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(axes: &str) -> Result<Self> {
        let n = axes.chars().count();
        if n == 0 {
            return Err(Error::MalformedAxes {
                axes: axes.to_string(),
                reason: "empty string".into(),
            });
        }
        if n > MAX_PAULI_QUBITS {
            return Err(Error::MalformedAxes {
                axes: axes.to_string(),
                reason: format!("more than {MAX_PAULI_QUBITS} qubits"),
            });
        }
        let (mut x, mut z) = (0u64, 0u64);
        for (k, c) in axes.chars().enumerate() {
            let bit = 1u64 << (n - 1 - k);
            match c.to_ascii_uppercase() {
                'I' => {}
                'X' => x |= bit,
                'Y' => {
                    x |= bit;
                    z |= bit;
                }
                'Z' => z |= bit,
                other => {
                    return Err(Error::MalformedAxes {
                        axes: axes.to_string(),
                        reason: format!("unexpected character {other:?} at position {k}"),
                    })
                }
            }
        }
        Ok(Self { n_qubits: n, x, z })
    }
}

/// Sparse complex combination of Pauli strings on a fixed number of qubits.
///
/// Coefficients are kept exact up to floating-point products; no dense
/// arithmetic happens until [`PauliSum::to_dense`].
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: BTreeMap<PauliString, Complex64>,
}

impl PauliSum {
    pub fn zero(n_qubits: usize) -> Self {
        Self { n_qubits, terms: BTreeMap::new() }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn add_term(&mut self, coeff: Complex64, pauli: PauliString) {
        *self.terms.entry(pauli).or_insert(Complex64::new(0.0, 0.0)) += coeff;
    }

    pub fn add_scaled(&mut self, other: &PauliSum, scale: Complex64) {
        for (p, c) in &other.terms {
            self.add_term(c * scale, *p);
        }
    }

    pub fn scaled(mut self, s: Complex64) -> Self {
        for c in self.terms.values_mut() {
            *c *= s;
        }
        self
    }

    pub fn from_term(coeff: Complex64, pauli: PauliString) -> Self {
        let mut s = Self::zero(pauli.n_qubits());
        s.add_term(coeff, pauli);
        s
    }

    /// Drops coefficients with modulus at or below `tol`.
    pub fn pruned(mut self, tol: f64) -> Self {
        self.terms.retain(|_, c| c.norm() > tol);
        self
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, &Complex64)> {
        self.terms.iter()
    }

    /// Number of stored strings with modulus above `tol`.
    pub fn count_nonzero(&self, tol: f64) -> usize {
        self.terms.values().filter(|c| c.norm() > tol).count()
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.count_nonzero(tol) == 0
    }

    /// Sum of |coefficient|, an upper bound on the spectral norm.
    pub fn one_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    /// The commutator `[self, other]`, using `[P, Q] = 2PQ` when `P` and `Q`
    /// anticommute and zero otherwise.
    pub fn commutator(&self, other: &PauliSum) -> PauliSum {
        let mut out = PauliSum::zero(self.n_qubits);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                if p.commutes_with(q) {
                    continue;
                }
                let (k, r) = p.mul(q);
                out.add_term(a * b * i_pow(k) * 2.0, r);
            }
        }
        out
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let dim = 1usize << self.n_qubits;
        let mut m = DMatrix::zeros(dim, dim);
        for (p, c) in &self.terms {
            for col in 0..dim as u64 {
                let (phase, row) = p.apply_to_basis(col);
                m[(row as usize, col as usize)] += c * phase;
            }
        }
        m
    }
}
