//! Linear-combination-of-unitaries Hamiltonians over Pauli strings.

use std::path::Path;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::DenseOperator;
use crate::pauli::{PauliString, PauliSum};

/// Default limit on the number of qubits for dense realizations (32 MB per matrix).
pub const MAX_DENSE_QUBITS: usize = 12;

/// One weighted Pauli string `γ·P` (γ in Hartree).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliTerm {
    pub coefficient: f64,
    pub pauli: PauliString,
}

impl PauliTerm {
    pub fn new(coefficient: f64, pauli: PauliString) -> Self {
        Self { coefficient, pauli }
    }
}

/// Whether the identity coefficient counts toward `Σ|γ|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityConvention {
    Include,
    /// Calibrated default: reproduces the reference time for the bundled H₂ fixture.
    #[default]
    Exclude,
}

/// `H = Σ_β γ_β H_β`. Terms keep their ingestion order, which fixes the
/// application order in Trotter products.
#[derive(Debug, Clone, PartialEq)]
pub struct LcuHamiltonian {
    n_qubits: usize,
    terms: Vec<PauliTerm>,
    reference_state: Option<u64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct HamiltonianFile {
    n_qubits: usize,
    terms: Vec<TermRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    reference_state: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct TermRecord {
    coeff: f64,
    pauli: String,
}

impl LcuHamiltonian {
    /// Validates and merges duplicate strings (first occurrence keeps its position).
    pub fn new(n_qubits: usize, terms: Vec<PauliTerm>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyHamiltonian);
        }
        if n_qubits == 0 {
            return Err(Error::InvalidArgument("n_qubits must be positive".into()));
        }
        let mut merged: Vec<PauliTerm> = Vec::with_capacity(terms.len());
        for term in terms {
            if term.pauli.n_qubits() != n_qubits {
                return Err(Error::QubitCountMismatch {
                    declared: n_qubits,
                    found: term.pauli.n_qubits(),
                    axes: term.pauli.to_string(),
                });
            }
            if !term.coefficient.is_finite() {
                return Err(Error::Parse(format!(
                    "non-finite coefficient for {}",
                    term.pauli
                )));
            }
            match merged.iter_mut().find(|t| t.pauli == term.pauli) {
                Some(existing) => existing.coefficient += term.coefficient,
                None => merged.push(term),
            }
        }
        Ok(Self { n_qubits, terms: merged, reference_state: None })
    }

    /// Convenience constructor from `(coefficient, axes)` pairs.
    pub fn from_labels<S: AsRef<str>>(terms: &[(f64, S)]) -> Result<Self> {
        let parsed = terms
            .iter()
            .map(|(c, s)| Ok(PauliTerm::new(*c, s.as_ref().parse()?)))
            .collect::<Result<Vec<_>>>()?;
        let n = parsed.first().map(|t| t.pauli.n_qubits()).ok_or(Error::EmptyHamiltonian)?;
        Self::new(n, parsed)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: HamiltonianFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let terms = file
            .terms
            .iter()
            .map(|r| Ok(PauliTerm::new(r.coeff, r.pauli.parse()?)))
            .collect::<Result<Vec<_>>>()?;
        let mut h = Self::new(file.n_qubits, terms)?;
        if let Some(bits) = file.reference_state {
            h = h.with_reference_state(&bits)?;
        }
        Ok(h)
    }

    pub fn to_json_string(&self) -> String {
        let file = HamiltonianFile {
            n_qubits: self.n_qubits,
            terms: self
                .terms
                .iter()
                .map(|t| TermRecord { coeff: t.coefficient, pauli: t.pauli.to_string() })
                .collect(),
            reference_state: self
                .reference_state
                .map(|b| format!("{:0width$b}", b, width = self.n_qubits)),
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }

    /// Attaches a computational-basis reference state (e.g. Hartree–Fock) given
    /// as a bit string, leftmost character = qubit 0.
    pub fn with_reference_state(mut self, bits: &str) -> Result<Self> {
        self.reference_state = Some(parse_bitstring(bits, self.n_qubits)?);
        Ok(self)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Basis index of the attached reference state, if any.
    pub fn reference_state(&self) -> Option<u64> {
        self.reference_state
    }

    /// `Σ_β |γ_β|` over all stored terms.
    pub fn one_norm(&self) -> f64 {
        self.terms.iter().map(|t| t.coefficient.abs()).sum()
    }

    pub fn one_norm_with(&self, convention: IdentityConvention) -> f64 {
        match convention {
            IdentityConvention::Include => self.one_norm(),
            IdentityConvention::Exclude => self
                .terms
                .iter()
                .filter(|t| !t.pauli.is_identity())
                .map(|t| t.coefficient.abs())
                .sum(),
        }
    }

    /// Coefficient of the identity string (zero when absent).
    pub fn identity_coefficient(&self) -> f64 {
        self.terms
            .iter()
            .find(|t| t.pauli.is_identity())
            .map_or(0.0, |t| t.coefficient)
    }

    /// Returns a copy with `shift · I` added.
    pub fn shifted(&self, shift: f64) -> Self {
        let mut terms = self.terms.clone();
        terms.push(PauliTerm::new(shift, PauliString::identity(self.n_qubits)));
        let mut h = Self::new(self.n_qubits, terms).expect("valid");
        h.reference_state = self.reference_state;
        h
    }

    /// Returns a copy with terms in reverse order.
    pub fn reversed(&self) -> Self {
        let mut h = self.clone();
        h.terms.reverse();
        h
    }

    pub fn to_pauli_sum(&self) -> PauliSum {
        let mut s = PauliSum::zero(self.n_qubits);
        for t in &self.terms {
            s.add_term(Complex64::new(t.coefficient, 0.0), t.pauli);
        }
        s
    }

    /// Lowest-diagonal computational basis state; ties go to the smaller index.
    pub fn lowest_diagonal_state(&self) -> u64 {
        let dim = 1u64 << self.n_qubits;
        let diag = |b: u64| -> f64 {
            self.terms
                .iter()
                .filter(|t| t.pauli.x_mask() == 0)
                .map(|t| {
                    let (phase, _) = t.pauli.apply_to_basis(b);
                    t.coefficient * phase.re
                })
                .sum()
        };
        (0..dim)
            .map(|b| (b, diag(b)))
            .fold((0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best })
            .0
    }
}

/// Reads a Hamiltonian JSON file.
pub fn ingest_hamiltonian(path: impl AsRef<Path>) -> Result<LcuHamiltonian> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    LcuHamiltonian::from_json_str(&text)
}

/// Dense Kronecker realization of `h`, limited to [`MAX_DENSE_QUBITS`].
pub fn to_dense(h: &LcuHamiltonian) -> Result<DenseOperator> {
    to_dense_capped(h, MAX_DENSE_QUBITS)
}

pub fn to_dense_capped(h: &LcuHamiltonian, cap: usize) -> Result<DenseOperator> {
    if h.n_qubits > cap {
        return Err(Error::DimensionCap { qubits: h.n_qubits, cap });
    }
    Ok(DenseOperator::new(h.to_pauli_sum().to_dense()))
}

pub(crate) fn parse_bitstring(bits: &str, n_qubits: usize) -> Result<u64> {
    if bits.len() != n_qubits {
        return Err(Error::InvalidArgument(format!(
            "basis state {bits:?} has {} bits, expected {n_qubits}",
            bits.len()
        )));
    }
    u64::from_str_radix(bits, 2)
        .map_err(|_| Error::InvalidArgument(format!("basis state {bits:?} is not a bit string")))
}

/// Random LCU with distinct non-identity strings and coefficients uniform in `[-1, 1]`.
pub fn random_lcu(n_qubits: usize, n_terms: usize, seed: u64) -> LcuHamiltonian {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_terms = (1usize << (2 * n_qubits)) - 1;
    let n_terms = n_terms.min(max_terms);
    let mask = (1u64 << n_qubits) - 1;
    let mut terms: Vec<PauliTerm> = Vec::with_capacity(n_terms);
    while terms.len() < n_terms {
        let p = PauliString::from_masks(n_qubits, rng.random::<u64>() & mask, rng.random::<u64>() & mask);
        if p.is_identity() || terms.iter().any(|t| t.pauli == p) {
            continue;
        }
        terms.push(PauliTerm::new(rng.random_range(-1.0..=1.0), p));
    }
    LcuHamiltonian::new(n_qubits, terms).expect("valid random LCU")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_merge() {
        let h = LcuHamiltonian::from_json_str(
            r#"{"n_qubits": 1, "terms": [{"coeff": 0.5, "pauli": "Z"}, {"coeff": 0.5, "pauli": "Z"}]}"#,
        )
        .unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(h.terms()[0].coefficient, 1.0);
        assert_eq!(h.one_norm(), 1.0);
    }

    #[test]
    fn rejects_bad_input() {
        let bad_axes = r#"{"n_qubits": 2, "terms": [{"coeff": 1.0, "pauli": "XQ"}]}"#;
        assert!(matches!(
            LcuHamiltonian::from_json_str(bad_axes),
            Err(Error::MalformedAxes { .. })
        ));
        let bad_count = r#"{"n_qubits": 3, "terms": [{"coeff": 1.0, "pauli": "XZ"}]}"#;
        assert!(matches!(
            LcuHamiltonian::from_json_str(bad_count),
            Err(Error::QubitCountMismatch { .. })
        ));
        let empty = r#"{"n_qubits": 2, "terms": []}"#;
        assert!(matches!(LcuHamiltonian::from_json_str(empty), Err(Error::EmptyHamiltonian)));
        assert!(matches!(LcuHamiltonian::from_json_str("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn dense_examples() {
        let z = to_dense(&LcuHamiltonian::from_labels(&[(1.0, "Z")]).unwrap()).unwrap();
        assert_eq!(z.matrix()[(0, 0)].re, 1.0);
        assert_eq!(z.matrix()[(1, 1)].re, -1.0);
        assert_eq!(z.matrix()[(0, 1)].norm(), 0.0);

        let h = LcuHamiltonian::from_labels(&[(0.5, "X"), (0.5, "I")]).unwrap();
        let m = to_dense(&h).unwrap();
        for r in 0..2 {
            for c in 0..2 {
                assert!((m.matrix()[(r, c)] - Complex64::new(0.5, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn dimension_cap_is_enforced() {
        let h = LcuHamiltonian::from_labels(&[(1.0, "ZZZ")]).unwrap();
        assert!(matches!(to_dense_capped(&h, 2), Err(Error::DimensionCap { qubits: 3, cap: 2 })));
    }

    #[test]
    fn identity_convention() {
        let h = LcuHamiltonian::from_labels(&[(2.0, "II"), (-0.5, "XZ"), (0.25, "ZI")]).unwrap();
        assert_eq!(h.one_norm_with(IdentityConvention::Include), 2.75);
        assert_eq!(h.one_norm_with(IdentityConvention::Exclude), 0.75);
        assert_eq!(h.identity_coefficient(), 2.0);
    }

    #[test]
    fn json_roundtrip_keeps_order_and_reference() {
        let h = LcuHamiltonian::from_labels(&[(0.1, "ZI"), (-0.2, "XX"), (0.3, "IZ")])
            .unwrap()
            .with_reference_state("10")
            .unwrap();
        let back = LcuHamiltonian::from_json_str(&h.to_json_string()).unwrap();
        assert_eq!(back, h);
        assert_eq!(back.reference_state(), Some(0b10));
    }

    #[test]
    fn random_lcu_is_deterministic() {
        assert_eq!(random_lcu(2, 3, 7), random_lcu(2, 3, 7));
        let h = random_lcu(2, 15, 1);
        assert_eq!(h.len(), 15);
        assert!(h.terms().iter().all(|t| !t.pauli.is_identity()));
    }
}
