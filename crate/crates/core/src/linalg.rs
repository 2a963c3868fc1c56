//! Dense complex operators: Hermitian eigensystems, exponentials and
//! principal logarithms of unitaries, spectral norms.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative tolerance for the Hermitian check: `max|A−A†| ≤ tol · max|A|`.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Absolute tolerance for the unitary check: `max|A†A−1| ≤ tol`.
pub const UNITARY_TOL: f64 = 1e-9;
/// Gaps below this value (Ha) are treated as degeneracies.
pub const DEGENERACY_TOL: f64 = 1e-8;
/// Eigenphases closer than this to ±π are rejected by the logarithm.
pub const BRANCH_TOL: f64 = 1e-6;

const EIGEN_EPS: f64 = f64::EPSILON;
const EIGEN_MAX_ITER: usize = 0;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Largest entry modulus of a complex matrix.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[inline]
pub(crate) fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Square complex matrix of dimension `2^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    matrix: CMatrix,
}

impl DenseOperator {
    pub fn new(matrix: CMatrix) -> Self {
        assert!(matrix.is_square(), "dense operators are square");
        Self { matrix }
    }

    pub fn identity(dim: usize) -> Self {
        Self::new(CMatrix::identity(dim, dim))
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(CMatrix::zeros(dim, dim))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn max_abs(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max|A − A†|`.
    pub fn hermitian_deviation(&self) -> f64 {
        (&self.matrix - self.matrix.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_deviation() <= HERMITIAN_TOL * self.max_abs()
    }

    /// `max|A†A − 1|`.
    pub fn unitary_deviation(&self) -> f64 {
        let n = self.dim();
        (self.matrix.adjoint() * &self.matrix - CMatrix::identity(n, n))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary_deviation() <= UNITARY_TOL
    }

    pub fn ensure_hermitian(&self) -> Result<()> {
        if self.is_hermitian() {
            Ok(())
        } else {
            Err(Error::NotHermitian { deviation: self.hermitian_deviation() })
        }
    }

    pub fn ensure_unitary(&self) -> Result<()> {
        let deviation = self.unitary_deviation();
        if deviation <= UNITARY_TOL {
            Ok(())
        } else {
            Err(Error::NotUnitary { deviation })
        }
    }

    /// `(A + A†)/2`.
    pub fn hermitian_part(&self) -> Self {
        Self::new((&self.matrix + self.matrix.adjoint()) * c(0.5))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(&self.matrix - &other.matrix)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.matrix + &other.matrix)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(&self.matrix * c(s))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.matrix * &other.matrix)
    }

    /// `A^k` by repeated squaring.
    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.matrix.clone();
        let mut acc = CMatrix::identity(self.dim(), self.dim());
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Self::new(acc)
    }

    /// `⟨ψ|A|ψ⟩`.
    pub fn expectation(&self, psi: &CVector) -> Complex64 {
        psi.dotc(&(&self.matrix * psi))
    }

    pub fn apply(&self, psi: &CVector) -> CVector {
        &self.matrix * psi
    }
}

/// Full eigensystem of a Hermitian operator, energies ascending.
#[derive(Debug, Clone)]
pub struct Spectrum {
    energies: Vec<f64>,
    /// Orthonormal eigenvectors as columns.
    states: CMatrix,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn energy(&self, i: usize) -> f64 {
        self.energies[i]
    }

    pub fn states(&self) -> &CMatrix {
        &self.states
    }

    pub fn state(&self, i: usize) -> CVector {
        self.states.column(i).into_owned()
    }

    /// `ΔE_i = min_{k≠i} |E_k − E_i|`; errors when state `i` is degenerate.
    pub fn gap_of(&self, i: usize) -> Result<f64> {
        if i >= self.dim() {
            return Err(Error::InvalidArgument(format!(
                "state index {i} out of range for dimension {}",
                self.dim()
            )));
        }
        let gap = self
            .energies
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, e)| (e - self.energies[i]).abs())
            .fold(f64::INFINITY, f64::min);
        if !gap.is_finite() || gap < DEGENERACY_TOL {
            return Err(Error::Degenerate { index: i, gap });
        }
        Ok(gap)
    }

    /// `θ_j = (−t·E_j) mod 1`, each in `[0, 1)`.
    pub fn phases(&self, t: f64) -> Vec<f64> {
        self.energies.iter().map(|&e| unit_phase(-t * e)).collect()
    }

    /// Overlaps `c_j = ⟨ψ_j|ψ⟩`.
    pub fn overlaps(&self, psi: &CVector) -> Vec<Complex64> {
        (self.states.adjoint() * psi).iter().copied().collect()
    }

    /// `Σ_j E_j |ψ_j⟩⟨ψ_j|`.
    pub fn reconstruct(&self) -> DenseOperator {
        let d = CMatrix::from_diagonal(&DVector::from_iterator(
            self.dim(),
            self.energies.iter().map(|&e| c(e)),
        ));
        DenseOperator::new(&self.states * d * self.states.adjoint())
    }
}

/// Reduces `x` to `[0, 1)`.
pub fn unit_phase(x: f64) -> f64 {
    let r = x.rem_euclid(1.0);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// Normalized system-register state.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialState {
    amplitudes: CVector,
}

impl InitialState {
    /// Errors unless `Σ|a|² = 1` within `1e-10`.
    pub fn new(amplitudes: CVector) -> Result<Self> {
        let norm_sq = amplitudes.norm_squared();
        if (norm_sq - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self { amplitudes })
    }

    pub fn normalized(amplitudes: CVector) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized { norm_sq: norm * norm });
        }
        Ok(Self { amplitudes: amplitudes / c(norm) })
    }

    pub fn basis(dim: usize, index: u64) -> Result<Self> {
        if index as usize >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for dimension {dim}"
            )));
        }
        let mut v = CVector::zeros(dim);
        v[index as usize] = c(1.0);
        Ok(Self { amplitudes: v })
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// `c_j = ⟨ψ_j|ψ_init⟩` against an attached spectrum.
    pub fn overlaps(&self, spectrum: &Spectrum) -> Result<Vec<Complex64>> {
        if spectrum.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: spectrum.dim(), found: self.dim() });
        }
        Ok(spectrum.overlaps(&self.amplitudes))
    }
}

/// Hermitian eigendecomposition with ascending energies. Each eigenvector is
/// rotated so that its largest-magnitude component is real and positive.
pub fn diagonalize(h: &DenseOperator) -> Result<Spectrum> {
    h.ensure_hermitian()?;
    let herm = h.hermitian_part().into_matrix();
    let n = herm.nrows();
    let eig = SymmetricEigen::try_new(herm, EIGEN_EPS, EIGEN_MAX_ITER)
        .ok_or_else(|| Error::InvalidArgument("eigensolver did not converge".into()))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let energies = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut states = CMatrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        let mut v = eig.eigenvectors.column(k).into_owned();
        fix_phase(&mut v);
        states.set_column(col, &v);
    }
    Ok(Spectrum { energies, states })
}

fn fix_phase(v: &mut CVector) {
    // First index wins among components equal in magnitude up to rounding.
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if let Some(pivot) = v.iter().find(|z| z.norm() >= max * (1.0 - 1e-10)).copied() {
        if pivot.norm() > 0.0 {
            let rot = pivot.conj() / pivot.norm();
            v.iter_mut().for_each(|z| *z *= rot);
        }
    }
    let n = v.norm();
    *v /= c(n);
}

/// `exp(i · scale · h)` for Hermitian `h`.
pub fn expm_hermitian(h: &DenseOperator, scale: f64) -> Result<DenseOperator> {
    let spectrum = diagonalize(h)?;
    Ok(function_of(&spectrum, |e| Complex64::from_polar(1.0, scale * e)))
}

/// Applies `f` to the eigenvalues: `Σ_j f(E_j)|ψ_j⟩⟨ψ_j|`.
pub fn function_of(spectrum: &Spectrum, f: impl Fn(f64) -> Complex64) -> DenseOperator {
    let v = spectrum.states();
    let d = DVector::from_iterator(spectrum.dim(), spectrum.energies().iter().map(|&e| f(e)));
    DenseOperator::new(v * CMatrix::from_diagonal(&d) * v.adjoint())
}

/// Hermitian `L` with `exp(i · scale · L) = u`, eigenphases taken on the
/// principal branch `(−π, π)`.
///
/// The eigenbasis comes from the Hermitian Cayley transform
/// `i(1 − u)(1 + u)^{-1}`, whose eigenvalues are `tan(φ/2)`.
pub fn logm_unitary_hermitian(u: &DenseOperator, scale: f64) -> Result<DenseOperator> {
    if scale == 0.0 || !scale.is_finite() {
        return Err(Error::InvalidArgument(format!("logarithm scale must be finite and nonzero, got {scale}")));
    }
    u.ensure_unitary()?;
    let n = u.dim();
    let id = CMatrix::identity(n, n);
    let plus = &id + u.matrix();
    let minus = (&id - u.matrix()) * Complex64::new(0.0, 1.0);
    let cayley = plus
        .lu()
        .solve(&minus)
        .ok_or(Error::BranchAmbiguity { phase: PI, tolerance: BRANCH_TOL })?;
    let cayley = DenseOperator::new(cayley).hermitian_part();
    let spectrum = diagonalize(&cayley)?;
    if let Some(&tau) = spectrum
        .energies()
        .iter()
        .find(|&&tau| PI - 2.0 * tau.atan().abs() < BRANCH_TOL)
    {
        return Err(Error::BranchAmbiguity { phase: 2.0 * tau.atan(), tolerance: BRANCH_TOL });
    }
    Ok(function_of(&spectrum, |tau| c(2.0 * tau.atan() / scale)).hermitian_part())
}

/// Largest singular value.
pub fn spectral_norm(a: &DenseOperator) -> f64 {
    if a.dim() == 0 {
        return 0.0;
    }
    a.matrix()
        .clone()
        .singular_values()
        .iter()
        .copied()
        .fold(0.0, f64::max)
}
