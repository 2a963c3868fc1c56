//! Order-1 and order-2 Trotter products, their first-order error operators
//! and the effective Hamiltonians they implement.
//!
//! Conventions: a product formula with step width `dt` (atomic units of
//! time) applies `exp(−i·2π·dt·γ_β·H_β)` for every term, the first stored
//! term acting first on the state. The order-2 step applies the terms in
//! order with half angles, then in reverse order with half angles.
//! With `λ_p = (2π·dt)^p` the effective Hamiltonian of one step satisfies
//! `H^S = H + λ_p·δH_p + O(λ_p²)`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::{to_dense, LcuHamiltonian};
use crate::linalg::{c, logm_unitary_hermitian, spectral_norm, CMatrix, DenseOperator};
use crate::pauli::{PauliString, PauliSum};

/// Highest controlled power exponent `q` a plan accepts.
pub const MAX_POWER_EXPONENT: u32 = 62;

/// Product-formula order `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum TrotterOrder {
    First,
    Second,
}

impl TrotterOrder {
    pub fn p(self) -> u32 {
        match self {
            TrotterOrder::First => 1,
            TrotterOrder::Second => 2,
        }
    }
}

impl From<TrotterOrder> for u8 {
    fn from(o: TrotterOrder) -> u8 {
        o.p() as u8
    }
}

impl TryFrom<u8> for TrotterOrder {
    type Error = Error;

    fn try_from(p: u8) -> Result<Self> {
        match p {
            1 => Ok(TrotterOrder::First),
            2 => Ok(TrotterOrder::Second),
            other => Err(Error::InvalidArgument(format!("unsupported Trotter order {other}"))),
        }
    }
}

/// How many steps `n(q, t)` each controlled power uses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepSchedule {
    /// Same `n` for every power (the step width grows with `2^q`).
    Fixed(u64),
    /// `n = n₀·2^q`: every power shares one step matrix.
    Uniform(u64),
    /// Explicit `n` per power, index `q`.
    PerQ(Vec<u64>),
}

/// Order, evolution time and step schedule of a Trotterized QPE.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrotterPlan {
    order: TrotterOrder,
    time: f64,
    schedule: StepSchedule,
}

impl TrotterPlan {
    pub fn new(order: TrotterOrder, time: f64, schedule: StepSchedule) -> Result<Self> {
        if !(time.is_finite() && time > 0.0) {
            return Err(Error::InvalidArgument(format!("time must be positive, got {time}")));
        }
        let ok = match &schedule {
            StepSchedule::Fixed(n) | StepSchedule::Uniform(n) => *n >= 1,
            StepSchedule::PerQ(ns) => !ns.is_empty() && ns.iter().all(|&n| n >= 1),
        };
        if !ok {
            return Err(Error::InvalidArgument("Trotter step counts must be at least 1".into()));
        }
        Ok(Self { order, time, schedule })
    }

    pub fn fixed(order: TrotterOrder, time: f64, n: u64) -> Result<Self> {
        Self::new(order, time, StepSchedule::Fixed(n))
    }

    pub fn uniform(order: TrotterOrder, time: f64, n0: u64) -> Result<Self> {
        Self::new(order, time, StepSchedule::Uniform(n0))
    }

    pub fn per_q(order: TrotterOrder, time: f64, steps: Vec<u64>) -> Result<Self> {
        Self::new(order, time, StepSchedule::PerQ(steps))
    }

    pub fn order(&self) -> TrotterOrder {
        self.order
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn schedule(&self) -> &StepSchedule {
        &self.schedule
    }

    /// `n(q, t)`.
    pub fn steps_for(&self, q: u32) -> Result<u64> {
        if q > MAX_POWER_EXPONENT {
            return Err(Error::InvalidArgument(format!(
                "controlled power 2^{q} exceeds 2^{MAX_POWER_EXPONENT}"
            )));
        }
        match &self.schedule {
            StepSchedule::Fixed(n) => Ok(*n),
            StepSchedule::Uniform(n0) => n0.checked_mul(1u64 << q).ok_or_else(|| {
                Error::InvalidArgument(format!("uniform schedule {n0}·2^{q} overflows"))
            }),
            StepSchedule::PerQ(ns) => ns.get(q as usize).copied().ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "per-power schedule covers q < {}, requested q = {q}",
                    ns.len()
                ))
            }),
        }
    }

    /// Step width `t·2^q / n(q, t)`.
    pub fn step_width(&self, q: u32) -> Result<f64> {
        let n = self.steps_for(q)?;
        Ok(self.time * 2f64.powi(q as i32) / n as f64)
    }

    /// `λ_p(q) = (2π·t·2^q / n(q, t))^p`.
    pub fn lambda(&self, q: u32) -> Result<f64> {
        Ok((2.0 * PI * self.step_width(q)?).powi(self.order.p() as i32))
    }
}

fn apply_rotation(m: &mut CMatrix, pauli: &PauliString, theta: f64) {
    // m ← (cos θ − i sin θ P) m
    if pauli.is_identity() {
        *m *= Complex64::from_polar(1.0, -theta);
        return;
    }
    let (cos, sin) = (theta.cos(), theta.sin());
    let dim = m.nrows();
    let src = m.clone();
    let x = pauli.x_mask() as usize;
    let row_phase: Vec<Complex64> = (0..dim)
        .map(|r| pauli.apply_to_basis((r ^ x) as u64).0 * Complex64::new(0.0, -sin))
        .collect();
    for col in 0..dim {
        for r in 0..dim {
            m[(r, col)] = src[(r, col)] * cos + row_phase[r] * src[(r ^ x, col)];
        }
    }
}

/// One Trotter step of width `dt`.
pub fn trotter_step(h: &LcuHamiltonian, order: TrotterOrder, dt: f64) -> DenseOperator {
    let dim = 1usize << h.n_qubits();
    let mut m = CMatrix::identity(dim, dim);
    let angle = 2.0 * PI * dt;
    match order {
        TrotterOrder::First => {
            for t in h.terms() {
                apply_rotation(&mut m, &t.pauli, angle * t.coefficient);
            }
        }
        TrotterOrder::Second => {
            for t in h.terms().iter().chain(h.terms().iter().rev()) {
                apply_rotation(&mut m, &t.pauli, 0.5 * angle * t.coefficient);
            }
        }
    }
    DenseOperator::new(m)
}

/// `S(U^{2^q}, p)`: the step of width `t·2^q/n` raised to the power `n`.
pub fn controlled_power_unitary(h: &LcuHamiltonian, plan: &TrotterPlan, q: u32) -> Result<DenseOperator> {
    let n = plan.steps_for(q)?;
    let step = trotter_step(h, plan.order(), plan.step_width(q)?);
    Ok(step.pow(n))
}

/// Exact `U^{2^q} = exp(−i·2π·t·2^q·H)`.
pub fn exact_power_unitary(h: &LcuHamiltonian, time: f64, q: u32) -> Result<DenseOperator> {
    crate::linalg::expm_hermitian(&to_dense(h)?, -2.0 * PI * time * 2f64.powi(q as i32))
}

/// First-order error operator `δH_p`.
#[derive(Debug, Clone)]
pub struct ErrorOperator {
    order: TrotterOrder,
    matrix: DenseOperator,
    symbolic: Option<PauliSum>,
}

impl ErrorOperator {
    fn from_symbolic(order: TrotterOrder, sum: PauliSum) -> Self {
        let sum = sum.pruned(1e-14);
        let matrix = DenseOperator::new(sum.to_dense()).hermitian_part();
        Self { order, matrix, symbolic: Some(sum) }
    }

    pub fn from_matrix(order: TrotterOrder, matrix: DenseOperator) -> Self {
        Self { order, matrix, symbolic: None }
    }

    pub fn order(&self) -> TrotterOrder {
        self.order
    }

    pub fn matrix(&self) -> &DenseOperator {
        &self.matrix
    }

    /// Pauli decomposition when built symbolically.
    pub fn symbolic(&self) -> Option<&PauliSum> {
        self.symbolic.as_ref()
    }

    /// Number of Pauli strings with a nonzero coefficient (0 when only the matrix is known).
    pub fn term_count(&self) -> usize {
        self.symbolic.as_ref().map_or(0, |s| s.count_nonzero(1e-14))
    }

    pub fn spectral_norm(&self) -> f64 {
        spectral_norm(&self.matrix)
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            order: self.order,
            matrix: self.matrix.scale(s),
            symbolic: self.symbolic.clone().map(|p| p.scaled(c(s))),
        }
    }
}

fn weighted(h: &LcuHamiltonian, index: usize) -> PauliSum {
    let t = h.terms()[index];
    PauliSum::from_term(c(t.coefficient), t.pauli)
}

/// `δH₁ = −i/2 Σ_{α<β} [γ_β H_β, γ_α H_α]`.
pub fn delta_h1(h: &LcuHamiltonian) -> ErrorOperator {
    let mut later = PauliSum::zero(h.n_qubits());
    let mut total = PauliSum::zero(h.n_qubits());
    for alpha in (0..h.len()).rev() {
        let term = weighted(h, alpha);
        total.add_scaled(&later.commutator(&term), c(1.0));
        later.add_scaled(&term, c(1.0));
    }
    ErrorOperator::from_symbolic(TrotterOrder::First, total.scaled(Complex64::new(0.0, -0.5)))
}

/// The per-`α` inner sums `Σ_{β>α} [γ_β H_β, γ_α H_α]`.
pub(crate) fn delta_h1_partials(h: &LcuHamiltonian) -> Vec<PauliSum> {
    let mut later = PauliSum::zero(h.n_qubits());
    let mut partials = vec![PauliSum::zero(h.n_qubits()); h.len()];
    for alpha in (0..h.len()).rev() {
        let term = weighted(h, alpha);
        partials[alpha] = later.commutator(&term);
        later.add_scaled(&term, c(1.0));
    }
    partials
}

/// Order-2 error operator from the mirrored triple-commutator sum
/// `−1/3 Σ_{α<β≤ν} (1 − δ_{νβ}/2) [γ_ν H_ν, [γ_β H_β, γ_α H_α]]` over the
/// 2M-term sequence `H_{M+i} = H_{M+1−i}`, with the mirrored coefficients
/// taken as the plain `γ` values.
///
/// With the half-angle step used by [`trotter_step`] the extracted order-2
/// operator equals this sum divided by 8; see [`delta_h2_half_weighted`].
pub fn delta_h2(h: &LcuHamiltonian) -> ErrorOperator {
    ErrorOperator::from_symbolic(TrotterOrder::Second, mirrored_triple_sum(h, 1.0))
}

/// The same sum with every one of the 2M coefficients halved, which is the
/// operator matching the symmetric half-angle step (`delta_h2 / 8`).
pub fn delta_h2_half_weighted(h: &LcuHamiltonian) -> ErrorOperator {
    ErrorOperator::from_symbolic(TrotterOrder::Second, mirrored_triple_sum(h, 0.5))
}

fn mirrored_triple_sum(h: &LcuHamiltonian, weight: f64) -> PauliSum {
    let m = h.len();
    let seq: Vec<PauliSum> = (0..2 * m)
        .map(|k| {
            let idx = if k < m { k } else { 2 * m - 1 - k };
            weighted(h, idx).scaled(c(weight))
        })
        .collect();
    let n = h.n_qubits();
    // suffix[b] = Σ_{ν>b} s_ν
    let mut suffix = vec![PauliSum::zero(n); 2 * m];
    for b in (0..2 * m - 1).rev() {
        let mut s = suffix[b + 1].clone();
        s.add_scaled(&seq[b + 1], c(1.0));
        suffix[b] = s;
    }
    let mut prefix = PauliSum::zero(n);
    let mut total = PauliSum::zero(n);
    for b in 0..2 * m {
        if b > 0 {
            // Σ_{α<β} [s_β, s_α] = [s_β, prefix]
            let inner = seq[b].commutator(&prefix);
            let mut outer = suffix[b].clone();
            outer.add_scaled(&seq[b], c(0.5));
            total.add_scaled(&outer.commutator(&inner), c(1.0));
        }
        prefix.add_scaled(&seq[b], c(1.0));
    }
    total.scaled(c(-1.0 / 3.0))
}

fn all_terms_commute(h: &LcuHamiltonian) -> bool {
    let terms = h.terms();
    terms
        .iter()
        .enumerate()
        .all(|(i, a)| terms[i + 1..].iter().all(|b| a.pauli.commutes_with(&b.pauli)))
}

/// Largest step angle `2π·dt·Σ|γ|` accepted for logarithm extraction.
fn ensure_branch_safe(h: &LcuHamiltonian, dt: f64) -> Result<()> {
    let angle = 2.0 * PI * dt.abs() * h.one_norm();
    if angle < PI {
        Ok(())
    } else {
        Err(Error::BranchUnsafe { angle })
    }
}

/// Effective Hamiltonian of a single step of width `dt`:
/// `H^S` with `exp(−i·2π·dt·H^S) = step`.
///
/// When every pair of terms commutes the step is exact and `H` itself is
/// returned, whatever the step angle.
pub fn effective_hamiltonian_for_width(h: &LcuHamiltonian, order: TrotterOrder, dt: f64) -> Result<DenseOperator> {
    if all_terms_commute(h) {
        return to_dense(h);
    }
    ensure_branch_safe(h, dt)?;
    let step = trotter_step(h, order, dt);
    logm_unitary_hermitian(&step, -2.0 * PI * dt)
}

/// `H^S(λ)` of the controlled power `q`. All `n` repetitions of one step
/// share its logarithm, so only the single step is used.
pub fn effective_hamiltonian(h: &LcuHamiltonian, plan: &TrotterPlan, q: u32) -> Result<DenseOperator> {
    effective_hamiltonian_for_width(h, plan.order(), plan.step_width(q)?)
}

/// Numerical estimate of `δH_p` from effective Hamiltonians at several step counts.
#[derive(Debug, Clone)]
pub struct FirstOrderExtraction {
    pub operator: ErrorOperator,
    pub lambdas: Vec<f64>,
    /// `‖(H^S(λ_k) − H)/λ_k − δH_est‖₂`.
    pub residuals: Vec<f64>,
    /// Log-log slope of the residuals against `λ` (`None` when they vanish).
    pub residual_slope: Option<f64>,
}

/// Fits `(H^S(λ) − H)/λ = δH + a·λ + b·λ²` over `q = 0` plans with `n ∈ steps`
/// (at least three distinct values, all branch-safe) and returns the intercept.
pub fn extract_first_order(
    h: &LcuHamiltonian,
    order: TrotterOrder,
    time: f64,
    steps: &[u64],
) -> Result<FirstOrderExtraction> {
    let mut ns: Vec<u64> = steps.to_vec();
    ns.sort_unstable();
    ns.dedup();
    if ns.len() < 3 || ns[0] == 0 {
        return Err(Error::InvalidArgument(
            "extraction needs at least three distinct positive step counts".into(),
        ));
    }
    let exact = to_dense(h)?;
    let samples = ns
        .iter()
        .map(|&n| {
            let plan = TrotterPlan::fixed(order, time, n)?;
            let lambda = plan.lambda(0)?;
            let hs = effective_hamiltonian(h, &plan, 0)?;
            Ok((lambda, hs.sub(&exact).scale(1.0 / lambda)))
        })
        .collect::<Result<Vec<_>>>()?;

    let k = samples.len();
    let degree = if k >= 4 { 3 } else { k };
    let design = DMatrix::from_fn(k, degree, |r, col| samples[r].0.powi(col as i32));
    let normal = design.transpose() * &design;
    let inv = normal
        .try_inverse()
        .ok_or_else(|| Error::InvalidArgument("degenerate step counts for extraction".into()))?;
    let weights: DVector<f64> = (inv * design.transpose()).row(0).transpose();
    let dim = exact.dim();
    let mut estimate = CMatrix::zeros(dim, dim);
    for (w, (_, d)) in weights.iter().zip(&samples) {
        estimate += d.matrix() * c(*w);
    }
    let estimate = DenseOperator::new(estimate).hermitian_part();

    let lambdas: Vec<f64> = samples.iter().map(|s| s.0).collect();
    let residuals: Vec<f64> = samples
        .iter()
        .map(|(_, d)| spectral_norm(&d.sub(&estimate)))
        .collect();
    let scale = spectral_norm(&estimate).max(1.0);
    let residual_slope = if residuals.iter().all(|&r| r <= 1e-10 * scale) {
        None
    } else {
        let slope = crate::fit::loglog_slope(&lambdas, &residuals);
        if !(0.5..=3.0).contains(&slope) {
            return Err(Error::NonConvergent { slope });
        }
        Some(slope)
    };
    Ok(FirstOrderExtraction {
        operator: ErrorOperator::from_matrix(order, estimate),
        lambdas,
        residuals,
        residual_slope,
    })
}

/// Least-squares comparison `a ≈ κ·b` in the Frobenius inner product.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OperatorComparison {
    /// `κ = ⟨b, a⟩ / ⟨b, b⟩`.
    pub ratio: f64,
    /// `‖a − κ·b‖₂ / ‖a‖₂`.
    pub relative_residual: f64,
    pub norm_a: f64,
    pub norm_b: f64,
}

pub fn compare_operators(a: &DenseOperator, b: &DenseOperator) -> OperatorComparison {
    let inner: Complex64 = b.matrix().iter().zip(a.matrix().iter()).map(|(x, y)| x.conj() * y).sum();
    let bb: f64 = b.matrix().iter().map(|x| x.norm_sqr()).sum();
    let ratio = if bb > 0.0 { inner.re / bb } else { 0.0 };
    let norm_a = spectral_norm(a);
    let resid = spectral_norm(&a.sub(&b.scale(ratio)));
    OperatorComparison {
        ratio,
        relative_residual: if norm_a > 0.0 { resid / norm_a } else { resid },
        norm_a,
        norm_b: spectral_norm(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::random_lcu;
    use crate::linalg::{expm_hermitian, max_abs};

    fn lcu(terms: &[(f64, &str)]) -> LcuHamiltonian {
        LcuHamiltonian::from_labels(terms).unwrap()
    }

    fn close(a: &DenseOperator, b: &DenseOperator) -> f64 {
        max_abs(&(a.matrix() - b.matrix()))
    }

    #[test]
    fn single_term_step_is_exact() {
        let h = lcu(&[(0.7, "XY")]);
        for dt in [0.01, 0.3, 2.5] {
            let exact = expm_hermitian(&to_dense(&h).unwrap(), -2.0 * PI * dt).unwrap();
            for order in [TrotterOrder::First, TrotterOrder::Second] {
                assert!(close(&trotter_step(&h, order, dt), &exact) < 1e-13);
            }
        }
    }

    #[test]
    fn commuting_terms_are_exact() {
        let h = lcu(&[(0.4, "ZI"), (-0.9, "IZ"), (0.2, "II")]);
        let exact = expm_hermitian(&to_dense(&h).unwrap(), -2.0 * PI * 0.37).unwrap();
        assert!(close(&trotter_step(&h, TrotterOrder::First, 0.37), &exact) < 1e-13);
    }

    #[test]
    fn uniform_schedule_shares_the_step() {
        let h = random_lcu(2, 4, 3);
        let plan = TrotterPlan::uniform(TrotterOrder::First, 0.3, 3).unwrap();
        for q in 0..4 {
            let a = controlled_power_unitary(&h, &plan, q + 1).unwrap();
            let b = controlled_power_unitary(&h, &plan, q).unwrap();
            assert!(close(&a, &b.mul(&b)) < 1e-12);
        }
    }

    #[test]
    fn fixed_single_step_single_term_is_exact_power() {
        let h = lcu(&[(0.5, "Z")]);
        let plan = TrotterPlan::fixed(TrotterOrder::First, 0.4, 1).unwrap();
        let s = controlled_power_unitary(&h, &plan, 0).unwrap();
        let u = exact_power_unitary(&h, 0.4, 0).unwrap();
        assert!(close(&s, &u) < 1e-14);
    }

    #[test]
    fn plan_range_errors() {
        let plan = TrotterPlan::per_q(TrotterOrder::First, 0.3, vec![1, 2]).unwrap();
        assert!(plan.steps_for(2).is_err());
        let plan = TrotterPlan::uniform(TrotterOrder::First, 0.3, 1 << 20).unwrap();
        assert!(plan.steps_for(50).is_err());
        assert!(plan.steps_for(63).is_err());
        assert!(TrotterPlan::fixed(TrotterOrder::First, 0.3, 0).is_err());
    }

    #[test]
    fn delta_h1_pauli_examples() {
        // −i/2 [Z, X] = Y
        let d = delta_h1(&lcu(&[(1.0, "X"), (1.0, "Z")]));
        let y = to_dense(&lcu(&[(1.0, "Y")])).unwrap();
        assert!(close(d.matrix(), &y) < 1e-15);
        assert!((d.spectral_norm() - 1.0).abs() < 1e-14);

        // {X, Y, Z}: Y − Z − X
        let d = delta_h1(&lcu(&[(1.0, "X"), (1.0, "Y"), (1.0, "Z")]));
        let expected = to_dense(&lcu(&[(1.0, "Y"), (-1.0, "Z"), (-1.0, "X")])).unwrap();
        assert!(close(d.matrix(), &expected) < 1e-15);
        assert!((d.spectral_norm() - 3f64.sqrt()).abs() < 1e-13);
        assert_eq!(d.term_count(), 3);
    }

    #[test]
    fn delta_h1_vanishes_for_commuting_sets() {
        assert!(delta_h1(&lcu(&[(0.3, "ZZ")])).matrix().max_abs() == 0.0);
        let d = delta_h1(&lcu(&[(0.3, "ZZ"), (0.1, "XX"), (0.2, "YY")]));
        assert_eq!(d.term_count(), 0);
        assert!(delta_h2(&lcu(&[(0.3, "ZZ"), (0.1, "XX")])).matrix().max_abs() == 0.0);
    }

    #[test]
    fn reversing_order_flips_delta_h1() {
        for seed in 0..5 {
            let h = random_lcu(2, 4, seed);
            let a = delta_h1(&h);
            let b = delta_h1(&h.reversed());
            assert!(close(a.matrix(), &b.matrix().scale(-1.0)) < 1e-14);
        }
    }

    #[test]
    fn delta_h2_two_term_closed_form() {
        // Verbatim sum over (X, Z, Z, X): −8/3·X + 4/3·Z
        let d = delta_h2(&lcu(&[(1.0, "X"), (1.0, "Z")]));
        let expected = to_dense(&lcu(&[(-8.0 / 3.0, "X"), (4.0 / 3.0, "Z")])).unwrap();
        assert!(close(d.matrix(), &expected) < 1e-14);
        assert!(d.matrix().is_hermitian());
    }

    #[test]
    fn effective_hamiltonian_of_single_term_is_exact() {
        let h = lcu(&[(-0.8, "ZX")]);
        let plan = TrotterPlan::fixed(TrotterOrder::First, 0.3, 2).unwrap();
        let hs = effective_hamiltonian(&h, &plan, 0).unwrap();
        assert!(close(&hs, &to_dense(&h).unwrap()) < 1e-12);
    }

    #[test]
    fn effective_hamiltonian_rejects_wide_steps() {
        let h = lcu(&[(1.0, "X"), (1.0, "Z")]);
        let plan = TrotterPlan::fixed(TrotterOrder::First, 0.3, 1).unwrap();
        assert!(matches!(effective_hamiltonian(&h, &plan, 0), Err(Error::BranchUnsafe { .. })));
        // product construction itself is allowed
        assert!(controlled_power_unitary(&h, &plan, 0).unwrap().is_unitary());
    }

    #[test]
    fn extraction_matches_delta_h1() {
        let h = lcu(&[(1.0, "X"), (1.0, "Z")]);
        let ex = extract_first_order(&h, TrotterOrder::First, 0.2, &[64, 128, 256]).unwrap();
        assert!(close(ex.operator.matrix(), delta_h1(&h).matrix()) < 1e-4);
        let slope = ex.residual_slope.unwrap();
        assert!((0.5..=3.0).contains(&slope));
    }

    #[test]
    fn extraction_of_single_term_is_zero() {
        let h = lcu(&[(0.6, "Y")]);
        let ex = extract_first_order(&h, TrotterOrder::First, 0.3, &[8, 16, 32]).unwrap();
        assert!(ex.operator.matrix().max_abs() < 1e-9);
        assert!(ex.residual_slope.is_none());
        assert!(extract_first_order(&h, TrotterOrder::First, 0.3, &[8, 16]).is_err());
    }

    #[test]
    fn order_two_extraction_is_one_eighth_of_verbatim_sum() {
        let h = lcu(&[(1.0, "X"), (1.0, "Z")]);
        let ex = extract_first_order(&h, TrotterOrder::Second, 0.2, &[32, 64, 128, 256]).unwrap();
        let cmp = compare_operators(ex.operator.matrix(), delta_h2(&h).matrix());
        assert!((cmp.ratio - 0.125).abs() < 1e-5, "{cmp:?}");
        assert!(close(ex.operator.matrix(), delta_h2_half_weighted(&h).matrix()) < 1e-5);
    }
}
