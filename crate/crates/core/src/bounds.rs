//! Precision conditions on energy and output state, and the Trotter
//! resource counts they imply.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::{to_dense, IdentityConvention, LcuHamiltonian};
use crate::linalg::{diagonalize, spectral_norm, CVector, DenseOperator, Spectrum};
use crate::pauli::PauliSum;
use crate::qpe::trace_distance;
use crate::trotter::{
    controlled_power_unitary, delta_h1_partials, effective_hamiltonian, exact_power_unitary, ErrorOperator,
    TrotterOrder, TrotterPlan,
};

/// Chemical precision, 1.6 mHa.
pub const CHEMICAL_PRECISION: f64 = 1.6e-3;
/// Multiplicative slack applied to asymptotic (`≲`) conditions.
pub const DEFAULT_SLACK: f64 = 1.25;
/// Second moments below this are treated as zero.
pub const SECOND_MOMENT_FLOOR: f64 = 1e-14;

/// Energy and optional trace-distance targets for state `state_index`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrecisionTarget {
    pub eps_ch: f64,
    pub alpha_tar: Option<f64>,
    pub state_index: usize,
}

impl Default for PrecisionTarget {
    fn default() -> Self {
        Self { eps_ch: CHEMICAL_PRECISION, alpha_tar: None, state_index: 0 }
    }
}

impl PrecisionTarget {
    pub fn new(eps_ch: f64, alpha_tar: Option<f64>, state_index: usize) -> Result<Self> {
        if !(eps_ch.is_finite() && eps_ch > 0.0) {
            return Err(Error::InvalidArgument(format!("eps_ch must be positive, got {eps_ch}")));
        }
        if let Some(a) = alpha_tar {
            if !(a > 0.0 && a <= 1.0) {
                return Err(Error::InvalidArgument(format!("alpha_tar must lie in (0, 1], got {a}")));
            }
        }
        Ok(Self { eps_ch, alpha_tar, state_index })
    }
}

/// QPE time `t = α / Σ|γ|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TimeChoice {
    pub t: f64,
    pub alpha: f64,
    /// The `Σ|γ|` that set `t`.
    pub one_norm: f64,
    /// `t · Σ_all|γ| < 1`, so `|E₀t| < 1` and `⌈E₀t⌉ = 0` whenever `E₀ ≤ 0`.
    pub ceil_e0t_zero_guaranteed: bool,
}

pub fn choose_time(h: &LcuHamiltonian, alpha: f64, convention: IdentityConvention) -> Result<TimeChoice> {
    if !(0.5..=1.0).contains(&alpha) {
        return Err(Error::InvalidArgument(format!("alpha must lie in [1/2, 1], got {alpha}")));
    }
    let one_norm = h.one_norm_with(convention);
    if one_norm == 0.0 {
        return Err(Error::InvalidArgument("Σ|γ| is zero; time is undefined".into()));
    }
    let t = alpha / one_norm;
    Ok(TimeChoice {
        t,
        alpha,
        one_norm,
        ceil_e0t_zero_guaranteed: t * h.one_norm() < 1.0,
    })
}

/// `N_min(t) = ⌈log₂(1/(tε))⌉ − 1`, clamped to at least one qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PhaseQubitCount {
    pub value: u32,
    /// The formula value before clamping.
    pub formula: i64,
}

impl PhaseQubitCount {
    pub fn clamped(&self) -> bool {
        self.formula < 1
    }
}

pub fn n_phase_qubits_min(t: f64, eps: f64) -> Result<PhaseQubitCount> {
    if !(t > 0.0 && eps > 0.0) {
        return Err(Error::InvalidArgument(format!("t and eps must be positive, got t={t}, eps={eps}")));
    }
    let formula = (1.0 / (t * eps)).log2().ceil() as i64 - 1;
    Ok(PhaseQubitCount { value: formula.max(1) as u32, formula })
}

/// `‖δH‖₂`, `√⟨ψ_i|δH²|ψ_i⟩` and `|⟨ψ_i|δH|ψ_i⟩|`, in decreasing order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CVariants {
    pub spectral: f64,
    pub variance: f64,
    pub first_order: f64,
}

/// First and second moments of `δH` in `psi`.
fn moments(delta: &DenseOperator, psi: &CVector) -> (f64, f64) {
    let applied = delta.apply(psi);
    let mean = psi.dotc(&applied).re;
    let second = applied.norm_squared();
    (mean, second)
}

pub fn c_variants(delta: &ErrorOperator, spectrum: &Spectrum, i: usize) -> Result<CVariants> {
    if delta.matrix().dim() != spectrum.dim() {
        return Err(Error::DimensionMismatch { expected: spectrum.dim(), found: delta.matrix().dim() });
    }
    if i >= spectrum.dim() {
        return Err(Error::InvalidArgument(format!("state index {i} out of range")));
    }
    Ok(c_variants_in(delta.matrix(), &spectrum.state(i)))
}

pub fn c_variants_in(delta: &DenseOperator, psi: &CVector) -> CVariants {
    let (mean, second) = moments(delta, psi);
    CVariants {
        spectral: spectral_norm(delta),
        variance: second.sqrt(),
        first_order: mean.abs(),
    }
}

/// `C′₁ = ½ Σ_α ‖Σ_{β>α} [γ_β H_β, γ_α H_α]‖₂`; zero for a single term.
pub fn childs_c1(h: &LcuHamiltonian) -> f64 {
    0.5 * delta_h1_partials(h)
        .iter()
        .filter(|p| !p.is_zero(1e-15))
        .map(|p: &PauliSum| spectral_norm(&DenseOperator::new(p.to_dense())))
        .sum::<f64>()
}

/// `A = √(1 − ⟨δH⟩²/⟨δH²⟩) ∈ [0, 1]`.
pub fn a_coefficient(delta: &DenseOperator, psi: &CVector) -> Result<f64> {
    let (mean, second) = moments(delta, psi);
    if second <= SECOND_MOMENT_FLOOR {
        return Err(Error::VanishingSecondMoment(second));
    }
    Ok((1.0 - mean * mean / second).clamp(0.0, 1.0).sqrt())
}

/// Combined precision `ε` and the implied trace-distance level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EpsilonChoice {
    pub eps: f64,
    /// `α_ch = (A/ΔE)·ε_ch`: the trace-distance precision implied by `ε_ch` alone.
    pub alpha_ch: f64,
}

/// `ε = min(ε_ch, (ΔE/A)·α_tar)`.
pub fn epsilon_combined(target: &PrecisionTarget, gap: f64, a_i: f64) -> Result<EpsilonChoice> {
    if !(gap > 0.0) {
        return Err(Error::InvalidArgument(format!("gap must be positive, got {gap}")));
    }
    if !(0.0..=1.0).contains(&a_i) {
        return Err(Error::InvalidArgument(format!("A must lie in [0, 1], got {a_i}")));
    }
    let alpha_ch = a_i / gap * target.eps_ch;
    let eps = match target.alpha_tar {
        Some(alpha) if a_i > 0.0 => target.eps_ch.min(gap / a_i * alpha),
        _ => target.eps_ch,
    };
    Ok(EpsilonChoice { eps, alpha_ch })
}

/// `𝒞_p`, `N_min` and the per-power / total Trotter step counts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrotterResources {
    pub order: u32,
    pub c_p: f64,
    pub eps: f64,
    pub script_c: f64,
    pub n_min_phase: u32,
    pub extra_qubits: u32,
    pub n_min_tot: u64,
}

impl TrotterResources {
    /// `2^q / 2^{N_min} · 𝒞_p` before rounding.
    pub fn n_min_unrounded(&self, q: u32) -> f64 {
        2f64.powi(q as i32 - self.n_min_phase as i32) * self.script_c
    }

    /// `n_min(q, t) = ⌈2^q/2^{N_min}·𝒞_p⌉`, at least 1.
    pub fn n_min_of(&self, q: u32) -> u64 {
        ceil_at_least_one(self.n_min_unrounded(q))
    }

    /// Per-power schedule `n(q) = n_min(q)` for `q < n_phase`.
    pub fn plan(&self, time: f64, n_phase: u32) -> Result<TrotterPlan> {
        let order = TrotterOrder::try_from(self.order as u8)?;
        TrotterPlan::per_q(order, time, (0..n_phase).map(|q| self.n_min_of(q)).collect())
    }
}

fn ceil_at_least_one(x: f64) -> u64 {
    if !x.is_finite() || x >= u64::MAX as f64 {
        return u64::MAX;
    }
    (x.ceil() as u64).max(1)
}

pub fn trotter_resources(c_p: f64, order: TrotterOrder, t: f64, eps: f64, extra_qubits: u32) -> Result<TrotterResources> {
    if !(c_p >= 0.0 && c_p.is_finite()) {
        return Err(Error::InvalidArgument(format!("C_p must be nonnegative, got {c_p}")));
    }
    let p = order.p() as i32;
    let script_c = PI * (c_p / eps.powi(p + 1)).powf(1.0 / p as f64);
    let n_min_phase = n_phase_qubits_min(t, eps)?.value;
    Ok(TrotterResources {
        order: order.p(),
        c_p,
        eps,
        script_c,
        n_min_phase,
        extra_qubits,
        n_min_tot: ceil_at_least_one(2f64.powi(extra_qubits as i32) * script_c),
    })
}

/// Which `C_p` drives the step counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CChoice {
    /// `‖δH_p‖₂` (unitary & energy & state).
    #[default]
    Spectral,
    /// `√⟨ψ_i|δH_p²|ψ_i⟩` (energy & state).
    Variance,
    /// `|⟨ψ_i|δH_p|ψ_i⟩|` (energy only).
    FirstOrder,
    /// `C′₁` (order 1 only).
    Childs,
}

/// Every bound quantity for one Hamiltonian, order and state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub order: u32,
    pub state_index: usize,
    pub c_spectral: f64,
    pub c_variance: f64,
    pub c_first_order: f64,
    /// Only defined for order 1.
    pub c_childs: Option<f64>,
    /// `None` when `⟨ψ_i|δH²|ψ_i⟩` vanishes.
    pub a_i: Option<f64>,
    pub gap: f64,
    pub eps_combined: f64,
    pub alpha_ch: f64,
    pub c_choice: CChoice,
    pub resources: TrotterResources,
}

impl BoundReport {
    pub fn c_selected(&self) -> f64 {
        self.resources.c_p
    }
}

pub fn bound_report(
    h: &LcuHamiltonian,
    delta: &ErrorOperator,
    spectrum: &Spectrum,
    t: f64,
    target: &PrecisionTarget,
    choice: CChoice,
    extra_qubits: u32,
) -> Result<BoundReport> {
    let i = target.state_index;
    let cv = c_variants(delta, spectrum, i)?;
    let gap = spectrum.gap_of(i)?;
    let a_i = a_coefficient(delta.matrix(), &spectrum.state(i)).ok();
    let eps = epsilon_combined(target, gap, a_i.unwrap_or(0.0))?;
    let order = delta.order();
    let c_childs = (order == TrotterOrder::First).then(|| childs_c1(h));
    let c_p = match choice {
        CChoice::Spectral => cv.spectral,
        CChoice::Variance => cv.variance,
        CChoice::FirstOrder => cv.first_order,
        CChoice::Childs => c_childs.ok_or_else(|| {
            Error::InvalidArgument("C′_p is only available for order 1".into())
        })?,
    };
    let resources = trotter_resources(c_p, order, t, eps.eps, extra_qubits)?;
    Ok(BoundReport {
        order: order.p(),
        state_index: i,
        c_spectral: cv.spectral,
        c_variance: cv.variance,
        c_first_order: cv.first_order,
        c_childs,
        a_i,
        gap,
        eps_combined: eps.eps,
        alpha_ch: eps.alpha_ch,
        c_choice: choice,
        resources,
    })
}

/// One checked inequality `measured ≤ bound`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConditionCheck {
    pub measured: f64,
    pub bound: f64,
    pub holds: bool,
    /// `bound / measured` (∞ when `measured` is zero); at least 1 iff the condition holds.
    pub slack: f64,
}

impl ConditionCheck {
    fn new(measured: f64, bound: f64) -> Self {
        let slack = if measured > 0.0 { bound / measured } else { f64::INFINITY };
        Self { measured, bound, holds: measured <= bound, slack }
    }
}

/// Evaluated precision conditions for one controlled power.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionLedger {
    pub q: u32,
    pub steps: u64,
    pub lambda: f64,
    pub eps: f64,
    pub slack_factor: f64,
    /// `‖λδH‖₂ ≤ ε` (unitary & energy & state).
    pub unified: ConditionCheck,
    /// `√⟨(λδH)²⟩ ≤ ε` (energy & state).
    pub tighter: ConditionCheck,
    /// `|⟨λδH⟩| ≲ ε` (energy only).
    pub energy_only: ConditionCheck,
    /// `‖U^{2^q} − S(U^{2^q})‖₂ / (2πt2^q) ≲ ‖λδH‖₂`.
    pub unitary_first_order: ConditionCheck,
    /// `|E_i^S − E_i| ≲ √⟨(λδH)²⟩`.
    pub energy_first_order: ConditionCheck,
    /// `(ΔE_i/A_i)·T(ψ_i, ψ_i^S) ≲ √⟨(λδH)²⟩`; `None` when `A_i` is undefined or zero.
    pub state_first_order: Option<ConditionCheck>,
    /// `‖U^{2^q} − S(U^{2^q})‖₂ ≤ 2πt2^q‖H − H^S‖₂` (exact, 1e-8 absolute slack).
    pub unitary_exact: ConditionCheck,
    pub energy_error: f64,
    pub trace_distance: f64,
}

impl ConditionLedger {
    /// Whether the measured energy and rescaled state errors both meet `ε`.
    pub fn precision_met(&self) -> bool {
        self.energy_error <= self.eps
            && self.state_first_order.map_or(self.trace_distance == 0.0, |c| c.measured <= self.eps)
    }
}

pub fn verify_conditions(
    h: &LcuHamiltonian,
    plan: &TrotterPlan,
    q: u32,
    spectrum: &Spectrum,
    delta: &ErrorOperator,
    target: &PrecisionTarget,
    slack_factor: f64,
) -> Result<ConditionLedger> {
    let i = target.state_index;
    let gap = spectrum.gap_of(i)?;
    let psi = spectrum.state(i);
    let lambda = plan.lambda(q)?;
    let cv = c_variants(delta, spectrum, i)?;
    let a_i = a_coefficient(delta.matrix(), &psi).ok().filter(|&a| a > 0.0);
    let eps = epsilon_combined(target, gap, a_i.unwrap_or(0.0))?.eps;

    let exact = to_dense(h)?;
    let effective = effective_hamiltonian(h, plan, q)?;
    let eff_spectrum = diagonalize(&effective)?;
    let energy_error = (eff_spectrum.energy(i) - spectrum.energy(i)).abs();
    let trace = trace_distance(&psi, &eff_spectrum.state(i))?;

    let power = 2f64.powi(q as i32);
    let rescale = 2.0 * PI * plan.time() * power;
    let u = exact_power_unitary(h, plan.time(), q)?;
    let s = controlled_power_unitary(h, plan, q)?;
    let unitary_diff = spectral_norm(&u.sub(&s));
    let h_diff = spectral_norm(&exact.sub(&effective));

    Ok(ConditionLedger {
        q,
        steps: plan.steps_for(q)?,
        lambda,
        eps,
        slack_factor,
        unified: ConditionCheck::new(lambda * cv.spectral, eps),
        tighter: ConditionCheck::new(lambda * cv.variance, eps),
        energy_only: ConditionCheck::new(lambda * cv.first_order, eps * slack_factor),
        unitary_first_order: ConditionCheck::new(unitary_diff / rescale, lambda * cv.spectral * slack_factor),
        energy_first_order: ConditionCheck::new(energy_error, lambda * cv.variance * slack_factor),
        state_first_order: a_i
            .map(|a| ConditionCheck::new(gap / a * trace, lambda * cv.variance * slack_factor)),
        unitary_exact: ConditionCheck::new(unitary_diff, rescale * h_diff + 1e-8),
        energy_error,
        trace_distance: trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;
    use crate::trotter::delta_h1;

    fn lcu(terms: &[(f64, &str)]) -> LcuHamiltonian {
        LcuHamiltonian::from_labels(terms).unwrap()
    }

    #[test]
    fn time_choice_examples() {
        let h = lcu(&[(0.6, "X"), (-0.4, "Z")]);
        assert_eq!(choose_time(&h, 0.5, IdentityConvention::Include).unwrap().t, 0.5);
        let h = lcu(&[(2.5, "Z")]);
        assert!((choose_time(&h, 1.0, IdentityConvention::Include).unwrap().t - 0.4).abs() < 1e-15);
        assert!(choose_time(&h, 0.4, IdentityConvention::Include).is_err());
        let zero = lcu(&[(0.0, "Z")]);
        assert!(choose_time(&zero, 0.5, IdentityConvention::Include).is_err());
    }

    #[test]
    fn phase_qubit_examples() {
        let n = n_phase_qubits_min(1.0, 0.5).unwrap();
        assert_eq!((n.value, n.formula), (1, 0));
        assert!(n.clamped());
        assert_eq!(n_phase_qubits_min(0.1, 1e-3).unwrap().value, 13);
        assert_eq!(n_phase_qubits_min(0.215149, 1.6e-3).unwrap().value, 11);
    }

    #[test]
    fn c_variant_examples() {
        let z = to_dense(&lcu(&[(1.0, "Z")])).unwrap();
        let x = to_dense(&lcu(&[(1.0, "X")])).unwrap();
        let zero = CVector::from_vec(vec![c(1.0), c(0.0)]);
        assert_eq!(c_variants_in(&z, &zero), CVariants { spectral: 1.0, variance: 1.0, first_order: 1.0 });
        let cv = c_variants_in(&x, &zero);
        assert!((cv.spectral - 1.0).abs() < 1e-14 && cv.variance == 1.0 && cv.first_order == 0.0);
    }

    #[test]
    fn a_coefficient_examples() {
        let z = to_dense(&lcu(&[(1.0, "Z")])).unwrap();
        let x = to_dense(&lcu(&[(1.0, "X")])).unwrap();
        let zero = CVector::from_vec(vec![c(1.0), c(0.0)]);
        assert_eq!(a_coefficient(&z, &zero).unwrap(), 0.0);
        assert_eq!(a_coefficient(&x, &zero).unwrap(), 1.0);
        let null = DenseOperator::zeros(2);
        assert!(matches!(a_coefficient(&null, &zero), Err(Error::VanishingSecondMoment(_))));
    }

    #[test]
    fn childs_examples() {
        assert_eq!(childs_c1(&lcu(&[(1.0, "X")])), 0.0);
        assert!((childs_c1(&lcu(&[(1.0, "X"), (1.0, "Z")])) - 1.0).abs() < 1e-14);
        let three = lcu(&[(1.0, "X"), (1.0, "Y"), (1.0, "Z")]);
        let expected = (2.0 * 2f64.sqrt() + 2.0) / 2.0;
        assert!((childs_c1(&three) - expected).abs() < 1e-13);
        assert!(childs_c1(&three) > delta_h1(&three).spectral_norm());
    }

    #[test]
    fn epsilon_examples() {
        let t = PrecisionTarget::default();
        let e = epsilon_combined(&t, 0.702985, 1.0).unwrap();
        assert_eq!(e.eps, 1.6e-3);
        assert!((e.alpha_ch - 2.276e-3).abs() < 1e-6 && e.alpha_ch <= 2.3e-3);
        let t = PrecisionTarget::new(1.6e-3, Some(1e-3), 0).unwrap();
        assert!((epsilon_combined(&t, 1.0, 1.0).unwrap().eps - 1e-3).abs() < 1e-15);
        assert!((epsilon_combined(&t, 0.702985, 1.0).unwrap().eps - 7.02985e-4).abs() < 1e-12);
        assert!(epsilon_combined(&t, 0.0, 1.0).is_err());
        assert!(PrecisionTarget::new(1e-3, Some(1.5), 0).is_err());
    }

    #[test]
    fn resource_examples() {
        let r = trotter_resources(0.0, TrotterOrder::First, 0.2, 1.6e-3, 0).unwrap();
        assert!((0..12).all(|q| r.n_min_of(q) == 1));
        assert_eq!(r.n_min_tot, 1);

        let r = trotter_resources(0.052420, TrotterOrder::First, 0.215149, 1.6e-3, 0).unwrap();
        assert_eq!(r.n_min_phase, 11);
        assert!((r.script_c - 64329.0183).abs() < 1e-3);
        assert_eq!(r.n_min_tot, 64330);
        assert_eq!(r.n_min_of(0), 32);
        assert!((r.n_min_unrounded(0) - 31.41).abs() < 0.01);
        assert_eq!(r.n_min_of(11), r.n_min_tot);
        assert!((0..20).all(|q| r.n_min_of(q + 1) >= r.n_min_of(q)));
        let r1 = trotter_resources(0.052420, TrotterOrder::First, 0.05, 1.6e-3, 2).unwrap();
        assert_eq!(r1.n_min_tot, ((4.0 * r.script_c).ceil()) as u64);
    }

    #[test]
    fn single_term_ledger_is_trivial() {
        let h = lcu(&[(0.7, "Z")]);
        let spectrum = diagonalize(&to_dense(&h).unwrap()).unwrap();
        let plan = TrotterPlan::fixed(TrotterOrder::First, 0.3, 4).unwrap();
        let led = verify_conditions(&h, &plan, 0, &spectrum, &delta_h1(&h), &PrecisionTarget::default(), DEFAULT_SLACK)
            .unwrap();
        assert!(led.unified.holds && led.tighter.holds && led.energy_only.holds);
        assert!(led.unitary_first_order.measured < 1e-12 && led.energy_error < 1e-12);
        assert!(led.trace_distance < 1e-7);
        assert!(led.unitary_exact.holds);
    }

    #[test]
    fn degenerate_ground_state_is_rejected() {
        let h = lcu(&[(1.0, "ZI"), (0.1, "XX")]);
        let h2 = lcu(&[(1.0, "ZI")]);
        let spectrum = diagonalize(&to_dense(&h2).unwrap()).unwrap();
        let plan = TrotterPlan::fixed(TrotterOrder::First, 0.3, 4).unwrap();
        let r = verify_conditions(&h, &plan, 0, &spectrum, &delta_h1(&h), &PrecisionTarget::default(), 1.25);
        assert!(matches!(r, Err(Error::Degenerate { .. })));
    }
}
