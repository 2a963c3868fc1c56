//! Reports behind the `qpe-precision` subcommands: fixture analysis, bound
//! ledgers, Trotter and QPE sweeps, single simulations.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{
    bound_report, choose_time, verify_conditions, BoundReport, CChoice, ConditionLedger, PrecisionTarget,
    TimeChoice, DEFAULT_SLACK,
};
use crate::error::{Error, Result};
use crate::fit::loglog_slope;
use crate::hamiltonian::{to_dense, IdentityConvention, LcuHamiltonian};
use crate::linalg::{diagonalize, spectral_norm, DenseOperator, InitialState, Spectrum};
use crate::qpe::{analytic_qpe, simulate_qpe, summarize, trace_distance, ControlledPowers, QpeConfig, QpeOutcome};
use crate::trotter::{
    compare_operators, controlled_power_unitary, delta_h1, delta_h2, delta_h2_half_weighted, effective_hamiltonian,
    exact_power_unitary, extract_first_order, ErrorOperator, OperatorComparison, TrotterOrder, TrotterPlan,
};

/// Header comment of `sweep-trotter` CSV files.
pub const TROTTER_SWEEP_SCHEMA: &str = "# schema: trotter-sweep v1";
/// Header comment of `sweep-qpe` CSV files.
pub const QPE_SWEEP_SCHEMA: &str = "# schema: qpe-sweep v1";

/// Settings shared by every subcommand.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    /// `α` in `t = α/Σ|γ|`.
    pub alpha: f64,
    pub target: PrecisionTarget,
    pub order: TrotterOrder,
    pub convention: IdentityConvention,
    pub c_choice: CChoice,
    /// `a` in `N = N_min + a`, used for `n_min-tot`.
    pub extra_qubits: u32,
    pub slack: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            alpha: 0.5,
            target: PrecisionTarget::default(),
            order: TrotterOrder::First,
            convention: IdentityConvention::Exclude,
            c_choice: CChoice::Spectral,
            extra_qubits: 0,
            slack: DEFAULT_SLACK,
        }
    }
}

/// Everything derived once per Hamiltonian and configuration.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub hamiltonian: LcuHamiltonian,
    pub config: RunConfig,
    pub spectrum: Spectrum,
    pub time: TimeChoice,
    pub ceil_e0t: i64,
    pub init: InitialState,
    /// `δH₁`, or the half-weighted `δH₂` for order 2.
    pub delta: ErrorOperator,
    pub bounds: BoundReport,
}

impl Analysis {
    pub fn new(h: &LcuHamiltonian, config: &RunConfig) -> Result<Self> {
        let spectrum = diagonalize(&to_dense(h)?)?;
        let time = choose_time(h, config.alpha, config.convention)?;
        let ceil_e0t = (spectrum.energy(0) * time.t).ceil() as i64;
        let dim = spectrum.dim();
        let init = InitialState::basis(dim, h.reference_state().unwrap_or_else(|| h.lowest_diagonal_state()))?;
        let delta = match config.order {
            TrotterOrder::First => delta_h1(h),
            TrotterOrder::Second => delta_h2_half_weighted(h),
        };
        let bounds = bound_report(h, &delta, &spectrum, time.t, &config.target, config.c_choice, config.extra_qubits)?;
        Ok(Self { hamiltonian: h.clone(), config: config.clone(), spectrum, time, ceil_e0t, init, delta, bounds })
    }

    pub fn t(&self) -> f64 {
        self.time.t
    }

    pub fn gap(&self) -> f64 {
        self.bounds.gap
    }

    /// `ΔE_i/A_i`, the factor turning a trace distance into an energy.
    pub fn trace_rescale(&self) -> Option<f64> {
        self.bounds.a_i.filter(|&a| a > 0.0).map(|a| self.gap() / a)
    }

    pub fn qpe_config(&self, n_phase: u32) -> Result<QpeConfig> {
        let extra = n_phase.saturating_sub(self.bounds.resources.n_min_phase);
        QpeConfig::new(n_phase, self.t(), extra, self.ceil_e0t)
    }
}

/// The fixture summary table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryReport {
    pub order: u32,
    pub n_qubits: usize,
    pub n_terms: usize,
    pub e_init: f64,
    pub e0: f64,
    pub delta_e0: f64,
    pub one_norm: f64,
    pub alpha: f64,
    pub t: f64,
    pub ceil_e0t: i64,
    pub n_min: u32,
    /// `None` when `⟨ψ₀|δH²|ψ₀⟩` vanishes.
    pub a0: Option<f64>,
    pub delta_h_norm: f64,
    pub variance_root: f64,
    pub first_order_mean: f64,
    pub c_prime: Option<f64>,
    pub eps: f64,
    pub alpha_ch: f64,
    pub script_c: f64,
    pub n_min_q0: u64,
    pub n_min_q0_unrounded: f64,
    pub n_min_tot: u64,
}

impl SummaryReport {
    /// Plain-text table for the console.
    pub fn render(&self) -> String {
        let opt = |v: Option<f64>| v.map_or("n/a".to_string(), |x| format!("{x:.6}"));
        let rows: Vec<(&str, String)> = vec![
            ("E_init (Ha)", format!("{:.6}", self.e_init)),
            ("E0 (Ha)", format!("{:.6}", self.e0)),
            ("ΔE0 (Ha)", format!("{:.6}", self.delta_e0)),
            ("Σ|γ| (Ha)", format!("{:.6}", self.one_norm)),
            ("t (Ha⁻¹)", format!("{:.6}", self.t)),
            ("⌈E0 t⌉", self.ceil_e0t.to_string()),
            ("N_min", self.n_min.to_string()),
            ("A0", opt(self.a0)),
            (if self.order == 1 { "‖δH₁‖₂ (Ha²)" } else { "‖δH₂‖₂ (Ha³)" }, format!("{:.6}", self.delta_h_norm)),
            ("√⟨ψ0|δH²|ψ0⟩", format!("{:.6}", self.variance_root)),
            ("|⟨ψ0|δH|ψ0⟩|", format!("{:.6}", self.first_order_mean)),
            ("C′₁ (Ha²)", opt(self.c_prime)),
            ("ε (Ha)", format!("{:.3e}", self.eps)),
            ("α_ch", format!("{:.4e}", self.alpha_ch)),
            ("𝒞", format!("{:.1}", self.script_c)),
            ("n_min(0,t)", format!("{} ({:.2})", self.n_min_q0, self.n_min_q0_unrounded)),
            ("n_min-tot", self.n_min_tot.to_string()),
        ];
        let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            let pad = width - k.chars().count();
            let _ = writeln!(out, "{k}{}  {v}", " ".repeat(pad));
        }
        out
    }
}

pub fn cmd_analyze(h: &LcuHamiltonian, config: &RunConfig) -> Result<SummaryReport> {
    let a = Analysis::new(h, config)?;
    Ok(table_from(&a))
}

pub fn table_from(a: &Analysis) -> SummaryReport {
    let e_init = to_dense(&a.hamiltonian)
        .map(|d| d.expectation(a.init.amplitudes()).re)
        .unwrap_or(f64::NAN);
    let b = &a.bounds;
    SummaryReport {
        order: b.order,
        n_qubits: a.hamiltonian.n_qubits(),
        n_terms: a.hamiltonian.len(),
        e_init,
        e0: a.spectrum.energy(b.state_index),
        delta_e0: b.gap,
        one_norm: a.time.one_norm,
        alpha: a.time.alpha,
        t: a.t(),
        ceil_e0t: a.ceil_e0t,
        n_min: b.resources.n_min_phase,
        a0: b.a_i,
        delta_h_norm: b.c_spectral,
        variance_root: b.c_variance,
        first_order_mean: b.c_first_order,
        c_prime: b.c_childs,
        eps: b.eps_combined,
        alpha_ch: b.alpha_ch,
        script_c: b.resources.script_c,
        n_min_q0: b.resources.n_min_of(0),
        n_min_q0_unrounded: b.resources.n_min_unrounded(0),
        n_min_tot: b.resources.n_min_tot,
    }
}

/// Controlled-power plan for a QPE run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanSpec {
    Exact,
    Fixed(u64),
    Uniform(u64),
    /// `n(q) = n_min(q)` from the configured `C_p`.
    Bound,
    /// `n(q) = n_min(q)` from `C′₁`.
    BoundChilds,
}

impl PlanSpec {
    pub fn id(&self) -> String {
        self.to_string()
    }

    pub fn powers(&self, a: &Analysis, n_phase: u32) -> Result<ControlledPowers> {
        let order = a.config.order;
        let t = a.t();
        let plan = match *self {
            PlanSpec::Exact => return Ok(ControlledPowers::Exact { time: t }),
            PlanSpec::Fixed(n) => TrotterPlan::fixed(order, t, n)?,
            PlanSpec::Uniform(n0) => TrotterPlan::uniform(order, t, n0)?,
            PlanSpec::Bound => a.bounds.resources.plan(t, n_phase)?,
            PlanSpec::BoundChilds => {
                let c = a.bounds.c_childs.ok_or_else(|| {
                    Error::InvalidArgument("bound-childs plans need order 1".into())
                })?;
                crate::bounds::trotter_resources(c, order, t, a.bounds.eps_combined, a.config.extra_qubits)?
                    .plan(t, n_phase)?
            }
        };
        Ok(ControlledPowers::Trotterized(plan))
    }
}

impl std::fmt::Display for PlanSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PlanSpec::Exact => write!(f, "exact"),
            PlanSpec::Fixed(n) => write!(f, "fixed:{n}"),
            PlanSpec::Uniform(n) => write!(f, "uniform:{n}"),
            PlanSpec::Bound => write!(f, "bound"),
            PlanSpec::BoundChilds => write!(f, "bound-childs"),
        }
    }
}

impl FromStr for PlanSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unknown plan {s:?}; expected exact, fixed:N, uniform:N, bound or bound-childs"));
        let count = |v: &str| v.parse::<u64>().ok().filter(|&n| n > 0).ok_or_else(bad);
        match s.split_once(':') {
            None if s == "exact" => Ok(PlanSpec::Exact),
            None if s == "bound" => Ok(PlanSpec::Bound),
            None if s == "bound-childs" => Ok(PlanSpec::BoundChilds),
            Some(("fixed", v)) => Ok(PlanSpec::Fixed(count(v)?)),
            Some(("uniform", v)) => Ok(PlanSpec::Uniform(count(v)?)),
            _ => Err(bad()),
        }
    }
}

/// Order-2 operator check: literal sum, half-weighted sum and the numerically
/// extracted first-order term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Order2Check {
    pub literal_norm: f64,
    pub half_weighted_norm: f64,
    pub extracted_norm: f64,
    /// `literal ≈ ratio · extracted`.
    pub literal_vs_extracted: OperatorComparison,
    pub half_weighted_vs_extracted: OperatorComparison,
}

pub fn order2_check(h: &LcuHamiltonian, t: f64) -> Result<Order2Check> {
    let literal = delta_h2(h);
    let half = delta_h2_half_weighted(h);
    let extracted = extract_first_order(h, TrotterOrder::Second, t, &[16, 24, 32, 48, 64])?;
    let ex = extracted.operator.matrix();
    Ok(Order2Check {
        literal_norm: literal.spectral_norm(),
        half_weighted_norm: half.spectral_norm(),
        extracted_norm: spectral_norm(ex),
        literal_vs_extracted: compare_operators(literal.matrix(), ex),
        half_weighted_vs_extracted: compare_operators(half.matrix(), ex),
    })
}

/// Output of `bounds`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub table: SummaryReport,
    pub bounds: BoundReport,
    pub plan: TrotterPlan,
    pub ledgers: Vec<ConditionLedger>,
    pub order2_check: Option<Order2Check>,
}

/// Ledgers for every controlled power `q < n_phase` of `plan`; the default
/// plan is the bound plan over `N_min` phase qubits.
pub fn cmd_bounds(h: &LcuHamiltonian, config: &RunConfig, plan: Option<TrotterPlan>, n_phase: Option<u32>) -> Result<BoundsReport> {
    let a = Analysis::new(h, config)?;
    let n_phase = n_phase.unwrap_or(a.bounds.resources.n_min_phase);
    let plan = match plan {
        Some(p) => p,
        None => a.bounds.resources.plan(a.t(), n_phase)?,
    };
    let ledgers = (0..n_phase)
        .into_par_iter()
        .map(|q| verify_conditions(h, &plan, q, &a.spectrum, &a.delta, &config.target, config.slack))
        .collect::<Result<Vec<_>>>()?;
    let order2_check = match config.order {
        TrotterOrder::Second => Some(order2_check(h, a.t())?),
        TrotterOrder::First => None,
    };
    Ok(BoundsReport { table: table_from(&a), bounds: a.bounds.clone(), plan, ledgers, order2_check })
}

/// One `sweep-trotter` row (controlled power `q = 0`, `n` steps).
#[allow(non_snake_case)]
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrotterSweepRow {
    pub n_steps: u64,
    pub lambda_dimensionless: f64,
    pub energy_error_Ha: Option<f64>,
    pub rescaled_trace_distance_Ha: Option<f64>,
    pub trace_distance_dimensionless: Option<f64>,
    pub unitary_error_Ha: f64,
    pub hs_minus_h_Ha: Option<f64>,
    pub residual_Ha: Option<f64>,
    pub lambda_c_spectral_Ha: f64,
    pub lambda_c_prime_Ha: Option<f64>,
    pub lambda_c_variance_Ha: f64,
}

/// Log-log slopes over the rows that carry each column.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepSlopes {
    /// `‖H^S − H − λδH‖₂` against `λ`.
    pub residual_vs_lambda: Option<f64>,
    /// `|E^S − E|` against `n`.
    pub energy_vs_n: Option<f64>,
    /// `T(ψ, ψ^S)` against `n`.
    pub trace_vs_n: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrotterSweep {
    pub rows: Vec<TrotterSweepRow>,
    pub slopes: SweepSlopes,
}

fn trotter_row(a: &Analysis, exact: &DenseOperator, u: &DenseOperator, n: u64) -> Result<TrotterSweepRow> {
    let h = &a.hamiltonian;
    let i = a.config.target.state_index;
    let plan = TrotterPlan::fixed(a.config.order, a.t(), n)?;
    let lambda = plan.lambda(0)?;
    let s = controlled_power_unitary(h, &plan, 0)?;
    let unitary_error = spectral_norm(&u.sub(&s)) / (2.0 * std::f64::consts::PI * a.t());

    let mut row = TrotterSweepRow {
        n_steps: n,
        lambda_dimensionless: lambda,
        energy_error_Ha: None,
        rescaled_trace_distance_Ha: None,
        trace_distance_dimensionless: None,
        unitary_error_Ha: unitary_error,
        hs_minus_h_Ha: None,
        residual_Ha: None,
        lambda_c_spectral_Ha: lambda * a.bounds.c_spectral,
        lambda_c_prime_Ha: a.bounds.c_childs.map(|c| lambda * c),
        lambda_c_variance_Ha: lambda * a.bounds.c_variance,
    };
    let hs = match effective_hamiltonian(h, &plan, 0) {
        Ok(hs) => hs,
        Err(Error::BranchUnsafe { .. }) => return Ok(row),
        Err(e) => return Err(e),
    };
    let eff = diagonalize(&hs)?;
    let trace = trace_distance(&a.spectrum.state(i), &eff.state(i))?;
    let diff = hs.sub(exact);
    row.energy_error_Ha = Some((eff.energy(i) - a.spectrum.energy(i)).abs());
    row.trace_distance_dimensionless = Some(trace);
    row.rescaled_trace_distance_Ha = a.trace_rescale().map(|r| r * trace);
    row.hs_minus_h_Ha = Some(spectral_norm(&diff));
    row.residual_Ha = Some(spectral_norm(&diff.sub(&a.delta.matrix().scale(lambda))));
    Ok(row)
}

fn slope_of(pairs: impl Iterator<Item = (f64, Option<f64>)>) -> Option<f64> {
    let (x, y): (Vec<f64>, Vec<f64>) = pairs.filter_map(|(x, y)| y.filter(|&v| v > 0.0).map(|v| (x, v))).unzip();
    (x.len() >= 2).then(|| loglog_slope(&x, &y))
}

pub fn cmd_sweep_trotter(h: &LcuHamiltonian, config: &RunConfig, n_list: &[u64]) -> Result<TrotterSweep> {
    if n_list.is_empty() {
        return Err(Error::InvalidArgument("empty n list".into()));
    }
    let a = Analysis::new(h, config)?;
    sweep_trotter_with(&a, n_list)
}

pub fn sweep_trotter_with(a: &Analysis, n_list: &[u64]) -> Result<TrotterSweep> {
    let exact = to_dense(&a.hamiltonian)?;
    let u = exact_power_unitary(&a.hamiltonian, a.t(), 0)?;
    let rows = n_list
        .par_iter()
        .map(|&n| trotter_row(a, &exact, &u, n))
        .collect::<Result<Vec<_>>>()?;
    let slopes = SweepSlopes {
        residual_vs_lambda: slope_of(rows.iter().map(|r| (r.lambda_dimensionless, r.residual_Ha))),
        energy_vs_n: slope_of(rows.iter().map(|r| (r.n_steps as f64, r.energy_error_Ha))),
        trace_vs_n: slope_of(rows.iter().map(|r| (r.n_steps as f64, r.trace_distance_dimensionless))),
    };
    Ok(TrotterSweep { rows, slopes })
}

/// One `sweep-qpe` row.
#[allow(non_snake_case)]
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QpeSweepRow {
    pub plan: String,
    pub n_phase: u32,
    pub extra_qubits: i64,
    pub most_likely: usize,
    pub p_most_likely_dimensionless: f64,
    pub energy_estimate_Ha: f64,
    pub energy_error_Ha: f64,
    pub trace_distance_dimensionless: f64,
    pub rescaled_trace_distance_Ha: Option<f64>,
    /// `|E_init − E₀|` of the initial state.
    pub baseline_energy_error_Ha: f64,
    /// `(ΔE₀/A₀)·T(ψ_init, ψ₀)`.
    pub baseline_rescaled_trace_distance_Ha: Option<f64>,
}

pub fn run_plan(a: &Analysis, plan: PlanSpec, n_phase: u32) -> Result<QpeOutcome> {
    match plan {
        PlanSpec::Exact => analytic_qpe(&a.spectrum, &a.init, a.t(), n_phase),
        _ => simulate_qpe(&a.hamiltonian, &plan.powers(a, n_phase)?, &a.init, n_phase),
    }
}

fn qpe_row(a: &Analysis, plan: PlanSpec, n_phase: u32) -> Result<QpeSweepRow> {
    let i = a.config.target.state_index;
    let config = a.qpe_config(n_phase)?;
    let outcome = run_plan(a, plan, n_phase)?;
    let summary = summarize(&outcome, &config, &a.spectrum, i)?;
    let psi = a.spectrum.state(i);
    let e_init = to_dense(&a.hamiltonian)?.expectation(a.init.amplitudes()).re;
    let t_init = trace_distance(&psi, a.init.amplitudes())?;
    let rescale = a.trace_rescale();
    Ok(QpeSweepRow {
        plan: plan.id(),
        n_phase,
        extra_qubits: n_phase as i64 - a.bounds.resources.n_min_phase as i64,
        most_likely: summary.most_likely,
        p_most_likely_dimensionless: summary.p_most_likely,
        energy_estimate_Ha: summary.energy_estimate,
        energy_error_Ha: summary.energy_error,
        trace_distance_dimensionless: summary.trace_distance,
        rescaled_trace_distance_Ha: rescale.map(|r| r * summary.trace_distance),
        baseline_energy_error_Ha: (e_init - a.spectrum.energy(i)).abs(),
        baseline_rescaled_trace_distance_Ha: rescale.map(|r| r * t_init),
    })
}

/// Rows ordered by plan, then `N`.
pub fn cmd_sweep_qpe(h: &LcuHamiltonian, config: &RunConfig, plans: &[PlanSpec], n_list: &[u32]) -> Result<Vec<QpeSweepRow>> {
    if plans.is_empty() || n_list.is_empty() {
        return Err(Error::InvalidArgument("sweep-qpe needs at least one plan and one N".into()));
    }
    let a = Analysis::new(h, config)?;
    let jobs: Vec<(PlanSpec, u32)> = plans.iter().flat_map(|&p| n_list.iter().map(move |&n| (p, n))).collect();
    jobs.par_iter().map(|&(p, n)| qpe_row(&a, p, n)).collect()
}

/// Output of `simulate`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationReport {
    pub qpe: QpeConfig,
    pub row: QpeSweepRow,
    /// Full `P(l)` when requested.
    pub distribution: Option<Vec<f64>>,
}

pub fn cmd_simulate(
    h: &LcuHamiltonian,
    config: &RunConfig,
    plan: PlanSpec,
    n_phase: u32,
    emit_distribution: bool,
) -> Result<SimulationReport> {
    let a = Analysis::new(h, config)?;
    let row = qpe_row(&a, plan, n_phase)?;
    let distribution = if emit_distribution {
        Some(run_plan(&a, plan, n_phase)?.probabilities().to_vec())
    } else {
        None
    };
    Ok(SimulationReport { qpe: a.qpe_config(n_phase)?, row, distribution })
}

/// Writes `rows` as CSV preceded by `schema` on its own line.
pub fn write_csv<T: Serialize>(path: &Path, schema: &str, rows: &[T]) -> Result<()> {
    let text = csv_string(schema, rows)?;
    fs::write(path, text).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

pub fn csv_string<T: Serialize>(schema: &str, rows: &[T]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for r in rows {
        writer.serialize(r).map_err(|e| Error::Parse(format!("csv: {e}")))?;
    }
    let body = writer.into_inner().map_err(|e| Error::Parse(format!("csv: {e}")))?;
    Ok(format!("{schema}\n{}", String::from_utf8_lossy(&body)))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Parse(format!("json: {e}")))? + "\n";
    fs::write(path, text).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lcu(terms: &[(f64, &str)]) -> LcuHamiltonian {
        LcuHamiltonian::from_labels(terms).unwrap()
    }

    #[test]
    fn plan_spec_roundtrip() {
        for s in ["exact", "fixed:7", "uniform:3", "bound", "bound-childs"] {
            assert_eq!(s.parse::<PlanSpec>().unwrap().to_string(), s);
        }
        for s in ["fixed:0", "fixed", "uniform:x", "bounds"] {
            assert!(s.parse::<PlanSpec>().is_err(), "{s}");
        }
    }

    #[test]
    fn single_term_analysis_is_trivial() {
        let h = lcu(&[(0.8, "Z")]);
        let r = cmd_analyze(&h, &RunConfig::default()).unwrap();
        assert_eq!(r.delta_h_norm, 0.0);
        assert_eq!(r.c_prime, Some(0.0));
        assert_eq!(r.a0, None);
        assert_eq!((r.n_min_q0, r.n_min_tot), (1, 1));
        assert!(r.render().contains("n_min-tot"));
    }

    #[test]
    fn single_term_sweep_has_no_error() {
        let h = lcu(&[(0.8, "Z")]);
        let sweep = cmd_sweep_trotter(&h, &RunConfig::default(), &[2, 5, 10]).unwrap();
        for r in &sweep.rows {
            assert!(r.unitary_error_Ha <= 1e-12);
            assert!(r.energy_error_Ha.unwrap() <= 1e-12 && r.hs_minus_h_Ha.unwrap() <= 1e-12);
        }
    }

    #[test]
    fn csv_has_schema_and_unit_columns() {
        let h = lcu(&[(0.5, "XI"), (0.3, "ZZ"), (-0.2, "IY")]);
        let sweep = cmd_sweep_trotter(&h, &RunConfig::default(), &[1, 8]).unwrap();
        let text = csv_string(TROTTER_SWEEP_SCHEMA, &sweep.rows).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(TROTTER_SWEEP_SCHEMA));
        let header = lines.next().unwrap();
        assert!(header.starts_with("n_steps,lambda_dimensionless,energy_error_Ha"));
        assert_eq!(lines.count(), 2);
        assert_eq!(text, csv_string(TROTTER_SWEEP_SCHEMA, &sweep.rows).unwrap());
    }

    #[test]
    fn zero_phase_qubits_are_rejected() {
        let h = lcu(&[(0.5, "XI"), (0.3, "ZZ"), (0.2, "IZ")]);
        let r = cmd_sweep_qpe(&h, &RunConfig::default(), &[PlanSpec::Exact], &[0]);
        assert!(matches!(r, Err(Error::PhaseRegisterCap { .. })));
    }
}
