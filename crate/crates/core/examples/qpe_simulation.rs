//! One QPE run on the Hartree-Fock state with Trotterized controlled powers,
//! compared with exact ones.

use qpe_precision::fixtures::h2_sto3g;
use qpe_precision::qpe::summarize;
use qpe_precision::report::{run_plan, Analysis, PlanSpec, RunConfig};

fn main() -> qpe_precision::Result<()> {
    let a = Analysis::new(&h2_sto3g(), &RunConfig::default())?;
    let n_phase = 12;
    let config = a.qpe_config(n_phase)?;
    for plan in [PlanSpec::Exact, PlanSpec::Fixed(10), PlanSpec::Uniform(2), PlanSpec::Bound] {
        let outcome = run_plan(&a, plan, n_phase)?;
        let s = summarize(&outcome, &config, &a.spectrum, 0)?;
        println!(
            "{plan:<10} l* = {:>4}  P(l*) = {:.4}  E = {:.6}  |E − E0| = {:.2e}  T = {:.2e}",
            s.most_likely, s.p_most_likely, s.energy_estimate, s.energy_error, s.trace_distance
        );
    }
    let shots = run_plan(&a, PlanSpec::Bound, n_phase)?.sample(1000, 7)?;
    let hits: Vec<(usize, u64)> = shots.iter().copied().enumerate().filter(|&(_, c)| c > 20).collect();
    println!("1000 seeded shots, outcomes seen more than 20 times: {hits:?}");
    Ok(())
}
