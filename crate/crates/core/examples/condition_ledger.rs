//! Checks the precision conditions per controlled power for a fixed step
//! count and for the bound plan.

use qpe_precision::report::{cmd_bounds, RunConfig};
use qpe_precision::fixtures::h2_sto3g;
use qpe_precision::{TrotterOrder, TrotterPlan};

fn main() -> qpe_precision::Result<()> {
    let h = h2_sto3g();
    let config = RunConfig::default();
    let t = 0.5 / h.one_norm_with(config.convention);

    for (label, plan) in [("n = 16", Some(TrotterPlan::fixed(TrotterOrder::First, t, 16)?)), ("bound plan", None)] {
        let report = cmd_bounds(&h, &config, plan, Some(3))?;
        println!("{label}");
        for led in &report.ledgers {
            println!(
                "  q={} n={:>5}  ‖λδH‖ ≤ ε: {:<5} (slack {:.3})  |E^S−E| = {:.2e}  T = {:.2e}  exact unitary bound: {}",
                led.q,
                led.steps,
                led.unified.holds,
                led.unified.slack,
                led.energy_error,
                led.trace_distance,
                led.unitary_exact.holds
            );
        }
    }
    Ok(())
}
