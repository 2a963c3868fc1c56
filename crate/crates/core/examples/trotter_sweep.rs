//! Trotter error quantities at q = 0 as a function of the step count, written
//! as CSV (the data behind a log-log plot against n).
//!
//!     cargo run --example trotter_sweep [out.csv]

use qpe_precision::fit::log_spaced;
use qpe_precision::fixtures::h2_sto3g;
use qpe_precision::report::{cmd_sweep_trotter, csv_string, write_csv, RunConfig, TROTTER_SWEEP_SCHEMA};

fn main() -> qpe_precision::Result<()> {
    let sweep = cmd_sweep_trotter(&h2_sto3g(), &RunConfig::default(), &log_spaced(5, 500, 15))?;
    match std::env::args().nth(1) {
        Some(path) => write_csv(path.as_ref(), TROTTER_SWEEP_SCHEMA, &sweep.rows)?,
        None => print!("{}", csv_string(TROTTER_SWEEP_SCHEMA, &sweep.rows)?),
    }
    let s = sweep.slopes;
    eprintln!(
        "log-log slopes: residual vs λ {:.3}, |E^S − E| vs n {:.3}, T vs n {:.3}",
        s.residual_vs_lambda.unwrap_or(f64::NAN),
        s.energy_vs_n.unwrap_or(f64::NAN),
        s.trace_vs_n.unwrap_or(f64::NAN)
    );
    Ok(())
}
