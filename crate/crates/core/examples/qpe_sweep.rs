//! QPE energy and rescaled state errors against the number of phase qubits
//! for several step plans, as CSV.
//!
//!     cargo run --release --example qpe_sweep [out.csv]

use qpe_precision::fixtures::h2_sto3g;
use qpe_precision::report::{cmd_sweep_qpe, csv_string, write_csv, PlanSpec, RunConfig, QPE_SWEEP_SCHEMA};

fn main() -> qpe_precision::Result<()> {
    let plans = [PlanSpec::Exact, PlanSpec::Fixed(20), PlanSpec::Bound, PlanSpec::BoundChilds];
    let rows = cmd_sweep_qpe(&h2_sto3g(), &RunConfig::default(), &plans, &[8, 9, 10, 11, 12, 13])?;
    match std::env::args().nth(1) {
        Some(path) => write_csv(path.as_ref(), QPE_SWEEP_SCHEMA, &rows)?,
        None => print!("{}", csv_string(QPE_SWEEP_SCHEMA, &rows)?),
    }
    Ok(())
}
