//! Summary table for the bundled H2 fixture.
//!
//!     cargo run --example analyze_h2

use qpe_precision::fixtures::h2_sto3g;
use qpe_precision::report::{cmd_analyze, RunConfig};

fn main() -> qpe_precision::Result<()> {
    let report = cmd_analyze(&h2_sto3g(), &RunConfig::default())?;
    print!("{}", report.render());
    Ok(())
}
