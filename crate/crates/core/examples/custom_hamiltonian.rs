//! Analysis of a user-supplied Pauli-term JSON file, or of a seeded random
//! LCU when no file is given.
//!
//!     cargo run --example custom_hamiltonian -- path/to/h.json
//!     cargo run --example custom_hamiltonian

use qpe_precision::hamiltonian::random_lcu;
use qpe_precision::report::{cmd_analyze, RunConfig};
use qpe_precision::ingest_hamiltonian;

fn main() -> qpe_precision::Result<()> {
    let h = match std::env::args().nth(1) {
        Some(path) => ingest_hamiltonian(path)?,
        None => {
            let h = random_lcu(3, 6, 42);
            println!("{}", h.to_json_string());
            h
        }
    };
    match cmd_analyze(&h, &RunConfig::default()) {
        Ok(report) => print!("{}", report.render()),
        Err(e) => eprintln!("analysis failed: {e}"),
    }
    Ok(())
}
