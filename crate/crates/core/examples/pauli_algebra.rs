//! Pauli strings: products with phases, commutators and dense matrices.

use num_complex::Complex64;
use qpe_precision::pauli::i_pow;
use qpe_precision::{PauliString, PauliSum};

fn main() -> qpe_precision::Result<()> {
    let a: PauliString = "XXYY".parse()?;
    let b: PauliString = "ZIII".parse()?;
    let (k, p) = a.mul(&b);
    println!("{a} · {b} = {} {p}", i_pow(k));
    println!("commute: {}", a.commutes_with(&b));

    let one = Complex64::new(1.0, 0.0);
    let x = PauliSum::from_term(one, "X".parse()?);
    let z = PauliSum::from_term(one, "Z".parse()?);
    for (p, c) in x.commutator(&z).iter() {
        println!("[X, Z] = {c} {p}");
    }
    println!("{}", "Y".parse::<PauliString>()?.to_dense());
    Ok(())
}
