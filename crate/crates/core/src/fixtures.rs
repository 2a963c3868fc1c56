//! Bundled Hamiltonians.

use crate::hamiltonian::LcuHamiltonian;

/// H2 at 0.50 Å in STO-3G, Jordan-Wigner encoded, with its Hartree-Fock
/// reference state `1100`. See `data/README.md` for how it was generated.
pub const H2_STO3G_050_JSON: &str = include_str!("../data/h2_sto3g_0.50.json");

pub fn h2_sto3g() -> LcuHamiltonian {
    LcuHamiltonian::from_json_str(H2_STO3G_050_JSON).expect("bundled fixture parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h2_fixture_shape() {
        let h = h2_sto3g();
        assert_eq!((h.n_qubits(), h.len()), (4, 15));
        assert_eq!(h.reference_state(), Some(0b1100));
        assert!((h.identity_coefficient() - 0.379831).abs() < 1e-6);
    }
}
