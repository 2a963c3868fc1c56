//! First- and second-order Trotter error operators, symbolic and extracted
//! from the logarithm of the Trotter step.

use qpe_precision::fixtures::h2_sto3g;
use qpe_precision::trotter::{compare_operators, delta_h2, delta_h2_half_weighted};
use qpe_precision::{delta_h1, extract_first_order, TrotterOrder};

fn main() -> qpe_precision::Result<()> {
    let h = h2_sto3g();
    let t = 0.5 / h.one_norm_with(Default::default());

    let d1 = delta_h1(&h);
    println!("δH₁: {} Pauli strings, ‖δH₁‖₂ = {:.6}", d1.term_count(), d1.spectral_norm());
    if let Some(sum) = d1.symbolic() {
        for (p, c) in sum.iter() {
            println!("  {p}  {:+.6}", c.re);
        }
    }
    let fit = extract_first_order(&h, TrotterOrder::First, t, &[64, 128, 256, 512])?;
    let cmp = compare_operators(fit.operator.matrix(), d1.matrix());
    println!("extracted / symbolic: ratio {:.6}, relative residual {:.2e}", cmp.ratio, cmp.relative_residual);

    let literal = delta_h2(&h);
    let half = delta_h2_half_weighted(&h);
    let fit2 = extract_first_order(&h, TrotterOrder::Second, t, &[16, 24, 32, 48, 64])?;
    let lit = compare_operators(literal.matrix(), fit2.operator.matrix());
    let hw = compare_operators(half.matrix(), fit2.operator.matrix());
    println!("order 2: literal / extracted = {:.4}, half-weighted / extracted = {:.4}", lit.ratio, hw.ratio);
    Ok(())
}
