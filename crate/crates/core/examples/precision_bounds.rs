//! C_p variants, A_0, the combined precision and the resulting Trotter step
//! counts for each choice of C_p, with and without a trace-distance target.

use qpe_precision::bounds::{bound_report, choose_time, CChoice, PrecisionTarget};
use qpe_precision::fixtures::h2_sto3g;
use qpe_precision::{delta_h1, diagonalize, to_dense, IdentityConvention};

fn main() -> qpe_precision::Result<()> {
    let h = h2_sto3g();
    let spectrum = diagonalize(&to_dense(&h)?)?;
    let time = choose_time(&h, 0.5, IdentityConvention::Exclude)?;
    let delta = delta_h1(&h);

    for alpha_tar in [None, Some(1e-3)] {
        let target = PrecisionTarget::new(1.6e-3, alpha_tar, 0)?;
        println!("α_tar = {alpha_tar:?}");
        for choice in [CChoice::Spectral, CChoice::Variance, CChoice::FirstOrder, CChoice::Childs] {
            let r = bound_report(&h, &delta, &spectrum, time.t, &target, choice, 0)?;
            println!(
                "  {choice:?}: C = {:.6}, ε = {:.3e}, 𝒞 = {:.1}, n_min(0) = {}, n_min-tot = {}",
                r.c_selected(),
                r.eps_combined,
                r.resources.script_c,
                r.resources.n_min_of(0),
                r.resources.n_min_tot
            );
        }
    }
    Ok(())
}
