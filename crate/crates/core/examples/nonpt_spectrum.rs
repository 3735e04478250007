//! Complex Woods-Saxon well with an imaginary depth.
//!
//! Two closed forms are compared: the printed level and the level that
//! actually closes the NU quantization condition. Only the second one does.

use ws_spectra::potential::{to_dimensionless, PotentialSpec, UnitsConfig};
use ws_spectra::spectra::{
    crosscheck_quantization, nonpt_admissibility, nonpt_epsilon_consistent, nonpt_epsilon_printed,
    Case,
};
use ws_spectra::{Complex64, Result};

fn min_residual(
    n: usize,
    eps: Complex64,
    base: &ws_spectra::potential::DimensionlessParams,
) -> Result<f64> {
    Ok(
        crosscheck_quantization(Case::NonPt, n, &base.with_epsilon(eps))?
            .iter()
            .map(|r| r.norm())
            .fold(f64::INFINITY, f64::min),
    )
}

fn main() -> Result<()> {
    let spec = PotentialSpec::non_pt(5.0, 0.5, 1.0, 1.0)?;
    let units = UnitsConfig::default();
    let p = to_dimensionless(&spec, &units, Complex64::new(0.0, 0.0));
    println!(
        "beta = {:.4}, gamma = {:.4}, delta = {:.4}, q = {:.4}",
        p.beta, p.gamma, p.delta, p.q
    );

    for n in 0..4 {
        let printed = nonpt_epsilon_printed(n, p.beta, p.gamma, p.delta, p.q)?;
        let consistent = nonpt_epsilon_consistent(n, p.beta, p.gamma, p.delta, p.q)?;
        println!(
            "n={n}: printed {:.5} (closure {:.1e}), consistent {:.5} (closure {:.1e})",
            printed,
            min_residual(n, printed, &p)?,
            consistent,
            min_residual(n, consistent, &p)?
        );
        let a = nonpt_admissibility(n, &p);
        println!(
            "      visible condition: {:?}, threshold {:?}",
            a.verdict, a.threshold
        );
    }
    Ok(())
}
