//! Levels of the PT-symmetric well V(x) = -V0R / (1 + q e^{2i alphaI x})
//! + C e^{2i alphaI x} / (1 + q e^{2i alphaI x})^2.
//!
//! With the surface term off (C = 0) every level is real; the default
//! surface strength pushes 1 - 4 gamma/q below zero and the levels turn
//! complex.

use ws_spectra::potential::{PotentialSpec, UnitsConfig};
use ws_spectra::spectra::spectrum_report;
use ws_spectra::Result;

fn show(label: &str, spec: &PotentialSpec) -> Result<()> {
    let units = UnitsConfig::default();
    let report = spectrum_report(spec, &units, 4)?;
    println!("{label}: q = {}, C = {}", spec.q, spec.c);
    for level in &report.levels {
        println!(
            "  n={}  eps = {:<24} E = {:<24} {}",
            level.n,
            format!("{:.6}", level.epsilon),
            format!("{:.6}", level.energy),
            level.reason
        );
    }
    println!(
        "  empty_by_amgm = {}, admissible levels = {}",
        report.empty_by_amgm,
        report.admissible_count()
    );
    Ok(())
}

fn main() -> Result<()> {
    let base = PotentialSpec::pt_symmetric(1.0, 0.5)?;
    show("surface term off", &base.with_c(0.0)?)?;
    show("derived surface term", &base)?;
    show(
        "deep well, weak surface",
        &PotentialSpec::pt_symmetric(8.0, 0.5)?.with_c(0.1)?,
    )?;
    Ok(())
}
