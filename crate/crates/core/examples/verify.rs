//! The full invariant suite on one spec per variant.

use ws_spectra::potential::{PotentialSpec, UnitsConfig};
use ws_spectra::verifier::{verify, Tolerances};
use ws_spectra::Result;

fn main() -> Result<()> {
    let units = UnitsConfig::default();
    let tol = Tolerances::default();
    let specs = [
        PotentialSpec::pt_symmetric(1.0, 0.5)?,
        PotentialSpec::non_pt(1.0, 0.5, 0.5, 1.0)?,
        PotentialSpec::hermitian(5.0, 1.0 / 1.2, 6.0)?,
    ];
    for spec in &specs {
        let report = verify(spec, &units, 2, &tol, None)?;
        println!("{}: passed = {}", spec.variant, report.passed());
        for c in &report.checks {
            println!("  {:<28} {:.2e} <= {:.0e}", c.name, c.value, c.threshold);
        }
        for f in &report.findings {
            println!("  finding: {f}");
        }
        if let Some(d) = &report.divergence {
            println!("  {}", d.label);
            for r in &d.rows {
                println!(
                    "    n={} closed {:.5} oracle {:?}",
                    r.n, r.closed_form, r.oracle
                );
            }
        }
    }
    Ok(())
}
