//! Normalized eigenfunctions sampled on an x grid, plus the residual of the
//! s-domain equation at random points.
//!
//! Normalization is over the sampling window only. The real-exponent wells
//! tend to a constant depth as x -> -inf, so their NU solutions are not
//! square-integrable on the whole line.

use ws_spectra::eigenfunctions::{sample_grid, Eigenfunction};
use ws_spectra::potential::{PotentialSpec, UnitsConfig};
use ws_spectra::verifier::{ode_residual_s, random_s_points};
use ws_spectra::Result;

fn main() -> Result<()> {
    let units = UnitsConfig::default();
    let specs = [
        ("pt", PotentialSpec::pt_symmetric(1.0, 0.5)?.with_c(0.0)?),
        ("nonpt", PotentialSpec::non_pt(5.0, 0.5, 1.0, 1.0)?),
    ];
    for (label, spec) in &specs {
        for n in 0..3 {
            let f = Eigenfunction::for_spec(spec, &units, n)?;
            let window = f.default_window();
            let f = f.normalized(window, 512)?;
            let points = random_s_points(50, spec.q, 7);
            let res = ode_residual_s(&f, &points)?;
            let samples = sample_grid(&f, window, 5)?;
            let shown: Vec<String> = samples
                .iter()
                .map(|s| format!("{:.3}:{:.4}", s.x, s.psi.norm()))
                .collect();
            println!(
                "{label} n={n}: s-residual {res:.1e}; |psi| at {}",
                shown.join(" ")
            );
        }
    }
    Ok(())
}
