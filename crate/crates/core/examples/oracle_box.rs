//! Finite-difference oracle for real potentials: Dirichlet box,
//! Sturm-sequence bisection, and a Richardson study of the lowest level.
//! The infinite square well checks the oracle against E_n = (n+1)^2 pi^2 / 2L^2.

use std::f64::consts::PI;

use ws_spectra::potential::{PotentialSpec, UnitsConfig};
use ws_spectra::verifier::{
    convergence_study_with, default_oracle_grid, hermitian_oracle, potential_oracle, Grid1D,
};
use ws_spectra::Result;

fn main() -> Result<()> {
    let units = UnitsConfig::default();
    let length = 2.0;
    let grid = Grid1D::new(0.0, length, 801)?;
    let free = potential_oracle(|_| Ok(0.0), &units, &grid, 4)?;
    for (n, e) in free.eigenvalues.iter().enumerate() {
        let exact = ((n + 1) as f64 * PI / length).powi(2) / 2.0;
        println!("box n={n}: {e:.8} vs exact {exact:.8}");
    }

    let grids: Vec<Grid1D> = [101, 201, 401, 801]
        .iter()
        .map(|&p| Grid1D::new(0.0, length, p))
        .collect::<Result<_>>()?;
    let study = convergence_study_with(|_| Ok(0.0), &units, &grids, 0)?;
    println!(
        "observed order {:.3}, extrapolated E0 {:.10} (exact {:.10})",
        study.order,
        study.limit,
        (PI / length).powi(2) / 2.0
    );

    let spec = PotentialSpec::hermitian(5.0, 1.0 / 1.2, 6.0)?;
    let well = hermitian_oracle(&spec, &units, &default_oracle_grid(&spec, 1201)?, 3)?;
    println!(
        "Woods-Saxon well in a box, lowest levels: {:?}",
        well.eigenvalues
    );
    Ok(())
}
