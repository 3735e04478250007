//! The NU engine on the harmonic oscillator, written as
//! `psi'' + (eps - s^2) psi = 0`: sigma = 1, tau~ = 0, sigma~ = eps - s^2.
//! Levels come out as eps_n = 2n + 1 and the Rodrigues polynomials are
//! Hermite polynomials up to normalization.

use ws_spectra::nu_engine::{
    resolve_branches, rodrigues_polynomial, solve_eigenvalue, BranchSelector, NUProblem,
};
use ws_spectra::poly::QuadPoly;
use ws_spectra::{Complex64, Result};

fn oscillator(eps: Complex64) -> Result<NUProblem> {
    NUProblem::new(
        QuadPoly::real(1.0, 0.0, 0.0),
        QuadPoly::ZERO,
        QuadPoly::new(eps, Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0)),
    )
}

fn main() -> Result<()> {
    let at_one = oscillator(Complex64::new(1.0, 0.0))?;
    for (i, b) in resolve_branches(&at_one)?.iter().enumerate() {
        println!(
            "branch {i}: k = {}, pi = {} + {} s, admissible = {}",
            b.k, b.pi.c0, b.pi.c1, b.admissible
        );
    }

    for n in 0..5 {
        let sol = solve_eigenvalue(
            oscillator,
            BranchSelector::FirstAdmissible,
            n,
            Complex64::new(1.0, 0.0),
        )?;
        let p = oscillator(sol.epsilon)?;
        let branch = resolve_branches(&p)?
            .into_iter()
            .find(|b| b.admissible)
            .unwrap();
        let y = rodrigues_polynomial(&branch, &p, n)?;
        let coeffs: Vec<String> = y.coeffs().iter().map(|c| format!("{:.1}", c.re)).collect();
        println!(
            "n={n}: eps = {:.12} ({} secant steps), y_n coefficients [{}]",
            sol.epsilon.re,
            sol.iterations,
            coeffs.join(", ")
        );
    }
    Ok(())
}
