//! Closed-form levels of the PT-symmetric and non-PT complex Woods-Saxon
//! problems, their admissibility, and cross-checks against the NU
//! quantization condition.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::nu_engine::{
    lambda_n, resolve_branches, solve_eigenvalue, BranchSelector, EigenSolution, NUBranch,
    NUProblem,
};
use crate::poly::QuadPoly;
use crate::potential::{
    from_dimensionless, to_dimensionless, DimensionlessParams, PotentialSpec, SpectralAux,
    UnitsConfig, Variant,
};

pub const MAX_LEVELS: usize = 64;
/// `|lambda - lambda_n|` below which a branch counts as closing.
pub const CLOSURE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AdmissibilityReason {
    EpsilonPositive,
    EpsilonNonpositive,
    PrintedInequalityPass,
    PrintedInequalityFail,
    ComplexSpectrum,
}

impl AdmissibilityReason {
    pub fn as_str(self) -> &'static str {
        match self {
            AdmissibilityReason::EpsilonPositive => "epsilon_positive",
            AdmissibilityReason::EpsilonNonpositive => "epsilon_nonpositive",
            AdmissibilityReason::PrintedInequalityPass => "paper_inequality_pass",
            AdmissibilityReason::PrintedInequalityFail => "paper_inequality_fail",
            AdmissibilityReason::ComplexSpectrum => "complex_spectrum",
        }
    }

    fn from_epsilon(epsilon: Complex64) -> Self {
        if epsilon.im != 0.0 {
            AdmissibilityReason::ComplexSpectrum
        } else if epsilon.re > 0.0 {
            AdmissibilityReason::EpsilonPositive
        } else {
            AdmissibilityReason::EpsilonNonpositive
        }
    }
}

impl fmt::Display for AdmissibilityReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel {
    pub n: usize,
    pub epsilon: Complex64,
    pub energy: Complex64,
    pub admissible: bool,
    pub reason: AdmissibilityReason,
    /// The square-root argument inside `b` (or `b'`) was negative, so the
    /// principal root made `b` complex.
    pub complex_radical: bool,
}

/// Which transformed equation a parameter set belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    Pt,
    NonPt,
}

impl Case {
    pub fn of(variant: Variant) -> Self {
        match variant {
            Variant::PtSymmetric => Case::Pt,
            Variant::Hermitian | Variant::NonPtComplex => Case::NonPt,
        }
    }
}

fn check_q(q: f64) -> Result<()> {
    if !(q.is_finite() && q > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "q must be positive, got {q}"
        )));
    }
    Ok(())
}

/// `eps = beta/2 - b^2/16 - (beta/b)^2`, `b = 1 + 2n + sqrt(1 - 4 gamma/q)`.
pub fn pt_epsilon(n: usize, beta: f64, gamma: f64, q: f64) -> Result<Complex64> {
    check_q(q)?;
    let b = SpectralAux::new(n, gamma, q).b;
    if b.norm() == 0.0 {
        return Err(Error::SingularConfiguration("b = 0".into()));
    }
    Ok(beta / 2.0 - b * b / 16.0 - (beta / b).powu(2))
}

pub fn pt_energy(n: usize, spec: &PotentialSpec, units: &UnitsConfig) -> Result<EnergyLevel> {
    if spec.variant != Variant::PtSymmetric {
        return Err(Error::Argument(format!(
            "pt_energy needs the pt variant, got {}",
            spec.variant
        )));
    }
    let p = to_dimensionless(spec, units, Complex64::new(0.0, 0.0));
    let epsilon = pt_epsilon(n, p.beta, p.gamma, p.q)?;
    let reason = AdmissibilityReason::from_epsilon(epsilon);
    Ok(EnergyLevel {
        n,
        epsilon,
        energy: from_dimensionless(epsilon, spec, units),
        admissible: reason == AdmissibilityReason::EpsilonPositive,
        reason,
        complex_radical: 4.0 * p.gamma > p.q,
    })
}

/// The energy formula exactly as printed, whose square root carries
/// `1 - 2mC/(q hbar^2)` instead of `1 - 4 gamma/q`. Diagnostic only.
pub fn pt_energy_literal(n: usize, spec: &PotentialSpec, units: &UnitsConfig) -> Complex64 {
    let (h2, m) = (units.hbar * units.hbar, units.mass);
    let ai = spec.alpha_i;
    let radical = Complex64::new(1.0 - 2.0 * m * spec.c / (spec.q * h2), 0.0).sqrt();
    let b = radical + 1.0 + 2.0 * n as f64;
    let well = m * spec.v0r / (2.0 * h2 * ai);
    (2.0 * h2 / m) * ((ai / 4.0).powi(2) * b * b + (well / b).powu(2) - m * spec.v0r / (4.0 * h2))
}

/// Printed non-PT level in dimensionless form:
/// `b'^2/16 + (beta^2 - delta^2)/b'^2 + i (beta delta / b'^2 + delta/2)`.
pub fn nonpt_epsilon_printed(
    n: usize,
    beta: f64,
    gamma: f64,
    delta: f64,
    q: f64,
) -> Result<Complex64> {
    check_q(q)?;
    let aux = SpectralAux::new(n, gamma, q);
    let b = aux.kappa + 2.0 * n as f64;
    if b.norm() == 0.0 {
        return Err(Error::SingularConfiguration("b' = 0".into()));
    }
    let b2 = b * b;
    let re = b2 / 16.0 + (beta * beta - delta * delta) / b2;
    let im = beta * delta / b2 + delta / 2.0;
    Ok(re + Complex64::i() * im)
}

/// Level that actually satisfies the non-PT quantization condition:
/// `B/2 + b'^2/16 + B^2/b'^2` with `B = beta + i delta`.
pub fn nonpt_epsilon_consistent(
    n: usize,
    beta: f64,
    gamma: f64,
    delta: f64,
    q: f64,
) -> Result<Complex64> {
    check_q(q)?;
    let aux = SpectralAux::new(n, gamma, q);
    let b = aux.kappa + 2.0 * n as f64;
    if b.norm() == 0.0 {
        return Err(Error::SingularConfiguration("b' = 0".into()));
    }
    let depth = Complex64::new(beta, delta);
    Ok(depth / 2.0 + b * b / 16.0 + (depth / b).powu(2))
}

/// Printed non-PT energy. The Hermitian variant is accepted as the `V0I = 0`
/// member of the same family.
pub fn nonpt_energy(n: usize, spec: &PotentialSpec, units: &UnitsConfig) -> Result<EnergyLevel> {
    if spec.variant == Variant::PtSymmetric {
        return Err(Error::Argument(
            "nonpt_energy needs the nonpt or hermitian variant".into(),
        ));
    }
    let p = to_dimensionless(spec, units, Complex64::new(0.0, 0.0));
    let epsilon = nonpt_epsilon_printed(n, p.beta, p.gamma, p.delta, p.q)?;
    let reason = if spec.v0i != 0.0 {
        AdmissibilityReason::ComplexSpectrum
    } else {
        AdmissibilityReason::from_epsilon(epsilon)
    };
    Ok(EnergyLevel {
        n,
        epsilon,
        energy: from_dimensionless(epsilon, spec, units),
        admissible: reason == AdmissibilityReason::EpsilonPositive,
        reason,
        complex_radical: 1.0 + 4.0 * p.gamma / p.q < 0.0,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct NonPtAdmissibility {
    /// `None` when the printed condition cannot be evaluated.
    pub verdict: Option<bool>,
    /// `8 (delta^2 - beta^2)^{1/4} - kappa/2`
    pub threshold: Option<f64>,
    pub diagnostic: String,
}

/// The printed non-PT visible condition `n > 8 (delta^2 - beta^2)^{1/4} - kappa/2`.
pub fn nonpt_admissibility(n: usize, params: &DimensionlessParams) -> NonPtAdmissibility {
    let gap = params.delta * params.delta - params.beta * params.beta;
    let kappa_arg = 1.0 + 4.0 * params.gamma / params.q;
    if gap < 0.0 {
        return NonPtAdmissibility {
            verdict: None,
            threshold: None,
            diagnostic: format!("fourth root of negative argument delta^2 - beta^2 = {gap}"),
        };
    }
    if !(kappa_arg >= 0.0) {
        return NonPtAdmissibility {
            verdict: None,
            threshold: None,
            diagnostic: format!("kappa is complex: 1 + 4 gamma/q = {kappa_arg}"),
        };
    }
    let kappa = kappa_arg.sqrt() + 1.0;
    let threshold = 8.0 * gap.powf(0.25) - kappa / 2.0;
    let verdict = n as f64 > threshold;
    NonPtAdmissibility {
        verdict: Some(verdict),
        threshold: Some(threshold),
        diagnostic: format!(
            "n = {n} {} threshold {threshold}",
            if verdict { ">" } else { "<=" }
        ),
    }
}

/// The NU polynomials of the transformed equation at `params.epsilon`.
///
/// PT: `sigma~ = eps q^2 s^2 - (2 eps q - beta q - gamma) s - beta + eps`.
/// Non-PT: `sigma~ = -eps q^2 s^2 + (2 eps q - B q - gamma) s + B - eps`,
/// `B = beta + i delta`.
pub fn ws_problem(case: Case, params: &DimensionlessParams) -> Result<NUProblem> {
    check_q(params.q)?;
    let q = params.q;
    let eps = params.epsilon;
    let sigma = QuadPoly::real(0.0, 1.0, -q);
    let tau_tilde = QuadPoly::real(1.0, -q, 0.0);
    let sigma_tilde = match case {
        Case::Pt => {
            let beta = Complex64::new(params.beta, 0.0);
            QuadPoly::new(
                eps - beta,
                -(eps * 2.0 * q - beta * q - params.gamma),
                eps * q * q,
            )
        }
        Case::NonPt => {
            let depth = params.depth();
            QuadPoly::new(
                depth - eps,
                eps * 2.0 * q - depth * q - params.gamma,
                -eps * q * q,
            )
        }
    };
    NUProblem::new(sigma, tau_tilde, sigma_tilde)
}

/// `lambda - lambda_n` at `params.epsilon` on every branch, in
/// [`resolve_branches`] order.
pub fn crosscheck_quantization(
    case: Case,
    n: usize,
    params: &DimensionlessParams,
) -> Result<Vec<Complex64>> {
    let p = ws_problem(case, params)?;
    Ok(resolve_branches(&p)?
        .iter()
        .map(|b| b.lambda - lambda_n(&p, b, n))
        .collect())
}

/// The branch whose residual at `params.epsilon` is smallest, if it closes
/// to [`CLOSURE_TOL`].
pub fn consistent_branch(
    case: Case,
    n: usize,
    params: &DimensionlessParams,
) -> Result<(usize, NUBranch)> {
    let p = ws_problem(case, params)?;
    let branches = resolve_branches(&p)?;
    let (index, residual) = branches
        .iter()
        .map(|b| (b.lambda - lambda_n(&p, b, n)).norm())
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or(Error::NoConsistentBranch {
            residual: f64::INFINITY,
        })?;
    let scale = params.epsilon.norm().max(1.0);
    if residual <= CLOSURE_TOL * scale {
        Ok((index, branches[index]))
    } else {
        Err(Error::NoConsistentBranch { residual })
    }
}

/// The dimensionless level that closes the quantization condition for this
/// case (the closed form for PT, the consistent form for non-PT).
pub fn consistent_epsilon(case: Case, n: usize, params: &DimensionlessParams) -> Result<Complex64> {
    match case {
        Case::Pt => pt_epsilon(n, params.beta, params.gamma, params.q),
        Case::NonPt => {
            nonpt_epsilon_consistent(n, params.beta, params.gamma, params.delta, params.q)
        }
    }
}

/// Numerically solves the quantization condition on the branch selected by
/// `selector`, starting from `seed`.
pub fn solve_level(
    case: Case,
    n: usize,
    params: &DimensionlessParams,
    selector: BranchSelector,
    seed: Complex64,
) -> Result<EigenSolution> {
    let base = *params;
    solve_eigenvalue(
        |eps| ws_problem(case, &base.with_epsilon(eps)),
        selector,
        n,
        seed,
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelDiagnostics {
    /// Verdict of the printed level inequality (PT) or visible condition
    /// (non-PT); `None` when it cannot be evaluated.
    pub printed_inequality: Option<AdmissibilityReason>,
    /// PT only: whether `n` lies below the printed level bound.
    pub below_printed_bound: Option<bool>,
    /// The level that closes the quantization condition.
    pub consistent_epsilon: Complex64,
    /// Smallest branch residual at the reported epsilon.
    pub min_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub case: Case,
    pub levels: Vec<EnergyLevel>,
    pub diagnostics: Vec<LevelDiagnostics>,
    /// PT: `sqrt(beta) - sqrt(1/4 - gamma/q) - 1/2`; non-PT: the visible
    /// condition threshold. `None` when a root argument is negative.
    pub printed_level_bound: Option<f64>,
    /// The epsilon > 0 set is empty because `b^2/16 + beta^2/b^2 >= beta/2`.
    pub empty_by_amgm: bool,
    /// Residuals `lambda - lambda_n` at each reported epsilon, all branches.
    pub branch_residuals: Vec<Vec<Complex64>>,
}

impl SpectrumReport {
    pub fn admissible_count(&self) -> usize {
        self.levels.iter().filter(|l| l.admissible).count()
    }
}

fn check_n_max(n_max: usize) -> Result<()> {
    if n_max > MAX_LEVELS {
        return Err(Error::Argument(format!(
            "n_max = {n_max} exceeds the supported maximum {MAX_LEVELS}"
        )));
    }
    Ok(())
}

fn min_norm(values: &[Complex64]) -> f64 {
    values
        .iter()
        .map(|c| c.norm())
        .fold(f64::INFINITY, f64::min)
}

/// Levels `0..=n_max` of the PT case with every admissibility view.
pub fn pt_level_report(
    spec: &PotentialSpec,
    units: &UnitsConfig,
    n_max: usize,
) -> Result<SpectrumReport> {
    check_n_max(n_max)?;
    let base = to_dimensionless(spec, units, Complex64::new(0.0, 0.0));
    let (beta, gamma, q) = (base.beta, base.gamma, base.q);
    let radical = 0.25 - gamma / q;
    let printed_level_bound =
        (beta >= 0.0 && radical >= 0.0).then(|| beta.sqrt() - radical.sqrt() - 0.5);
    let b_real = 4.0 * gamma <= q;
    let mut levels = Vec::with_capacity(n_max + 1);
    let mut diagnostics = Vec::with_capacity(n_max + 1);
    let mut branch_residuals = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let level = pt_energy(n, spec, units)?;
        let b = SpectralAux::new(n, gamma, q).b;
        let printed_inequality = (b.im == 0.0).then(|| {
            let b = b.re;
            if (b / 4.0).powi(2) + (beta / b).powi(2) < beta / 2.0 {
                AdmissibilityReason::PrintedInequalityPass
            } else {
                AdmissibilityReason::PrintedInequalityFail
            }
        });
        let residuals = crosscheck_quantization(Case::Pt, n, &base.with_epsilon(level.epsilon))?;
        diagnostics.push(LevelDiagnostics {
            printed_inequality,
            below_printed_bound: printed_level_bound.map(|bound| (n as f64) < bound),
            consistent_epsilon: level.epsilon,
            min_residual: min_norm(&residuals),
        });
        branch_residuals.push(residuals);
        levels.push(level);
    }
    Ok(SpectrumReport {
        case: Case::Pt,
        levels,
        diagnostics,
        printed_level_bound,
        empty_by_amgm: beta > 0.0 && b_real,
        branch_residuals,
    })
}

/// Levels `0..=n_max` of the non-PT (or Hermitian) case, printed energies
/// with the quantization residuals they leave.
pub fn nonpt_level_report(
    spec: &PotentialSpec,
    units: &UnitsConfig,
    n_max: usize,
) -> Result<SpectrumReport> {
    check_n_max(n_max)?;
    let base = to_dimensionless(spec, units, Complex64::new(0.0, 0.0));
    let mut levels = Vec::with_capacity(n_max + 1);
    let mut diagnostics = Vec::with_capacity(n_max + 1);
    let mut branch_residuals = Vec::with_capacity(n_max + 1);
    let mut printed_level_bound = None;
    for n in 0..=n_max {
        let level = nonpt_energy(n, spec, units)?;
        let check = nonpt_admissibility(n, &base);
        printed_level_bound = check.threshold;
        let residuals = crosscheck_quantization(Case::NonPt, n, &base.with_epsilon(level.epsilon))?;
        diagnostics.push(LevelDiagnostics {
            printed_inequality: check.verdict.map(|ok| {
                if ok {
                    AdmissibilityReason::PrintedInequalityPass
                } else {
                    AdmissibilityReason::PrintedInequalityFail
                }
            }),
            below_printed_bound: None,
            consistent_epsilon: nonpt_epsilon_consistent(
                n, base.beta, base.gamma, base.delta, base.q,
            )?,
            min_residual: min_norm(&residuals),
        });
        branch_residuals.push(residuals);
        levels.push(level);
    }
    Ok(SpectrumReport {
        case: Case::NonPt,
        levels,
        diagnostics,
        printed_level_bound,
        empty_by_amgm: false,
        branch_residuals,
    })
}

/// Dispatches on the variant of `spec`.
pub fn spectrum_report(
    spec: &PotentialSpec,
    units: &UnitsConfig,
    n_max: usize,
) -> Result<SpectrumReport> {
    match Case::of(spec.variant) {
        Case::Pt => pt_level_report(spec, units, n_max),
        Case::NonPt => nonpt_level_report(spec, units, n_max),
    }
}
