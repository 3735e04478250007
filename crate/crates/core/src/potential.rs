//! The generalized Woods-Saxon potential
//!
//! `V(x) = -V0 / (1 + q e^{2 alpha x}) - C e^{2 alpha x} / (1 + q e^{2 alpha x})^2`
//!
//! in three variants: Hermitian (real `V0`, real `alpha`), PT-symmetric
//! (`alpha -> i alpha_I`, which makes `V` complex and periodic in `x`), and
//! non-PT complex (`V0 -> V0R + i V0I`, real `alpha`).

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Minimum magnitude of `1 + q e^{2 alpha x}` before evaluation is refused.
pub const POLE_GUARD: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Hermitian,
    PtSymmetric,
    NonPtComplex,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Hermitian => "hermitian",
            Variant::PtSymmetric => "pt",
            Variant::NonPtComplex => "nonpt",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s
            .trim()
            .to_ascii_lowercase()
            .replace(['-', '_'], "")
            .as_str()
        {
            "hermitian" | "h" | "real" => Ok(Variant::Hermitian),
            "pt" | "ptsymmetric" => Ok(Variant::PtSymmetric),
            "nonpt" | "nonptcomplex" | "complex" => Ok(Variant::NonPtComplex),
            other => Err(Error::InvalidParameter(format!(
                "unknown variant '{other}' (expected hermitian, pt or nonpt)"
            ))),
        }
    }
}

/// Reduced Planck constant and particle mass. Natural units by default.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitsConfig {
    pub hbar: f64,
    pub mass: f64,
}

impl Default for UnitsConfig {
    fn default() -> Self {
        Self {
            hbar: 1.0,
            mass: 1.0,
        }
    }
}

impl UnitsConfig {
    pub fn new(hbar: f64, mass: f64) -> Result<Self> {
        let units = Self { hbar, mass };
        units.validate()?;
        Ok(units)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("hbar", self.hbar), ("mass", self.mass)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// Physical parameters of one potential.
///
/// `alpha` is the real steepness `1/(2a)` used by the Hermitian and non-PT
/// variants; `alpha_i` is the imaginary steepness of the PT variant. The
/// unused one is stored as 0. When not overridden, `q = exp(-2 alpha R0)`
/// (Hermitian, non-PT) or `q = 1` (PT), and `C = 2 alpha V0R q` with
/// `alpha -> alpha_i` for PT.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSpec {
    pub variant: Variant,
    pub v0r: f64,
    pub v0i: f64,
    pub alpha: f64,
    pub alpha_i: f64,
    pub r0: f64,
    pub q: f64,
    pub c: f64,
    q_overridden: bool,
    c_overridden: bool,
}

impl PotentialSpec {
    pub fn hermitian(v0r: f64, alpha: f64, r0: f64) -> Result<Self> {
        Self::build(Variant::Hermitian, v0r, 0.0, alpha, 0.0, r0)
    }

    pub fn pt_symmetric(v0r: f64, alpha_i: f64) -> Result<Self> {
        Self::build(Variant::PtSymmetric, v0r, 0.0, 0.0, alpha_i, 0.0)
    }

    pub fn non_pt(v0r: f64, v0i: f64, alpha: f64, r0: f64) -> Result<Self> {
        Self::build(Variant::NonPtComplex, v0r, v0i, alpha, 0.0, r0)
    }

    fn build(
        variant: Variant,
        v0r: f64,
        v0i: f64,
        alpha: f64,
        alpha_i: f64,
        r0: f64,
    ) -> Result<Self> {
        let mut spec = Self {
            variant,
            v0r,
            v0i,
            alpha,
            alpha_i,
            r0,
            q: 1.0,
            c: 0.0,
            q_overridden: false,
            c_overridden: false,
        };
        spec.q = spec.default_q();
        spec.c = spec.default_c();
        spec.validate()?;
        Ok(spec)
    }

    /// Builds a spec whose dimensionless parameters are exactly `beta`,
    /// `gamma`, `delta` at the given steepness and units.
    pub fn from_dimensionless(
        variant: Variant,
        beta: f64,
        gamma: f64,
        delta: f64,
        q: f64,
        steepness: f64,
        units: UnitsConfig,
    ) -> Result<Self> {
        let to_energy = 2.0 * units.hbar * units.hbar * steepness * steepness / units.mass;
        let base = match variant {
            Variant::Hermitian => Self::hermitian(beta * to_energy, steepness, 0.0)?,
            Variant::PtSymmetric => Self::pt_symmetric(beta * to_energy, steepness)?,
            Variant::NonPtComplex => {
                Self::non_pt(beta * to_energy, delta * to_energy, steepness, 0.0)?
            }
        };
        base.with_q(q)?.with_c(gamma * to_energy)
    }

    /// Override `q`. A derived `C` follows the new `q`.
    pub fn with_q(mut self, q: f64) -> Result<Self> {
        self.q = q;
        self.q_overridden = true;
        if !self.c_overridden {
            self.c = self.default_c();
        }
        self.validate()?;
        Ok(self)
    }

    pub fn with_c(mut self, c: f64) -> Result<Self> {
        self.c = c;
        self.c_overridden = true;
        self.validate()?;
        Ok(self)
    }

    pub fn q_overridden(&self) -> bool {
        self.q_overridden
    }

    pub fn c_overridden(&self) -> bool {
        self.c_overridden
    }

    fn default_q(&self) -> f64 {
        match self.variant {
            Variant::PtSymmetric => 1.0,
            _ => (-2.0 * self.alpha * self.r0).exp(),
        }
    }

    fn default_c(&self) -> f64 {
        2.0 * self.steepness() * self.v0r * self.q
    }

    /// The steepness entering the dimensionless scale: `alpha_i` for PT,
    /// `alpha` otherwise.
    pub fn steepness(&self) -> f64 {
        match self.variant {
            Variant::PtSymmetric => self.alpha_i,
            _ => self.alpha,
        }
    }

    /// Surface thickness `a = 1/(2 alpha)`.
    pub fn diffuseness(&self) -> f64 {
        0.5 / self.steepness()
    }

    /// Spatial period `pi / alpha_i` of the PT potential.
    pub fn period(&self) -> Option<f64> {
        (self.variant == Variant::PtSymmetric).then(|| PI / self.alpha_i)
    }

    pub fn depth(&self) -> Complex64 {
        Complex64::new(self.v0r, self.v0i)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [
            ("V0R", self.v0r),
            ("V0I", self.v0i),
            ("alpha", self.alpha),
            ("alphaI", self.alpha_i),
            ("R0", self.r0),
            ("q", self.q),
            ("C", self.c),
        ];
        for (name, v) in finite {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} must be finite")));
            }
        }
        if !(self.steepness() > 0.0) {
            let name = if self.variant == Variant::PtSymmetric {
                "alphaI"
            } else {
                "alpha"
            };
            return Err(Error::InvalidParameter(format!(
                "{name} must be positive for the {} variant",
                self.variant
            )));
        }
        if self.r0 < 0.0 {
            return Err(Error::InvalidParameter("R0 must be nonnegative".into()));
        }
        if !(self.q > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "q must be positive, got {}",
                self.q
            )));
        }
        if self.variant != Variant::NonPtComplex && self.v0i != 0.0 {
            return Err(Error::InvalidParameter(format!(
                "V0I must be 0 for the {} variant",
                self.variant
            )));
        }
        Ok(())
    }
}

/// `V(x)` for any variant.
pub fn evaluate_potential(spec: &PotentialSpec, x: f64) -> Result<Complex64> {
    if !x.is_finite() {
        return Err(Error::Argument(format!("x must be finite, got {x}")));
    }
    let q = spec.q;
    match spec.variant {
        Variant::PtSymmetric => {
            let theta = 2.0 * spec.alpha_i * x;
            let w = Complex64::new(theta.cos(), theta.sin());
            let den = Complex64::new(1.0, 0.0) + w * q;
            if den.norm() < POLE_GUARD {
                return Err(Error::PoleProximity {
                    x,
                    magnitude: den.norm(),
                });
            }
            Ok(-spec.depth() / den - w * spec.c / (den * den))
        }
        Variant::Hermitian | Variant::NonPtComplex => {
            let arg = 2.0 * spec.alpha * x;
            // Written in terms of t = e^{-2 alpha x} on the right half so that
            // neither branch overflows.
            let (well, surface) = if arg > 0.0 {
                let t = (-arg).exp();
                let den = t + q;
                (t / den, t / (den * den))
            } else {
                let z = arg.exp();
                let den = 1.0 + q * z;
                if den.abs() < POLE_GUARD {
                    return Err(Error::PoleProximity {
                        x,
                        magnitude: den.abs(),
                    });
                }
                (1.0 / den, z / (den * den))
            };
            Ok(-spec.depth() * well - Complex64::new(spec.c * surface, 0.0))
        }
    }
}

/// The PT potential written out in real and imaginary parts with
/// trigonometric functions. Agrees with [`evaluate_potential`] away from poles.
pub fn pt_potential_expanded(spec: &PotentialSpec, x: f64) -> Result<Complex64> {
    if spec.variant != Variant::PtSymmetric {
        return Err(Error::Argument(
            "the trigonometric form exists only for the PT variant".into(),
        ));
    }
    if !x.is_finite() {
        return Err(Error::Argument(format!("x must be finite, got {x}")));
    }
    let q = spec.q;
    let (sin, cos) = (2.0 * spec.alpha_i * x).sin_cos();
    let den = 1.0 + q * q + 2.0 * q * cos;
    if den.abs() < POLE_GUARD {
        return Err(Error::PoleProximity {
            x,
            magnitude: den.abs().sqrt(),
        });
    }
    let well = Complex64::new(1.0 + q * cos, -q * sin) / den;
    let surface = Complex64::new(2.0 * q + (1.0 + q * q) * cos, -(q * q - 1.0) * sin) / (den * den);
    Ok(-well * spec.v0r - surface * spec.c)
}

/// `max |conj(V(-x)) - V(x)|` over the grid.
pub fn pt_symmetry_defect(spec: &PotentialSpec, grid: &[f64]) -> Result<f64> {
    if grid.is_empty() {
        return Err(Error::Argument("symmetry grid is empty".into()));
    }
    grid.iter().try_fold(0.0_f64, |worst, &x| {
        let mirrored = evaluate_potential(spec, -x)?.conj();
        let direct = evaluate_potential(spec, x)?;
        Ok(worst.max((mirrored - direct).norm()))
    })
}

/// Dimensionless parameters of the transformed equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessParams {
    pub epsilon: Complex64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub q: f64,
}

impl DimensionlessParams {
    pub fn new(epsilon: Complex64, beta: f64, gamma: f64, delta: f64, q: f64) -> Self {
        Self {
            epsilon,
            beta,
            gamma,
            delta,
            q,
        }
    }

    pub fn with_epsilon(self, epsilon: Complex64) -> Self {
        Self { epsilon, ..self }
    }

    /// Complex depth `beta + i delta`.
    pub fn depth(&self) -> Complex64 {
        Complex64::new(self.beta, self.delta)
    }
}

/// `m / (2 hbar^2 alpha^2)`, the factor turning energies into dimensionless
/// parameters.
pub fn energy_scale(spec: &PotentialSpec, units: &UnitsConfig) -> f64 {
    let a = spec.steepness();
    units.mass / (2.0 * units.hbar * units.hbar * a * a)
}

pub fn to_dimensionless(
    spec: &PotentialSpec,
    units: &UnitsConfig,
    energy: Complex64,
) -> DimensionlessParams {
    let k = energy_scale(spec, units);
    DimensionlessParams {
        epsilon: -energy * k,
        beta: k * spec.v0r,
        gamma: k * spec.c,
        delta: k * spec.v0i,
        q: spec.q,
    }
}

/// Inverse of the energy part of [`to_dimensionless`]: `E = -2 hbar^2 alpha^2 eps / m`.
pub fn from_dimensionless(
    epsilon: Complex64,
    spec: &PotentialSpec,
    units: &UnitsConfig,
) -> Complex64 {
    // adding +0 clears negative zeros
    -epsilon / energy_scale(spec, units) + Complex64::new(0.0, 0.0)
}

/// Auxiliary combinations that recur in the closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralAux {
    /// `1 + 2n + sqrt(1 - 4 gamma/q)`
    pub b: Complex64,
    /// `1 + sqrt(1 - 4 gamma/q)`
    pub nu: Complex64,
    /// `nu / 2`
    pub mu: Complex64,
    /// `1 + sqrt(1 + 4 gamma/q)`
    pub kappa: Complex64,
}

impl SpectralAux {
    pub fn new(n: usize, gamma: f64, q: f64) -> Self {
        let minus = Complex64::new(1.0 - 4.0 * gamma / q, 0.0).sqrt();
        let plus = Complex64::new(1.0 + 4.0 * gamma / q, 0.0).sqrt();
        let nu = minus + 1.0;
        Self {
            b: nu + 2.0 * n as f64,
            nu,
            mu: nu / 2.0,
            kappa: plus + 1.0,
        }
    }
}
