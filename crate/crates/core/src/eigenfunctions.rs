//! Jacobi polynomials with complex parameters, the `x <-> s` maps and the
//! `psi = phi(s) y(s)` eigenfunctions of the transformed Woods-Saxon
//! equations.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::cmath::principal_pow;
use crate::error::{Error, Result};
use crate::nu_engine::{phi_factor, weight_function, FactorForm, NUBranch};
use crate::potential::{
    to_dimensionless, DimensionlessParams, PotentialSpec, UnitsConfig, Variant,
};
use crate::spectra::{consistent_branch, consistent_epsilon, ws_problem, Case};

pub const MAX_JACOBI_DEGREE: usize = 64;
/// Recurrence denominators below this magnitude are treated as degenerate.
pub const JACOBI_DEGENERACY_TOL: f64 = 1e-14;
pub const MIN_NORMALIZATION_POINTS: usize = 64;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    pub n: usize,
    pub a: Complex64,
    pub b: Complex64,
}

impl JacobiParams {
    pub fn new(n: usize, a: Complex64, b: Complex64) -> Result<Self> {
        if n > MAX_JACOBI_DEGREE {
            return Err(Error::DegreeTooHigh {
                n,
                max: MAX_JACOBI_DEGREE,
            });
        }
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidParameter(
                "Jacobi parameters must be finite".into(),
            ));
        }
        Ok(Self { n, a, b })
    }

    fn shifted(&self) -> Option<Self> {
        (self.n > 0).then(|| Self {
            n: self.n - 1,
            a: self.a + 1.0,
            b: self.b + 1.0,
        })
    }
}

/// `P_n^{(a,b)}(x)` by the three-term recurrence.
pub fn jacobi(p: &JacobiParams, x: Complex64) -> Result<Complex64> {
    let (a, b) = (p.a, p.b);
    let mut prev = ONE;
    if p.n == 0 {
        return Ok(prev);
    }
    let mut cur = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
    for k in 1..p.n {
        let kf = k as f64;
        let s = a + b + 2.0 * kf;
        let den = 2.0 * (kf + 1.0) * (a + b + kf + 1.0) * s;
        if den.norm() < JACOBI_DEGENERACY_TOL {
            return Err(Error::DegenerateJacobi {
                step: k + 1,
                denominator: den.norm(),
            });
        }
        let next = ((s + 1.0) * ((s + 2.0) * s * x + a * a - b * b) * cur
            - 2.0 * (a + kf) * (b + kf) * (s + 2.0) * prev)
            / den;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `d/dx P_n^{(a,b)} = (n + a + b + 1)/2 P_{n-1}^{(a+1,b+1)}`.
pub fn jacobi_derivative(p: &JacobiParams, x: Complex64) -> Result<Complex64> {
    match p.shifted() {
        None => Ok(Complex64::new(0.0, 0.0)),
        Some(q) => Ok((p.a + p.b + p.n as f64 + 1.0) / 2.0 * jacobi(&q, x)?),
    }
}

pub fn jacobi_second_derivative(p: &JacobiParams, x: Complex64) -> Result<Complex64> {
    match p.shifted() {
        None => Ok(Complex64::new(0.0, 0.0)),
        Some(q) => Ok((p.a + p.b + p.n as f64 + 1.0) / 2.0 * jacobi_derivative(&q, x)?),
    }
}

/// `s = -e^{2 i alpha_I x}` (PT) or `s = -e^{2 alpha x}` (otherwise).
///
/// For PT, `x` is first reduced to one period, so whole periods map to
/// exactly `-1 + 0i`, on the upper side of the principal cut.
pub fn x_to_s(variant: Variant, steepness: f64, x: f64) -> Result<Complex64> {
    if !x.is_finite() {
        return Err(Error::Argument(format!("x must be finite, got {x}")));
    }
    if !(steepness.is_finite() && steepness > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "steepness must be positive, got {steepness}"
        )));
    }
    match variant {
        Variant::PtSymmetric => {
            let period = PI / steepness;
            let theta = 2.0 * steepness * x.rem_euclid(period);
            let (sin, cos) = theta.sin_cos();
            Ok(Complex64::new(-cos, -sin + 0.0))
        }
        Variant::Hermitian | Variant::NonPtComplex => {
            Ok(Complex64::new(-(2.0 * steepness * x).exp(), 0.0))
        }
    }
}

/// Inverse of [`x_to_s`] on the principal strip (principal logarithm).
pub fn s_to_principal_x(variant: Variant, steepness: f64, s: Complex64) -> Result<Complex64> {
    if s.norm() == 0.0 {
        return Err(Error::Domain("s = 0 has no preimage".into()));
    }
    let log = (-s).ln();
    Ok(match variant {
        Variant::PtSymmetric => log / Complex64::new(0.0, 2.0 * steepness),
        Variant::Hermitian | Variant::NonPtComplex => log / (2.0 * steepness),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavefunctionSample {
    pub x: f64,
    pub s: Complex64,
    pub psi: Complex64,
}

/// `psi(s) = scale * s^A (1 - q s)^B * P_n^{(a,b)}(1 - 2 q s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenfunction {
    pub variant: Variant,
    pub steepness: f64,
    pub q: f64,
    pub s_exp: Complex64,
    pub tail_exp: Complex64,
    pub jacobi: JacobiParams,
    pub scale: Complex64,
    pub params: DimensionlessParams,
}

impl Eigenfunction {
    /// The printed PT form `s^u (1 - qs)^mu P_n^{(2u, nu-1)}(1 - 2qs)`,
    /// `u = sqrt(beta - eps)` on the principal branch.
    pub fn pt_printed(n: usize, params: &DimensionlessParams, alpha_i: f64) -> Result<Self> {
        let u = (Complex64::new(params.beta, 0.0) - params.epsilon).sqrt();
        let nu = Complex64::new(1.0 - 4.0 * params.gamma / params.q, 0.0).sqrt() + 1.0;
        Ok(Self {
            variant: Variant::PtSymmetric,
            steepness: alpha_i,
            q: params.q,
            s_exp: u,
            tail_exp: nu / 2.0,
            jacobi: JacobiParams::new(n, u * 2.0, nu - 1.0)?,
            scale: ONE,
            params: *params,
        })
    }

    /// The printed non-PT form `s^u (1 - qs)^{kappa/2} P_n^{(2u, kappa-1)}(1 - 2qs)`,
    /// `u = sqrt(eps - beta - i delta)`.
    pub fn nonpt_printed(n: usize, params: &DimensionlessParams, alpha: f64) -> Result<Self> {
        let u = (params.epsilon - params.depth()).sqrt();
        let kappa = Complex64::new(1.0 + 4.0 * params.gamma / params.q, 0.0).sqrt() + 1.0;
        Ok(Self {
            variant: Variant::NonPtComplex,
            steepness: alpha,
            q: params.q,
            s_exp: u,
            tail_exp: kappa / 2.0,
            jacobi: JacobiParams::new(n, u * 2.0, kappa - 1.0)?,
            scale: ONE,
            params: *params,
        })
    }

    /// Eigenfunction assembled from an NU branch: `phi` from `pi/sigma`,
    /// `y` from the branch weight function.
    pub fn from_branch(
        variant: Variant,
        n: usize,
        params: &DimensionlessParams,
        branch: &NUBranch,
        steepness: f64,
    ) -> Result<Self> {
        let problem = ws_problem(Case::of(variant), params)?;
        let (phi, rho) = (
            phi_factor(branch, &problem)?,
            weight_function(branch, &problem)?,
        );
        match (phi, rho) {
            (
                FactorForm::Beta {
                    s_exp, tail_exp, ..
                },
                FactorForm::Beta {
                    s_exp: a,
                    tail_exp: b,
                    ..
                },
            ) => Ok(Self {
                variant,
                steepness,
                q: params.q,
                s_exp,
                tail_exp,
                jacobi: JacobiParams::new(n, a, b)?,
                scale: ONE,
                params: *params,
            }),
            _ => Err(Error::Structural("expected s(1-qs) factor forms".into())),
        }
    }

    /// Eigenpair for level `n` on the branch that closes the quantization
    /// condition at the consistent epsilon.
    pub fn consistent(
        variant: Variant,
        n: usize,
        params: &DimensionlessParams,
        steepness: f64,
    ) -> Result<Self> {
        let case = Case::of(variant);
        let with_eps = params.with_epsilon(consistent_epsilon(case, n, params)?);
        let (_, branch) = consistent_branch(case, n, &with_eps)?;
        Self::from_branch(variant, n, &with_eps, &branch, steepness)
    }

    pub fn for_spec(spec: &PotentialSpec, units: &UnitsConfig, n: usize) -> Result<Self> {
        let params = to_dimensionless(spec, units, Complex64::new(0.0, 0.0));
        Self::consistent(spec.variant, n, &params, spec.steepness())
    }

    pub fn with_scale(self, scale: Complex64) -> Self {
        Self { scale, ..self }
    }

    pub fn n(&self) -> usize {
        self.jacobi.n
    }

    fn check_point(&self, s: Complex64) -> Result<()> {
        let tail = ONE - self.q * s;
        if s.norm() == 0.0 && self.s_exp.re < 0.0 {
            return Err(Error::SingularPoint {
                s,
                reason: "s = 0 with negative s-exponent".into(),
            });
        }
        if tail.norm() == 0.0 && self.tail_exp.re < 0.0 {
            return Err(Error::SingularPoint {
                s,
                reason: "s = 1/q with negative (1-qs)-exponent".into(),
            });
        }
        Ok(())
    }

    pub fn eval_s(&self, s: Complex64) -> Result<Complex64> {
        self.check_point(s)?;
        let phi = principal_pow(s, self.s_exp)? * principal_pow(ONE - self.q * s, self.tail_exp)?;
        Ok(self.scale * phi * jacobi(&self.jacobi, ONE - 2.0 * self.q * s)?)
    }

    /// `(psi, psi', psi'')` in `s`, from the exact derivatives of the factors.
    pub fn derivatives_s(&self, s: Complex64) -> Result<[Complex64; 3]> {
        if s.norm() == 0.0 || (ONE - self.q * s).norm() == 0.0 {
            return Err(Error::Domain(format!(
                "derivatives undefined at singular point s = {s}"
            )));
        }
        let q = self.q;
        let tail = ONE - q * s;
        let phi = self.scale * principal_pow(s, self.s_exp)? * principal_pow(tail, self.tail_exp)?;
        let g = self.s_exp / s - q * self.tail_exp / tail;
        let dg = -self.s_exp / (s * s) - q * q * self.tail_exp / (tail * tail);
        let x = ONE - 2.0 * q * s;
        let y = jacobi(&self.jacobi, x)?;
        let dy = -2.0 * q * jacobi_derivative(&self.jacobi, x)?;
        let ddy = 4.0 * q * q * jacobi_second_derivative(&self.jacobi, x)?;
        Ok([
            phi * y,
            phi * (g * y + dy),
            phi * ((g * g + dg) * y + 2.0 * g * dy + ddy),
        ])
    }

    pub fn x_to_s(&self, x: f64) -> Result<Complex64> {
        x_to_s(self.variant, self.steepness, x)
    }

    pub fn sample(&self, x: f64) -> Result<WavefunctionSample> {
        let s = self.x_to_s(x)?;
        Ok(WavefunctionSample {
            x,
            s,
            psi: self.eval_s(s)?,
        })
    }

    /// `(lo, hi)`: one period for PT, otherwise ten diffuseness-scaled
    /// lengths either side of the origin.
    pub fn default_window(&self) -> (f64, f64) {
        match self.variant {
            Variant::PtSymmetric => (0.0, PI / self.steepness),
            _ => (-10.0 / self.steepness, 10.0 / self.steepness),
        }
    }

    /// Rescales so that the modulus-square integral over `window` is 1.
    pub fn normalized(&self, window: (f64, f64), points: usize) -> Result<Self> {
        let unit = self.with_scale(ONE);
        let b = normalize(|x| unit.sample(x).map(|p| p.psi), window, points)?;
        Ok(unit.with_scale(Complex64::new(b, 0.0)))
    }
}

/// Trapezoid rule for `int |psi|^2` over `window`; returns `1/sqrt` of it.
pub fn normalize<F>(sampler: F, window: (f64, f64), points: usize) -> Result<f64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let (lo, hi) = window;
    if points < MIN_NORMALIZATION_POINTS {
        return Err(Error::Argument(format!(
            "normalization needs at least {MIN_NORMALIZATION_POINTS} points, got {points}"
        )));
    }
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::Argument(format!("invalid window [{lo}, {hi}]")));
    }
    let h = (hi - lo) / (points - 1) as f64;
    let mut integral = 0.0;
    for j in 0..points {
        let x = if j + 1 == points {
            hi
        } else {
            lo + j as f64 * h
        };
        let w = if j == 0 || j + 1 == points { 0.5 } else { 1.0 };
        integral += w * sampler(x)?.norm_sqr();
    }
    integral *= h;
    if !(integral.is_finite() && integral >= 1e-280) {
        return Err(Error::NormalizationImpossible { integral });
    }
    Ok(1.0 / integral.sqrt())
}

/// Samples on `points` equally spaced nodes including both ends.
pub fn sample_grid(
    f: &Eigenfunction,
    window: (f64, f64),
    points: usize,
) -> Result<Vec<WavefunctionSample>> {
    if points < 2 {
        return Err(Error::Argument("need at least 2 points".into()));
    }
    let (lo, hi) = window;
    let h = (hi - lo) / (points - 1) as f64;
    (0..points)
        .map(|j| {
            let x = if j + 1 == points {
                hi
            } else {
                lo + j as f64 * h
            };
            f.sample(x)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nu_engine::{rodrigues_polynomial, NUProblem, Sign};
    use crate::poly::QuadPoly;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn classical_values() {
        let legendre = |n| JacobiParams::new(n, c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(jacobi(&legendre(0), c(0.7, 0.2)).unwrap(), ONE);
        assert!((jacobi(&legendre(1), c(0.3, 0.0)).unwrap() - c(0.3, 0.0)).norm() < 1e-15);
        assert!((jacobi(&legendre(2), c(0.0, 0.0)).unwrap() - c(-0.5, 0.0)).norm() < 1e-15);
        assert_eq!(
            jacobi_derivative(&legendre(0), c(0.1, 0.0)).unwrap(),
            c(0.0, 0.0)
        );
        assert_eq!(jacobi_derivative(&legendre(1), c(0.1, 0.0)).unwrap(), ONE);
        assert!(JacobiParams::new(65, ONE, ONE).is_err());
    }

    #[test]
    fn degenerate_recurrence_names_step() {
        // a + b = -4 makes 2k + a + b vanish at k = 2
        let p = JacobiParams::new(4, c(-1.5, 0.0), c(-2.5, 0.0)).unwrap();
        match jacobi(&p, c(0.2, 0.0)) {
            Err(Error::DegenerateJacobi { step, .. }) => assert_eq!(step, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn recurrence_matches_rodrigues() {
        let (a, b) = (c(1.0, 2.0), c(0.5, 0.0));
        // sigma = s(1 - s) with weight s^a (1-s)^b: tau = 1 + a - (2 + a + b) s
        let problem = NUProblem::new(
            QuadPoly::real(0.0, 1.0, -1.0),
            QuadPoly::new(a + 1.0, -(a + b + 2.0), c(0.0, 0.0)),
            QuadPoly::ZERO,
        )
        .unwrap();
        let branch = NUBranch {
            k: c(0.0, 0.0),
            pi: QuadPoly::ZERO,
            tau: problem.tau_tilde,
            lambda: c(0.0, 0.0),
            k_sign: Sign::Minus,
            pi_sign: Sign::Minus,
            admissible: true,
        };
        for n in 0..=5 {
            let y = rodrigues_polynomial(&branch, &problem, n).unwrap();
            let p = JacobiParams::new(n, a, b).unwrap();
            for j in 0..20 {
                let x = c(0.3 + 0.05 * j as f64, 0.1 * (j as f64).sin());
                let direct = jacobi(&p, x).unwrap();
                let via = y.eval((ONE - x) / 2.0);
                assert!(rel(via, direct) <= 1e-9, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let p = JacobiParams::new(5, c(0.7, -0.4), c(1.3, 0.9)).unwrap();
        let h = 1e-6;
        for j in 0..10 {
            let x = c(-0.8 + 0.17 * j as f64, 0.05 * j as f64);
            let fd = (jacobi(&p, x + h).unwrap() - jacobi(&p, x - h).unwrap()) / (2.0 * h);
            assert!(rel(fd, jacobi_derivative(&p, x).unwrap()) <= 1e-6);
            let fd2 = (jacobi_derivative(&p, x + h).unwrap()
                - jacobi_derivative(&p, x - h).unwrap())
                / (2.0 * h);
            assert!(rel(fd2, jacobi_second_derivative(&p, x).unwrap()) <= 1e-6);
        }
    }

    #[test]
    fn coordinate_maps() {
        for v in [
            Variant::PtSymmetric,
            Variant::NonPtComplex,
            Variant::Hermitian,
        ] {
            let s = x_to_s(v, 0.5, 0.0).unwrap();
            assert_eq!(s.re, -1.0);
            assert_eq!(s.im, 0.0);
        }
        let p = PI / 0.5;
        for x in [0.0, 0.3, 1.7, -2.2] {
            let gap = x_to_s(Variant::PtSymmetric, 0.5, x).unwrap()
                - x_to_s(Variant::PtSymmetric, 0.5, x + p).unwrap();
            assert!(gap.norm() < 1e-14);
        }
        let s = x_to_s(Variant::NonPtComplex, 0.5, 2f64.ln()).unwrap();
        assert!((s - c(-2.0, 0.0)).norm() < 1e-14);
        let back = s_to_principal_x(Variant::NonPtComplex, 0.5, s).unwrap();
        assert!((back - c(2f64.ln(), 0.0)).norm() < 1e-14);
        let x = 0.9;
        let s = x_to_s(Variant::PtSymmetric, 0.5, x).unwrap();
        assert!(
            (s_to_principal_x(Variant::PtSymmetric, 0.5, s).unwrap() - c(x, 0.0)).norm() < 1e-14
        );
        assert!(s_to_principal_x(Variant::PtSymmetric, 0.5, c(0.0, 0.0)).is_err());
        assert!(x_to_s(Variant::PtSymmetric, 0.5, f64::NAN).is_err());
    }

    #[test]
    fn printed_pt_spot_value() {
        let params = DimensionlessParams::new(c(-0.25, 0.0), 2.0, 0.0, 0.0, 1.0);
        let f = Eigenfunction::pt_printed(0, &params, 0.5).unwrap();
        let psi0 = f.sample(0.0).unwrap().psi;
        assert!((psi0 - c(0.0, -2.0)).norm() < 1e-14, "{psi0}");
        // second pow route: |s|^1.5 e^{1.5 i arg s}
        let s = f.x_to_s(0.7).unwrap();
        let manual = s.norm().powf(1.5) * Complex64::from_polar(1.0, 1.5 * s.arg()) * (ONE - s);
        assert!(rel(f.eval_s(s).unwrap(), manual) < 1e-13);
        let period = PI / 0.5;
        let gap = f.sample(0.4).unwrap().psi - f.sample(0.4 + period).unwrap().psi;
        assert!(gap.norm() < 1e-13);
        assert_eq!(f.sample(0.0).unwrap().psi, f.sample(period).unwrap().psi);
    }

    #[test]
    fn nonpt_real_case_and_asymptotics() {
        let params = DimensionlessParams::new(c(3.0, 0.0), 1.0, 0.5, 0.0, 1.0);
        let f = Eigenfunction::nonpt_printed(0, &params, 0.5).unwrap();
        // s < 0 real: s^u = |s|^u e^{i pi u}, (1 - s) > 0
        let u = 2f64.sqrt();
        let kappa = 3f64.sqrt() + 1.0;
        for x in [-2.0, 0.1, 1.5] {
            let s = f.x_to_s(x).unwrap();
            let expected = (-s.re).powf(u)
                * Complex64::from_polar(1.0, PI * u)
                * (1.0 - s.re).powf(kappa / 2.0);
            assert!(rel(f.eval_s(s).unwrap(), expected) < 1e-13);
        }
        let f = Eigenfunction::nonpt_printed(2, &params.with_epsilon(c(3.0, 0.4)), 0.5).unwrap();
        let total = (f.s_exp + f.tail_exp).re + 2.0;
        let (x1, x2) = (20.0, 25.0);
        let (s1, s2) = (f.x_to_s(x1).unwrap(), f.x_to_s(x2).unwrap());
        let slope = (f.eval_s(s2).unwrap().norm().ln() - f.eval_s(s1).unwrap().norm().ln())
            / (s2.norm().ln() - s1.norm().ln());
        assert!((slope - total).abs() < 1e-3, "{slope} vs {total}");
    }

    #[test]
    fn singular_points_rejected() {
        let params = DimensionlessParams::new(c(-0.25, 0.0), 2.0, 0.0, 0.0, 1.0);
        let mut f = Eigenfunction::pt_printed(0, &params, 0.5).unwrap();
        f.tail_exp = c(-0.5, 0.0);
        assert!(matches!(f.eval_s(ONE), Err(Error::SingularPoint { .. })));
        f.s_exp = c(-0.5, 0.0);
        assert!(matches!(
            f.eval_s(c(0.0, 0.0)),
            Err(Error::SingularPoint { .. })
        ));
    }

    #[test]
    fn normalization_oracles() {
        let b = normalize(|_| Ok(ONE), (0.0, 2.0), 64).unwrap();
        assert!((b - 0.5f64.sqrt()).abs() < 1e-14);
        let g = |x: f64| Ok(c((-x * x / 2.0).exp(), 0.0));
        let b = normalize(g, (-8.0, 8.0), 1024).unwrap();
        assert!((b - PI.powf(-0.25)).abs() < 1e-6);
        let coarse = normalize(g, (-8.0, 8.0), 512).unwrap();
        assert!((coarse - b).abs() / b < 1e-6);
        assert!(normalize(g, (-8.0, 8.0), 63).is_err());
        assert!(matches!(
            normalize(|_| Ok(c(0.0, 0.0)), (0.0, 1.0), 64),
            Err(Error::NormalizationImpossible { .. })
        ));
    }

    #[test]
    fn consistent_eigenfunctions_build_for_both_cases() {
        let params = DimensionlessParams::new(c(0.0, 0.0), 2.0, 0.1, 0.0, 1.0);
        for n in 0..4 {
            let f = Eigenfunction::consistent(Variant::PtSymmetric, n, &params, 0.5).unwrap();
            assert_eq!(f.n(), n);
            let g = Eigenfunction::consistent(Variant::NonPtComplex, n, &params, 0.5).unwrap();
            assert_eq!(g.n(), n);
        }
    }
}
