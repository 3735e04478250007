//! Nikiforov-Uvarov reduction of
//!
//! `psi'' + (tau~/sigma) psi' + (sigma~/sigma^2) psi = 0`
//!
//! to the hypergeometric-type equation `sigma y'' + tau y' + lambda y = 0`
//! through `psi = phi(s) y(s)` with `phi'/phi = pi/sigma`.
//!
//! The constant `k` is fixed by requiring the radicand
//! `R(s; k) = ((sigma' - tau~)/2)^2 - sigma~ + k sigma` to be the square of a
//! linear polynomial; `pi = (sigma' - tau~)/2 +- sqrt(R)`, `tau = tau~ + 2 pi`
//! and `lambda = k + pi'`. Every `(k, pi)` pair is kept: the caller decides
//! which branch is physical.

use num_complex::Complex64;

use crate::cmath::{max_norm, principal_pow};
use crate::error::{Error, Result};
use crate::poly::{Polynomial, QuadPoly};

/// Relative tolerance of the perfect-square certificate.
pub const PERFECT_SQUARE_TOL: f64 = 1e-9;
/// Two `k` roots closer than this (relative) are merged.
pub const K_DUPLICATE_TOL: f64 = 1e-12;
/// Secant convergence threshold on `|lambda - lambda_n|`.
pub const SECANT_TOL: f64 = 1e-11;
pub const SECANT_MAX_ITER: usize = 200;
/// Largest degree accepted by [`rodrigues_polynomial`].
pub const RODRIGUES_MAX_DEGREE: usize = 32;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Coefficient polynomials of the generalized hypergeometric equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NUProblem {
    pub sigma: QuadPoly,
    pub tau_tilde: QuadPoly,
    pub sigma_tilde: QuadPoly,
}

impl NUProblem {
    pub fn new(sigma: QuadPoly, tau_tilde: QuadPoly, sigma_tilde: QuadPoly) -> Result<Self> {
        if sigma.degree().is_none() {
            return Err(Error::Structural("sigma is identically zero".into()));
        }
        if tau_tilde.c2.norm() > 0.0 {
            return Err(Error::Structural("tau~ must have degree <= 1".into()));
        }
        if !(sigma.is_finite() && tau_tilde.is_finite() && sigma_tilde.is_finite()) {
            return Err(Error::Structural("coefficients must be finite".into()));
        }
        Ok(Self {
            sigma,
            tau_tilde,
            sigma_tilde,
        })
    }

    /// `(sigma' - tau~) / 2`
    pub fn half_drift(&self) -> QuadPoly {
        (self.sigma.derivative() - self.tau_tilde) * 0.5
    }

    /// `R(s; k)`
    pub fn radicand(&self, k: Complex64) -> QuadPoly {
        self.half_drift().square_linear() - self.sigma_tilde + self.sigma * k
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }
}

/// One resolved `(k, pi)` choice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NUBranch {
    pub k: Complex64,
    pub pi: QuadPoly,
    pub tau: QuadPoly,
    pub lambda: Complex64,
    /// Which root of the discriminant condition; a unique root is `Minus`.
    pub k_sign: Sign,
    pub pi_sign: Sign,
    /// `Re tau' < 0`.
    pub admissible: bool,
}

/// All `k` for which `R(s; k)` is the square of a linear polynomial, minus
/// root first.
pub fn k_candidates(p: &NUProblem) -> Result<Vec<Complex64>> {
    // R(s; k) = a + k b coefficientwise; its discriminant r1^2 - 4 r2 r0 is
    // a quadratic K2 k^2 + K1 k + K0.
    let a = p.radicand(ZERO);
    let b = p.sigma;
    let k2 = b.c1 * b.c1 - b.c2 * b.c0 * 4.0;
    let k1 = a.c1 * b.c1 * 2.0 - (a.c2 * b.c0 + b.c2 * a.c0) * 4.0;
    let k0 = a.c1 * a.c1 - a.c2 * a.c0 * 4.0;
    let scale = max_norm(&[k2, k1, k0], 0.0);
    if scale == 0.0 {
        // Every k gives a square (R stays degree <= 1 in s). Take the k that
        // leaves R free of its constant term, else of its linear term.
        let tiny = 1e-14 * b.scale();
        if b.c0.norm() > tiny {
            return Ok(vec![-a.c0 / b.c0]);
        }
        if b.c1.norm() > tiny {
            return Ok(vec![-a.c1 / b.c1]);
        }
        return Err(Error::Structural(
            "discriminant vanishes identically; k is undetermined".into(),
        ));
    }

    if k2.norm() > 1e-14 * scale {
        let disc = (k1 * k1 - k2 * k0 * 4.0).sqrt();
        // Pick the sign that avoids cancellation, then recover the partner
        // root from the product k0 / k2.
        let plus_side = (k1.conj() * disc).re >= 0.0;
        let big = if plus_side {
            -(k1 + disc)
        } else {
            -(k1 - disc)
        } * 0.5;
        let (minus_root, plus_root) = if big.norm() == 0.0 {
            (ZERO, ZERO)
        } else if plus_side {
            (big / k2, k0 / big)
        } else {
            (k0 / big, big / k2)
        };
        let tol = K_DUPLICATE_TOL * minus_root.norm().max(plus_root.norm()).max(1.0);
        if (minus_root - plus_root).norm() <= tol {
            Ok(vec![(minus_root + plus_root) * 0.5])
        } else {
            Ok(vec![minus_root, plus_root])
        }
    } else if k1.norm() > 1e-14 * scale {
        Ok(vec![-k0 / k1])
    } else {
        Err(Error::Structural(
            "no finite k makes the radicand a perfect square".into(),
        ))
    }
}

/// Linear `L` with `L^2 = R`, sign-normalized so that the constant term is
/// the principal square root of `R(0)` (or, when `R(0)` vanishes, the slope is
/// the principal root of the leading coefficient).
fn linear_square_root(r: &QuadPoly) -> Result<QuadPoly> {
    let scale = r.scale();
    if scale == 0.0 {
        return Ok(QuadPoly::ZERO);
    }
    let negligible = PERFECT_SQUARE_TOL * scale;
    let (mut c, mut d) = if r.c2.norm() >= r.c0.norm() {
        let c = r.c2.sqrt();
        (c, r.c1 / (c * 2.0))
    } else {
        let d = r.c0.sqrt();
        (r.c1 / (d * 2.0), d)
    };
    if r.c2.norm() <= negligible && r.c0.norm() <= negligible {
        // only a linear term is left, which is never a square
        c = ZERO;
        d = ZERO;
    }
    let residual = max_norm(&[c * c - r.c2, c * d * 2.0 - r.c1, d * d - r.c0], 0.0) / scale;
    if residual > PERFECT_SQUARE_TOL || !residual.is_finite() {
        return Err(Error::NotPerfectSquare { residual });
    }
    let flip = if r.c0.norm() > negligible {
        let root = r.c0.sqrt();
        (d - root).norm() > (d + root).norm()
    } else {
        let root = r.c2.sqrt();
        (c - root).norm() > (c + root).norm()
    };
    if flip {
        c = -c;
        d = -d;
    }
    Ok(QuadPoly::linear(d, c))
}

/// `[pi_minus, pi_plus] = (sigma' - tau~)/2 -+ sqrt(R(s; k))`.
pub fn pi_branches(p: &NUProblem, k: Complex64) -> Result<[QuadPoly; 2]> {
    let root = linear_square_root(&p.radicand(k))?;
    let base = p.half_drift();
    Ok([base - root, base + root])
}

fn make_branch(p: &NUProblem, k: Complex64, k_sign: Sign, pi: QuadPoly, pi_sign: Sign) -> NUBranch {
    let tau = p.tau_tilde + pi * 2.0;
    NUBranch {
        k,
        pi,
        tau,
        lambda: k + pi.c1,
        k_sign,
        pi_sign,
        admissible: tau.c1.re < 0.0,
    }
}

/// Every `(k, pi)` combination, ordered minus-root `k` first and, within each
/// `k`, minus-sign `pi` first. Inadmissible branches are kept.
pub fn resolve_branches(p: &NUProblem) -> Result<Vec<NUBranch>> {
    let ks = k_candidates(p)?;
    let mut out = Vec::with_capacity(2 * ks.len());
    for (idx, &k) in ks.iter().enumerate() {
        let k_sign = if idx == 0 { Sign::Minus } else { Sign::Plus };
        let [minus, plus] = pi_branches(p, k)?;
        out.push(make_branch(p, k, k_sign, minus, Sign::Minus));
        out.push(make_branch(p, k, k_sign, plus, Sign::Plus));
    }
    Ok(out)
}

/// `lambda_n = -n tau' - n (n - 1) sigma'' / 2`.
pub fn lambda_n(p: &NUProblem, branch: &NUBranch, n: usize) -> Complex64 {
    let n = n as f64;
    -branch.tau.c1 * n - p.sigma.second_derivative() * (n * (n - 1.0) / 2.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchSelector {
    /// Position in the [`resolve_branches`] ordering.
    Index(usize),
    /// First branch with `Re tau' < 0`.
    FirstAdmissible,
}

pub fn select_branch(branches: &[NUBranch], selector: BranchSelector) -> Result<NUBranch> {
    match selector {
        BranchSelector::Index(index) => branches.get(index).copied().ok_or(Error::BranchIndex {
            index,
            available: branches.len(),
        }),
        BranchSelector::FirstAdmissible => branches
            .iter()
            .find(|b| b.admissible)
            .copied()
            .ok_or_else(|| Error::Argument("no branch has Re tau' < 0".into())),
    }
}

/// `lambda(eps) - lambda_n(eps)` on the selected branch of the problem built
/// for `eps`.
pub fn quantization_residual<F>(
    family: F,
    selector: BranchSelector,
    n: usize,
    eps: Complex64,
) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<NUProblem>,
{
    let problem = family(eps)?;
    let branches = resolve_branches(&problem)?;
    let branch = select_branch(&branches, selector)?;
    Ok(branch.lambda - lambda_n(&problem, &branch, n))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenSolution {
    pub epsilon: Complex64,
    pub residual: f64,
    pub iterations: usize,
}

/// Secant iteration on the quantization residual in the complex plane.
pub fn solve_eigenvalue<F>(
    family: F,
    selector: BranchSelector,
    n: usize,
    seed: Complex64,
) -> Result<EigenSolution>
where
    F: Fn(Complex64) -> Result<NUProblem>,
{
    let f = |eps| quantization_residual(&family, selector, n, eps);
    let mut x0 = seed;
    let mut f0 = f(x0)?;
    if f0.norm() < SECANT_TOL {
        return Ok(EigenSolution {
            epsilon: x0,
            residual: f0.norm(),
            iterations: 0,
        });
    }
    let mut x1 = seed + Complex64::new(1e-3 * seed.norm().max(1.0), 0.0);
    let mut f1 = f(x1)?;
    for iteration in 1..=SECANT_MAX_ITER {
        if f1.norm() < SECANT_TOL {
            return Ok(EigenSolution {
                epsilon: x1,
                residual: f1.norm(),
                iterations: iteration,
            });
        }
        let slope = f1 - f0;
        let step = if slope.norm() == 0.0 {
            // flat secant: nudge instead of dividing by zero
            Complex64::new(1e-6 * x1.norm().max(1.0), 0.0)
        } else {
            f1 * (x1 - x0) / slope
        };
        x0 = x1;
        f0 = f1;
        x1 -= step;
        f1 = f(x1)?;
    }
    Err(Error::Convergence {
        last: x1,
        residual: f1.norm(),
        iterations: SECANT_MAX_ITER,
    })
}

/// A solution of `w'/w = g(s) / sigma(s)` for linear `g`, in one of the
/// canonical factorized shapes. The overall constant is left at 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FactorForm {
    /// `s^s_exp (1 - q s)^tail_exp`, for `sigma = lead * s (1 - q s)`.
    Beta {
        s_exp: Complex64,
        tail_exp: Complex64,
        q: Complex64,
        lead: Complex64,
    },
    /// `(1 - s)^minus_exp (1 + s)^plus_exp`, for `sigma = lead * (1 - s^2)`.
    Jacobi {
        minus_exp: Complex64,
        plus_exp: Complex64,
        lead: Complex64,
    },
    /// `t^s_exp e^{rate t}` with `t = s + shift`, for `sigma = lead * t`.
    Laguerre {
        shift: Complex64,
        s_exp: Complex64,
        rate: Complex64,
        lead: Complex64,
    },
    /// Gaussian-type `exp(linear s + quadratic s^2)`, for constant `sigma = lead`.
    Exponential {
        linear: Complex64,
        quadratic: Complex64,
        lead: Complex64,
    },
}

impl FactorForm {
    pub fn eval(&self, s: Complex64) -> Result<Complex64> {
        match *self {
            FactorForm::Beta {
                s_exp, tail_exp, q, ..
            } => Ok(principal_pow(s, s_exp)? * principal_pow(ONE - q * s, tail_exp)?),
            FactorForm::Jacobi {
                minus_exp,
                plus_exp,
                ..
            } => Ok(principal_pow(ONE - s, minus_exp)? * principal_pow(ONE + s, plus_exp)?),
            FactorForm::Laguerre {
                shift, s_exp, rate, ..
            } => {
                let t = s + shift;
                Ok(principal_pow(t, s_exp)? * (rate * t).exp())
            }
            FactorForm::Exponential {
                linear, quadratic, ..
            } => Ok((linear * s + quadratic * s * s).exp()),
        }
    }

    /// `w'(s) / w(s)`
    pub fn log_derivative(&self, s: Complex64) -> Complex64 {
        match *self {
            FactorForm::Beta {
                s_exp, tail_exp, q, ..
            } => s_exp / s - q * tail_exp / (ONE - q * s),
            FactorForm::Jacobi {
                minus_exp,
                plus_exp,
                ..
            } => -minus_exp / (ONE - s) + plus_exp / (ONE + s),
            FactorForm::Laguerre {
                shift, s_exp, rate, ..
            } => s_exp / (s + shift) + rate,
            FactorForm::Exponential {
                linear, quadratic, ..
            } => linear + quadratic * s * 2.0,
        }
    }
}

/// Solves `w'/w = numerator / sigma` for a numerator of degree <= 1.
pub fn factor_for(sigma: &QuadPoly, numerator: &QuadPoly) -> Result<FactorForm> {
    let (n0, n1) = (numerator.c0, numerator.c1);
    let tiny = 1e-14 * sigma.scale();
    match sigma.degree() {
        None => Err(Error::UnsupportedSigma("sigma is zero".into())),
        Some(0) => {
            let lead = sigma.c0;
            Ok(FactorForm::Exponential {
                linear: n0 / lead,
                quadratic: n1 / (lead * 2.0),
                lead,
            })
        }
        Some(1) => {
            let lead = sigma.c1;
            let shift = sigma.c0 / lead;
            Ok(FactorForm::Laguerre {
                shift,
                s_exp: (n0 - n1 * shift) / lead,
                rate: n1 / lead,
                lead,
            })
        }
        Some(_) => {
            if sigma.c0.norm() <= tiny && sigma.c1.norm() > tiny {
                let lead = sigma.c1;
                let q = -sigma.c2 / lead;
                let s_exp = n0 / lead;
                Ok(FactorForm::Beta {
                    s_exp,
                    tail_exp: -n1 / (lead * q) - s_exp,
                    q,
                    lead,
                })
            } else if sigma.c1.norm() <= tiny && (sigma.c2 + sigma.c0).norm() <= tiny {
                let lead = sigma.c0;
                let (g0, g1) = (n0 / lead, n1 / lead);
                Ok(FactorForm::Jacobi {
                    minus_exp: (-g1 - g0) * 0.5,
                    plus_exp: (g0 - g1) * 0.5,
                    lead,
                })
            } else {
                Err(Error::UnsupportedSigma(format!(
                    "sigma = {} + {} s + {} s^2 is not of the form s(1-qs) or 1-s^2",
                    sigma.c0, sigma.c1, sigma.c2
                )))
            }
        }
    }
}

/// Weight function `rho` with `(sigma rho)' = tau rho`.
pub fn weight_function(branch: &NUBranch, p: &NUProblem) -> Result<FactorForm> {
    factor_for(&p.sigma, &(branch.tau - p.sigma.derivative()))
}

/// The factor `phi` with `phi'/phi = pi/sigma`, so that `psi = phi y`.
pub fn phi_factor(branch: &NUBranch, p: &NUProblem) -> Result<FactorForm> {
    factor_for(&p.sigma, &branch.pi)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|j| j as f64).product()
}

/// `y_n = (1/n!) rho^{-1} d^n/ds^n [sigma^n rho]`, computed by exact
/// differentiation of the factorized terms.
pub fn rodrigues_polynomial(branch: &NUBranch, p: &NUProblem, n: usize) -> Result<Polynomial> {
    if n > RODRIGUES_MAX_DEGREE {
        return Err(Error::DegreeTooHigh {
            n,
            max: RODRIGUES_MAX_DEGREE,
        });
    }
    let weight = weight_function(branch, p)?;
    let norm = Complex64::new(1.0 / factorial(n), 0.0);
    let poly = match weight {
        FactorForm::Beta {
            s_exp,
            tail_exp,
            q,
            lead,
        } => {
            // coefficient j multiplies s^{A+j} (1-qs)^{B+k}, j + k fixed per step
            let coeffs = differentiate_two_factor(n, lead.powu(n as u32), |j, k, c| {
                (c * (s_exp + j as f64), -c * q * (tail_exp + k as f64))
            });
            expand_two_factor(&coeffs, (ZERO, ONE), (ONE, -q))
        }
        FactorForm::Jacobi {
            minus_exp,
            plus_exp,
            lead,
        } => {
            let coeffs = differentiate_two_factor(n, lead.powu(n as u32), |j, k, c| {
                (-c * (minus_exp + j as f64), c * (plus_exp + k as f64))
            });
            expand_two_factor(&coeffs, (ONE, -ONE), (ONE, ONE))
        }
        FactorForm::Laguerre {
            shift,
            s_exp,
            rate,
            lead,
        } => {
            // k counts nothing here: the exponential factor is reproduced
            let coeffs = differentiate_two_factor(n, lead.powu(n as u32), |j, _, c| {
                (c * (s_exp + j as f64), c * rate)
            });
            coeffs
                .iter()
                .enumerate()
                .fold(Polynomial::constant(ZERO), |acc, (j, &c)| {
                    acc.add(&Polynomial::linear_power(shift, ONE, j).scale(c))
                })
        }
        FactorForm::Exponential {
            linear,
            quadratic,
            lead,
        } => {
            let drift = Polynomial::new(vec![linear, quadratic * 2.0]);
            (0..n).fold(Polynomial::constant(lead.powu(n as u32)), |acc, _| {
                acc.derivative().add(&acc.mul(&drift))
            })
        }
    };
    Ok(poly.scale(norm))
}

/// Differentiates `sum_j c_j f^{A+j} g^{B+k}` `n` times starting from the
/// single term `j = k = n`. `step(j, k, c)` returns the contributions to the
/// `j - 1` term and the `j` term (with `k` lowered) of `d/ds` of one term.
fn differentiate_two_factor<F>(n: usize, start: Complex64, step: F) -> Vec<Complex64>
where
    F: Fn(usize, usize, Complex64) -> (Complex64, Complex64),
{
    let mut coeffs = vec![ZERO; n + 1];
    coeffs[n] = start;
    for t in 0..n {
        let total = 2 * n - t;
        let mut next = vec![ZERO; n + 1];
        for (j, &c) in coeffs.iter().enumerate() {
            if c == ZERO || j > total {
                continue;
            }
            let k = total - j;
            let (lower, same) = step(j, k, c);
            if j > 0 {
                next[j - 1] += lower;
            }
            next[j] += same;
        }
        coeffs = next;
    }
    coeffs
}

/// `sum_j c_j f^j g^{n-j}` for linear `f`, `g` given as `(constant, slope)`.
fn expand_two_factor(
    coeffs: &[Complex64],
    f: (Complex64, Complex64),
    g: (Complex64, Complex64),
) -> Polynomial {
    let n = coeffs.len() - 1;
    coeffs
        .iter()
        .enumerate()
        .fold(Polynomial::constant(ZERO), |acc, (j, &c)| {
            let term = Polynomial::linear_power(f.0, f.1, j)
                .mul(&Polynomial::linear_power(g.0, g.1, n - j))
                .scale(c);
            acc.add(&term)
        })
}
