//! Small complex polynomials.
//!
//! [`QuadPoly`] holds the degree <= 2 coefficient polynomials of a
//! hypergeometric-type equation; [`Polynomial`] holds the arbitrary-degree
//! output of the Rodrigues construction.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `c0 + c1 s + c2 s^2` with complex coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadPoly {
    pub c0: Complex64,
    pub c1: Complex64,
    pub c2: Complex64,
}

impl QuadPoly {
    pub const ZERO: QuadPoly = QuadPoly {
        c0: ZERO,
        c1: ZERO,
        c2: ZERO,
    };

    pub fn new(c0: Complex64, c1: Complex64, c2: Complex64) -> Self {
        Self { c0, c1, c2 }
    }

    pub fn real(c0: f64, c1: f64, c2: f64) -> Self {
        Self::new(c0.into(), c1.into(), c2.into())
    }

    pub fn linear(c0: Complex64, c1: Complex64) -> Self {
        Self::new(c0, c1, ZERO)
    }

    pub fn coeffs(&self) -> [Complex64; 3] {
        [self.c0, self.c1, self.c2]
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs()
            .iter()
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Highest index with a nonzero coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs().iter().rposition(|c| c.norm() > 0.0)
    }

    /// Largest coefficient magnitude.
    pub fn scale(&self) -> f64 {
        self.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        (self.c2 * s + self.c1) * s + self.c0
    }

    pub fn derivative(&self) -> QuadPoly {
        QuadPoly::linear(self.c1, self.c2 * 2.0)
    }

    /// Constant second derivative `2 c2`.
    pub fn second_derivative(&self) -> Complex64 {
        self.c2 * 2.0
    }

    /// Square of a polynomial of degree <= 1. Higher-degree terms are ignored.
    pub fn square_linear(&self) -> QuadPoly {
        QuadPoly::new(
            self.c0 * self.c0,
            self.c0 * self.c1 * 2.0,
            self.c1 * self.c1,
        )
    }
}

impl Add for QuadPoly {
    type Output = QuadPoly;
    fn add(self, rhs: QuadPoly) -> QuadPoly {
        QuadPoly::new(self.c0 + rhs.c0, self.c1 + rhs.c1, self.c2 + rhs.c2)
    }
}

impl Sub for QuadPoly {
    type Output = QuadPoly;
    fn sub(self, rhs: QuadPoly) -> QuadPoly {
        QuadPoly::new(self.c0 - rhs.c0, self.c1 - rhs.c1, self.c2 - rhs.c2)
    }
}

impl Neg for QuadPoly {
    type Output = QuadPoly;
    fn neg(self) -> QuadPoly {
        QuadPoly::new(-self.c0, -self.c1, -self.c2)
    }
}

impl Mul<Complex64> for QuadPoly {
    type Output = QuadPoly;
    fn mul(self, k: Complex64) -> QuadPoly {
        QuadPoly::new(self.c0 * k, self.c1 * k, self.c2 * k)
    }
}

impl Mul<f64> for QuadPoly {
    type Output = QuadPoly;
    fn mul(self, k: f64) -> QuadPoly {
        QuadPoly::new(self.c0 * k, self.c1 * k, self.c2 * k)
    }
}

/// Dense polynomial, lowest power first.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().is_some_and(|c| c.norm() == 0.0) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(ZERO);
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Degree of the polynomial; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * s + c)
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() == 1 {
            return Polynomial::constant(ZERO);
        }
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, &c)| c * j as f64)
                .collect(),
        )
    }

    pub fn scale(&self, k: Complex64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|&c| c * k).collect())
    }

    /// Product with `a + b s`.
    pub fn mul_linear(&self, a: Complex64, b: Complex64) -> Polynomial {
        let mut out = vec![ZERO; self.coeffs.len() + 1];
        for (j, &c) in self.coeffs.iter().enumerate() {
            out[j] += c * a;
            out[j + 1] += c * b;
        }
        Polynomial::new(out)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = vec![ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[Complex64], j: usize| v.get(j).copied().unwrap_or(ZERO);
        Polynomial::new(
            (0..len)
                .map(|j| get(&self.coeffs, j) + get(&other.coeffs, j))
                .collect(),
        )
    }

    /// `(a + b s)^k`.
    pub fn linear_power(a: Complex64, b: Complex64, k: usize) -> Polynomial {
        (0..k).fold(Polynomial::one(), |p, _| p.mul_linear(a, b))
    }
}

impl From<QuadPoly> for Polynomial {
    fn from(q: QuadPoly) -> Self {
        Polynomial::new(q.coeffs().to_vec())
    }
}
