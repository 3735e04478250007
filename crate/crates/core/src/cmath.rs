use num_complex::Complex64;

use crate::error::{Error, Result};

/// `base^exponent` on the principal branch (`Arg` in `(-pi, pi]`).
///
/// Zero bases are resolved explicitly: `0^0 = 1`, `0^w = 0` for `Re w > 0`,
/// and a singular-point error otherwise.
pub fn principal_pow(base: Complex64, exponent: Complex64) -> Result<Complex64> {
    if base.norm() == 0.0 {
        if exponent.norm() == 0.0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        if exponent.re > 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        return Err(Error::SingularPoint {
            s: base,
            reason: format!("zero raised to exponent {exponent} with nonpositive real part"),
        });
    }
    Ok((exponent * base.ln()).exp())
}

/// Larger of the magnitudes, never below `floor`.
pub(crate) fn max_norm(values: &[Complex64], floor: f64) -> f64 {
    values.iter().map(|c| c.norm()).fold(floor, f64::max)
}
