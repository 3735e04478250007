//! Flat `key=value` parameter files.
//!
//! ```text
//! # PT-symmetric well
//! variant=pt
//! V0R=1
//! alphaI=0.5
//! C=0
//! ```
//!
//! Keys: `variant, V0R, V0I, alpha, alphaI, R0, q, C, hbar, mass`. Blank
//! lines and `#` comments are ignored. Leaving out `q` or `C` selects the
//! derived defaults.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::potential::{PotentialSpec, UnitsConfig, Variant};

pub const KEYS: [&str; 10] = [
    "variant", "V0R", "V0I", "alpha", "alphaI", "R0", "q", "C", "hbar", "mass",
];

const DEFAULT_V0R: f64 = 1.0;
const DEFAULT_STEEPNESS: f64 = 0.5;

/// A partially specified parameter record. Absent entries fall back to
/// defaults in [`ParamSet::resolve`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParamSet {
    pub variant: Option<Variant>,
    pub v0r: Option<f64>,
    pub v0i: Option<f64>,
    pub alpha: Option<f64>,
    pub alpha_i: Option<f64>,
    pub r0: Option<f64>,
    pub q: Option<f64>,
    pub c: Option<f64>,
    pub hbar: Option<f64>,
    pub mass: Option<f64>,
}

impl ParamSet {
    pub fn parse(text: &str) -> Result<Self> {
        let mut set = ParamSet::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: idx + 1,
                message: format!("expected key=value, got '{line}'"),
            })?;
            let key = key.trim();
            if set.get(key).is_some() {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("duplicate key '{key}'"),
                });
            }
            set.set(key, value.trim()).map_err(|e| Error::Parse {
                line: idx + 1,
                message: e.to_string(),
            })?;
        }
        Ok(set)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Assigns one key from its textual value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        if key == "variant" {
            self.variant = Some(value.parse()?);
            return Ok(());
        }
        let number: f64 = value.parse().map_err(|_| {
            Error::InvalidParameter(format!("value for {key} is not a number: '{value}'"))
        })?;
        let slot = match key {
            "V0R" => &mut self.v0r,
            "V0I" => &mut self.v0i,
            "alpha" => &mut self.alpha,
            "alphaI" => &mut self.alpha_i,
            "R0" => &mut self.r0,
            "q" => &mut self.q,
            "C" => &mut self.c,
            "hbar" => &mut self.hbar,
            "mass" => &mut self.mass,
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown key '{other}' (expected one of {})",
                    KEYS.join(", ")
                )))
            }
        };
        *slot = Some(number);
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<String> {
        let num = |v: Option<f64>| v.map(|x| x.to_string());
        match key {
            "variant" => self.variant.map(|v| v.to_string()),
            "V0R" => num(self.v0r),
            "V0I" => num(self.v0i),
            "alpha" => num(self.alpha),
            "alphaI" => num(self.alpha_i),
            "R0" => num(self.r0),
            "q" => num(self.q),
            "C" => num(self.c),
            "hbar" => num(self.hbar),
            "mass" => num(self.mass),
            _ => None,
        }
    }

    /// Entries present in `overrides` replace those in `self`.
    pub fn merged_with(&self, overrides: &ParamSet) -> ParamSet {
        ParamSet {
            variant: overrides.variant.or(self.variant),
            v0r: overrides.v0r.or(self.v0r),
            v0i: overrides.v0i.or(self.v0i),
            alpha: overrides.alpha.or(self.alpha),
            alpha_i: overrides.alpha_i.or(self.alpha_i),
            r0: overrides.r0.or(self.r0),
            q: overrides.q.or(self.q),
            c: overrides.c.or(self.c),
            hbar: overrides.hbar.or(self.hbar),
            mass: overrides.mass.or(self.mass),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for key in KEYS {
            if let Some(v) = self.get(key) {
                let _ = writeln!(out, "{key}={v}");
            }
        }
        out
    }

    pub fn resolve_units(&self) -> Result<UnitsConfig> {
        UnitsConfig::new(self.hbar.unwrap_or(1.0), self.mass.unwrap_or(1.0))
    }

    /// Builds the potential. The variant is mandatory; everything else has a
    /// default.
    pub fn resolve(&self) -> Result<(PotentialSpec, UnitsConfig)> {
        let variant = self
            .variant
            .ok_or_else(|| Error::InvalidParameter("variant is required".into()))?;
        let v0r = self.v0r.unwrap_or(DEFAULT_V0R);
        let alpha = self.alpha.unwrap_or(DEFAULT_STEEPNESS);
        let r0 = self.r0.unwrap_or(0.0);
        let mut spec = match variant {
            Variant::Hermitian => {
                if self.v0i.is_some_and(|v| v != 0.0) {
                    return Err(Error::InvalidParameter(
                        "V0I must be 0 for the hermitian variant".into(),
                    ));
                }
                PotentialSpec::hermitian(v0r, alpha, r0)?
            }
            Variant::PtSymmetric => {
                if self.v0i.is_some_and(|v| v != 0.0) {
                    return Err(Error::InvalidParameter(
                        "V0I must be 0 for the pt variant".into(),
                    ));
                }
                PotentialSpec::pt_symmetric(v0r, self.alpha_i.unwrap_or(DEFAULT_STEEPNESS))?
            }
            Variant::NonPtComplex => {
                PotentialSpec::non_pt(v0r, self.v0i.unwrap_or(0.0), alpha, r0)?
            }
        };
        if let Some(q) = self.q {
            spec = spec.with_q(q)?;
        }
        if let Some(c) = self.c {
            spec = spec.with_c(c)?;
        }
        Ok((spec, self.resolve_units()?))
    }

    /// Record describing an existing spec. `q` and `C` are written only when
    /// they were overridden, so the record resolves back to the same spec.
    pub fn from_spec(spec: &PotentialSpec, units: &UnitsConfig) -> ParamSet {
        let pt = spec.variant == Variant::PtSymmetric;
        ParamSet {
            variant: Some(spec.variant),
            v0r: Some(spec.v0r),
            v0i: (spec.variant == Variant::NonPtComplex).then_some(spec.v0i),
            alpha: (!pt).then_some(spec.alpha),
            alpha_i: pt.then_some(spec.alpha_i),
            r0: (!pt).then_some(spec.r0),
            q: spec.q_overridden().then_some(spec.q),
            c: spec.c_overridden().then_some(spec.c),
            hbar: Some(units.hbar),
            mass: Some(units.mass),
        }
    }
}
