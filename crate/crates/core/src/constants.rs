//! Physical constants (CODATA 2018) and the handful of unit conversions the
//! rest of the crate needs. Everything public is SI; atomic units only show up
//! at the edges.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_non_negative, ensure_positive, Error, Result};

/// International mile, exact.
pub const METERS_PER_MILE: f64 = 1609.344;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalConstants {
    /// Speed of light in vacuum, m/s.
    pub c: f64,
    /// Vacuum permeability, H/m.
    pub mu0: f64,
    /// Vacuum permittivity, F/m.
    pub eps0: f64,
    /// Planck constant, J s.
    pub h: f64,
    /// Reduced Planck constant, J s.
    pub hbar: f64,
    /// Elementary charge, C.
    pub e_charge: f64,
    /// Bohr radius, m.
    pub a0: f64,
    /// Atomic unit of electric dipole moment e*a0, C m.
    pub ea0: f64,
}

const H_2018: f64 = 6.626_070_15e-34;
const E_2018: f64 = 1.602_176_634e-19;
const A0_2018: f64 = 5.291_772_109_03e-11;

pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
    c: 299_792_458.0,
    mu0: 1.256_637_062_12e-6,
    eps0: 8.854_187_812_8e-12,
    h: H_2018,
    hbar: H_2018 / (2.0 * PI),
    e_charge: E_2018,
    a0: A0_2018,
    ea0: E_2018 * A0_2018,
};

impl Default for PhysicalConstants {
    fn default() -> Self {
        CODATA_2018
    }
}

impl PhysicalConstants {
    /// Copy with the speed of light scaled by `factor`, all other values
    /// untouched. Used by sensitivity checks.
    pub fn with_scaled_c(mut self, factor: f64) -> Self {
        self.c *= factor;
        self
    }
}

/// A measured or inferred value with a symmetric absolute 1-sigma uncertainty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UncertainValue {
    pub value: f64,
    pub sigma: f64,
}

impl UncertainValue {
    pub fn new(value: f64, sigma: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::input(
                "value",
                format!("must be finite, got {value}"),
            ));
        }
        ensure_non_negative("sigma", sigma)?;
        Ok(Self { value, sigma })
    }

    pub fn exact(value: f64) -> Self {
        Self { value, sigma: 0.0 }
    }

    /// `sigma / |value|`, zero for an exact zero.
    pub fn relative(&self) -> f64 {
        if self.value == 0.0 {
            0.0
        } else {
            self.sigma / self.value.abs()
        }
    }

    /// Multiplies by an exact factor.
    pub fn scale(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            sigma: self.sigma * factor.abs(),
        }
    }

    pub fn low(&self) -> f64 {
        self.value - self.sigma
    }

    pub fn high(&self) -> f64 {
        self.value + self.sigma
    }
}

impl fmt::Display for UncertainValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.3e} ± {:.3e}", self.value, self.sigma)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LengthUnit {
    Mile,
    Centimeter,
    Meter,
    Bohr,
}

impl LengthUnit {
    pub fn meters_per_unit(self, consts: &PhysicalConstants) -> f64 {
        match self {
            LengthUnit::Mile => METERS_PER_MILE,
            LengthUnit::Centimeter => 0.01,
            LengthUnit::Meter => 1.0,
            LengthUnit::Bohr => consts.a0,
        }
    }
}

impl FromStr for LengthUnit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "mile" | "mi" => Ok(LengthUnit::Mile),
            "cm" => Ok(LengthUnit::Centimeter),
            "m" => Ok(LengthUnit::Meter),
            "bohr" | "a0" => Ok(LengthUnit::Bohr),
            other => Err(Error::input(
                "unit",
                format!("unknown length unit `{other}`"),
            )),
        }
    }
}

pub fn convert_length(consts: &PhysicalConstants, value: f64, unit: LengthUnit) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::input("value", "length must be finite"));
    }
    Ok(value * unit.meters_per_unit(consts))
}

pub fn meters_to(consts: &PhysicalConstants, meters: f64, unit: LengthUnit) -> Result<f64> {
    if !meters.is_finite() {
        return Err(Error::input("value", "length must be finite"));
    }
    Ok(meters / unit.meters_per_unit(consts))
}

pub fn wavelength_to_frequency(consts: &PhysicalConstants, wavelength: f64) -> Result<f64> {
    ensure_positive("wavelength", wavelength)?;
    Ok(consts.c / wavelength)
}

pub fn frequency_to_wavelength(consts: &PhysicalConstants, frequency: f64) -> Result<f64> {
    ensure_positive("frequency", frequency)?;
    Ok(consts.c / frequency)
}

/// C m to units of e*a0.
pub fn dipole_si_to_atomic(consts: &PhysicalConstants, d: f64) -> f64 {
    d / consts.ea0
}

pub fn dipole_atomic_to_si(consts: &PhysicalConstants, d: f64) -> f64 {
    d * consts.ea0
}
