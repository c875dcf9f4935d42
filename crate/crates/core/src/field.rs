//! Radiated power and efficiency inferred from a far-field magnetic flux
//! density measurement, plus the VSWR-limited bandwidth of a matched
//! resonator.
//!
//! Uncertainties propagate to first order with no correlations: power goes as
//! B^2, so its relative uncertainty is twice that of the field; every later
//! step is a division by an exact number.

use std::f64::consts::PI;

use serde::Serialize;

use crate::constants::{PhysicalConstants, UncertainValue};
use crate::error::{ensure_positive, Error, Result};

/// Directivity of an electrically small dipole.
pub const SMALL_DIPOLE_GAIN: f64 = 1.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldMeasurement {
    /// RMS flux density, T.
    pub b_rms: UncertainValue,
    /// Measurement distance, m.
    pub distance: f64,
    /// Claimed far-field onset, m. Carried as metadata, never enforced.
    pub far_field_onset: Option<f64>,
    /// Directivity used to undo the isotropic assumption.
    pub gain: f64,
}

impl FieldMeasurement {
    pub fn new(
        b_rms: UncertainValue,
        distance: f64,
        far_field_onset: Option<f64>,
        gain: f64,
    ) -> Result<Self> {
        if b_rms.value.is_nan() || b_rms.value < 0.0 {
            return Err(Error::input("b_rms_t", "field must be >= 0"));
        }
        ensure_positive("distance_m", distance)?;
        if let Some(onset) = far_field_onset {
            ensure_positive("far_field_onset_m", onset)?;
        }
        if !(gain.is_finite() && gain >= 1.0) {
            return Err(Error::input("gain", format!("must be >= 1, got {gain}")));
        }
        Ok(Self {
            b_rms,
            distance,
            far_field_onset,
            gain,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadiationBudget {
    pub p_rad_iso: UncertainValue,
    pub p_rad: UncertainValue,
    pub gain: f64,
    pub p_in: f64,
    pub eta: UncertainValue,
}

/// Radiated power of an isotropic source producing `b_rms` at `distance`:
/// (c / 2 mu0) B^2 4 pi R^2.
pub fn isotropic_radiated_power(
    consts: &PhysicalConstants,
    m: &FieldMeasurement,
) -> UncertainValue {
    let b = m.b_rms.value;
    let value = consts.c / (2.0 * consts.mu0) * b * b * 4.0 * PI * m.distance * m.distance;
    let sigma = if b == 0.0 {
        0.0
    } else {
        2.0 * m.b_rms.relative() * value
    };
    UncertainValue { value, sigma }
}

pub fn gain_corrected_power(p_iso: UncertainValue, gain: f64) -> Result<UncertainValue> {
    if !(gain.is_finite() && gain >= 1.0) {
        return Err(Error::input("gain", format!("must be >= 1, got {gain}")));
    }
    Ok(p_iso.scale(gain.recip()))
}

pub fn radiation_efficiency(p_rad: UncertainValue, p_in: f64) -> Result<UncertainValue> {
    ensure_positive("input_w", p_in)?;
    Ok(p_rad.scale(p_in.recip()))
}

pub fn radiation_budget(
    consts: &PhysicalConstants,
    m: &FieldMeasurement,
    p_in: f64,
) -> Result<RadiationBudget> {
    let p_rad_iso = isotropic_radiated_power(consts, m);
    let p_rad = gain_corrected_power(p_rad_iso, m.gain)?;
    let eta = radiation_efficiency(p_rad, p_in)?;
    Ok(RadiationBudget {
        p_rad_iso,
        p_rad,
        gain: m.gain,
        p_in,
        eta,
    })
}

/// Bandwidth over which a matched resonator of loaded Q `q_total` keeps its
/// VSWR at or below `s`: (f/Q)(s-1)/sqrt(s).
pub fn vswr_bandwidth(f: f64, q_total: f64, s: f64) -> Result<f64> {
    ensure_positive("frequency_hz", f)?;
    ensure_positive("q_total", q_total)?;
    if !(s.is_finite() && s >= 1.0) {
        return Err(Error::input("vswr", format!("must be >= 1, got {s}")));
    }
    Ok(f / q_total * (s - 1.0) / s.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::CODATA_2018;
    use approx::assert_relative_eq;

    fn pzt(b: f64, sigma: f64) -> FieldMeasurement {
        FieldMeasurement::new(
            UncertainValue::new(b, sigma).unwrap(),
            4.5,
            Some(1.3),
            SMALL_DIPOLE_GAIN,
        )
        .unwrap()
    }

    #[test]
    fn isotropic_power_examples() {
        let p = isotropic_radiated_power(&CODATA_2018, &pzt(50e-15, 10e-15));
        assert_relative_eq!(p.value, 75.9e-12, max_relative = 1e-3);
        assert_relative_eq!(p.sigma, 30.4e-12, max_relative = 2e-3);

        let zero = FieldMeasurement::new(UncertainValue::exact(0.0), 1.0, None, 1.0).unwrap();
        let p0 = isotropic_radiated_power(&CODATA_2018, &zero);
        assert_eq!((p0.value, p0.sigma), (0.0, 0.0));

        let p100 = isotropic_radiated_power(&CODATA_2018, &pzt(100e-15, 0.0));
        assert_relative_eq!(p100.value, 4.0 * p.value, max_relative = 1e-14);
    }

    #[test]
    fn gain_correction() {
        let p =
            gain_corrected_power(UncertainValue::new(75.9e-12, 30.4e-12).unwrap(), 1.5).unwrap();
        assert_relative_eq!(p.value, 50.6e-12, max_relative = 1e-12);
        let x = UncertainValue::new(3.0, 1.0).unwrap();
        assert_eq!(gain_corrected_power(x, 1.0).unwrap(), x);
        let p = gain_corrected_power(UncertainValue::exact(78.9e-12), 1.5).unwrap();
        assert_relative_eq!(p.value, 52.6e-12, max_relative = 1e-12);
        assert!(gain_corrected_power(x, 0.5).is_err());
    }

    #[test]
    fn efficiency_examples() {
        let e = radiation_efficiency(UncertainValue::exact(52.6e-12), 1.2).unwrap();
        assert_relative_eq!(e.value, 4.4e-11, max_relative = 5e-3);
        let e = radiation_efficiency(UncertainValue::exact(2.0), 1e6).unwrap();
        assert_relative_eq!(e.value, 2e-6, max_relative = 1e-15);
        assert_eq!(
            radiation_efficiency(UncertainValue::exact(0.0), 1.0)
                .unwrap()
                .value,
            0.0
        );
        assert!(radiation_efficiency(UncertainValue::exact(1.0), 0.0).is_err());
    }

    #[test]
    fn vswr_examples() {
        assert_relative_eq!(
            vswr_bandwidth(35568.0, 303000.0, 2.0).unwrap(),
            0.083,
            max_relative = 2e-3
        );
        assert_eq!(vswr_bandwidth(35568.0, 303000.0, 1.0).unwrap(), 0.0);
        assert_relative_eq!(
            vswr_bandwidth(35568.0, 615000.0, 2.0).unwrap(),
            0.0409,
            max_relative = 1e-3
        );
        assert!(vswr_bandwidth(1.0, 1.0, 0.5).is_err());
    }

    #[test]
    fn measurement_validation() {
        let b = UncertainValue::exact(1e-15);
        assert!(FieldMeasurement::new(b, 0.0, None, 1.5).is_err());
        assert!(FieldMeasurement::new(b, 1.0, None, 0.9).is_err());
        assert!(FieldMeasurement::new(UncertainValue::exact(-1.0), 1.0, None, 1.5).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn power_scales_as_b2_r2(b in 1e-18f64..1e-6, r in 0.1f64..1e5, kb in 0.1f64..10.0, kr in 0.1f64..10.0) {
                let m1 = FieldMeasurement::new(UncertainValue::exact(b), r, None, 1.0).unwrap();
                let m2 = FieldMeasurement::new(UncertainValue::exact(b * kb), r * kr, None, 1.0).unwrap();
                let p1 = isotropic_radiated_power(&CODATA_2018, &m1).value;
                let p2 = isotropic_radiated_power(&CODATA_2018, &m2).value;
                prop_assert!((p2 / p1 / (kb * kb * kr * kr) - 1.0).abs() < 1e-12);
            }

            #[test]
            fn relative_uncertainty_doubles(b in 1e-18f64..1e-6, rel in 0.0f64..0.9, r in 0.1f64..100.0) {
                let m = FieldMeasurement::new(UncertainValue::new(b, rel * b).unwrap(), r, None, 1.0).unwrap();
                let p = isotropic_radiated_power(&CODATA_2018, &m);
                prop_assert!((p.relative() - 2.0 * m.b_rms.relative()).abs() <= 1e-15 * (1.0 + rel));
            }

            #[test]
            fn gain_and_input_division_commute(v in 1e-15f64..1e3, s in 0.0f64..1.0, g in 1.0f64..10.0, p_in in 1e-3f64..1e7) {
                let p = UncertainValue::new(v, s * v).unwrap();
                let a = radiation_efficiency(gain_corrected_power(p, g).unwrap(), p_in).unwrap();
                let b = gain_corrected_power(radiation_efficiency(p, p_in).unwrap(), g).unwrap();
                prop_assert!(((a.value - b.value) / a.value).abs() < 1e-14);
                prop_assert!((a.sigma - b.sigma).abs() <= 1e-14 * a.sigma.max(1e-300));
            }

            #[test]
            fn vswr_monotone_and_inverse_in_q(f in 1.0f64..1e9, q in 1.0f64..1e7, s in 1.01f64..10.0, ds in 0.01f64..5.0) {
                let lo = vswr_bandwidth(f, q, s).unwrap();
                let hi = vswr_bandwidth(f, q, s + ds).unwrap();
                prop_assert!(hi > lo);
                let half = vswr_bandwidth(f, 2.0 * q, s).unwrap();
                prop_assert!((half * 2.0 / lo - 1.0).abs() < 1e-14);
            }
        }
    }
}
