//! Lifetime and transition-dipole bounds for a two-level atomic emitter
//! treated as a Chu-Harrington-compliant radiator of radius equal to the RMS
//! radius of its excited state.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::chl::{electrical_size, q_chl};
use crate::constants::{wavelength_to_frequency, PhysicalConstants};
use crate::error::{ensure_non_negative, ensure_positive, Error, Result};
use crate::radial::QuantumState;

/// Prefactor convention for the Einstein A coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AModeCoefficient {
    /// A = omega^3 |d|^2 / (3 pi eps0 hbar c^3).
    #[default]
    Standard,
    /// Twice the standard rate.
    PaperFactor2,
}

impl AModeCoefficient {
    fn multiplier(self) -> f64 {
        match self {
            AModeCoefficient::Standard => 1.0,
            AModeCoefficient::PaperFactor2 => 2.0,
        }
    }
}

impl FromStr for AModeCoefficient {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "standard" => Ok(AModeCoefficient::Standard),
            "paper_factor2" => Ok(AModeCoefficient::PaperFactor2),
            other => Err(Error::input("a_mode", format!("unknown mode `{other}`"))),
        }
    }
}

impl fmt::Display for AModeCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AModeCoefficient::Standard => "standard",
            AModeCoefficient::PaperFactor2 => "paper_factor2",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AtomicTransition {
    pub label: String,
    /// Vacuum wavelength, m.
    pub wavelength: f64,
    /// Chu radius used for the bounds, bohr.
    pub chu_radius: f64,
    /// Radius printed in the source table when it differs from `chu_radius`.
    pub printed_chu_radius: Option<f64>,
    /// Measured lifetime, s.
    pub reference_lifetime: Option<f64>,
    /// Measured transition dipole, e a0.
    pub reference_dipole: Option<f64>,
    /// Excited state whose RMS radius defines the Chu sphere.
    pub upper_state: Option<QuantumState>,
}

impl AtomicTransition {
    pub fn new(label: impl Into<String>, wavelength: f64, chu_radius: f64) -> Result<Self> {
        ensure_positive("wavelength_m", wavelength)?;
        ensure_positive("chu_radius", chu_radius)?;
        Ok(Self {
            label: label.into(),
            wavelength,
            chu_radius,
            printed_chu_radius: None,
            reference_lifetime: None,
            reference_dipole: None,
            upper_state: None,
        })
    }

    pub fn with_reference(mut self, lifetime_s: f64, dipole_au: f64) -> Result<Self> {
        ensure_positive("reference_lifetime", lifetime_s)?;
        ensure_positive("reference_dipole", dipole_au)?;
        self.reference_lifetime = Some(lifetime_s);
        self.reference_dipole = Some(dipole_au);
        Ok(self)
    }

    pub fn with_printed_radius(mut self, radius: f64) -> Self {
        self.printed_chu_radius = Some(radius);
        self
    }

    pub fn with_upper_state(mut self, state: QuantumState) -> Self {
        self.upper_state = Some(state);
        self
    }

    pub fn with_chu_radius(&self, chu_radius: f64) -> Result<Self> {
        ensure_positive("chu_radius", chu_radius)?;
        Ok(Self {
            chu_radius,
            ..self.clone()
        })
    }

    pub fn frequency(&self, consts: &PhysicalConstants) -> Result<f64> {
        wavelength_to_frequency(consts, self.wavelength)
    }

    fn q_chl(&self, consts: &PhysicalConstants) -> Result<f64> {
        let f = self.frequency(consts)?;
        let size = electrical_size(consts, f, self.chu_radius * consts.a0)?;
        q_chl(size.ka)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AtomicBoundReport {
    pub label: String,
    pub frequency: f64,
    pub chu_radius: f64,
    pub ka: f64,
    pub q_chl: f64,
    /// s
    pub lifetime_bound: f64,
    /// e a0
    pub dipole_bound: f64,
    pub a_coefficient_mode: AModeCoefficient,
    /// Einstein A evaluated at the dipole bound under `a_coefficient_mode`, 1/s.
    pub einstein_a_at_bound: f64,
    pub reference_lifetime: Option<f64>,
    pub reference_dipole: Option<f64>,
}

/// Upper bound on f/delta_f from the energy-time uncertainty relation:
/// 4 pi f delta_t.
pub fn uncertainty_qbw_bound(f: f64, delta_t: f64) -> Result<f64> {
    ensure_positive("frequency_hz", f)?;
    ensure_positive("delta_t", delta_t)?;
    Ok(4.0 * PI * f * delta_t)
}

/// Lower bound on the excited-state lifetime, Q_CHL / (4 pi f), in s.
pub fn lifetime_bound(consts: &PhysicalConstants, t: &AtomicTransition) -> Result<f64> {
    let f = t.frequency(consts)?;
    Ok(t.q_chl(consts)? / (4.0 * PI * f))
}

/// Upper bound on |d| in units of e a0:
/// sqrt(3 eps0 h c^3 / (4 pi^2 f^2 Q_CHL)).
pub fn dipole_bound(consts: &PhysicalConstants, t: &AtomicTransition) -> Result<f64> {
    let f = t.frequency(consts)?;
    let q = t.q_chl(consts)?;
    let d_si =
        (3.0 * consts.eps0 * consts.h * consts.c.powi(3) / (4.0 * PI * PI * f * f * q)).sqrt();
    Ok(d_si / consts.ea0)
}

/// Spontaneous emission rate for a dipole `d` (e a0) at frequency `f`, 1/s.
pub fn einstein_a(
    consts: &PhysicalConstants,
    f: f64,
    d: f64,
    mode: AModeCoefficient,
) -> Result<f64> {
    ensure_positive("frequency_hz", f)?;
    ensure_non_negative("dipole", d)?;
    let omega = 2.0 * PI * f;
    let d_si = d * consts.ea0;
    let standard =
        omega.powi(3) * d_si * d_si / (3.0 * PI * consts.eps0 * consts.hbar * consts.c.powi(3));
    Ok(mode.multiplier() * standard)
}

pub fn atomic_bounds(
    consts: &PhysicalConstants,
    t: &AtomicTransition,
    mode: AModeCoefficient,
) -> Result<AtomicBoundReport> {
    let f = t.frequency(consts)?;
    let size = electrical_size(consts, f, t.chu_radius * consts.a0)?;
    let dipole = dipole_bound(consts, t)?;
    Ok(AtomicBoundReport {
        label: t.label.clone(),
        frequency: f,
        chu_radius: t.chu_radius,
        ka: size.ka,
        q_chl: q_chl(size.ka)?,
        lifetime_bound: lifetime_bound(consts, t)?,
        dipole_bound: dipole,
        a_coefficient_mode: mode,
        einstein_a_at_bound: einstein_a(consts, f, dipole, mode)?,
        reference_lifetime: t.reference_lifetime,
        reference_dipole: t.reference_dipole,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::CODATA_2018;
    use approx::assert_relative_eq;

    const K: PhysicalConstants = CODATA_2018;

    fn line(lambda_nm: f64, a: f64) -> AtomicTransition {
        AtomicTransition::new("test", lambda_nm * 1e-9, a).unwrap()
    }

    #[test]
    fn uncertainty_bound_examples() {
        assert_relative_eq!(
            uncertainty_qbw_bound(2.4661e15, 1.6e-9).unwrap(),
            4.96e7,
            max_relative = 1e-3
        );
        assert_relative_eq!(
            uncertainty_qbw_bound(1.0 / (4.0 * PI), 1.0).unwrap(),
            1.0,
            max_relative = 1e-15
        );
        assert!(uncertainty_qbw_bound(0.0, 1.0).is_err());
    }

    #[test]
    fn lifetime_examples() {
        assert_relative_eq!(
            lifetime_bound(&K, &line(852.347, 8.42)).unwrap(),
            6.38e-9,
            max_relative = 2e-3
        );
        assert_relative_eq!(
            lifetime_bound(&K, &line(794.979, 7.72)).unwrap(),
            6.29e-9,
            max_relative = 5e-3
        );
        assert_relative_eq!(
            lifetime_bound(&K, &line(121.567, 30f64.sqrt())).unwrap(),
            0.0096e-9,
            max_relative = 2e-3
        );
        assert_relative_eq!(
            lifetime_bound(&K, &line(894.593, 8.18)).unwrap(),
            8.45e-9,
            max_relative = 2e-3
        );
    }

    #[test]
    fn dipole_examples() {
        assert_relative_eq!(
            dipole_bound(&K, &line(852.347, 8.42)).unwrap(),
            6.92,
            max_relative = 2e-3
        );
        assert_relative_eq!(
            dipole_bound(&K, &line(121.567, 30f64.sqrt())).unwrap(),
            9.61,
            max_relative = 2e-3
        );
        assert_relative_eq!(
            dipole_bound(&K, &line(780.241, 7.82)).unwrap(),
            6.47,
            max_relative = 2e-3
        );
    }

    #[test]
    fn einstein_a_examples() {
        let t = line(852.347, 8.42);
        let f = t.frequency(&K).unwrap();
        let d = dipole_bound(&K, &t).unwrap();
        let a = einstein_a(&K, f, d, AModeCoefficient::Standard).unwrap();
        assert_relative_eq!(
            a * lifetime_bound(&K, &t).unwrap(),
            1.0,
            max_relative = 1e-12
        );
        assert_eq!(
            einstein_a(&K, f, 0.0, AModeCoefficient::PaperFactor2).unwrap(),
            0.0
        );

        // Direct formula evaluation for H 2P with the measured dipole; lands
        // within a few percent of 1/1.6 ns.
        let h = line(121.567, 30f64.sqrt());
        let rate = einstein_a(
            &K,
            h.frequency(&K).unwrap(),
            0.745,
            AModeCoefficient::Standard,
        )
        .unwrap();
        assert_relative_eq!(rate, 6.259e8, max_relative = 1e-3);
        assert!((rate * 1.6e-9 - 1.0).abs() < 0.05);
    }

    #[test]
    fn mode_parsing() {
        assert_eq!(
            "paper-factor2".parse::<AModeCoefficient>().unwrap(),
            AModeCoefficient::PaperFactor2
        );
        assert_eq!(
            "standard".parse::<AModeCoefficient>().unwrap(),
            AModeCoefficient::Standard
        );
        assert!("triple".parse::<AModeCoefficient>().is_err());
    }

    #[test]
    fn lifetime_bound_decreases_with_radius() {
        let mut prev = f64::INFINITY;
        for i in 1..50 {
            let t = line(852.347, 0.5 * i as f64);
            let tau = lifetime_bound(&K, &t).unwrap();
            assert!(tau < prev);
            prev = tau;
        }
    }

    #[test]
    fn report_is_self_consistent() {
        let r = atomic_bounds(&K, &line(852.347, 8.42), AModeCoefficient::Standard).unwrap();
        assert_relative_eq!(
            r.lifetime_bound * 4.0 * PI * r.frequency,
            r.q_chl,
            max_relative = 1e-14
        );
        let r2 = atomic_bounds(&K, &line(852.347, 8.42), AModeCoefficient::PaperFactor2).unwrap();
        assert_relative_eq!(
            r2.einstein_a_at_bound,
            2.0 * r.einstein_a_at_bound,
            max_relative = 1e-15
        );
        assert_eq!(r2.dipole_bound, r.dipole_bound);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn factor2_mode_doubles(f in 1e6f64..1e16, d in 0.0f64..100.0) {
                let s = einstein_a(&K, f, d, AModeCoefficient::Standard).unwrap();
                let p = einstein_a(&K, f, d, AModeCoefficient::PaperFactor2).unwrap();
                prop_assert_eq!(p, 2.0 * s);
            }

            #[test]
            fn a_of_dipole_bound_inverts_lifetime(lambda in 1e-8f64..1e-5, a in 0.5f64..50.0) {
                let t = AtomicTransition::new("p", lambda, a).unwrap();
                let f = t.frequency(&K).unwrap();
                let rate = einstein_a(&K, f, dipole_bound(&K, &t).unwrap(), AModeCoefficient::Standard).unwrap();
                let q = t.q_chl(&K).unwrap();
                prop_assert!((rate / (4.0 * PI * f / q) - 1.0).abs() < 1e-12);
            }
        }
    }
}
