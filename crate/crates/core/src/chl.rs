//! Chu-Harrington limit, bandwidth-limited efficiency bound, power-density
//! ceiling and the emitter figure of merit.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::constants::PhysicalConstants;
use crate::error::{ensure_non_negative, ensure_positive, Error, Result};

/// Center frequency and 3-dB bandwidth of a single simple resonance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResonanceSpec {
    f: f64,
    delta_f: f64,
}

impl ResonanceSpec {
    /// Both values in Hz. Rejects `delta_f >= f`: every formula here assumes a
    /// narrowband resonance.
    pub fn new(f: f64, delta_f: f64) -> Result<Self> {
        ensure_positive("frequency_hz", f)?;
        ensure_positive("bandwidth_hz", delta_f)?;
        if delta_f >= f {
            return Err(Error::input(
                "bandwidth_hz",
                format!("bandwidth {delta_f} Hz must be below the center frequency {f} Hz"),
            ));
        }
        Ok(Self { f, delta_f })
    }

    pub fn f(&self) -> f64 {
        self.f
    }

    pub fn delta_f(&self) -> f64 {
        self.delta_f
    }

    pub fn with_delta_f(&self, delta_f: f64) -> Result<Self> {
        Self::new(self.f, delta_f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ElectricalSize {
    /// Free-space wavenumber times enclosing radius.
    pub ka: f64,
    /// Enclosing-sphere radius, m.
    pub a: f64,
}

impl ElectricalSize {
    pub fn is_electrically_small(&self) -> bool {
        self.ka < 1.0
    }
}

pub fn electrical_size(consts: &PhysicalConstants, f: f64, a: f64) -> Result<ElectricalSize> {
    ensure_positive("frequency_hz", f)?;
    ensure_positive("radius_m", a)?;
    Ok(ElectricalSize {
        ka: 2.0 * PI * f * a / consts.c,
        a,
    })
}

/// Smallest sphere enclosing an emitter, by shape.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GeometryDescriptor {
    /// Slender rod. Only the length enters the enclosing radius (a = L/2);
    /// the half-diagonal sqrt(L^2 + d^2)/2 would be the strict bound.
    Rod {
        length_m: f64,
        diameter_m: f64,
    },
    /// Short cylinder, a = sqrt(D^2 + h^2)/2.
    Disk {
        diameter_m: f64,
        height_m: f64,
    },
    /// Two orthogonal dipoles of length L, a = L/sqrt(2).
    CrossedDipoles {
        length_m: f64,
    },
    Sphere {
        radius_m: f64,
    },
}

impl GeometryDescriptor {
    pub fn kind(&self) -> &'static str {
        match self {
            GeometryDescriptor::Rod { .. } => "rod",
            GeometryDescriptor::Disk { .. } => "disk",
            GeometryDescriptor::CrossedDipoles { .. } => "crossed_dipoles",
            GeometryDescriptor::Sphere { .. } => "sphere",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let check = |field: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::validation(
                    format!("geometry.{field}"),
                    format!("dimension must be > 0, got {v}"),
                ))
            }
        };
        match *self {
            GeometryDescriptor::Rod {
                length_m,
                diameter_m,
            } => {
                check("length_m", length_m)?;
                check("diameter_m", diameter_m)
            }
            GeometryDescriptor::Disk {
                diameter_m,
                height_m,
            } => {
                check("diameter_m", diameter_m)?;
                check("height_m", height_m)
            }
            GeometryDescriptor::CrossedDipoles { length_m } => check("length_m", length_m),
            GeometryDescriptor::Sphere { radius_m } => check("radius_m", radius_m),
        }
    }
}

pub fn enclosing_radius(geometry: &GeometryDescriptor) -> Result<f64> {
    geometry.validate()?;
    Ok(match *geometry {
        GeometryDescriptor::Rod { length_m, .. } => length_m / 2.0,
        GeometryDescriptor::Disk {
            diameter_m,
            height_m,
        } => diameter_m.hypot(height_m) / 2.0,
        GeometryDescriptor::CrossedDipoles { length_m } => length_m / 2f64.sqrt(),
        GeometryDescriptor::Sphere { radius_m } => radius_m,
    })
}

/// omega (W_m + W_e) / (P_rad + P_loss).
pub fn q_stored(w_m: f64, w_e: f64, p_rad: f64, p_loss: f64, omega: f64) -> Result<f64> {
    ensure_non_negative("w_m", w_m)?;
    ensure_non_negative("w_e", w_e)?;
    ensure_non_negative("p_rad", p_rad)?;
    ensure_non_negative("p_loss", p_loss)?;
    ensure_non_negative("omega", omega)?;
    let p_diss = p_rad + p_loss;
    if p_diss <= 0.0 {
        return Err(Error::input(
            "p_rad + p_loss",
            "dissipated power must be > 0",
        ));
    }
    Ok(omega * (w_m + w_e) / p_diss)
}

/// Chu-Harrington lower bound on stored-energy Q: 1/(ka)^3 + 1/ka.
pub fn q_chl(ka: f64) -> Result<f64> {
    ensure_positive("ka", ka)?;
    Ok(ka.powi(-3) + ka.recip())
}

/// Deep-subwavelength form 1/(ka)^3.
pub fn q_chl_deep(ka: f64) -> Result<f64> {
    ensure_positive("ka", ka)?;
    Ok(ka.powi(-3))
}

/// f / delta_f.
pub fn q_bw(res: &ResonanceSpec) -> f64 {
    res.f / res.delta_f
}

/// (f/delta_f) / Q_CHL(ka) without the clip at 1.
pub fn efficiency_bound_unclipped(
    consts: &PhysicalConstants,
    res: &ResonanceSpec,
    a: f64,
) -> Result<f64> {
    let size = electrical_size(consts, res.f, a)?;
    Ok(q_bw(res) / q_chl(size.ka)?)
}

/// Upper bound on radiation efficiency for a lossy emitter forced to the
/// bandwidth `res.delta_f`: min((f/delta_f)/Q_CHL, 1).
pub fn efficiency_bound(consts: &PhysicalConstants, res: &ResonanceSpec, a: f64) -> Result<f64> {
    Ok(efficiency_bound_unclipped(consts, res, a)?.min(1.0))
}

/// Ceiling on radiated power per unit input power per unit enclosing volume,
/// 6 pi^2 f^4 / (c^3 delta_f), in W/(W m^3).
pub fn power_density_limit(consts: &PhysicalConstants, res: &ResonanceSpec) -> f64 {
    6.0 * PI * PI * res.f.powi(4) / (consts.c.powi(3) * res.delta_f)
}

pub fn sphere_volume(a: f64) -> f64 {
    4.0 * PI * a.powi(3) / 3.0
}

/// Radiated power density per unit input power, normalized by
/// [`power_density_limit`]. One means the emitter sits on the limit.
/// Not clipped.
pub fn fom(consts: &PhysicalConstants, eta: f64, a: f64, res: &ResonanceSpec) -> Result<f64> {
    ensure_non_negative("efficiency", eta)?;
    ensure_positive("radius_m", a)?;
    Ok(eta / sphere_volume(a) / power_density_limit(consts, res))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChlReport {
    pub ka: f64,
    pub q_chl: f64,
    pub q_chl_ds: f64,
    pub q_bw: f64,
    pub efficiency_bound: f64,
    /// True when (f/delta_f)/Q_CHL exceeded 1 and the bound was clipped.
    pub clipped: bool,
    pub power_density_limit: f64,
    pub fom: Option<f64>,
}

pub fn chl_report(
    consts: &PhysicalConstants,
    res: &ResonanceSpec,
    a: f64,
    eta: Option<f64>,
) -> Result<ChlReport> {
    let size = electrical_size(consts, res.f, a)?;
    let q_chl = q_chl(size.ka)?;
    let raw = q_bw(res) / q_chl;
    Ok(ChlReport {
        ka: size.ka,
        q_chl,
        q_chl_ds: q_chl_deep(size.ka)?,
        q_bw: q_bw(res),
        efficiency_bound: raw.min(1.0),
        clipped: raw > 1.0,
        power_density_limit: power_density_limit(consts, res),
        fom: eta.map(|eta| fom(consts, eta, a, res)).transpose()?,
    })
}
