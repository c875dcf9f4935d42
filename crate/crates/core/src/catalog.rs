//! Reference emitters and atomic transitions, and the emitter description
//! file format.
//!
//! An emitter file is TOML with unit-suffixed keys, one emitter per file:
//!
//! ```toml
//! name = "LN mechanical"          # required
//! notes = "free text"             # optional
//!
//! [geometry]                      # required, one of:
//! kind = "rod"                    #   rod:             length_m, diameter_m
//! length_m = 0.094                #   disk:            diameter_m, height_m
//! diameter_m = 0.016              #   crossed_dipoles: length_m
//!                                 #   sphere:          radius_m
//!
//! [resonance]                     # required
//! frequency_hz = 35568.0          # center frequency  } or tone_low_hz and
//! bandwidth_hz = 0.084            # 3-dB bandwidth    } tone_high_hz
//! alternate_bandwidth_hz = 0.1    # optional second reading of the bandwidth
//! q_total = 303000.0              # optional loaded Q
//! vswr = 2.0                      # optional VSWR behind the bandwidth
//!
//! [power]                         # optional section
//! input_w = 1.2                   # input power
//! radiated_w = 2.0                # radiated power
//! efficiency = 1.0e-8             # radiation efficiency (nominal / low end)
//! efficiency_sigma = 0.0          # 1-sigma uncertainty of `efficiency`
//! efficiency_high = 2.0e-7        # high end of a quoted efficiency range
//!
//! [field]                         # optional far-field measurement
//! b_rms_t = 5.0e-14               # RMS flux density
//! b_rms_sigma_t = 1.0e-14         # 1-sigma uncertainty, default 0
//! distance_m = 4.5
//! far_field_onset_m = 1.3         # optional, informational
//! gain = 1.5                      # default 1.5
//! ```
//!
//! A record must allow an efficiency to be worked out: `efficiency`, or
//! `input_w` together with `radiated_w` or a `[field]` section.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::atomic::AtomicTransition;
use crate::chl::{enclosing_radius, ResonanceSpec};
use crate::constants::{PhysicalConstants, UncertainValue};
use crate::error::{Error, Result};
use crate::field::{
    radiation_budget, radiation_efficiency, FieldMeasurement, RadiationBudget, SMALL_DIPOLE_GAIN,
};
use crate::radial::{Element, QuantumState};

pub use crate::chl::GeometryDescriptor;

const BUILTIN_EMITTERS: [&str; 4] = [
    include_str!("../data/emitters/elf.toml"),
    include_str!("../data/emitters/vlf.toml"),
    include_str!("../data/emitters/pzt_disk.toml"),
    include_str!("../data/emitters/ln_rod.toml"),
];

/// Which of two recorded bandwidths to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaFInterpretation {
    #[default]
    Primary,
    Alternate,
}

impl std::str::FromStr for DeltaFInterpretation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "primary" => Ok(Self::Primary),
            "alternate" => Ok(Self::Alternate),
            other => Err(Error::input(
                "delta_f_interpretation",
                format!("unknown value `{other}`"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EfficiencyEstimate {
    /// Nominal value; the low end when a range is quoted.
    pub value: f64,
    pub sigma: f64,
    pub high: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EfficiencySource {
    Stated,
    PowerRatio,
    FieldMeasurement,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmitterRecord {
    pub name: String,
    pub geometry: GeometryDescriptor,
    pub resonance: ResonanceSpec,
    pub alternate_delta_f: Option<f64>,
    pub q_total: Option<f64>,
    pub vswr: Option<f64>,
    /// W
    pub p_in: Option<f64>,
    /// W
    pub p_rad: Option<f64>,
    pub efficiency: Option<EfficiencyEstimate>,
    pub field_measurement: Option<FieldMeasurement>,
    pub notes: String,
}

impl EmitterRecord {
    pub fn enclosing_radius(&self) -> Result<f64> {
        enclosing_radius(&self.geometry)
    }

    /// Resonance under the requested bandwidth reading. Records without an
    /// alternate bandwidth always return the primary one.
    pub fn resonance_for(&self, interp: DeltaFInterpretation) -> Result<ResonanceSpec> {
        match (interp, self.alternate_delta_f) {
            (DeltaFInterpretation::Alternate, Some(df)) => self.resonance.with_delta_f(df),
            _ => Ok(self.resonance),
        }
    }

    pub fn radiation_budget(&self, consts: &PhysicalConstants) -> Result<Option<RadiationBudget>> {
        match (&self.field_measurement, self.p_in) {
            (Some(m), Some(p_in)) => radiation_budget(consts, m, p_in).map(Some),
            _ => Ok(None),
        }
    }

    /// Efficiency used for the figure of merit, in order of preference: the
    /// stated value, radiated over input power, the field pipeline.
    pub fn efficiency_estimate(
        &self,
        consts: &PhysicalConstants,
    ) -> Result<Option<(UncertainValue, EfficiencySource)>> {
        if let Some(e) = self.efficiency {
            return Ok(Some((
                UncertainValue::new(e.value, e.sigma)?,
                EfficiencySource::Stated,
            )));
        }
        if let (Some(p_rad), Some(p_in)) = (self.p_rad, self.p_in) {
            let eta = radiation_efficiency(UncertainValue::exact(p_rad), p_in)?;
            return Ok(Some((eta, EfficiencySource::PowerRatio)));
        }
        Ok(self
            .radiation_budget(consts)?
            .map(|b| (b.eta, EfficiencySource::FieldMeasurement)))
    }

    pub fn validate(&self) -> Result<()> {
        self.to_file_doc().into_record().map(|_| ())
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(&self.to_file_doc()).map_err(|e| Error::Parse {
            what: format!("emitter `{}`", self.name),
            message: e.to_string(),
        })
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let doc: EmitterFile = toml::from_str(text).map_err(|e| Error::Parse {
            what: "emitter file".into(),
            message: e.message().to_string(),
        })?;
        doc.into_record()
    }

    fn to_file_doc(&self) -> EmitterFile {
        let power = PowerSection {
            input_w: self.p_in,
            radiated_w: self.p_rad,
            efficiency: self.efficiency.map(|e| e.value),
            efficiency_sigma: self.efficiency.map(|e| e.sigma).filter(|s| *s != 0.0),
            efficiency_high: self.efficiency.and_then(|e| e.high),
        };
        EmitterFile {
            name: self.name.clone(),
            notes: self.notes.clone(),
            geometry: self.geometry,
            resonance: ResonanceSection {
                frequency_hz: Some(self.resonance.f()),
                bandwidth_hz: Some(self.resonance.delta_f()),
                tone_low_hz: None,
                tone_high_hz: None,
                alternate_bandwidth_hz: self.alternate_delta_f,
                q_total: self.q_total,
                vswr: self.vswr,
            },
            power: (!power.is_empty()).then_some(power),
            field: self.field_measurement.map(|m| FieldSection {
                b_rms_t: m.b_rms.value,
                b_rms_sigma_t: m.b_rms.sigma,
                distance_m: m.distance,
                far_field_onset_m: m.far_field_onset,
                gain: m.gain,
            }),
        }
    }
}

pub fn load_emitter_file(path: &Path) -> Result<EmitterRecord> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    EmitterRecord::from_toml(&text)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EmitterFile {
    name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    notes: String,
    geometry: GeometryDescriptor,
    resonance: ResonanceSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    power: Option<PowerSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    field: Option<FieldSection>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ResonanceSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    frequency_hz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bandwidth_hz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tone_low_hz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tone_high_hz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alternate_bandwidth_hz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    q_total: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vswr: Option<f64>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PowerSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    input_w: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    radiated_w: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    efficiency: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    efficiency_sigma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    efficiency_high: Option<f64>,
}

impl PowerSection {
    fn is_empty(&self) -> bool {
        self.input_w.is_none()
            && self.radiated_w.is_none()
            && self.efficiency.is_none()
            && self.efficiency_sigma.is_none()
            && self.efficiency_high.is_none()
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldSection {
    b_rms_t: f64,
    #[serde(default)]
    b_rms_sigma_t: f64,
    distance_m: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    far_field_onset_m: Option<f64>,
    #[serde(default = "default_gain")]
    gain: f64,
}

fn default_gain() -> f64 {
    SMALL_DIPOLE_GAIN
}

fn positive(field: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::validation(field, format!("must be > 0, got {v}")))
    }
}

fn positive_opt(field: &str, v: Option<f64>) -> Result<Option<f64>> {
    v.map(|v| positive(field, v)).transpose()
}

impl EmitterFile {
    fn into_record(self) -> Result<EmitterRecord> {
        if self.name.trim().is_empty() {
            return Err(Error::validation("name", "must not be empty"));
        }
        self.geometry.validate()?;

        let r = &self.resonance;
        let (f, df) =
            match (
                r.frequency_hz,
                r.bandwidth_hz,
                r.tone_low_hz,
                r.tone_high_hz,
            ) {
                (Some(f), Some(df), None, None) => (
                    positive("resonance.frequency_hz", f)?,
                    positive("resonance.bandwidth_hz", df)?,
                ),
                (None, None, Some(lo), Some(hi)) => {
                    let lo = positive("resonance.tone_low_hz", lo)?;
                    let hi = positive("resonance.tone_high_hz", hi)?;
                    if hi <= lo {
                        return Err(Error::validation(
                            "resonance.tone_high_hz",
                            "must exceed tone_low_hz",
                        ));
                    }
                    ((lo + hi) / 2.0, hi - lo)
                }
                _ => return Err(Error::validation(
                    "resonance",
                    "give either frequency_hz and bandwidth_hz, or tone_low_hz and tone_high_hz",
                )),
            };
        let resonance = ResonanceSpec::new(f, df)
            .map_err(|e| Error::validation("resonance.bandwidth_hz", e.to_string()))?;
        let alternate_delta_f =
            positive_opt("resonance.alternate_bandwidth_hz", r.alternate_bandwidth_hz)?;
        if let Some(alt) = alternate_delta_f {
            resonance.with_delta_f(alt).map_err(|e| {
                Error::validation("resonance.alternate_bandwidth_hz", e.to_string())
            })?;
        }
        let q_total = positive_opt("resonance.q_total", r.q_total)?;
        let vswr = r.vswr;
        if let Some(s) = vswr {
            if !(s.is_finite() && s >= 1.0) {
                return Err(Error::validation(
                    "resonance.vswr",
                    format!("must be >= 1, got {s}"),
                ));
            }
        }

        let power = self.power.unwrap_or_default();
        let p_in = positive_opt("power.input_w", power.input_w)?;
        let p_rad = positive_opt("power.radiated_w", power.radiated_w)?;
        let efficiency = match power.efficiency {
            Some(value) => {
                let value = positive("power.efficiency", value)?;
                let sigma = power.efficiency_sigma.unwrap_or(0.0);
                if !(sigma.is_finite() && sigma >= 0.0) {
                    return Err(Error::validation("power.efficiency_sigma", "must be >= 0"));
                }
                let high = positive_opt("power.efficiency_high", power.efficiency_high)?;
                if high.is_some_and(|h| h < value) {
                    return Err(Error::validation(
                        "power.efficiency_high",
                        "must be >= efficiency",
                    ));
                }
                Some(EfficiencyEstimate { value, sigma, high })
            }
            None if power.efficiency_sigma.is_some() || power.efficiency_high.is_some() => {
                return Err(Error::validation(
                    "power.efficiency",
                    "required when efficiency_sigma or efficiency_high is given",
                ))
            }
            None => None,
        };

        let field_measurement = match self.field {
            Some(fs) => {
                if !(fs.b_rms_t.is_finite() && fs.b_rms_t >= 0.0) {
                    return Err(Error::validation("field.b_rms_t", "must be >= 0"));
                }
                let b = UncertainValue::new(fs.b_rms_t, fs.b_rms_sigma_t)
                    .map_err(|e| Error::validation("field.b_rms_sigma_t", e.to_string()))?;
                positive("field.distance_m", fs.distance_m)?;
                positive_opt("field.far_field_onset_m", fs.far_field_onset_m)?;
                if !(fs.gain.is_finite() && fs.gain >= 1.0) {
                    return Err(Error::validation(
                        "field.gain",
                        format!("must be >= 1, got {}", fs.gain),
                    ));
                }
                Some(FieldMeasurement::new(
                    b,
                    fs.distance_m,
                    fs.far_field_onset_m,
                    fs.gain,
                )?)
            }
            None => None,
        };

        let derivable = efficiency.is_some()
            || (p_in.is_some() && (p_rad.is_some() || field_measurement.is_some()));
        if !derivable {
            return Err(Error::validation(
                "power",
                "an efficiency, or input_w with radiated_w or a [field] measurement, is required",
            ));
        }

        Ok(EmitterRecord {
            name: self.name,
            geometry: self.geometry,
            resonance,
            alternate_delta_f,
            q_total,
            vswr,
            p_in,
            p_rad,
            efficiency,
            field_measurement,
            notes: self.notes,
        })
    }
}

/// ELF, VLF, PZT and LN reference emitters, in that order.
pub fn builtin_emitters() -> Vec<EmitterRecord> {
    BUILTIN_EMITTERS
        .iter()
        .map(|text| EmitterRecord::from_toml(text).expect("bundled emitter file is valid"))
        .collect()
}

/// Case-insensitive match on the full name or its first word.
pub fn find_emitter<'a>(records: &'a [EmitterRecord], key: &str) -> Option<&'a EmitterRecord> {
    records.iter().find(|r| {
        r.name.eq_ignore_ascii_case(key)
            || r.name
                .split_whitespace()
                .next()
                .is_some_and(|w| w.eq_ignore_ascii_case(key))
    })
}

/// Hydrogen Lyman-alpha and the Cs/Rb D lines with their Chu radii and
/// measured lifetimes and dipoles.
///
/// Hydrogen carries sqrt(30) bohr, the 2P RMS radius, as its working radius;
/// the printed 1.73 (the 1S value, sqrt(3)) is kept as `printed_chu_radius`.
pub fn builtin_transitions() -> Vec<AtomicTransition> {
    let state = |el, n, l, j| QuantumState::new(el, n, l, j).expect("valid builtin state");
    let rows = [
        (
            "H 2P-1S",
            121.567e-9,
            30f64.sqrt(),
            Some(1.73),
            1.6e-9,
            0.745,
            state(Element::H, 2, 1, 0.5),
        ),
        (
            "Cs D1",
            894.592_959_86e-9,
            8.18,
            None,
            34.79e-9,
            3.19,
            state(Element::Cs, 6, 1, 0.5),
        ),
        (
            "Cs D2",
            852.347_275_82e-9,
            8.42,
            None,
            30.41e-9,
            4.48,
            state(Element::Cs, 6, 1, 1.5),
        ),
        (
            "Rb87 D1",
            794.978_851_156e-9,
            7.72,
            None,
            27.68e-9,
            2.99,
            state(Element::Rb87, 5, 1, 0.5),
        ),
        (
            "Rb87 D2",
            780.241_209_686e-9,
            7.82,
            None,
            26.24e-9,
            4.23,
            state(Element::Rb87, 5, 1, 1.5),
        ),
    ];
    rows.into_iter()
        .map(|(label, lambda, radius, printed, tau, d, upper)| {
            let t = AtomicTransition::new(label, lambda, radius)
                .and_then(|t| t.with_reference(tau, d))
                .expect("valid builtin transition")
                .with_upper_state(upper);
            match printed {
                Some(p) => t.with_printed_radius(p),
                None => t,
            }
        })
        .collect()
}

pub fn find_transition<'a>(
    records: &'a [AtomicTransition],
    key: &str,
) -> Option<&'a AtomicTransition> {
    let key = key.to_ascii_lowercase();
    records
        .iter()
        .find(|t| t.label.to_ascii_lowercase().starts_with(&key))
}
