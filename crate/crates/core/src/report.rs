//! Full evaluation of one emitter: bound, power-density ceiling, figure of
//! merit and the annotations attached to the result.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::catalog::{DeltaFInterpretation, EfficiencySource, EmitterRecord};
use crate::chl::{chl_report, fom};
use crate::constants::{PhysicalConstants, UncertainValue};
use crate::error::Result;
use crate::field::RadiationBudget;

#[derive(Debug, Clone, PartialEq)]
pub enum Flag {
    /// (f/delta_f)/Q_CHL exceeded 1.
    Clipped,
    /// Efficiency above the bound; `sigmas` is the excess in units of the
    /// efficiency uncertainty (infinite when the efficiency is exact).
    ExceedsBound {
        sigmas: f64,
    },
    FomAboveOne,
    AlternateBandwidth,
    /// Reproduction of a printed value that is known not to match.
    ExpectedDeviation(String),
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flag::Clipped => f.write_str("efficiency bound clipped at 1"),
            Flag::ExceedsBound { sigmas } if sigmas.is_finite() => {
                write!(f, "exceeds CHL efficiency bound ({sigmas:.2} sigma)")
            }
            Flag::ExceedsBound { .. } => f.write_str("exceeds CHL efficiency bound"),
            Flag::FomAboveOne => f.write_str("FOM above 1"),
            Flag::AlternateBandwidth => f.write_str("alternate bandwidth in use"),
            Flag::ExpectedDeviation(why) => write!(f, "expected deviation: {why}"),
        }
    }
}

impl Serialize for Flag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub label: String,
    pub frequency_hz: f64,
    pub bandwidth_hz: f64,
    pub radius_m: f64,
    pub efficiency: Option<UncertainValue>,
    pub efficiency_source: Option<EfficiencySource>,
    pub budget: Option<RadiationBudget>,
    pub ka: f64,
    pub q_chl: f64,
    pub q_bw: f64,
    pub efficiency_bound: f64,
    pub power_density_limit: f64,
    pub fom: Option<f64>,
    /// FOM at efficiency -1 sigma and +1 sigma (or the quoted high end).
    pub fom_range: Option<(f64, f64)>,
    pub flags: Vec<Flag>,
}

impl ReportRow {
    pub fn has_flag(&self, pred: impl Fn(&Flag) -> bool) -> bool {
        self.flags.iter().any(pred)
    }
}

pub fn evaluate_emitter(
    consts: &PhysicalConstants,
    record: &EmitterRecord,
    interp: DeltaFInterpretation,
) -> Result<ReportRow> {
    let res = record.resonance_for(interp)?;
    let a = record.enclosing_radius()?;
    let estimate = record.efficiency_estimate(consts)?;
    let eta = estimate.map(|(e, _)| e);
    let chl = chl_report(consts, &res, a, eta.map(|e| e.value))?;

    let fom_range = match (eta, record.efficiency.and_then(|e| e.high)) {
        (Some(_), Some(high)) => Some((chl.fom.unwrap_or(0.0), fom(consts, high, a, &res)?)),
        (Some(e), None) if e.sigma > 0.0 => Some((
            fom(consts, e.low().max(0.0), a, &res)?,
            fom(consts, e.high(), a, &res)?,
        )),
        _ => None,
    };

    let mut flags = Vec::new();
    if chl.clipped {
        flags.push(Flag::Clipped);
    }
    if let Some(e) = eta {
        if e.value > chl.efficiency_bound {
            let sigmas = if e.sigma > 0.0 {
                (e.value - chl.efficiency_bound) / e.sigma
            } else {
                f64::INFINITY
            };
            flags.push(Flag::ExceedsBound { sigmas });
        }
    }
    if chl.fom.is_some_and(|v| v > 1.0) {
        flags.push(Flag::FomAboveOne);
    }
    if interp == DeltaFInterpretation::Alternate && record.alternate_delta_f.is_some() {
        flags.push(Flag::AlternateBandwidth);
    }

    Ok(ReportRow {
        label: record.name.clone(),
        frequency_hz: res.f(),
        bandwidth_hz: res.delta_f(),
        radius_m: a,
        efficiency: eta,
        efficiency_source: estimate.map(|(_, s)| s),
        budget: record.radiation_budget(consts)?,
        ka: chl.ka,
        q_chl: chl.q_chl,
        q_bw: chl.q_bw,
        efficiency_bound: chl.efficiency_bound,
        power_density_limit: chl.power_density_limit,
        fom: chl.fom,
        fom_range,
        flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{builtin_emitters, find_emitter};
    use crate::constants::CODATA_2018;
    use approx::assert_relative_eq;

    fn row(name: &str) -> ReportRow {
        let all = builtin_emitters();
        evaluate_emitter(
            &CODATA_2018,
            find_emitter(&all, name).unwrap(),
            DeltaFInterpretation::Primary,
        )
        .unwrap()
    }

    #[test]
    fn vlf_is_clipped() {
        let r = row("VLF");
        assert_eq!(r.efficiency_bound, 1.0);
        assert!(r.has_flag(|f| *f == Flag::Clipped));
        assert!(!r.has_flag(|f| matches!(f, Flag::ExceedsBound { .. })));
    }

    #[test]
    fn pzt_exceeds_bound_within_two_sigma() {
        let r = row("PZT");
        let sigmas = r
            .flags
            .iter()
            .find_map(|f| match f {
                Flag::ExceedsBound { sigmas } => Some(*sigmas),
                _ => None,
            })
            .unwrap();
        assert!(sigmas > 0.0 && sigmas < 2.0);
        assert!(r.has_flag(|f| *f == Flag::FomAboveOne));
        assert_relative_eq!(r.fom.unwrap(), 1.719, max_relative = 2e-3);
    }

    #[test]
    fn ln_range_uses_quoted_high_end() {
        let r = row("LN");
        let (lo, hi) = r.fom_range.unwrap();
        assert_eq!(lo, r.fom.unwrap());
        assert_relative_eq!(hi / lo, 20.0, max_relative = 1e-12);
    }

    #[test]
    fn flag_text() {
        assert_eq!(
            Flag::ExceedsBound {
                sigmas: f64::INFINITY
            }
            .to_string(),
            "exceeds CHL efficiency bound"
        );
    }
}
