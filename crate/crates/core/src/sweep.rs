//! Efficiency bound and power-density ceiling along a one-parameter grid.

use std::io::Write;
use std::str::FromStr;

use serde::Serialize;

use crate::chl::{chl_report, ResonanceSpec};
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParam {
    Frequency,
    Radius,
    Bandwidth,
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "frequency" | "f" => Ok(Self::Frequency),
            "radius" | "a" => Ok(Self::Radius),
            "bandwidth" | "delta_f" => Ok(Self::Bandwidth),
            other => Err(Error::input(
                "param",
                format!("unknown sweep parameter `{other}`"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub param: SweepParam,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    /// Geometric spacing instead of linear.
    pub log: bool,
    /// Fixed values; the swept one is ignored.
    pub frequency: f64,
    pub bandwidth: f64,
    pub radius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepPoint {
    pub frequency_hz: f64,
    pub bandwidth_hz: f64,
    pub radius_m: f64,
    pub ka: f64,
    pub q_chl: f64,
    pub efficiency_bound: f64,
    pub clipped: bool,
    pub power_density_limit: f64,
}

pub const CSV_HEADER: &str =
    "frequency_hz,bandwidth_hz,radius_m,ka,q_chl,efficiency_bound,clipped,power_density_limit";

pub fn grid(from: f64, to: f64, steps: usize, log: bool) -> Result<Vec<f64>> {
    if !(from.is_finite() && to.is_finite() && from > 0.0 && to > from) {
        return Err(Error::input(
            "range",
            format!("need 0 < from < to, got [{from}, {to}]"),
        ));
    }
    if steps < 2 {
        return Err(Error::input(
            "steps",
            format!("need at least 2, got {steps}"),
        ));
    }
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| {
            if i == steps - 1 {
                return to;
            }
            let t = i as f64 / last;
            if log {
                (from.ln() + t * (to.ln() - from.ln())).exp()
            } else {
                from + t * (to - from)
            }
        })
        .collect())
}

pub fn sweep(consts: &PhysicalConstants, spec: &SweepSpec) -> Result<Vec<SweepPoint>> {
    grid(spec.from, spec.to, spec.steps, spec.log)?
        .into_iter()
        .map(|x| {
            let (f, df, a) = match spec.param {
                SweepParam::Frequency => (x, spec.bandwidth, spec.radius),
                SweepParam::Radius => (spec.frequency, spec.bandwidth, x),
                SweepParam::Bandwidth => (spec.frequency, x, spec.radius),
            };
            let res = ResonanceSpec::new(f, df)?;
            let r = chl_report(consts, &res, a, None)?;
            Ok(SweepPoint {
                frequency_hz: f,
                bandwidth_hz: df,
                radius_m: a,
                ka: r.ka,
                q_chl: r.q_chl,
                efficiency_bound: r.efficiency_bound,
                clipped: r.clipped,
                power_density_limit: r.power_density_limit,
            })
        })
        .collect()
}

/// Comma separated, header first, LF line endings, shortest round-trip
/// float formatting.
pub fn write_csv<W: Write>(out: &mut W, points: &[SweepPoint]) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for p in points {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            p.frequency_hz,
            p.bandwidth_hz,
            p.radius_m,
            p.ka,
            p.q_chl,
            p.efficiency_bound,
            p.clipped,
            p.power_density_limit
        )?;
    }
    Ok(())
}
