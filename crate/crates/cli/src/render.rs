//! Output rendering. Human tables show three significant digits; csv and
//! json carry full precision (shortest round-trip formatting).

use std::io::{self, Write};

use esebound_core::report::{Flag, ReportRow};
use esebound_core::sweep::{write_csv, SweepPoint};
use esebound_core::tables::Table;
use esebound_core::validation::{CheckStatus, ValidationReport};
use esebound_core::{AtomicBoundReport, QuantumState};
use serde::Serialize;

use crate::Format;

pub const TABLE_CSV_HEADER: &str = "table,label,column,kind,computed,printed,rel_deviation,flags";
pub const EVAL_CSV_HEADER: &str =
    "label,frequency_hz,bandwidth_hz,radius_m,efficiency,efficiency_sigma,ka,q_chl,q_bw,\
efficiency_bound,power_density_limit,fom,fom_low,fom_high,flags";
pub const ATOMIC_CSV_HEADER: &str =
    "state,chu_radius_bohr,radius_source,frequency_hz,ka,q_chl,lifetime_bound_s,\
dipole_bound_au,a_mode,einstein_a_at_bound,reference_lifetime_s,reference_dipole_au";
pub const VALIDATION_CSV_HEADER: &str =
    "criterion,id,status,computed,expected,lower,upper,description";

fn sci(v: f64) -> String {
    if v.is_nan() {
        "-".into()
    } else {
        format!("{v:.2e}")
    }
}

fn sci_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".into(), sci)
}

fn pct(v: Option<f64>) -> String {
    match v {
        Some(d) if d.is_finite() => format!("{:+.1}%", 100.0 * d),
        _ => "-".into(),
    }
}

/// Full precision; NaN and absent values become empty fields.
fn full(v: f64) -> String {
    if v.is_nan() {
        String::new()
    } else {
        v.to_string()
    }
}

fn full_opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, full)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn joined_flags(flags: &[Flag]) -> String {
    flags
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

fn json<T: Serialize>(value: &T, out: &mut impl Write) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

pub fn table(format: Format, t: &Table, out: &mut impl Write) -> io::Result<()> {
    match format {
        Format::Json => json(t, out),
        Format::Csv => {
            writeln!(out, "{TABLE_CSV_HEADER}")?;
            for row in &t.rows {
                let flags = csv_field(&joined_flags(&row.flags));
                for c in &row.cells {
                    let kind = serde_json::to_value(c.kind).ok();
                    writeln!(
                        out,
                        "{},{},{},{},{},{},{},{}",
                        t.id,
                        csv_field(&row.label),
                        c.column,
                        kind.as_ref().and_then(|k| k.as_str()).unwrap_or(""),
                        full(c.value),
                        full_opt(c.printed),
                        full_opt(c.rel_deviation),
                        flags
                    )?;
                }
            }
            Ok(())
        }
        Format::Table => {
            writeln!(out, "Table {}: {}", t.id, t.title)?;
            for row in &t.rows {
                writeln!(out)?;
                writeln!(out, "{}", row.label)?;
                writeln!(
                    out,
                    "  {:<22} {:>10} {:>10} {:>9}",
                    "column", "computed", "printed", "deviation"
                )?;
                for c in &row.cells {
                    writeln!(
                        out,
                        "  {:<22} {:>10} {:>10} {:>9}",
                        c.column,
                        sci(c.value),
                        sci_opt(c.printed),
                        pct(c.rel_deviation)
                    )?;
                }
                for f in &row.flags {
                    writeln!(out, "  ! {f}")?;
                }
            }
            Ok(())
        }
    }
}

pub fn report_row(format: Format, r: &ReportRow, out: &mut impl Write) -> io::Result<()> {
    let (fom_low, fom_high) = r
        .fom_range
        .map_or((None, None), |(lo, hi)| (Some(lo), Some(hi)));
    match format {
        Format::Json => json(r, out),
        Format::Csv => {
            writeln!(out, "{EVAL_CSV_HEADER}")?;
            let fields = [
                csv_field(&r.label),
                full(r.frequency_hz),
                full(r.bandwidth_hz),
                full(r.radius_m),
                full_opt(r.efficiency.map(|e| e.value)),
                full_opt(r.efficiency.map(|e| e.sigma)),
                full(r.ka),
                full(r.q_chl),
                full(r.q_bw),
                full(r.efficiency_bound),
                full(r.power_density_limit),
                full_opt(r.fom),
                full_opt(fom_low),
                full_opt(fom_high),
                csv_field(&joined_flags(&r.flags)),
            ];
            writeln!(out, "{}", fields.join(","))
        }
        Format::Table => {
            writeln!(out, "{}", r.label)?;
            let lines = [
                ("frequency_hz", Some(r.frequency_hz)),
                ("bandwidth_hz", Some(r.bandwidth_hz)),
                ("radius_m", Some(r.radius_m)),
                ("efficiency", r.efficiency.map(|e| e.value)),
                ("efficiency_sigma", r.efficiency.map(|e| e.sigma)),
                ("ka", Some(r.ka)),
                ("q_chl", Some(r.q_chl)),
                ("q_bw", Some(r.q_bw)),
                ("efficiency_bound", Some(r.efficiency_bound)),
                ("power_density_limit", Some(r.power_density_limit)),
                ("fom", r.fom),
                ("fom_low", fom_low),
                ("fom_high", fom_high),
            ];
            for (name, v) in lines {
                writeln!(out, "  {name:<20} {:>10}", sci_opt(v))?;
            }
            if let Some(b) = &r.budget {
                writeln!(
                    out,
                    "  {:<20} {:>10} +- {}",
                    "p_rad_iso_w",
                    sci(b.p_rad_iso.value),
                    sci(b.p_rad_iso.sigma)
                )?;
                writeln!(
                    out,
                    "  {:<20} {:>10} +- {}",
                    "p_rad_w",
                    sci(b.p_rad.value),
                    sci(b.p_rad.sigma)
                )?;
            }
            for f in &r.flags {
                writeln!(out, "  ! {f}")?;
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct AtomicOutput<'a> {
    state: &'a QuantumState,
    chu_radius_bohr: f64,
    radius_source: &'a str,
    bounds: Option<&'a AtomicBoundReport>,
}

pub fn atomic(
    format: Format,
    state: &QuantumState,
    radius: f64,
    source: &str,
    report: Option<&AtomicBoundReport>,
    out: &mut impl Write,
) -> io::Result<()> {
    match format {
        Format::Json => json(
            &AtomicOutput {
                state,
                chu_radius_bohr: radius,
                radius_source: source,
                bounds: report,
            },
            out,
        ),
        Format::Csv => {
            writeln!(out, "{ATOMIC_CSV_HEADER}")?;
            let mut fields = vec![state.to_string(), full(radius), source.to_string()];
            match report {
                Some(b) => fields.extend([
                    full(b.frequency),
                    full(b.ka),
                    full(b.q_chl),
                    full(b.lifetime_bound),
                    full(b.dipole_bound),
                    b.a_coefficient_mode.to_string(),
                    full(b.einstein_a_at_bound),
                    full_opt(b.reference_lifetime),
                    full_opt(b.reference_dipole),
                ]),
                None => fields.extend(std::iter::repeat_n(String::new(), 9)),
            }
            writeln!(out, "{}", fields.join(","))
        }
        Format::Table => {
            writeln!(out, "{state}")?;
            writeln!(
                out,
                "  {:<22} {:>10} ({source})",
                "chu_radius_bohr",
                sci(radius)
            )?;
            let Some(b) = report else {
                writeln!(
                    out,
                    "  no catalog transition for this state; pass --wavelength-m for bounds"
                )?;
                return Ok(());
            };
            let lines = [
                ("frequency_hz", Some(b.frequency)),
                ("ka", Some(b.ka)),
                ("q_chl", Some(b.q_chl)),
                ("lifetime_bound_ns", Some(b.lifetime_bound * 1e9)),
                ("lifetime_ns", b.reference_lifetime.map(|t| t * 1e9)),
                ("dipole_bound_au", Some(b.dipole_bound)),
                ("dipole_au", b.reference_dipole),
                ("einstein_a_at_bound", Some(b.einstein_a_at_bound)),
            ];
            for (name, v) in lines {
                writeln!(out, "  {name:<22} {:>10}", sci_opt(v))?;
            }
            writeln!(out, "  {:<22} {:>10}", "a_mode", b.a_coefficient_mode)
        }
    }
}

pub fn sweep(format: Format, points: &[SweepPoint], out: &mut impl Write) -> io::Result<()> {
    match format {
        Format::Json => json(&points, out),
        Format::Csv => write_csv(out, points),
        Format::Table => {
            writeln!(
                out,
                "{:>10} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}",
                "f_hz", "delta_f_hz", "a_m", "ka", "q_chl", "eta_bound", "p_lim"
            )?;
            for p in points {
                writeln!(
                    out,
                    "{:>10} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}{}",
                    sci(p.frequency_hz),
                    sci(p.bandwidth_hz),
                    sci(p.radius_m),
                    sci(p.ka),
                    sci(p.q_chl),
                    sci(p.efficiency_bound),
                    sci(p.power_density_limit),
                    if p.clipped { "  clipped" } else { "" }
                )?;
            }
            Ok(())
        }
    }
}

fn status_word(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "PASS",
        CheckStatus::Fail => "FAIL",
        CheckStatus::ExpectedDeviation => "EXPECTED-DEVIATION",
    }
}

pub fn validation(format: Format, r: &ValidationReport, out: &mut impl Write) -> io::Result<()> {
    match format {
        Format::Json => json(r, out),
        Format::Csv => {
            writeln!(out, "{VALIDATION_CSV_HEADER}")?;
            for c in &r.checks {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    c.criterion,
                    c.id,
                    status_word(c.status),
                    full(c.computed),
                    full_opt(c.expected),
                    full(c.lower),
                    full(c.upper),
                    csv_field(&c.description)
                )?;
            }
            Ok(())
        }
        Format::Table => {
            for c in &r.checks {
                writeln!(
                    out,
                    "{:<18} [{}] {:<46} {:>10}  in [{}, {}]  {}",
                    status_word(c.status),
                    c.criterion,
                    c.id,
                    sci(c.computed),
                    sci(c.lower),
                    sci(c.upper),
                    c.description
                )?;
            }
            writeln!(
                out,
                "\n{} passed, {} failed, {} expected deviations",
                r.passed, r.failed, r.expected_deviations
            )
        }
    }
}
