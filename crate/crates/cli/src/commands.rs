use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use esebound_core::atomic::atomic_bounds;
use esebound_core::catalog::{builtin_emitters, builtin_transitions, load_emitter_file};
use esebound_core::radial::{state_rms_radius, AtomData, SolverOptions};
use esebound_core::report::evaluate_emitter;
use esebound_core::sweep::{sweep as run_sweep, SweepParam, SweepSpec};
use esebound_core::tables::{table1, table2, table3};
use esebound_core::validation::run_validation;
use esebound_core::{AtomicTransition, Element, QuantumState, CODATA_2018};

use crate::render;
use crate::Settings;

pub type CmdResult = Result<ExitCode, Box<dyn std::error::Error>>;

pub struct Fixed {
    pub frequency_hz: Option<f64>,
    pub bandwidth_hz: Option<f64>,
    pub radius_m: Option<f64>,
}

pub fn tables(s: &Settings, which: u8, solve_radii: bool, out: &mut impl Write) -> CmdResult {
    let consts = &CODATA_2018;
    let opts = SolverOptions::default();
    let table = match which {
        1 => table1(consts, &builtin_emitters(), s.interp)?,
        2 => table2(consts, &builtin_emitters(), s.interp)?,
        _ => {
            let solver = solve_radii.then(|| (AtomData::builtin(), &opts));
            table3(consts, &builtin_transitions(), s.a_mode, solver)?
        }
    };
    render::table(s.format, &table, out)?;
    Ok(ExitCode::SUCCESS)
}

pub fn eval(s: &Settings, file: &Path, out: &mut impl Write) -> CmdResult {
    let record = load_emitter_file(file)?;
    let row = evaluate_emitter(&CODATA_2018, &record, s.interp)?;
    render::report_row(s.format, &row, out)?;
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
pub fn atomic(
    s: &Settings,
    element: &str,
    n: u32,
    l: u32,
    j: f64,
    radius: Option<f64>,
    wavelength_m: Option<f64>,
    out: &mut impl Write,
) -> CmdResult {
    let element: Element = element.parse()?;
    let state = QuantumState::new(element, n, l, j)?;
    let (radius, source) = match radius {
        Some(r) => (r, "given"),
        None => (
            state_rms_radius(AtomData::builtin(), &state, &SolverOptions::default())?,
            "computed",
        ),
    };
    let catalog = builtin_transitions();
    let transition = match wavelength_m {
        Some(lambda) => {
            Some(AtomicTransition::new(state.to_string(), lambda, radius)?.with_upper_state(state))
        }
        None => match catalog.iter().find(|t| t.upper_state == Some(state)) {
            Some(t) => Some(t.with_chu_radius(radius)?),
            None => None,
        },
    };
    let report = match &transition {
        Some(t) => Some(atomic_bounds(&CODATA_2018, t, s.a_mode)?),
        None => None,
    };
    render::atomic(s.format, &state, radius, source, report.as_ref(), out)?;
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
pub fn sweep(
    s: &Settings,
    param: SweepParam,
    from: f64,
    to: f64,
    steps: usize,
    log: bool,
    fixed: Fixed,
    out: &mut impl Write,
) -> CmdResult {
    let need = |value: Option<f64>, swept: bool, flag: &str| -> Result<f64, String> {
        match (value, swept) {
            (_, true) => Ok(value.unwrap_or(from)),
            (Some(v), false) => Ok(v),
            (None, false) => Err(format!(
                "invalid input `{flag}`: required when it is not the swept parameter"
            )),
        }
    };
    let spec = SweepSpec {
        param,
        from,
        to,
        steps,
        log,
        frequency: need(
            fixed.frequency_hz,
            param == SweepParam::Frequency,
            "--frequency-hz",
        )?,
        bandwidth: need(
            fixed.bandwidth_hz,
            param == SweepParam::Bandwidth,
            "--bandwidth-hz",
        )?,
        radius: need(fixed.radius_m, param == SweepParam::Radius, "--radius-m")?,
    };
    let points = run_sweep(&CODATA_2018, &spec)?;
    render::sweep(s.format, &points, out)?;
    Ok(ExitCode::SUCCESS)
}

pub fn validate(s: &Settings, out: &mut impl Write) -> CmdResult {
    let report = run_validation(&CODATA_2018)?;
    render::validation(s.format, &report, out)?;
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
