//! Reproduction checks against every printed value, with pinned tolerances.
//!
//! Each [`Check`] carries an acceptance window `[lower, upper]`. Known
//! discrepancies in the printed values are reported with status
//! `ExpectedDeviation` and never count as failures.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::atomic::{dipole_bound, einstein_a, lifetime_bound, AModeCoefficient};
use crate::catalog::{
    builtin_emitters, builtin_transitions, find_emitter, find_transition, DeltaFInterpretation,
};
use crate::chl::{self, fom, power_density_limit, q_chl, q_chl_deep, sphere_volume, ResonanceSpec};
use crate::constants::{PhysicalConstants, UncertainValue};
use crate::error::Result;
use crate::field::{isotropic_radiated_power, vswr_bandwidth, FieldMeasurement};
use crate::radial::{
    hydrogen_rms_radius, solve_radial, AtomData, Element, ModelPotentialParams,
    QuantumDefectSeries, QuantumState, SolverOptions, DEFAULT_STEP,
};
use crate::report::{evaluate_emitter, Flag};
use crate::tables::{round_to, PRINTED_TABLE3};

const PROPERTY_SEED: u64 = 0x00C4_0E5E;
const PROPERTY_DRAWS: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    ExpectedDeviation,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub criterion: u8,
    pub id: String,
    pub description: String,
    pub computed: f64,
    /// Reference value, when the check is anchored on one.
    pub expected: Option<f64>,
    pub lower: f64,
    pub upper: f64,
    pub status: CheckStatus,
}

impl Check {
    fn window(
        criterion: u8,
        id: &str,
        description: &str,
        computed: f64,
        expected: Option<f64>,
        lower: f64,
        upper: f64,
    ) -> Self {
        let status = if computed >= lower && computed <= upper {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        Self {
            criterion,
            id: id.into(),
            description: description.into(),
            computed,
            expected,
            lower,
            upper,
            status,
        }
    }

    /// |computed - expected| <= tol |expected|.
    fn relative(
        criterion: u8,
        id: &str,
        description: &str,
        computed: f64,
        expected: f64,
        tol: f64,
    ) -> Self {
        let half = tol * expected.abs();
        Self::window(
            criterion,
            id,
            description,
            computed,
            Some(expected),
            expected - half,
            expected + half,
        )
    }

    fn band(
        criterion: u8,
        id: &str,
        description: &str,
        computed: f64,
        lower: f64,
        upper: f64,
    ) -> Self {
        Self::window(criterion, id, description, computed, None, lower, upper)
    }

    /// Non-negative error metric bounded by `limit`.
    fn at_most(criterion: u8, id: &str, description: &str, computed: f64, limit: f64) -> Self {
        Self::window(criterion, id, description, computed, Some(0.0), 0.0, limit)
    }

    fn expected_deviation(
        criterion: u8,
        id: &str,
        description: &str,
        computed: f64,
        printed: f64,
    ) -> Self {
        Self {
            criterion,
            id: id.into(),
            description: description.into(),
            computed,
            expected: Some(printed),
            lower: printed,
            upper: printed,
            status: CheckStatus::ExpectedDeviation,
        }
    }

    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub passed: usize,
    pub failed: usize,
    pub expected_deviations: usize,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    fn from_checks(checks: Vec<Check>) -> Self {
        let count = |s| checks.iter().filter(|c| c.status == s).count();
        Self {
            passed: count(CheckStatus::Pass),
            failed: count(CheckStatus::Fail),
            expected_deviations: count(CheckStatus::ExpectedDeviation),
            checks,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn criterion(&self, criterion: u8) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(move |c| c.criterion == criterion)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs every check under `consts`. Determinism is checked by running the
/// numerical checks twice and comparing their serialized form.
pub fn run_validation(consts: &PhysicalConstants) -> Result<ValidationReport> {
    let first = numeric_checks(consts)?;
    let second = numeric_checks(consts)?;
    let identical = serde_json::to_string(&first).ok() == serde_json::to_string(&second).ok();
    let mut checks = first;
    checks.push(Check::band(
        9,
        "determinism.repeat",
        "two consecutive runs serialize byte-identically",
        if identical { 1.0 } else { 0.0 },
        1.0,
        1.0,
    ));
    Ok(ValidationReport::from_checks(checks))
}

fn numeric_checks(consts: &PhysicalConstants) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    emitter_checks(consts, &mut checks)?;
    field_checks(consts, &mut checks)?;
    atomic_checks(consts, &mut checks)?;
    radial_checks(&mut checks)?;
    checks.push(Check::relative(
        7,
        "vswr.ln_bandwidth",
        "LN natural bandwidth at VSWR 2 (Hz)",
        vswr_bandwidth(35568.0, 303000.0, 2.0)?,
        0.084,
        0.02,
    ));
    property_checks(consts, &mut checks)?;
    Ok(checks)
}

fn emitter_checks(consts: &PhysicalConstants, checks: &mut Vec<Check>) -> Result<()> {
    let emitters = builtin_emitters();
    let get = |name: &str| find_emitter(&emitters, name).expect("builtin emitter");
    let primary = |name: &str| evaluate_emitter(consts, get(name), DeltaFInterpretation::Primary);
    let alternate =
        |name: &str| evaluate_emitter(consts, get(name), DeltaFInterpretation::Alternate);

    let elf = primary("ELF")?;
    let elf_alt = alternate("ELF")?;
    let vlf = primary("VLF")?;
    let ln = primary("LN")?;
    let pzt = primary("PZT")?;

    checks.push(Check::relative(
        1,
        "table1.elf.q_chl",
        "ELF Q_CHL",
        elf.q_chl,
        6.1e4,
        0.02,
    ));
    checks.push(Check::relative(
        1,
        "table1.vlf.q_chl",
        "VLF Q_CHL",
        vlf.q_chl,
        11.7,
        0.01,
    ));
    checks.push(Check::band(
        1,
        "table1.vlf.bound",
        "VLF efficiency bound clipped to exactly 1",
        vlf.efficiency_bound,
        1.0,
        1.0,
    ));
    checks.push(Check::relative(
        1,
        "table1.elf.bound_8hz",
        "ELF efficiency bound with the 8 Hz bandwidth",
        elf_alt.efficiency_bound,
        1.5e-4,
        0.05,
    ));
    checks.push(Check::relative(
        1,
        "table1.elf.bound_4hz",
        "ELF efficiency bound with the 4 Hz bandwidth (documented 3.1e-4)",
        elf.efficiency_bound,
        3.1e-4,
        0.01,
    ));
    checks.push(Check::expected_deviation(
        1,
        "table1.elf.bound_4hz_vs_printed",
        "printed ELF bound 1.5e-4 does not follow from the printed 4 Hz bandwidth",
        elf.efficiency_bound,
        1.5e-4,
    ));

    checks.push(Check::relative(
        2,
        "device.ln.bound",
        "LN rod efficiency bound (a = L/2)",
        ln.efficiency_bound,
        1.82e-8,
        0.02,
    ));
    checks.push(Check::relative(
        2,
        "device.pzt.bound",
        "PZT disk efficiency bound (half-diagonal)",
        pzt.efficiency_bound,
        2.4e-11,
        0.05,
    ));

    let nan = f64::NAN;
    checks.push(Check::relative(
        3,
        "table2.elf.fom",
        "ELF FOM",
        elf.fom.unwrap_or(nan),
        0.0064,
        0.05,
    ));
    checks.push(Check::relative(
        3,
        "table2.vlf.fom",
        "VLF FOM",
        vlf.fom.unwrap_or(nan),
        0.048,
        0.05,
    ));
    checks.push(Check::relative(
        3,
        "table2.ln.fom",
        "LN FOM (lower efficiency 1e-8)",
        ln.fom.unwrap_or(nan),
        0.55,
        0.05,
    ));
    checks.push(Check::band(
        3,
        "table2.pzt.fom",
        "PZT FOM inside [1, 2]",
        pzt.fom.unwrap_or(nan),
        1.0,
        2.0,
    ));
    let excess = pzt
        .flags
        .iter()
        .find_map(|f| match f {
            Flag::ExceedsBound { sigmas } => Some(*sigmas),
            _ => None,
        })
        .unwrap_or(nan);
    checks.push(Check::band(
        3,
        "table2.pzt.exceeds_bound",
        "PZT flagged above the bound, excess within 2 sigma of the measurement",
        excess,
        0.0,
        2.0,
    ));
    checks.push(Check::band(
        3,
        "table2.pzt.fom_flag",
        "PZT flagged with FOM above 1",
        if pzt.flags.contains(&Flag::FomAboveOne) {
            1.0
        } else {
            0.0
        },
        1.0,
        1.0,
    ));
    Ok(())
}

fn field_checks(consts: &PhysicalConstants, checks: &mut Vec<Check>) -> Result<()> {
    let emitters = builtin_emitters();
    let pzt = find_emitter(&emitters, "PZT").expect("builtin emitter");
    let budget = pzt
        .radiation_budget(consts)?
        .expect("PZT carries a field measurement");
    let pw = 1e-12;
    checks.push(Check::relative(
        4,
        "field.p_iso",
        "isotropic radiated power (pW)",
        budget.p_rad_iso.value / pw,
        75.9,
        0.005,
    ));
    checks.push(Check::relative(
        4,
        "field.p_iso_sigma",
        "isotropic power uncertainty (pW)",
        budget.p_rad_iso.sigma / pw,
        30.4,
        0.005,
    ));
    checks.push(Check::band(
        4,
        "field.p_iso_in_printed_band",
        "isotropic power inside the printed 78.9 +- 30.4 pW",
        budget.p_rad_iso.value / pw,
        78.9 - 30.4,
        78.9 + 30.4,
    ));
    checks.push(Check::expected_deviation(
        4,
        "field.p_iso_vs_printed",
        "printed central value 78.9 pW is not reproducible from 50 fT at 4.5 m",
        budget.p_rad_iso.value / pw,
        78.9,
    ));
    checks.push(Check::relative(
        4,
        "field.eta",
        "PZT radiation efficiency (1e-11)",
        budget.eta.value / 1e-11,
        4.4,
        0.10,
    ));
    checks.push(Check::relative(
        4,
        "field.eta_sigma",
        "PZT efficiency uncertainty (1e-11)",
        budget.eta.sigma / 1e-11,
        1.7,
        0.10,
    ));
    Ok(())
}

fn atomic_checks(consts: &PhysicalConstants, checks: &mut Vec<Check>) -> Result<()> {
    let transitions = builtin_transitions();
    for printed in &PRINTED_TABLE3 {
        let t = find_transition(&transitions, printed.label).expect("builtin transition");
        let key = printed.label.to_ascii_lowercase().replace(' ', "_");
        let tau_ns = lifetime_bound(consts, t)? * 1e9;
        let d = dipole_bound(consts, t)?;
        checks.push(Check::relative(
            5,
            &format!("table3.{key}.lifetime_bound"),
            &format!(
                "{} lifetime bound (ns, at printed precision)",
                printed.label
            ),
            round_to(tau_ns, 2),
            printed.lifetime_bound,
            0.03,
        ));
        checks.push(Check::relative(
            5,
            &format!("table3.{key}.dipole_bound"),
            &format!(
                "{} dipole bound (e a0, at printed precision)",
                printed.label
            ),
            round_to(d, 2),
            printed.dipole_bound,
            0.03,
        ));

        checks.push(Check::band(
            8,
            &format!("props.{key}.lifetime_respected"),
            &format!("{} bound over measured lifetime <= 1", printed.label),
            tau_ns / (t.reference_lifetime.unwrap_or(f64::NAN) * 1e9),
            0.0,
            1.0,
        ));
        checks.push(Check::band(
            8,
            &format!("props.{key}.dipole_respected"),
            &format!("{} measured dipole over bound <= 1", printed.label),
            t.reference_dipole.unwrap_or(f64::NAN) / d,
            0.0,
            1.0,
        ));

        if let Some(radius) = t.printed_chu_radius {
            let at_printed = lifetime_bound(consts, &t.with_chu_radius(radius)?)? * 1e9;
            checks.push(Check::relative(
                5,
                &format!("table3.{key}.printed_radius_lifetime"),
                &format!(
                    "{} lifetime bound from the printed radius {radius} (ns)",
                    printed.label
                ),
                at_printed,
                0.305,
                0.01,
            ));
            checks.push(Check::expected_deviation(
                5,
                &format!("table3.{key}.printed_radius_vs_printed_bound"),
                "printed radius 1.73 cannot give the printed 0.01 ns bound",
                at_printed,
                printed.lifetime_bound,
            ));
        }
    }
    Ok(())
}

fn radial_checks(checks: &mut Vec<Check>) -> Result<()> {
    let opts = SolverOptions::default();
    for n in 1..=5 {
        for l in 0..n {
            let state = QuantumState::new(Element::H, n, l, 0.5)?;
            let sol = solve_radial(
                &state,
                &ModelPotentialParams::coulomb(),
                &QuantumDefectSeries::hydrogenic(),
                &opts,
            )?;
            let exact = hydrogen_rms_radius(n, l)?;
            checks.push(Check::at_most(
                6,
                &format!("radial.coulomb.n{n}l{l}"),
                &format!("Coulomb-mode RMS radius vs closed form, n={n} l={l} (relative error)"),
                (sol.rms_radius() / exact - 1.0).abs(),
                1e-3,
            ));
        }
    }

    let data = AtomData::builtin();
    let cases = [
        (Element::Cs, 6, 0.5, 8.18),
        (Element::Cs, 6, 1.5, 8.42),
        (Element::Rb87, 5, 0.5, 7.72),
        (Element::Rb87, 5, 1.5, 7.82),
    ];
    let mut radii = Vec::new();
    for (element, n, j, printed) in cases {
        let state = QuantumState::new(element, n, 1, j)?;
        let pot = data.potential(element, 1)?;
        let defects = data.defects(element, 1, state.two_j)?;
        let coarse = solve_radial(&state, &pot, defects, &opts)?;
        let fine = solve_radial(
            &state,
            &pot,
            defects,
            &SolverOptions::with_step(DEFAULT_STEP / 2.0),
        )?;
        let id = state
            .to_string()
            .to_ascii_lowercase()
            .replace([' ', '/'], "_");
        checks.push(Check::relative(
            6,
            &format!("radial.{id}.rms_radius"),
            &format!("{state} RMS radius (bohr)"),
            coarse.rms_radius(),
            printed,
            0.05,
        ));
        checks.push(Check::at_most(
            6,
            &format!("radial.{id}.step_halving"),
            &format!("{state} RMS radius change on halving the step"),
            (coarse.rms_radius() / fine.rms_radius() - 1.0).abs(),
            1e-3,
        ));
        radii.push((element, coarse.rms_radius()));
    }
    for element in [Element::Cs, Element::Rb87] {
        let r: Vec<f64> = radii
            .iter()
            .filter(|(e, _)| *e == element)
            .map(|(_, r)| *r)
            .collect();
        checks.push(Check::band(
            6,
            &format!(
                "radial.{}.j_splitting",
                element.symbol().to_ascii_lowercase()
            ),
            &format!("{element} radius(P3/2) - radius(P1/2) > 0"),
            r[1] - r[0],
            f64::MIN_POSITIVE,
            f64::MAX,
        ));
    }
    Ok(())
}

fn property_checks(consts: &PhysicalConstants, checks: &mut Vec<Check>) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(PROPERTY_SEED);

    let ka: Vec<f64> = (0..100)
        .map(|i| 10f64.powf(-3.0 + 5.0 * i as f64 / 99.0))
        .collect();
    let q: Vec<f64> = ka.iter().map(|&k| q_chl(k)).collect::<Result<_>>()?;
    let violations = q
        .windows(2)
        .filter(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Less))
        .count();
    checks.push(Check::at_most(
        8,
        "props.q_chl_monotone",
        "Q_CHL strictly decreasing on a 100-point log grid (violations)",
        violations as f64,
        0.0,
    ));

    let mut fom_err = 0f64;
    let mut pdl_err = 0f64;
    let mut a_err = 0f64;
    let mut unc_err = 0f64;
    for _ in 0..PROPERTY_DRAWS {
        let f = 10f64.powf(rng.random_range(0.0..9.0));
        let df = f * 10f64.powf(rng.random_range(-6.0..-0.1));
        let a = 10f64.powf(rng.random_range(-3.0..4.0));
        let eta = rng.random_range(0.0..1.0);
        let res = ResonanceSpec::new(f, df)?;
        let ka = chl::electrical_size(consts, f, a)?.ka;
        let qds = q_chl_deep(ka)?;

        let direct = fom(consts, eta, a, &res)?;
        let via_bound = eta * df * qds / f;
        if direct != 0.0 {
            fom_err = fom_err.max((direct / via_bound - 1.0).abs());
        }
        let lhs = power_density_limit(consts, &res) * sphere_volume(a);
        pdl_err = pdl_err.max((lhs / ((f / df) / qds) - 1.0).abs());

        let lambda = 10f64.powf(rng.random_range(-8.0..-5.0));
        let radius = rng.random_range(0.5..50.0);
        let t = crate::atomic::AtomicTransition::new("draw", lambda, radius)?;
        let ft = t.frequency(consts)?;
        let rate = einstein_a(
            consts,
            ft,
            dipole_bound(consts, &t)?,
            AModeCoefficient::Standard,
        )?;
        let q = q_chl(chl::electrical_size(consts, ft, radius * consts.a0)?.ka)?;
        a_err = a_err.max((rate / (4.0 * PI * ft / q) - 1.0).abs());

        let b = 10f64.powf(rng.random_range(-18.0..-6.0));
        let rel = rng.random_range(0.0..0.9);
        let m = FieldMeasurement::new(
            UncertainValue::new(b, rel * b)?,
            rng.random_range(0.1..100.0),
            None,
            1.0,
        )?;
        let p = isotropic_radiated_power(consts, &m);
        unc_err = unc_err.max((p.relative() - 2.0 * m.b_rms.relative()).abs());
    }
    checks.push(Check::at_most(
        8,
        "props.fom_identity",
        "FOM = eta df Q_ds / f (max relative error)",
        fom_err,
        1e-12,
    ));
    checks.push(Check::at_most(
        8,
        "props.power_density_identity",
        "p_lim V = (f/df)/Q_ds (max relative error)",
        pdl_err,
        1e-12,
    ));
    checks.push(Check::at_most(
        8,
        "props.einstein_dipole_inverse",
        "A(dipole bound) = 4 pi f / Q_CHL (max relative error)",
        a_err,
        1e-12,
    ));
    checks.push(Check::at_most(
        8,
        "props.uncertainty_doubling",
        "relative power uncertainty = 2 x relative field uncertainty",
        unc_err,
        1e-15,
    ));
    Ok(())
}
