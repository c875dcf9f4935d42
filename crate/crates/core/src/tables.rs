//! Recomputes the three reference tables from catalog inputs and lines each
//! cell up against the printed value.
//!
//! Printed values live only in the `PRINTED_*` constants below and are
//! never used as a computed value.

use serde::Serialize;

use crate::atomic::{atomic_bounds, AModeCoefficient, AtomicTransition};
use crate::catalog::{DeltaFInterpretation, EmitterRecord};
use crate::constants::PhysicalConstants;
use crate::error::Result;
use crate::radial::{state_rms_radius, AtomData, SolverOptions};
use crate::report::{evaluate_emitter, Flag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellKind {
    /// Catalog input echoed back (possibly after a unit or geometry step).
    Input,
    Computed,
    /// Measured reference data.
    Reference,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cell {
    pub column: &'static str,
    pub kind: CellKind,
    pub value: f64,
    pub printed: Option<f64>,
    pub rel_deviation: Option<f64>,
}

impl Cell {
    fn new(column: &'static str, kind: CellKind, value: f64, printed: Option<f64>) -> Self {
        let rel_deviation = printed.map(|p| relative_deviation(value, p));
        Self {
            column,
            kind,
            value,
            printed,
            rel_deviation,
        }
    }
}

/// Rounds to `decimals` places, the way a printed table shows a value.
pub fn round_to(value: f64, decimals: i32) -> f64 {
    let scale = 10f64.powi(decimals);
    (value * scale).round() / scale
}

pub fn relative_deviation(value: f64, reference: f64) -> f64 {
    if reference == 0.0 {
        value.abs()
    } else {
        (value - reference) / reference.abs()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub label: String,
    pub cells: Vec<Cell>,
    pub flags: Vec<Flag>,
}

impl TableRow {
    pub fn cell(&self, column: &str) -> Option<&Cell> {
        self.cells.iter().find(|c| c.column == column)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub id: u8,
    pub title: &'static str,
    pub rows: Vec<TableRow>,
}

impl Table {
    pub fn row(&self, label_prefix: &str) -> Option<&TableRow> {
        let key = label_prefix.to_ascii_lowercase();
        self.rows
            .iter()
            .find(|r| r.label.to_ascii_lowercase().starts_with(&key))
    }
}

pub struct PrintedTable1Row {
    pub label: &'static str,
    pub f: f64,
    pub delta_f: f64,
    pub a: f64,
    pub q_chl: f64,
    pub efficiency_bound: f64,
    pub reported_efficiency: f64,
}

pub const PRINTED_TABLE1: [PrintedTable1Row; 2] = [
    PrintedTable1Row {
        label: "ELF",
        f: 76.0,
        delta_f: 4.0,
        a: 15932.0,
        q_chl: 6.1e4,
        efficiency_bound: 1.5e-4,
        reported_efficiency: 2e-6,
    },
    PrintedTable1Row {
        label: "VLF",
        f: 24000.0,
        delta_f: 240.0,
        a: 935.0,
        q_chl: 11.7,
        efficiency_bound: 1.0,
        reported_efficiency: 0.5,
    },
];

/// Printed FOM per emitter; the PZT entry is printed as "~ 1".
pub const PRINTED_TABLE2: [(&str, f64); 4] = [
    ("ELF", 0.0064),
    ("VLF", 0.048),
    ("PZT mechanical", 1.0),
    ("LN mechanical", 0.55),
];

pub struct PrintedTable3Row {
    pub label: &'static str,
    /// bohr
    pub chu_radius: f64,
    /// ns
    pub lifetime_bound: f64,
    pub lifetime: f64,
    /// e a0
    pub dipole_bound: f64,
    pub dipole: f64,
}

pub const PRINTED_TABLE3: [PrintedTable3Row; 5] = [
    PrintedTable3Row {
        label: "H 2P-1S",
        chu_radius: 1.73,
        lifetime_bound: 0.01,
        lifetime: 1.6,
        dipole_bound: 9.61,
        dipole: 0.745,
    },
    PrintedTable3Row {
        label: "Cs D1",
        chu_radius: 8.18,
        lifetime_bound: 8.46,
        lifetime: 34.79,
        dipole_bound: 6.46,
        dipole: 3.19,
    },
    PrintedTable3Row {
        label: "Cs D2",
        chu_radius: 8.42,
        lifetime_bound: 6.38,
        lifetime: 30.41,
        dipole_bound: 6.92,
        dipole: 4.48,
    },
    PrintedTable3Row {
        label: "Rb87 D1",
        chu_radius: 7.72,
        lifetime_bound: 6.29,
        lifetime: 27.68,
        dipole_bound: 6.29,
        dipole: 2.99,
    },
    PrintedTable3Row {
        label: "Rb87 D2",
        chu_radius: 7.82,
        lifetime_bound: 5.61,
        lifetime: 26.24,
        dipole_bound: 6.47,
        dipole: 4.23,
    },
];

const ELF_BANDWIDTH_NOTE: &str =
    "printed bound needs the 8 Hz bandwidth while the printed FOM needs 4 Hz";

fn printed_t1(label: &str) -> Option<&'static PrintedTable1Row> {
    PRINTED_TABLE1
        .iter()
        .find(|p| p.label.eq_ignore_ascii_case(label))
}

fn printed_t2(label: &str) -> Option<f64> {
    PRINTED_TABLE2
        .iter()
        .find(|(l, _)| l.eq_ignore_ascii_case(label))
        .map(|(_, v)| *v)
}

fn printed_t3(label: &str) -> Option<&'static PrintedTable3Row> {
    PRINTED_TABLE3
        .iter()
        .find(|p| p.label.eq_ignore_ascii_case(label))
}

/// Q_CHL and efficiency bound for the records that appear in the printed
/// table (records without a printed row are still evaluated).
pub fn table1(
    consts: &PhysicalConstants,
    emitters: &[EmitterRecord],
    interp: DeltaFInterpretation,
) -> Result<Table> {
    let mut rows = Vec::new();
    for rec in emitters {
        let printed = printed_t1(&rec.name);
        // The mechanical devices are reported in table 2 only.
        if printed.is_none() && is_builtin_device(&rec.name) {
            continue;
        }
        let row = evaluate_emitter(consts, rec, interp)?;
        let mut flags = row.flags.clone();
        let bound_dev =
            printed.map(|p| relative_deviation(row.efficiency_bound, p.efficiency_bound));
        if rec.alternate_delta_f.is_some() && bound_dev.is_some_and(|d| d.abs() > 0.05) {
            flags.push(Flag::ExpectedDeviation(ELF_BANDWIDTH_NOTE.into()));
        }
        rows.push(TableRow {
            label: rec.name.clone(),
            cells: vec![
                Cell::new(
                    "f_hz",
                    CellKind::Input,
                    row.frequency_hz,
                    printed.map(|p| p.f),
                ),
                Cell::new(
                    "delta_f_hz",
                    CellKind::Input,
                    row.bandwidth_hz,
                    printed.map(|p| p.delta_f),
                ),
                Cell::new("a_m", CellKind::Input, row.radius_m, printed.map(|p| p.a)),
                Cell::new(
                    "q_chl",
                    CellKind::Computed,
                    row.q_chl,
                    printed.map(|p| p.q_chl),
                ),
                Cell::new(
                    "efficiency_bound",
                    CellKind::Computed,
                    row.efficiency_bound,
                    printed.map(|p| p.efficiency_bound),
                ),
                Cell::new(
                    "reported_efficiency",
                    CellKind::Reference,
                    row.efficiency.map(|e| e.value).unwrap_or(f64::NAN),
                    printed.map(|p| p.reported_efficiency),
                ),
            ],
            flags,
        });
    }
    Ok(Table {
        id: 1,
        title: "Efficiency bound for the ELF and VLF facilities",
        rows,
    })
}

fn is_builtin_device(name: &str) -> bool {
    printed_t2(name).is_some()
}

pub fn table2(
    consts: &PhysicalConstants,
    emitters: &[EmitterRecord],
    interp: DeltaFInterpretation,
) -> Result<Table> {
    let mut rows = Vec::new();
    for rec in emitters {
        let row = evaluate_emitter(consts, rec, interp)?;
        let printed = printed_t2(&rec.name);
        let mut flags = row.flags.clone();
        let fom = row.fom.unwrap_or(f64::NAN);
        if rec.alternate_delta_f.is_some()
            && printed.is_some_and(|p| relative_deviation(fom, p).abs() > 0.05)
        {
            flags.push(Flag::ExpectedDeviation(ELF_BANDWIDTH_NOTE.into()));
        }
        if rec.name.eq_ignore_ascii_case("PZT mechanical") {
            flags.push(Flag::ExpectedDeviation("printed as \"~ 1\"".into()));
        }
        let mut cells = vec![
            Cell::new(
                "efficiency",
                CellKind::Input,
                row.efficiency.map(|e| e.value).unwrap_or(f64::NAN),
                None,
            ),
            Cell::new("a_m", CellKind::Input, row.radius_m, None),
            Cell::new(
                "power_density_limit",
                CellKind::Computed,
                row.power_density_limit,
                None,
            ),
            Cell::new("fom", CellKind::Computed, fom, printed),
        ];
        if let Some((lo, hi)) = row.fom_range {
            cells.push(Cell::new("fom_low", CellKind::Computed, lo, None));
            cells.push(Cell::new("fom_high", CellKind::Computed, hi, None));
        }
        rows.push(TableRow {
            label: rec.name.clone(),
            cells,
            flags,
        });
    }
    Ok(Table {
        id: 2,
        title: "Emitter figure of merit",
        rows,
    })
}

/// Lifetime and dipole bounds from the catalog Chu radii. When
/// `solver` is given, each row also carries the RMS radius of its upper
/// state computed from scratch.
pub fn table3(
    consts: &PhysicalConstants,
    transitions: &[AtomicTransition],
    mode: AModeCoefficient,
    solver: Option<(&AtomData, &SolverOptions)>,
) -> Result<Table> {
    let mut rows = Vec::new();
    for t in transitions {
        let printed = printed_t3(&t.label);
        let report = atomic_bounds(consts, t, mode)?;
        let mut flags = Vec::new();
        let mut cells = vec![Cell::new(
            "chu_radius",
            CellKind::Input,
            t.chu_radius,
            printed.map(|p| p.chu_radius),
        )];
        if let (Some((data, opts)), Some(state)) = (solver, t.upper_state.as_ref()) {
            let r = state_rms_radius(data, state, opts)?;
            cells.push(Cell::new(
                "chu_radius_solved",
                CellKind::Computed,
                r,
                printed.map(|p| p.chu_radius),
            ));
        }
        cells.extend([
            Cell::new(
                "lifetime_bound_ns",
                CellKind::Computed,
                report.lifetime_bound * 1e9,
                printed.map(|p| p.lifetime_bound),
            ),
            Cell::new(
                "lifetime_ns",
                CellKind::Reference,
                t.reference_lifetime.map(|v| v * 1e9).unwrap_or(f64::NAN),
                printed.map(|p| p.lifetime),
            ),
            Cell::new(
                "dipole_bound_au",
                CellKind::Computed,
                report.dipole_bound,
                printed.map(|p| p.dipole_bound),
            ),
            Cell::new(
                "dipole_au",
                CellKind::Reference,
                t.reference_dipole.unwrap_or(f64::NAN),
                printed.map(|p| p.dipole),
            ),
        ]);
        if let Some(p) = t.printed_chu_radius {
            let at_printed = atomic_bounds(consts, &t.with_chu_radius(p)?, mode)?;
            flags.push(Flag::ExpectedDeviation(format!(
                "printed radius {p} gives {:.3} ns and {:.2} e a0; printed bounds need {:.3}",
                at_printed.lifetime_bound * 1e9,
                at_printed.dipole_bound,
                t.chu_radius
            )));
        }
        rows.push(TableRow {
            label: t.label.clone(),
            cells,
            flags,
        });
    }
    Ok(Table {
        id: 3,
        title: "Lifetime and transition dipole bounds (radii and dipoles in atomic units, lifetimes in ns)",
        rows,
    })
}
