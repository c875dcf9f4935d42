//! Chu-Harrington-limit bounds for electrically small emitters.
//!
//! The crate covers three groups of computations:
//!
//! * [`chl`] and [`field`]: stored-energy Q, the Chu-Harrington limit, the
//!   bandwidth-limited radiation efficiency bound, the radiated power density
//!   ceiling and the emitter figure of merit, plus the far-field measurement
//!   pipeline used to infer radiation efficiency.
//! * [`atomic`]: lifetime and transition dipole bounds for two-level atomic
//!   emitters.
//! * [`radial`]: RMS radii of atomic states, closed form for hydrogen and a
//!   Numerov model-potential solver for alkali atoms.
//!
//! [`catalog`], [`tables`], [`sweep`] and [`validation`] build on these to
//! reproduce the reference tables and to evaluate user-supplied emitters.

pub mod atomic;
pub mod catalog;
pub mod chl;
pub mod constants;
pub mod error;
pub mod field;
pub mod radial;
pub mod report;
pub mod sweep;
pub mod tables;
pub mod validation;

pub use atomic::{AModeCoefficient, AtomicBoundReport, AtomicTransition};
pub use catalog::{EmitterRecord, GeometryDescriptor};
pub use chl::{ChlReport, ElectricalSize, ResonanceSpec};
pub use constants::{PhysicalConstants, UncertainValue, CODATA_2018};
pub use error::{Error, Result};
pub use field::{FieldMeasurement, RadiationBudget};
pub use radial::{Element, QuantumState, RadialSolution};
