//! RMS radii sqrt(<r^2>) of atomic states.
//!
//! Hydrogen uses the closed-form hydrogenic moment. Alkali states are
//! integrated with Numerov's method in a parametric model potential whose
//! energies come from Rydberg-Ritz quantum defects; see [`solve_radial`].

mod numerov;
mod params;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use numerov::{solve_radial, RadialSolution, SolverOptions, DEFAULT_STEP};
pub use params::{AtomData, ElementData, ModelPotentialParams, QuantumDefectSeries};

/// Largest principal quantum number accepted by the solver.
pub const MAX_N: u32 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    H,
    Rb87,
    Cs,
}

impl Element {
    pub fn symbol(self) -> &'static str {
        match self {
            Element::H => "H",
            Element::Rb87 => "Rb87",
            Element::Cs => "Cs",
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Element {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "h" | "hydrogen" => Ok(Element::H),
            "rb" | "rb87" | "87rb" | "rubidium" => Ok(Element::Rb87),
            "cs" | "cs133" | "133cs" | "caesium" | "cesium" => Ok(Element::Cs),
            other => Err(Error::Data(format!("unsupported element `{other}`"))),
        }
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.symbol())
    }
}

/// Bound state (n, l, j) of a one-valence-electron atom. `j` is stored as
/// `2j` so it compares exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuantumState {
    pub element: Element,
    pub n: u32,
    pub l: u32,
    pub two_j: u32,
}

impl QuantumState {
    /// `j` must be l +- 1/2 (and positive) except for hydrogen, where it is
    /// ignored.
    pub fn new(element: Element, n: u32, l: u32, j: f64) -> Result<Self> {
        if !(1..=MAX_N).contains(&n) {
            return Err(Error::input(
                "n",
                format!("must be in 1..={MAX_N}, got {n}"),
            ));
        }
        if l >= n {
            return Err(Error::input(
                "l",
                format!("must satisfy l < n, got l={l}, n={n}"),
            ));
        }
        let two_j_f = 2.0 * j;
        let two_j = if element == Element::H {
            2 * l + 1
        } else {
            if two_j_f.fract() != 0.0 || two_j_f < 1.0 {
                return Err(Error::input(
                    "j",
                    format!("must be a positive half-integer, got {j}"),
                ));
            }
            let tj = two_j_f as u32;
            if tj != 2 * l + 1 && (l == 0 || tj != 2 * l - 1) {
                return Err(Error::input(
                    "j",
                    format!("j={j} is not l +- 1/2 for l={l}"),
                ));
            }
            tj
        };
        Ok(Self {
            element,
            n,
            l,
            two_j,
        })
    }

    pub fn j(&self) -> f64 {
        self.two_j as f64 / 2.0
    }
}

impl fmt::Display for QuantumState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const L: [char; 7] = ['S', 'P', 'D', 'F', 'G', 'H', 'I'];
        let letter = L.get(self.l as usize).copied().unwrap_or('?');
        if self.element == Element::H {
            write!(f, "{} {}{}", self.element, self.n, letter)
        } else {
            write!(f, "{} {}{}{}/2", self.element, self.n, letter, self.two_j)
        }
    }
}

impl Serialize for QuantumState {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Closed-form hydrogenic sqrt(<r^2>) in bohr:
/// sqrt(n^2 (5n^2 + 1 - 3l(l+1)) / 2).
pub fn hydrogen_rms_radius(n: u32, l: u32) -> Result<f64> {
    if n < 1 {
        return Err(Error::input("n", "must be >= 1"));
    }
    if l >= n {
        return Err(Error::input(
            "l",
            format!("must satisfy l < n, got l={l}, n={n}"),
        ));
    }
    let (n, l) = (n as f64, l as f64);
    Ok((n * n * (5.0 * n * n + 1.0 - 3.0 * l * (l + 1.0)) / 2.0).sqrt())
}

/// Quantum-defect energy -1/(2 (n - delta(n))^2), hartree.
pub fn alkali_energy(n: u32, defects: &QuantumDefectSeries) -> Result<f64> {
    let n_star = defects.effective_n(n)?;
    Ok(-0.5 / (n_star * n_star))
}

/// RMS radius of `state` in bohr: closed form for hydrogen, Numerov solve
/// with the parameters in `data` otherwise.
pub fn state_rms_radius(
    data: &AtomData,
    state: &QuantumState,
    opts: &SolverOptions,
) -> Result<f64> {
    if state.element == Element::H {
        return hydrogen_rms_radius(state.n, state.l);
    }
    let potential = data.potential(state.element, state.l)?;
    let defects = data.defects(state.element, state.l, state.two_j)?;
    Ok(solve_radial(state, &potential, defects, opts)?.rms_radius())
}
