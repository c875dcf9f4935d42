use std::collections::BTreeMap;
use std::path::Path;
use std::sync::OnceLock;

use serde::Deserialize;

use super::Element;
use crate::error::{Error, Result};

const BUILTIN_PARAMS: &str = include_str!("../../data/alkali_model_potential.toml");
const SUPPORTED_FORMAT: u32 = 1;

/// Model-potential coefficients for one (element, l) channel, atomic units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelPotentialParams {
    pub z: f64,
    pub alpha_c: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
    pub r_c: f64,
}

impl ModelPotentialParams {
    /// Bare Coulomb potential -1/r.
    pub fn coulomb() -> Self {
        Self {
            z: 1.0,
            alpha_c: 0.0,
            a1: 0.0,
            a2: 0.0,
            a3: 0.0,
            a4: 0.0,
            r_c: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            self.z,
            self.alpha_c,
            self.a1,
            self.a2,
            self.a3,
            self.a4,
            self.r_c,
        ];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::Data(
                "model potential has non-finite coefficients".into(),
            ));
        }
        if self.alpha_c < 0.0 {
            return Err(Error::Data(format!(
                "alpha_c must be >= 0, got {}",
                self.alpha_c
            )));
        }
        if self.r_c <= 0.0 {
            return Err(Error::Data(format!("r_c must be > 0, got {}", self.r_c)));
        }
        if self.z < 1.0 {
            return Err(Error::Data(format!("z must be >= 1, got {}", self.z)));
        }
        Ok(())
    }

    /// Effective charge Z_l(r).
    pub fn effective_charge(&self, r: f64) -> f64 {
        1.0 + (self.z - 1.0) * (-self.a1 * r).exp()
            - r * (self.a3 + self.a4 * r) * (-self.a2 * r).exp()
    }

    /// V(r) = -Z_l(r)/r - alpha_c/(2 r^4) (1 - exp(-(r/r_c)^6)), hartree.
    pub fn potential(&self, r: f64) -> f64 {
        let polarization = if self.alpha_c == 0.0 {
            0.0
        } else {
            self.alpha_c / (2.0 * r.powi(4)) * (1.0 - (-(r / self.r_c).powi(6)).exp())
        };
        -self.effective_charge(r) / r - polarization
    }
}

/// Rydberg-Ritz coefficients `[d0, d2, d4, ...]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumDefectSeries {
    coefficients: Vec<f64>,
    n_min: u32,
}

impl QuantumDefectSeries {
    pub fn new(coefficients: Vec<f64>, n_min: u32) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::Data(
                "quantum defect series needs at least d0".into(),
            ));
        }
        if coefficients.iter().any(|c| !c.is_finite()) {
            return Err(Error::Data(
                "quantum defect series has non-finite entries".into(),
            ));
        }
        Ok(Self {
            coefficients,
            n_min: n_min.max(1),
        })
    }

    pub fn hydrogenic() -> Self {
        Self {
            coefficients: vec![0.0],
            n_min: 1,
        }
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn n_min(&self) -> u32 {
        self.n_min
    }

    pub fn defect(&self, n: u32) -> Result<f64> {
        if n < self.n_min {
            return Err(Error::Data(format!(
                "n={n} lies below the lowest state n={} covered by the defect series",
                self.n_min
            )));
        }
        let x = n as f64 - self.coefficients[0];
        if x <= 0.0 {
            return Err(Error::Data(format!(
                "n={n} does not exceed d0={}",
                self.coefficients[0]
            )));
        }
        let inv_x2 = 1.0 / (x * x);
        let mut term = 1.0;
        let mut delta = 0.0;
        for c in &self.coefficients {
            delta += c * term;
            term *= inv_x2;
        }
        Ok(delta)
    }

    /// n* = n - delta(n).
    pub fn effective_n(&self, n: u32) -> Result<f64> {
        let n_star = n as f64 - self.defect(n)?;
        if n_star <= 0.0 {
            return Err(Error::Data(format!(
                "effective quantum number {n_star} <= 0 for n={n}"
            )));
        }
        Ok(n_star)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ElementData {
    pub z: f64,
    pub alpha_c: f64,
    potentials: BTreeMap<u32, ModelPotentialParams>,
    defects: BTreeMap<(u32, u32), QuantumDefectSeries>,
}

/// Parsed parameter file: model potentials and defect series per element.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomData {
    elements: BTreeMap<Element, ElementData>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileDoc {
    format_version: u32,
    #[serde(default)]
    element: Vec<FileElement>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileElement {
    symbol: String,
    z: f64,
    alpha_c: f64,
    #[serde(default)]
    potential: Vec<FilePotential>,
    #[serde(default)]
    defect: Vec<FileDefect>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FilePotential {
    l: u32,
    a1: f64,
    a2: f64,
    a3: f64,
    a4: f64,
    r_c: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileDefect {
    l: u32,
    j: f64,
    n_min: u32,
    coefficients: Vec<f64>,
}

impl AtomData {
    /// Parameters shipped with the crate.
    pub fn builtin() -> &'static AtomData {
        static DATA: OnceLock<AtomData> = OnceLock::new();
        DATA.get_or_init(|| {
            AtomData::parse(BUILTIN_PARAMS).expect("bundled parameter file is valid")
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: FileDoc = toml::from_str(text).map_err(|e| Error::Parse {
            what: "parameter file".into(),
            message: e.to_string(),
        })?;
        if doc.format_version != SUPPORTED_FORMAT {
            return Err(Error::Data(format!(
                "unsupported parameter format_version {}",
                doc.format_version
            )));
        }
        let mut elements = BTreeMap::new();
        for el in doc.element {
            let element: Element = el.symbol.parse()?;
            let mut potentials = BTreeMap::new();
            for p in el.potential {
                let params = ModelPotentialParams {
                    z: el.z,
                    alpha_c: el.alpha_c,
                    a1: p.a1,
                    a2: p.a2,
                    a3: p.a3,
                    a4: p.a4,
                    r_c: p.r_c,
                };
                params.validate()?;
                if potentials.insert(p.l, params).is_some() {
                    return Err(Error::Data(format!(
                        "{element}: duplicate potential for l={}",
                        p.l
                    )));
                }
            }
            for l in 0..=3 {
                if !potentials.contains_key(&l) {
                    return Err(Error::Data(format!(
                        "{element}: missing potential for l={l}"
                    )));
                }
            }
            let mut defects = BTreeMap::new();
            for d in el.defect {
                let two_j = 2.0 * d.j;
                if two_j.fract() != 0.0 || two_j < 1.0 || (two_j as u32).abs_diff(2 * d.l) != 1 {
                    return Err(Error::Data(format!(
                        "{element}: invalid j={} for l={}",
                        d.j, d.l
                    )));
                }
                let series = QuantumDefectSeries::new(d.coefficients, d.n_min)?;
                series.effective_n(series.n_min())?;
                if defects.insert((d.l, two_j as u32), series).is_some() {
                    return Err(Error::Data(format!(
                        "{element}: duplicate defect series for l={}, j={}",
                        d.l, d.j
                    )));
                }
            }
            let data = ElementData {
                z: el.z,
                alpha_c: el.alpha_c,
                potentials,
                defects,
            };
            if elements.insert(element, data).is_some() {
                return Err(Error::Data(format!("duplicate element block {element}")));
            }
        }
        Ok(Self { elements })
    }

    pub fn element(&self, element: Element) -> Result<&ElementData> {
        self.elements
            .get(&element)
            .ok_or_else(|| Error::Data(format!("no parameters for element {element}")))
    }

    pub fn potential(&self, element: Element, l: u32) -> Result<ModelPotentialParams> {
        self.element(element)?
            .potentials
            .get(&l)
            .copied()
            .ok_or_else(|| Error::Data(format!("no model potential for {element} l={l}")))
    }

    pub fn defects(&self, element: Element, l: u32, two_j: u32) -> Result<&QuantumDefectSeries> {
        self.element(element)?
            .defects
            .get(&(l, two_j))
            .ok_or_else(|| {
                Error::Data(format!(
                    "no quantum defects for {element} l={l} j={}/2",
                    two_j
                ))
            })
    }
}
