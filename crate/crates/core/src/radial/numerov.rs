use serde::Serialize;

use super::params::{ModelPotentialParams, QuantumDefectSeries};
use super::{alkali_energy, QuantumState};
use crate::error::{Error, Result};

/// Default uniform grid step, bohr.
pub const DEFAULT_STEP: f64 = 1e-3;
const MIN_INNER_RADIUS: f64 = 0.01;
const RESCALE_ABOVE: f64 = 1e150;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub step: f64,
    /// Outer edge of the grid; `None` uses 2n(n+15).
    pub r_max: Option<f64>,
    /// Inner edge; `None` uses alpha_c^(1/3), floored at 0.01.
    pub r_min: Option<f64>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            step: DEFAULT_STEP,
            r_max: None,
            r_min: None,
        }
    }
}

impl SolverOptions {
    pub fn with_step(step: f64) -> Self {
        Self {
            step,
            ..Self::default()
        }
    }
}

/// Normalized reduced radial wavefunction u(r) = r R(r) on a uniform grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialSolution {
    pub state: QuantumState,
    pub grid: Vec<f64>,
    pub u: Vec<f64>,
    /// hartree
    pub energy: f64,
    /// Integral of u^2 after normalization.
    pub norm_check: f64,
    /// Outermost classical turning point, bohr.
    pub outer_turning_point: f64,
}

impl RadialSolution {
    pub fn step(&self) -> f64 {
        self.grid[1] - self.grid[0]
    }

    /// <r^p> = int u^2 r^p dr / int u^2 dr.
    pub fn expectation(&self, power: i32) -> f64 {
        let weighted: Vec<f64> = self
            .grid
            .iter()
            .zip(&self.u)
            .map(|(r, u)| u * u * r.powi(power))
            .collect();
        let density: Vec<f64> = self.u.iter().map(|u| u * u).collect();
        trapezoid(&weighted, self.step()) / trapezoid(&density, self.step())
    }

    pub fn rms_radius(&self) -> f64 {
        self.expectation(2).sqrt()
    }

    pub fn mean_radius(&self) -> f64 {
        self.expectation(1)
    }

    /// True when |u| falls strictly with r everywhere past the outer turning
    /// point.
    pub fn tail_is_monotone(&self) -> bool {
        let start = self
            .grid
            .partition_point(|&r| r <= self.outer_turning_point);
        self.u[start..].windows(2).all(|w| w[1].abs() < w[0].abs())
    }
}

fn trapezoid(values: &[f64], step: f64) -> f64 {
    match values {
        [] | [_] => 0.0,
        [first, inner @ .., last] => step * (0.5 * (first + last) + inner.iter().sum::<f64>()),
    }
}

/// Integrates u'' = [2V(r) + l(l+1)/r^2 - 2E] u inward from r_max with a
/// decaying Coulomb-tail seed, E taken from the quantum-defect series.
///
/// Inside an inner classically forbidden region the inward solution turns
/// into the irregular one; it is cut at its minimum and set to zero below.
pub fn solve_radial(
    state: &QuantumState,
    potential: &ModelPotentialParams,
    defects: &QuantumDefectSeries,
    opts: &SolverOptions,
) -> Result<RadialSolution> {
    potential.validate()?;
    let h = opts.step;
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::input("step", format!("must be > 0, got {h}")));
    }
    let n = state.n as f64;
    let l = state.l as f64;
    let energy = alkali_energy(state.n, defects)?;
    let kappa = (-2.0 * energy).sqrt();
    let n_star = 1.0 / kappa;

    let r_min = opts
        .r_min
        .unwrap_or_else(|| potential.alpha_c.cbrt())
        .max(MIN_INNER_RADIUS);
    let r_max = opts.r_max.unwrap_or(2.0 * n * (n + 15.0));
    if r_max <= r_min {
        return Err(Error::input(
            "r_max",
            format!("r_max={r_max} must exceed r_min={r_min}"),
        ));
    }
    let points = ((r_max - r_min) / h).round() as usize;
    if points < 4 {
        return Err(Error::input("step", "grid has fewer than 4 points"));
    }

    let grid: Vec<f64> = (0..=points).map(|i| r_min + i as f64 * h).collect();
    let g: Vec<f64> = grid
        .iter()
        .map(|&r| 2.0 * potential.potential(r) + l * (l + 1.0) / (r * r) - 2.0 * energy)
        .collect();
    let f: Vec<f64> = g.iter().map(|gi| 1.0 - h * h * gi / 12.0).collect();

    let mut u = vec![0.0; points + 1];
    let r_end = grid[points];
    u[points] = 1.0;
    u[points - 1] = (n_star * ((r_end - h) / r_end).ln() + kappa * h).exp();

    for i in (1..points).rev() {
        if f[i - 1] == 0.0 {
            return Err(Error::Numeric(format!(
                "Numerov denominator vanished at r={} for {state}",
                grid[i - 1]
            )));
        }
        u[i - 1] = ((12.0 - 10.0 * f[i]) * u[i] - f[i + 1] * u[i + 1]) / f[i - 1];
        if !u[i - 1].is_finite() {
            return Err(Error::Numeric(format!(
                "integration overflowed at r={} for {state} (E={energy} Eh)",
                grid[i - 1]
            )));
        }
        if u[i - 1].abs() > RESCALE_ABOVE {
            u[i - 1..].iter_mut().for_each(|v| *v /= RESCALE_ABOVE);
        }
    }

    let forbidden = g.iter().take_while(|&&gi| gi > 0.0).count();
    if forbidden > 0 {
        let cut = u[..=forbidden.min(points)]
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .map(|(i, _)| i)
            .unwrap_or(0);
        u[..cut].iter_mut().for_each(|v| *v = 0.0);
    }

    let density: Vec<f64> = u.iter().map(|v| v * v).collect();
    let norm = trapezoid(&density, h);
    if !(norm.is_finite() && norm > 0.0) {
        return Err(Error::Numeric(format!(
            "wavefunction norm {norm} is unusable for {state}"
        )));
    }
    let scale = norm.sqrt().recip();
    u.iter_mut().for_each(|v| *v *= scale);
    let density: Vec<f64> = u.iter().map(|v| v * v).collect();
    let norm_check = trapezoid(&density, h);

    let outer_turning_point = g
        .iter()
        .rposition(|&gi| gi <= 0.0)
        .map(|i| grid[i])
        .ok_or_else(|| Error::Numeric(format!("no classically allowed region for {state}")))?;

    Ok(RadialSolution {
        state: *state,
        grid,
        u,
        energy,
        norm_check,
        outer_turning_point,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::{hydrogen_rms_radius, AtomData, Element};
    use approx::assert_relative_eq;

    fn coulomb(n: u32, l: u32, opts: &SolverOptions) -> RadialSolution {
        let state = QuantumState::new(Element::H, n, l, 0.5).unwrap();
        solve_radial(
            &state,
            &ModelPotentialParams::coulomb(),
            &QuantumDefectSeries::hydrogenic(),
            opts,
        )
        .unwrap()
    }

    fn alkali(element: Element, n: u32, j: f64) -> RadialSolution {
        let data = AtomData::builtin();
        let state = QuantumState::new(element, n, 1, j).unwrap();
        solve_radial(
            &state,
            &data.potential(element, 1).unwrap(),
            data.defects(element, 1, state.two_j).unwrap(),
            &SolverOptions::default(),
        )
        .unwrap()
    }

    #[test]
    fn trapezoid_rule() {
        assert_eq!(trapezoid(&[], 1.0), 0.0);
        assert_eq!(trapezoid(&[1.0, 1.0, 1.0], 0.5), 1.0);
    }

    #[test]
    fn coulomb_matches_closed_form() {
        let opts = SolverOptions::default();
        for n in 1..=5 {
            for l in 0..n {
                let sol = coulomb(n, l, &opts);
                let exact = hydrogen_rms_radius(n, l).unwrap();
                assert_relative_eq!(sol.rms_radius(), exact, max_relative = 1e-3);
            }
        }
    }

    #[test]
    fn hydrogen_1s_mean_radius() {
        let sol = coulomb(1, 0, &SolverOptions::default());
        assert_relative_eq!(sol.mean_radius(), 1.5, max_relative = 1e-5);
    }

    #[test]
    fn normalized_and_decaying() {
        let cs = alkali(Element::Cs, 6, 0.5);
        assert!((cs.norm_check - 1.0).abs() < 1e-6);
        let rb = alkali(Element::Rb87, 5, 1.5);
        assert!(rb.tail_is_monotone());
        assert!(rb.rms_radius() >= rb.mean_radius());
    }

    #[test]
    fn alkali_d_line_radii() {
        let cases = [
            (Element::Cs, 6, 0.5, 8.18),
            (Element::Cs, 6, 1.5, 8.42),
            (Element::Rb87, 5, 0.5, 7.72),
            (Element::Rb87, 5, 1.5, 7.82),
        ];
        for (el, n, j, expected) in cases {
            let r = alkali(el, n, j).rms_radius();
            assert_relative_eq!(r, expected, max_relative = 0.05);
        }
    }

    #[test]
    fn step_halving_converges() {
        let data = AtomData::builtin();
        let state = QuantumState::new(Element::Cs, 6, 1, 0.5).unwrap();
        let pot = data.potential(Element::Cs, 1).unwrap();
        let def = data.defects(Element::Cs, 1, 1).unwrap();
        let coarse =
            solve_radial(&state, &pot, def, &SolverOptions::with_step(DEFAULT_STEP)).unwrap();
        let fine = solve_radial(
            &state,
            &pot,
            def,
            &SolverOptions::with_step(DEFAULT_STEP / 2.0),
        )
        .unwrap();
        assert!((coarse.rms_radius() / fine.rms_radius() - 1.0).abs() < 1e-3);
    }

    #[test]
    fn rejects_bad_step() {
        let state = QuantumState::new(Element::H, 1, 0, 0.5).unwrap();
        let err = solve_radial(
            &state,
            &ModelPotentialParams::coulomb(),
            &QuantumDefectSeries::hydrogenic(),
            &SolverOptions::with_step(-1.0),
        );
        assert!(matches!(err, Err(Error::Input { .. })));
    }
}
