//! Closed-form hydrogen radii against quadrature over the analytic
//! wavefunctions R_nl(r) ~ rho^l exp(-rho/2) L^(2l+1)_(n-l-1)(rho), rho = 2r/n.

use esebound_core::radial::{
    hydrogen_rms_radius, solve_radial, ModelPotentialParams, QuantumDefectSeries, SolverOptions,
};
use esebound_core::{Element, QuantumState};

fn laguerre(k: u32, alpha: f64, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 1.0 + alpha - x);
    if k == 0 {
        return prev;
    }
    for i in 1..k {
        let i = i as f64;
        let next = ((2.0 * i + 1.0 + alpha - x) * cur - (i + alpha) * prev) / (i + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

fn radial(n: u32, l: u32, r: f64) -> f64 {
    let rho = 2.0 * r / n as f64;
    rho.powi(l as i32) * (-rho / 2.0).exp() * laguerre(n - l - 1, (2 * l + 1) as f64, rho)
}

/// <r^2>^(1/2) by composite Simpson, normalization included.
fn quadrature_rms(n: u32, l: u32) -> f64 {
    let r_max = 40.0 * (n * n) as f64 + 40.0;
    let m = 400_000;
    let h = r_max / m as f64;
    let (mut norm, mut second) = (0.0, 0.0);
    for i in 0..=m {
        let r = i as f64 * h;
        let w = if i == 0 || i == m {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let p = r * r * radial(n, l, r).powi(2);
        norm += w * p;
        second += w * p * r * r;
    }
    (second / norm).sqrt()
}

#[test]
fn closed_form_matches_quadrature() {
    for n in 1..=5 {
        for l in 0..n {
            let exact = hydrogen_rms_radius(n, l).unwrap();
            let quad = quadrature_rms(n, l);
            assert!(
                (exact / quad - 1.0).abs() < 1e-6,
                "n={n} l={l}: {exact} vs {quad}"
            );
        }
    }
}

#[test]
fn ground_state_is_root_three() {
    assert!((hydrogen_rms_radius(1, 0).unwrap() - 3f64.sqrt()).abs() < 1e-15);
    assert!((hydrogen_rms_radius(2, 1).unwrap() - 30f64.sqrt()).abs() < 1e-14);
}

#[test]
fn numerov_coulomb_mode_matches_quadrature() {
    for n in 1..=5 {
        for l in 0..n {
            let state = QuantumState::new(Element::H, n, l, l as f64 + 0.5).unwrap();
            let sol = solve_radial(
                &state,
                &ModelPotentialParams::coulomb(),
                &QuantumDefectSeries::hydrogenic(),
                &SolverOptions::default(),
            )
            .unwrap();
            let quad = quadrature_rms(n, l);
            assert!((sol.rms_radius() / quad - 1.0).abs() < 1e-3, "n={n} l={l}");
        }
    }
}
