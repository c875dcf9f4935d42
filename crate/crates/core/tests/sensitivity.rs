use esebound_core::validation::{run_validation, CheckStatus};
use esebound_core::CODATA_2018;

fn failing(scale: f64) -> Vec<(u8, String)> {
    let report = run_validation(&CODATA_2018.with_scaled_c(scale)).unwrap();
    assert_eq!(report.all_passed(), report.failed == 0);
    report
        .checks
        .iter()
        .filter(|c| c.status == CheckStatus::Fail)
        .map(|c| (c.criterion, c.id.clone()))
        .collect()
}

#[test]
fn c_up_one_percent_fails_table3() {
    let failed = failing(1.01);
    assert!(failed.iter().any(|(crit, _)| *crit == 5), "{failed:?}");
    assert!(failed.iter().any(|(crit, _)| *crit == 1), "{failed:?}");
}

#[test]
fn c_down_one_percent_fails_validation() {
    // ka = 2 pi a / lambda does not depend on c, so the atomic cells move by
    // only 1% (lifetime) and 0.5% (dipole); the emitter checks catch it.
    let failed = failing(0.99);
    assert!(failed.iter().any(|(crit, _)| *crit == 1), "{failed:?}");
}

#[test]
fn c_up_five_percent_fails_every_lifetime_bound_but_hydrogen() {
    let failed = failing(1.05);
    for id in ["cs_d1", "cs_d2", "rb87_d1", "rb87_d2"] {
        let want = format!("table3.{id}.lifetime_bound");
        assert!(
            failed.iter().any(|(_, f)| *f == want),
            "{want} missing from {failed:?}"
        );
    }
}

#[test]
fn unperturbed_passes() {
    assert!(failing(1.0).is_empty());
}
