//! One pass/fail line per acceptance criterion. Runs without the libtest
//! harness so the lines always reach the terminal:
//! `cargo test -p esebound-cli --test acceptance`.

use std::process::{Command, ExitCode};

use esebound_core::validation::{run_validation, CheckStatus, ValidationReport};
use esebound_core::CODATA_2018;

const CRITERIA: [(u8, &str); 9] = [
    (1, "efficiency bounds for the ELF and VLF facilities"),
    (2, "LN and PZT device bounds"),
    (3, "figure of merit table"),
    (4, "field-to-efficiency pipeline"),
    (5, "atomic lifetime and dipole bounds"),
    (6, "radial solver gates"),
    (7, "VSWR bandwidth"),
    (8, "property suites"),
    (9, "determinism of validate --json"),
];

fn cli_validate_json() -> (Option<i32>, Vec<u8>) {
    let o = Command::new(env!("CARGO_BIN_EXE_esebound"))
        .args(["validate", "--json"])
        .output()
        .expect("binary runs");
    (o.status.code(), o.stdout)
}

fn criterion_ok(report: &ValidationReport, n: u8) -> (bool, usize, usize) {
    let checks: Vec<_> = report.criterion(n).collect();
    let failed = checks
        .iter()
        .filter(|c| c.status == CheckStatus::Fail)
        .count();
    (!checks.is_empty() && failed == 0, checks.len(), failed)
}

fn main() -> ExitCode {
    let report = run_validation(&CODATA_2018).expect("validation runs");
    let (code_a, first) = cli_validate_json();
    let (code_b, second) = cli_validate_json();

    let mut all = true;
    for (n, title) in CRITERIA {
        let (mut ok, total, failed) = criterion_ok(&report, n);
        let mut detail = format!("{total} checks, {failed} failed");
        if n == 9 {
            let cli_ok =
                code_a == Some(0) && code_b == Some(0) && !first.is_empty() && first == second;
            ok &= cli_ok;
            detail.push_str(&format!(
                "; two CLI runs byte-identical: {}",
                first == second
            ));
        }
        println!(
            "criterion {n} {}: {title} ({detail})",
            if ok { "PASS" } else { "FAIL" }
        );
        for c in report
            .criterion(n)
            .filter(|c| c.status == CheckStatus::Fail)
        {
            println!(
                "    failed {}: computed {} not in [{}, {}]",
                c.id, c.computed, c.lower, c.upper
            );
        }
        all &= ok;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        eprintln!("acceptance criteria failed");
        ExitCode::FAILURE
    }
}
