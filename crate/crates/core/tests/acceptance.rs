//! Acceptance criteria 1-8, one line each. Criteria 2 and 8 are red: some
//! expected charge formulas and two quiver expectations do not hold under
//! exact computation. They are reported as FAIL and asserted to stay red,
//! so a change in either direction shows up here.

use std::io::Write;

use wallcross::fixtures::Fixtures;
use wallcross::suite::{run_suite, Status, SuiteName, SuiteReport};

const CRITERIA: [(u8, &str); 8] = [
    (1, "B2 central charges"),
    (2, "general-l functionals and charges"),
    (3, "Euler form, Gram matrix and projective classes"),
    (4, "wall-crossing simple classes and crossed charges"),
    (5, "positivity and vanishing orders on the B2 alcove"),
    (6, "Poincare series identities"),
    (7, "Chern characters, inversion and localization"),
    (8, "quiver mutations"),
];

const KNOWN_RED: [u8; 2] = [2, 8];

fn line(report: &SuiteReport, n: u8, name: &str) -> String {
    let verdict = match report.criterion(n) {
        Some(true) => "PASS".to_string(),
        Some(false) => {
            let failing: Vec<&str> = report
                .checks
                .iter()
                .filter(|c| c.criterion == Some(n) && c.status == Status::Fail)
                .map(|c| c.name.as_str())
                .collect();
            format!("FAIL ({})", failing.join("; "))
        }
        None => "MISSING".to_string(),
    };
    format!("criterion {n}: {name}: {verdict}")
}

#[test]
fn criteria() {
    let fx = Fixtures::open(wallcross::fixtures::default_dir()).unwrap();
    let report = run_suite(SuiteName::All, &fx).unwrap();
    // written past the harness capture so the lines land in the test log
    let mut err = std::io::stderr().lock();
    for (n, name) in CRITERIA {
        writeln!(err, "{}", line(&report, n, name)).unwrap();
    }
    drop(err);

    for (n, name) in CRITERIA {
        let got = report.criterion(n);
        if KNOWN_RED.contains(&n) {
            assert_eq!(got, Some(false), "criterion {n} ({name}) changed status");
        } else {
            assert_eq!(got, Some(true), "{}", line(&report, n, name));
        }
    }
    // nothing outside the criteria may fail either
    let stray: Vec<&str> = report
        .failures()
        .filter(|c| c.criterion.is_none())
        .map(|c| c.name.as_str())
        .collect();
    assert!(
        stray.is_empty(),
        "failing checks outside the criteria: {stray:?}"
    );
    assert!(!report.passed);
}
