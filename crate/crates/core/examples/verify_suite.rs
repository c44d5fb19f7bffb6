//! Runs one verification suite against the fixtures and prints every check.

use wallcross::fixtures::Fixtures;
use wallcross::suite::{run_suite, SuiteName};

fn main() -> wallcross::Result<()> {
    let name: SuiteName = std::env::args()
        .nth(1)
        .as_deref()
        .unwrap_or("poincare")
        .parse()?;
    let report = run_suite(name, &Fixtures::from_env()?)?;
    for c in &report.checks {
        println!(
            "{:<7} {:<8} {}  {}",
            c.suite.to_string(),
            format!("{:?}", c.status),
            c.name,
            c.detail
        );
    }
    println!("passed: {}", report.passed);
    Ok(())
}
