//! Named verification suites behind a common trait.
//!
//! Each suite packages the invariant checks of one subsystem; suites are
//! registered by name and selected at run time (`verify --suite <name>`).
//! A report lists every check with its measured deviation against the
//! tolerance it was held to.

mod suites;

use serde::Serialize;
use std::fmt;

use crate::fock::TruncationConfig;

pub use suites::{BargmannSuite, BchSuite, FockSuite, GeneratorsSuite, WaveSuite};

/// One verification suite, selectable by name.
pub trait VerifySuite {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn run(&self, cfg: &TruncationConfig) -> SuiteReport;
}

/// All registered suites, in the order they are reported by `all`.
pub fn registry() -> Vec<Box<dyn VerifySuite>> {
    vec![
        Box::new(FockSuite),
        Box::new(BchSuite),
        Box::new(GeneratorsSuite),
        Box::new(BargmannSuite),
        Box::new(WaveSuite),
    ]
}

/// Look a suite up by its registered name.
pub fn find(name: &str) -> Option<Box<dyn VerifySuite>> {
    registry().into_iter().find(|s| s.name() == name)
}

pub fn suite_names() -> Vec<&'static str> {
    registry().iter().map(|s| s.name()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckResult {
    /// Pass iff `deviation <= tolerance`.
    pub fn measured(name: impl Into<String>, deviation: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            deviation,
            tolerance,
            pass: deviation <= tolerance,
        }
    }

    /// A check that failed to produce a measurement at all.
    pub fn errored(name: impl Into<String>, tolerance: f64, message: &str) -> Self {
        Self {
            name: format!("{} [{message}]", name.into()),
            deviation: f64::INFINITY,
            tolerance,
            pass: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {}: {} checks, {} failed",
            self.suite,
            self.checks.len(),
            self.failed()
        )?;
        for check in &self.checks {
            let status = if check.pass { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "  [{status}] {} (deviation {:e}, tol {:e})",
                check.name, check.deviation, check.tolerance
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names_are_unique_and_stable() {
        let names = suite_names();
        assert_eq!(names, vec!["fock", "bch", "generators", "bargmann", "wave"]);
    }

    #[test]
    fn lookup_by_name() {
        assert!(find("fock").is_some());
        assert!(find("nosuch").is_none());
    }

    #[test]
    fn every_registered_suite_passes_at_the_default_dim() {
        let cfg = TruncationConfig::default();
        for suite in registry() {
            let report = suite.run(&cfg);
            assert!(
                report.pass(),
                "suite {} failed:\n{report}",
                suite.name()
            );
        }
    }
}
