//! Independent oracles and structural audits.
//!
//! Everything here works by brute force on dense matrices at small sizes, so it can
//! check the fast code paths without sharing their logic.

use std::fmt;

use crate::error::{MraError, Result};

pub mod embedding;
pub mod h2;
pub mod kendall;
pub mod oracle;
pub mod shuffle;
pub mod suites;
pub mod syt;

pub use oracle::{brute_force_wavelet, hb_basis, phi_by_definition};

/// One line of an audit ledger.
#[derive(Clone, Debug, PartialEq)]
pub struct AuditCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Ordered list of checks; the audit passes when every check does.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AuditReport {
    pub checks: Vec<AuditCheck>,
}

impl AuditReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(AuditCheck { name: name.into(), passed, detail: detail.into() });
    }

    pub fn extend(&mut self, other: AuditReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AuditCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// `Err(Audit)` listing the failed checks, if any.
    pub fn into_result(self) -> Result<AuditReport> {
        if self.passed() {
            return Ok(self);
        }
        let names: Vec<String> = self.failures().map(|c| c.name.clone()).collect();
        Err(MraError::Audit(names.join(", ")))
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{}\t{}\t{}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
        }
        Ok(())
    }
}

pub(crate) fn cap(n: usize, max: usize, what: &str) -> Result<()> {
    if n > max {
        return Err(MraError::resource(format!("{what} is limited to n ≤ {max}, got {n}")));
    }
    Ok(())
}
