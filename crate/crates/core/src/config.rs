//! Scan, factoring and iteration limits shared by every census.

use crate::error::{LabError, Result};
use num_bigint::BigUint;

/// Environment variable that overrides [`LabConfig::scan_bound`].
pub const SCAN_BOUND_ENV: &str = "SPLITLAB_SCAN_BOUND";

pub const DEFAULT_SCAN_BOUND: u64 = 1 << 24;
pub const DEFAULT_FACTOR_BOUND: u64 = 1 << 32;
pub const DEFAULT_ITERATION_BOUND: u64 = 1 << 32;

/// How data-parallel scans are executed.
///
/// `Parallel` uses the rayon pool when the `parallel` feature is enabled and
/// silently degrades to `Sequential` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabConfig {
    /// Maximum number of candidates a single census may enumerate.
    pub scan_bound: u64,
    /// Trial division stops at this divisor.
    pub factor_bound: u64,
    /// Maximum number of steps for period and order iterations.
    pub iteration_bound: u64,
    pub exec: Exec,
}

impl Default for LabConfig {
    fn default() -> Self {
        LabConfig {
            scan_bound: DEFAULT_SCAN_BOUND,
            factor_bound: DEFAULT_FACTOR_BOUND,
            iteration_bound: DEFAULT_ITERATION_BOUND,
            exec: Exec::default(),
        }
    }
}

impl LabConfig {
    /// Defaults, with the scan bound taken from `SPLITLAB_SCAN_BOUND` when set.
    pub fn from_env() -> Result<Self> {
        let mut cfg = LabConfig::default();
        if let Ok(v) = std::env::var(SCAN_BOUND_ENV) {
            cfg.scan_bound = v
                .trim()
                .parse()
                .map_err(|_| LabError::Parse(format!("{SCAN_BOUND_ENV}={v:?} is not an integer")))?;
        }
        Ok(cfg)
    }

    pub fn sequential(mut self) -> Self {
        self.exec = Exec::Sequential;
        self
    }

    pub fn with_scan_bound(mut self, bound: u64) -> Self {
        self.scan_bound = bound;
        self
    }

    /// Fails with `ScanBoundExceeded` when `needed` candidates exceed the bound.
    pub fn check_scan(&self, needed: &BigUint) -> Result<u64> {
        match u64::try_from(needed) {
            Ok(n) if n <= self.scan_bound => Ok(n),
            _ => Err(LabError::ScanBoundExceeded {
                needed: needed.to_string(),
                bound: self.scan_bound,
            }),
        }
    }
}
