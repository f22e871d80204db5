//! Verdict and proof-status labels attached to every census report.

use num_bigint::BigUint;
use std::fmt;

/// Whether a closed form is an established theorem at the given parameters
/// or still an open conjecture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Proved,
    Conjectural,
}

impl Status {
    /// The splitting-subspace count is known for `m <= 2` and for `n = 1`.
    pub fn for_block(m: usize, n: usize) -> Self {
        if m <= 2 || n == 1 {
            Status::Proved
        } else {
            Status::Conjectural
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Proved => "proved",
            Status::Conjectural => "conjectural",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Match,
    Mismatch,
    FormulaUnavailable,
    /// The point exceeded a scan, factoring or iteration bound.
    Skipped,
}

impl Verdict {
    pub fn compare(brute: &BigUint, formula: Option<&BigUint>) -> Self {
        match formula {
            Some(f) if f == brute => Verdict::Match,
            Some(_) => Verdict::Mismatch,
            None => Verdict::FormulaUnavailable,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Match => "match",
            Verdict::Mismatch => "mismatch",
            Verdict::FormulaUnavailable => "formula_unavailable",
            Verdict::Skipped => "skipped",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
