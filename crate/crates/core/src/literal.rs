//! Text forms used on the command line and in reports.
//!
//! * field: `"p^e"` or a prime power such as `"9"`
//! * polynomial: coefficients constant term first, `"1,1,0,0,1"` for `x^4+x+1`
//! * matrix: rows separated by `;`, entries by `,`
//! * coefficient tuple: matrices separated by `|`
//! * state / grid: items separated by `;`, entries by `,`

use crate::error::{LabError, Result};
use crate::field::{build_field, FieldCtx};
use crate::lfsr::{BlockRecurrence, RecurrenceState};
use crate::linalg::MatrixFq;
use crate::numtheory::is_prime;
use crate::poly::Poly;

fn bad(what: &str, s: &str) -> LabError {
    LabError::Parse(format!("invalid {what}: {s:?}"))
}

/// Splits a prime power into `(p, e)`.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(LabError::NotPrime(q));
    }
    let p = (2..)
        .take_while(|d: &u64| d.saturating_mul(*d) <= q)
        .find(|d| q.is_multiple_of(*d))
        .unwrap_or(q);
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    if rest != 1 || !is_prime(p) {
        return Err(LabError::NotPrime(q));
    }
    Ok((p, e))
}

pub fn parse_field(s: &str) -> Result<FieldCtx> {
    let s = s.trim();
    let (p, e) = match s.split_once('^') {
        Some((p, e)) => (
            p.trim().parse().map_err(|_| bad("field", s))?,
            e.trim().parse().map_err(|_| bad("field", s))?,
        ),
        None => prime_power(s.parse().map_err(|_| bad("field", s))?)?,
    };
    build_field(p, e)
}

pub fn parse_codes(s: &str) -> Result<Vec<u64>> {
    s.split(',').map(|t| t.trim().parse::<u64>().map_err(|_| bad("integer list", s))).collect()
}

pub fn parse_poly(field: &FieldCtx, s: &str) -> Result<Poly> {
    Poly::new(field, parse_codes(s)?)
}

pub fn parse_matrix(field: &FieldCtx, s: &str) -> Result<MatrixFq> {
    let rows = s.split(';').map(parse_codes).collect::<Result<Vec<_>>>()?;
    MatrixFq::from_rows(field, &rows)
}

/// `"M0|M1|..."` into a recurrence of width `m` and order `n`.
pub fn parse_recurrence(field: &FieldCtx, m: usize, n: usize, s: &str) -> Result<BlockRecurrence> {
    let coeffs = s.split('|').map(|t| parse_matrix(field, t)).collect::<Result<Vec<_>>>()?;
    BlockRecurrence::new(field, m, n, coeffs)
}

/// `"w0;w1;..."` with each word a comma-separated vector.
pub fn parse_state(field: &FieldCtx, s: &str) -> Result<RecurrenceState> {
    let words = s.split(';').map(parse_codes).collect::<Result<Vec<_>>>()?;
    for &c in words.iter().flatten() {
        field.check(c)?;
    }
    RecurrenceState::from_words(&words)
}

/// `"2,2,2;3,2,2"` into tuples of equal arity `arity`.
pub fn parse_grid(s: &str, arity: usize) -> Result<Vec<Vec<u64>>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(';')
        .map(|t| {
            let v = parse_codes(t)?;
            if v.len() == arity {
                Ok(v)
            } else {
                Err(LabError::Parse(format!("grid point {t:?} must have {arity} entries")))
            }
        })
        .collect()
}

pub fn format_words(words: &[Vec<u64>]) -> String {
    words.iter().map(|w| w.iter().map(u64::to_string).collect::<Vec<_>>().join(",")).collect::<Vec<_>>().join(";")
}
