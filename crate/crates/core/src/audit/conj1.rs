//! Divisibility pattern of odd-residue censuses modulo 16.

use std::time::Instant;

use crate::census::{census_with, RowResidueCensus};
use crate::modarith::factorize;
use crate::scan::RowScanner;

use super::report::{AuditReport, Scope, Violation, ViolationKind};

/// `q ↦ e`: whenever `q | a_{16,r}(n)` for odd `r`, also `2^e | a_{16,r}(n)`.
pub const CONJ1_EXPONENTS: [(u64, u32); 7] =
    [(3, 1), (5, 2), (7, 3), (11, 5), (13, 6), (17, 4), (31, 5)];

/// The only primes seen dividing odd-residue counts up to row `2^20`.
pub const OBSERVED_PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 31];

/// Explicit start of the published value set for rows up to `2^20`; the
/// set continues past 96 (elided) up to [`DISPLAYED_VALUE_MAX`].
pub const DISPLAYED_VALUE_PREFIX: [u64; 18] = [
    0, 1, 2, 4, 6, 8, 12, 16, 20, 24, 32, 40, 48, 56, 64, 72, 80, 96,
];
pub const DISPLAYED_VALUE_MAX: u64 = 65536;

/// Whether `v` can belong to the published value set. Below 96 the set is
/// listed explicitly; above it only the bound and evenness are known.
pub fn displayed_value_set_admits(v: u64) -> bool {
    let listed_through = DISPLAYED_VALUE_PREFIX[DISPLAYED_VALUE_PREFIX.len() - 1];
    if v <= listed_through {
        DISPLAYED_VALUE_PREFIX.contains(&v)
    } else {
        v <= DISPLAYED_VALUE_MAX && v.is_multiple_of(2)
    }
}

pub fn census_scanner() -> RowScanner {
    RowScanner::new(16).expect("16 is a valid modulus")
}

/// Violations in an already computed mod-16 census.
pub fn conj1_audit_census(census: &RowResidueCensus) -> Vec<Violation> {
    debug_assert_eq!(census.k, 16);
    let n = census.n;
    let mut out = Vec::new();
    for (r, v) in census.odd_classes() {
        if v == 0 {
            continue;
        }
        if n >= 1 && v % 2 == 1 {
            out.push(Violation {
                n,
                index: r,
                kind: ViolationKind::OddCount,
                expected: "even".into(),
                observed: v.to_string(),
            });
        }
        for &(q, e) in &CONJ1_EXPONENTS {
            if v % q == 0 && v % (1u64 << e) != 0 {
                out.push(Violation {
                    n,
                    index: r,
                    kind: ViolationKind::Divisibility { q, e },
                    expected: format!("divisible by 2^{e}"),
                    observed: v.to_string(),
                });
            }
        }
        for (q, _) in factorize(v) {
            if !OBSERVED_PRIMES.contains(&q) {
                out.push(Violation {
                    n,
                    index: r,
                    kind: ViolationKind::ForeignPrime { q },
                    expected: "prime factors in {2,3,5,7,11,13,17,31}".into(),
                    observed: v.to_string(),
                });
            }
        }
    }
    out
}

pub fn conj1_audit_row(n: u64) -> Vec<Violation> {
    conj1_audit_census(&census_with(&census_scanner(), n))
}

/// Audits rows `from..=to` on the current thread.
pub fn conj1_scan(from: u64, to: u64) -> AuditReport {
    conj1_scan_with(&census_scanner(), from, to)
}

pub fn conj1_scan_with(scanner: &RowScanner, from: u64, to: u64) -> AuditReport {
    let start = Instant::now();
    let mut report = AuditReport::new(Scope::Rows { from, to });
    if from > to {
        return report;
    }
    for n in from..=to {
        let census = census_with(scanner, n);
        report.violations.extend(conj1_audit_census(&census));
        report
            .value_set
            .extend(census.odd_classes().map(|(_, v)| v));
        report.checked += 1;
    }
    report.violations.sort();
    report.elapsed = start.elapsed();
    report
}
