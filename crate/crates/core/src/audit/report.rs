use std::collections::BTreeSet;
use std::time::Duration;

use serde::{Deserialize, Serialize};

/// What a report covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Scope {
    /// Rows `from..=to`; empty when `from > to`.
    Rows { from: u64, to: u64 },
    /// One full period `1..=period` of the `C(n, 2p) mod n` sequence.
    Prime { p: u64, period: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ViolationKind {
    /// `q | v` but `2^e ∤ v`.
    Divisibility { q: u64, e: u32 },
    /// A prime outside the eight observed ones divides a census value.
    ForeignPrime { q: u64 },
    /// An odd residue class has an odd count on a row `n ≥ 1`.
    OddCount,
    /// A predicted fractional part disagrees with exact arithmetic.
    FracMismatch,
    /// The parity test disagrees with exceptional-class membership.
    ParityMismatch,
}

/// One failed check. `index` is the residue `r` for census audits and the
/// lower index `m` for `C(n, m) mod n` audits.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Violation {
    pub n: u64,
    pub index: u64,
    pub kind: ViolationKind,
    pub expected: String,
    pub observed: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub scope: Scope,
    pub checked: u64,
    /// Sorted by `n`, then residue, then kind.
    pub violations: Vec<Violation>,
    /// Every odd-residue census value observed (row scans only).
    pub value_set: BTreeSet<u64>,
    /// Residues `n mod period` where the first-formulation parity
    /// expression is odd (`C(n, 2p)` audits only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity_exceptions: Option<BTreeSet<u64>>,
    /// Wall-clock time; never serialized so reports compare byte-for-byte.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl AuditReport {
    pub fn new(scope: Scope) -> Self {
        AuditReport {
            scope,
            checked: 0,
            violations: Vec::new(),
            value_set: BTreeSet::new(),
            parity_exceptions: None,
            elapsed: Duration::ZERO,
        }
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    /// Associative, order-insensitive merge. Row scopes are widened to
    /// cover both inputs.
    pub fn merge(&mut self, other: AuditReport) {
        self.scope = match (self.scope, other.scope) {
            (Scope::Rows { from: a, to: b }, Scope::Rows { from: c, to: d }) => {
                if a > b {
                    other.scope
                } else if c > d {
                    self.scope
                } else {
                    Scope::Rows {
                        from: a.min(c),
                        to: b.max(d),
                    }
                }
            }
            (s, _) => s,
        };
        self.checked += other.checked;
        self.violations.extend(other.violations);
        self.violations.sort();
        self.value_set.extend(other.value_set);
        match (&mut self.parity_exceptions, other.parity_exceptions) {
            (Some(a), Some(b)) => a.extend(b),
            (a @ None, b) => *a = b,
            _ => {}
        }
        self.elapsed += other.elapsed;
    }
}
