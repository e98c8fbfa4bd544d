//! The exceptional residue classes governing `C(n, 2p) mod n`.
//!
//! For an odd prime `p`, `2 C(n, 2p) / n` is determined modulo 1 by the
//! base-`p` digit `n₁`. What remains is one bit: whether
//! `2 C(n, 2p)/n - (p + 1)(n₁ - 1)/p · δ_{p|n}` is odd. The conjectured
//! answer depends only on `n mod 2^s`, with `s` the bit length of `2p`, and
//! the odd classes are produced by a truncated-shift product of `2p` with
//! each `j < 2^{|2p|_0}`.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::binom::binom_exact;
use crate::digits::to_base;
use crate::error::{domain, Error, Result};
use crate::fraction::ReducedFraction;
use crate::modarith::is_prime;

use super::periods::{frac_binom, second_digit};
use super::report::{AuditReport, Scope, Violation, ViolationKind};

fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return domain(format!("{p} is not an odd prime"));
    }
    if p > 1 << 30 {
        return domain(format!("{p} is too large"));
    }
    Ok(())
}

/// Number of zeros in the binary representation of `x` (none for `x = 0`).
fn binary_zeros(x: u64) -> u32 {
    to_base(x, 2).expect("base 2").count_digit(0) as u32
}

/// `Σ_i ⌊j / 2^{|2p mod 2^{i+1}|_0 - δ_{i=1}}⌋ · m_i · 2^i`, where `m_i` are
/// the bits of `2p`: each shifted copy of `j` in the long multiplication
/// `2p × j` is first truncated by the number of zeros of `2p` below and at
/// its position.
pub fn truncated_shift_sum(p: u64, j: u64) -> Result<u64> {
    check_odd_prime(p)?;
    let m = 2 * p;
    let bits = to_base(m, 2)?;
    let mut sum = 0u64;
    for (i, &bit) in bits.digits().iter().enumerate() {
        let low = m % (1u64 << (i + 1));
        let shift = binary_zeros(low) as i64 - i64::from(i == 1);
        if shift < 0 {
            return Err(Error::Internal(format!(
                "negative truncation exponent at bit {i} of {m}"
            )));
        }
        let shifted = if shift >= 64 { 0 } else { j >> shift };
        sum += (shifted * bit) << i;
    }
    Ok(sum)
}

/// Residues modulo `2^s` (`s` the bit length of `2p`) flagged exceptional.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalClassSet {
    pub p: u64,
    pub modulus: u64,
    pub residues: BTreeSet<u64>,
    /// `by_j[j]` is the normalized residue produced by `j`; distinct `j`
    /// may collide.
    pub by_j: Vec<u64>,
}

impl ExceptionalClassSet {
    pub fn contains(&self, n: u64) -> bool {
        self.residues.contains(&(n % self.modulus))
    }
}

pub fn conj2_exceptional_set(p: u64) -> Result<ExceptionalClassSet> {
    check_odd_prime(p)?;
    let m = 2 * p;
    let s = 64 - m.leading_zeros();
    let modulus = 1u64 << s;
    let count = 1u64 << binary_zeros(m);
    let by_j = (0..count)
        .map(|j| Ok((m + truncated_shift_sum(p, j)?) % modulus))
        .collect::<Result<Vec<u64>>>()?;
    Ok(ExceptionalClassSet {
        p,
        modulus,
        residues: by_j.iter().copied().collect(),
        by_j,
    })
}

/// Predicts `Frac(C(n, 2p) / n)` for a fixed odd prime.
#[derive(Debug, Clone)]
pub struct Conj2Predictor {
    p: u64,
    exceptional: ExceptionalClassSet,
}

impl Conj2Predictor {
    pub fn new(p: u64) -> Result<Self> {
        Ok(Conj2Predictor {
            p,
            exceptional: conj2_exceptional_set(p)?,
        })
    }

    pub fn exceptional(&self) -> &ExceptionalClassSet {
        &self.exceptional
    }

    /// `(p + 1)(n₁ - 1) · δ_{p|n}`, the numerator shared by both forms.
    fn digit_term(&self, n: u64) -> BigInt {
        if !n.is_multiple_of(self.p) {
            return BigInt::zero();
        }
        BigInt::from(self.p + 1) * (second_digit(n, self.p) as i64 - 1)
    }

    /// `Frac((p + 1)(n₁ - 1)/(2p) · δ_{p|n} + ½ · δ_{exceptional})`.
    pub fn predict(&self, n: u64) -> Result<ReducedFraction> {
        if n == 0 {
            return domain("need n ≥ 1");
        }
        let mut x = BigRational::new(self.digit_term(n), BigInt::from(2 * self.p));
        if self.exceptional.contains(n) {
            x += BigRational::new(1.into(), 2.into());
        }
        Ok(ReducedFraction::fract_of(&x))
    }
}

pub fn conj2_predicted_frac(n: u64, p: u64) -> Result<ReducedFraction> {
    Conj2Predictor::new(p)?.predict(n)
}

/// Length of one full period of `n ↦ Frac(C(n, 2p) / n)` for odd `p`:
/// `2^{⌊log₂(2p - 1)⌋ + 1} · p²`.
pub fn conj2_period(p: u64) -> Result<u64> {
    check_odd_prime(p)?;
    let bits = 64 - (2 * p - 1).leading_zeros();
    Ok((1u64 << bits) * p * p)
}

/// `2 C(n, 2p)/n - c/p` as an exact integer, where `c` is the digit
/// numerator of whichever formulation is being tested.
fn parity_expression(two_binom: &BigInt, n: u64, c: BigInt, p: u64) -> Result<BigInt> {
    let x =
        BigRational::new(two_binom.clone(), BigInt::from(n)) - BigRational::new(c, BigInt::from(p));
    if !x.is_integer() {
        return Err(Error::Internal(format!(
            "parity expression not integral at n = {n}: {x}"
        )));
    }
    Ok(x.to_integer())
}

/// Compares the prediction with `C(n, 2p) mod n` for every `n` in one full
/// period, and checks the parity criterion itself against membership in
/// the exceptional classes. `parity_exceptions` records the residues mod
/// the period where the unrewritten expression
/// `2 C(n, 2p)/n - (n₁ - 1)/p · δ_{p|n}` is odd.
pub fn conj2_verify(p: u64) -> Result<AuditReport> {
    let period = conj2_period(p)?;
    conj2_verify_range(p, 1, period)
}

/// As [`conj2_verify`] over `from..=to`; the scope still names the period.
pub fn conj2_verify_range(p: u64, from: u64, to: u64) -> Result<AuditReport> {
    let start = Instant::now();
    let period = conj2_period(p)?;
    let predictor = Conj2Predictor::new(p)?;
    let mut report = AuditReport::new(Scope::Prime { p, period });
    let mut first_form = BTreeSet::new();
    for n in from.max(1)..=to {
        let observed = frac_binom(n, 2 * p)?;
        let predicted = predictor.predict(n)?;
        if observed != predicted {
            report.violations.push(Violation {
                n,
                index: 2 * p,
                kind: ViolationKind::FracMismatch,
                expected: predicted.to_string(),
                observed: observed.to_string(),
            });
        }

        let two_binom = BigInt::from(binom_exact(n, 2 * p as i64)) * 2;
        let rewritten = parity_expression(&two_binom, n, predictor.digit_term(n), p)?;
        let odd = rewritten.is_odd();
        if odd != predictor.exceptional().contains(n) {
            report.violations.push(Violation {
                n,
                index: 2 * p,
                kind: ViolationKind::ParityMismatch,
                expected: if odd { "exceptional" } else { "ordinary" }.into(),
                observed: if odd { "ordinary" } else { "exceptional" }.into(),
            });
        }

        let digit = if n % p == 0 {
            BigInt::from(second_digit(n, p) as i64 - 1)
        } else {
            BigInt::zero()
        };
        if parity_expression(&two_binom, n, digit, p)?.is_odd() {
            first_form.insert(n % period);
        }
        report.checked += 1;
    }
    report.parity_exceptions = Some(first_form);
    report.elapsed = start.elapsed();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fraction::frac;

    fn f(n: i64, d: u64) -> ReducedFraction {
        frac(n, d).unwrap()
    }

    #[test]
    fn exceptional_set_for_three() {
        let set = conj2_exceptional_set(3).unwrap();
        assert_eq!(set.modulus, 8);
        assert_eq!(set.by_j, vec![6, 0]);
        assert_eq!(set.residues.iter().copied().collect::<Vec<_>>(), vec![0, 6]);
    }

    #[test]
    fn truncated_product_example() {
        // 2 · 173 = 101011010_2, j = 1101_2
        assert_eq!(truncated_shift_sum(173, 13).unwrap(), 0b10100010);
        // with no truncation budget consumed, j = 0 contributes nothing
        assert_eq!(truncated_shift_sum(173, 0).unwrap(), 0);
    }

    #[test]
    fn exceptional_set_for_five() {
        let set = conj2_exceptional_set(5).unwrap();
        assert_eq!(set.modulus, 16);
        assert_eq!(
            set.residues.iter().copied().collect::<Vec<_>>(),
            vec![0, 10, 12, 14]
        );
    }

    #[test]
    fn rejects_non_odd_primes() {
        assert!(conj2_exceptional_set(2).is_err());
        assert!(conj2_exceptional_set(9).is_err());
        assert!(conj2_predicted_frac(5, 4).is_err());
        assert!(conj2_verify(2).is_err());
        assert!(truncated_shift_sum(2, 1).is_err());
    }

    #[test]
    fn predicted_examples() {
        assert_eq!(conj2_predicted_frac(6, 3).unwrap(), f(1, 6));
        assert_eq!(conj2_predicted_frac(8, 3).unwrap(), f(1, 2));
        assert_eq!(conj2_predicted_frac(9, 3).unwrap(), f(1, 3));
        for n in [6, 8, 9] {
            assert_eq!(
                conj2_predicted_frac(n, 3).unwrap(),
                frac_binom(n, 6).unwrap()
            );
        }
        assert!(conj2_predicted_frac(0, 3).is_err());
    }

    #[test]
    fn periods() {
        assert_eq!(conj2_period(3).unwrap(), 72);
        assert_eq!(conj2_period(5).unwrap(), 400);
        assert_eq!(conj2_period(7).unwrap(), 784);
        assert_eq!(conj2_period(11).unwrap(), 3872);
        assert_eq!(conj2_period(13).unwrap(), 5408);
    }

    #[test]
    fn verify_three() {
        let r = conj2_verify(3).unwrap();
        assert_eq!(r.checked, 72);
        assert!(r.is_clean(), "{:?}", r.violations);
        let listed = [
            8, 9, 14, 15, 16, 18, 22, 27, 30, 32, 33, 36, 38, 40, 42, 45, 46, 48, 51, 56, 60, 62,
            63, 64, 69, 70,
        ];
        assert_eq!(r.parity_exceptions.unwrap(), listed.into_iter().collect());
    }
}
