//! Base-`p` digit strings, digit-word counts and `p`-adic valuations.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{domain, Result};

/// Digits of a nonnegative integer in a fixed base, least-significant first.
///
/// Zero is the empty digit string, so `|0|_w = 0` for every word `w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BaseDigits {
    base: u64,
    digits: Vec<u64>,
}

impl BaseDigits {
    /// Builds a digit string from explicit digits (least-significant first).
    pub fn new(base: u64, digits: Vec<u64>) -> Result<Self> {
        if base < 2 {
            return domain(format!("base must be at least 2, got {base}"));
        }
        if let Some(d) = digits.iter().find(|&&d| d >= base) {
            return domain(format!("digit {d} out of range for base {base}"));
        }
        if digits.last() == Some(&0) {
            return domain("digit string has a high-order zero");
        }
        Ok(BaseDigits { base, digits })
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    /// Least-significant first.
    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Digit at position `i`; positions past the top are zero.
    pub fn digit(&self, i: usize) -> u64 {
        self.digits.get(i).copied().unwrap_or(0)
    }

    pub fn value(&self) -> BigUint {
        let base = BigUint::from(self.base);
        self.digits
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, &d| acc * &base + d)
    }

    /// Number of (overlapping) occurrences of `word` in the
    /// most-significant-first reading of the digits. `word` is also given
    /// most-significant first, so `[1, 0]` is the word "10".
    pub fn count_word(&self, word: &[u64]) -> Result<usize> {
        if let Some(d) = word.iter().find(|&&d| d >= self.base) {
            return domain(format!(
                "word digit {d} out of range for base {}",
                self.base
            ));
        }
        if word.is_empty() || word.len() > self.digits.len() {
            return Ok(0);
        }
        // Reversing the word lets us scan the stored (lsf) order directly.
        let rev: Vec<u64> = word.iter().rev().copied().collect();
        Ok(self
            .digits
            .windows(rev.len())
            .filter(|w| *w == rev.as_slice())
            .count())
    }

    /// Occurrences of the single digit `d`; a cheaper `count_word(&[d])`.
    pub fn count_digit(&self, d: u64) -> usize {
        self.digits.iter().filter(|&&x| x == d).count()
    }
}

impl std::fmt::Display for BaseDigits {
    /// Most-significant first with a subscript-style base suffix, e.g. `111011_2`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.digits.is_empty() {
            return write!(f, "0_{}", self.base);
        }
        let sep = if self.base > 10 { "," } else { "" };
        let body: Vec<String> = self.digits.iter().rev().map(|d| d.to_string()).collect();
        write!(f, "{}_{}", body.join(sep), self.base)
    }
}

pub fn to_base(mut n: u64, p: u64) -> Result<BaseDigits> {
    if p < 2 {
        return domain(format!("base must be at least 2, got {p}"));
    }
    let mut digits = Vec::with_capacity(64);
    while n > 0 {
        digits.push(n % p);
        n /= p;
    }
    Ok(BaseDigits { base: p, digits })
}

/// `|n|_w` in base `p`; `w` is most-significant first.
pub fn count_word(n: u64, p: u64, w: &[u64]) -> Result<usize> {
    to_base(n, p)?.count_word(w)
}

/// `p`-adic valuation of `n ≥ 1`.
pub fn nu(p: u64, n: u64) -> Result<u32> {
    if p < 2 {
        return domain(format!("valuation base must be at least 2, got {p}"));
    }
    if n == 0 {
        return domain("valuation of 0 is undefined");
    }
    if p == 2 {
        return Ok(n.trailing_zeros());
    }
    let mut n = n;
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    Ok(v)
}

/// `p`-adic valuation of a big integer `n ≥ 1`.
pub fn nu_big(p: u64, n: &BigUint) -> Result<u32> {
    if p < 2 {
        return domain(format!("valuation base must be at least 2, got {p}"));
    }
    if n.is_zero() {
        return domain("valuation of 0 is undefined");
    }
    if p == 2 {
        return Ok(n.trailing_zeros().and_then(|t| t.to_u32()).unwrap_or(0));
    }
    let p = BigUint::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    Ok(v)
}

/// The representative of `a mod b` in `[0, b)`.
pub fn mod_nonneg(a: i64, b: u64) -> Result<u64> {
    if b == 0 {
        return domain("modulus must be at least 1");
    }
    Ok((a as i128).rem_euclid(b as i128) as u64)
}
