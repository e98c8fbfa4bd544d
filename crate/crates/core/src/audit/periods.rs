//! Periods of `C(n, k) mod m` and of `Frac(C(n, m) / n)`, plus the two
//! closed forms for `m = p` and `m = 2p`.

use num_bigint::BigInt;

use crate::binom::binom_exact;
use crate::error::{domain, Result};
use crate::fraction::{frac, ReducedFraction};
use crate::modarith::{factorize, is_prime};

/// Largest power of `p` that is at most `k` (`k ≥ 1`).
fn largest_power_at_most(p: u64, k: u64) -> u64 {
    let mut pow = 1u64;
    while let Some(next) = pow.checked_mul(p) {
        if next > k {
            break;
        }
        pow = next;
    }
    pow
}

/// Minimal period of `n ↦ C(n, k) mod m`: `m · Π_{p | m} p^{⌊log_p k⌋}`.
pub fn lu_tsai_period(k: u64, m: u64) -> Result<u64> {
    if k == 0 || m == 0 {
        return domain(format!("need k, m ≥ 1, got k = {k}, m = {m}"));
    }
    Ok(period_factors(k, m)
        .iter()
        .map(|&(_, pow)| pow)
        .product::<u64>()
        * m)
}

/// `(p, p^{⌊log_p k⌋})` for each prime `p | m`.
pub fn period_factors(k: u64, m: u64) -> Vec<(u64, u64)> {
    factorize(m)
        .into_iter()
        .map(|(p, _)| (p, largest_power_at_most(p, k.max(1))))
        .collect()
}

/// A period of `n ↦ Frac(C(n, m) / n)` for `n ≥ 1`: `m` times, for each
/// prime `p | m`, the largest power of `p` strictly below `m`.
pub fn frac_period(m: u64) -> Result<u64> {
    match m {
        0 => domain("frac_period needs m ≥ 1"),
        1 => Ok(1),
        _ => lu_tsai_period(m - 1, m),
    }
}

/// `Frac(C(n, m) / n)` from the exact binomial; `C(n, m) mod n` is `n` times this.
pub fn frac_binom(n: u64, m: u64) -> Result<ReducedFraction> {
    if n == 0 {
        return domain("frac_binom needs n ≥ 1");
    }
    frac(BigInt::from(binom_exact(n, m as i64)), n)
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    Ok(())
}

/// `Frac(C(n, p) / n) = δ_{p | n} / p`.
pub fn prop_frac_p(n: u64, p: u64) -> Result<ReducedFraction> {
    check_prime(p)?;
    if n == 0 {
        return domain("need n ≥ 1");
    }
    if n.is_multiple_of(p) {
        frac(1, p)
    } else {
        Ok(ReducedFraction::zero())
    }
}

/// Base-`p` digit of `n` at position 1.
pub fn second_digit(n: u64, p: u64) -> u64 {
    (n / p) % p
}

/// `Frac(2 C(n, 2p) / n) = Frac((n₁ - 1) / p) · δ_{p | n}`, `n₁` the base-`p`
/// digit of `n` at position 1. Holds for `p = 2` too.
pub fn prop_frac2_2p(n: u64, p: u64) -> Result<ReducedFraction> {
    check_prime(p)?;
    if n == 0 {
        return domain("need n ≥ 1");
    }
    if !n.is_multiple_of(p) {
        return Ok(ReducedFraction::zero());
    }
    frac(second_digit(n, p) as i64 - 1, p)
}

/// `Frac(2 C(n, 2p) / n)` from the exact binomial.
pub fn frac_double_binom_2p(n: u64, p: u64) -> Result<ReducedFraction> {
    if n == 0 {
        return domain("need n ≥ 1");
    }
    frac(BigInt::from(binom_exact(n, 2 * p as i64)) * 2, n)
}
