//! Binomial coefficients: exact values, `p`-adic valuations, and residues
//! modulo primes and prime powers.

use num_bigint::BigUint;
use num_traits::One;

use crate::digits::to_base;
use crate::error::{domain, Result};
use crate::modarith::{crt_basis, factorize, inv_mod, is_prime, mul_mod, pow_mod};

/// `C(n, m)` exactly; zero outside `0 ≤ m ≤ n`.
pub fn binom_exact(n: u64, m: i64) -> BigUint {
    if m < 0 || m as u64 > n {
        return BigUint::ZERO;
    }
    let m = (m as u64).min(n - m as u64);
    let mut acc = BigUint::one();
    for i in 0..m {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn check_args(n: u64, m: u64, p: u64) -> Result<()> {
    if m > n {
        return domain(format!("need m ≤ n, got m = {m}, n = {n}"));
    }
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    Ok(())
}

/// Number of borrows when subtracting `m` from `n` in base `p`, which is
/// `ν_p(C(n, m))` by Kummer's theorem.
pub fn kummer_valuation(n: u64, m: u64, p: u64) -> Result<u32> {
    check_args(n, m, p)?;
    let (mut n, mut m) = (n, m);
    let mut borrow = 0u64;
    let mut count = 0;
    while m > 0 || borrow > 0 {
        let need = m % p + borrow;
        borrow = u64::from(n % p < need);
        count += borrow as u32;
        n /= p;
        m /= p;
    }
    Ok(count)
}

/// `C(a, b) mod p` for single digits `b ≤ a < p`.
fn small_binom_mod(a: u64, b: u64, p: u64) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let (mut num, mut den) = (1u64, 1u64);
    for i in 0..b {
        num = mul_mod(num, a - i, p);
        den = mul_mod(den, i + 1, p);
    }
    mul_mod(num, inv_mod(den, p).expect("digit factorials are units"), p)
}

fn factorial_mod(d: u64, p: u64) -> u64 {
    (2..=d).fold(1 % p, |acc, i| mul_mod(acc, i, p))
}

/// `C(n, m) mod p` as the product of digit binomials.
pub fn lucas_residue(n: u64, m: u64, p: u64) -> Result<u64> {
    check_args(n, m, p)?;
    let (mut n, mut m) = (n, m);
    let mut acc = 1 % p;
    while m > 0 && acc != 0 {
        acc = mul_mod(acc, small_binom_mod(n % p, m % p, p), p);
        n /= p;
        m /= p;
    }
    Ok(acc)
}

/// The unit part of `C(n, m)` modulo `p`: the product over base-`p` digit
/// positions of `n_i! / (m_i! (n-m)_i!)`, evaluated in `Z/pZ`.
///
/// `C(n, m) ≡ (-p)^ν · anton_unit(n, m, p)` with `ν = ν_p(C(n, m))`.
pub fn anton_unit(n: u64, m: u64, p: u64) -> Result<u64> {
    check_args(n, m, p)?;
    let nd = to_base(n, p)?;
    let md = to_base(m, p)?;
    let rd = to_base(n - m, p)?;
    let mut acc = 1 % p;
    for i in 0..nd.len() {
        let num = factorial_mod(nd.digit(i), p);
        let den = mul_mod(
            factorial_mod(md.digit(i), p),
            factorial_mod(rd.digit(i), p),
            p,
        );
        acc = mul_mod(acc, mul_mod(num, inv_mod(den, p).expect("unit"), p), p);
    }
    Ok(acc)
}

/// Largest prime power we are willing to tabulate.
const MAX_TABLE: u64 = 1 << 28;

/// `C(n, m) mod p^α` through factorials with their `p`-parts removed.
///
/// Writing `x!_p` for the product of all `1 ≤ j ≤ x` with `p ∤ j`,
/// `x! = p^{ν_p(x!)} · Π_l (⌊x/p^l⌋)!_p`, and `y!_p mod p^α` is
/// `w^{⌊y/p^α⌋} · T[y mod p^α]` where `T` is the table of partial products
/// of units below `p^α` and `w = T[p^α - 1] = ±1` (generalized Wilson).
/// Building the table costs `O(p^α)`; each query is `O(log_p n)`.
#[derive(Debug, Clone)]
pub struct PrimePowerBinomial {
    p: u64,
    alpha: u32,
    modulus: u64,
    table: Vec<u64>,
    wilson_is_minus_one: bool,
}

impl PrimePowerBinomial {
    pub fn new(p: u64, alpha: u32) -> Result<Self> {
        if !is_prime(p) {
            return domain(format!("{p} is not prime"));
        }
        if alpha == 0 {
            return domain("exponent must be at least 1");
        }
        let modulus = match p.checked_pow(alpha) {
            Some(q) if q <= MAX_TABLE => q,
            _ => return domain(format!("{p}^{alpha} is too large to tabulate")),
        };
        let mut table = Vec::with_capacity(modulus as usize);
        let mut acc = 1 % modulus;
        table.push(acc);
        for j in 1..modulus {
            if j % p != 0 {
                acc = mul_mod(acc, j, modulus);
            }
            table.push(acc);
        }
        let wilson_is_minus_one = modulus > 2 && table[modulus as usize - 1] == modulus - 1;
        Ok(PrimePowerBinomial {
            p,
            alpha,
            modulus,
            table,
            wilson_is_minus_one,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `n!` with every factor of `p` removed, modulo `p^α`.
    fn unit_factorial(&self, mut x: u64) -> u64 {
        let q = self.modulus;
        let mut acc = 1 % q;
        while x > 0 {
            if self.wilson_is_minus_one && (x / q) & 1 == 1 {
                acc = (q - acc) % q;
            }
            acc = mul_mod(acc, self.table[(x % q) as usize], q);
            x /= self.p;
        }
        acc
    }

    pub fn binom(&self, n: u64, m: u64) -> Result<u64> {
        let v = kummer_valuation(n, m, self.p)?;
        if v >= self.alpha {
            return Ok(0);
        }
        let q = self.modulus;
        let den = mul_mod(self.unit_factorial(m), self.unit_factorial(n - m), q);
        let unit = mul_mod(self.unit_factorial(n), inv_mod(den, q).expect("unit"), q);
        Ok(mul_mod(unit, pow_mod(self.p, v as u64, q), q))
    }
}

pub fn binom_mod_pk(n: u64, m: u64, p: u64, alpha: u32) -> Result<u64> {
    if m > n {
        return domain(format!("need m ≤ n, got m = {m}, n = {n}"));
    }
    PrimePowerBinomial::new(p, alpha)?.binom(n, m)
}

/// `C(n, m) mod k` for composite `k`: one [`binom_mod_pk`] per prime power,
/// recombined with the CRT.
pub fn binom_mod(n: u64, m: u64, k: u64) -> Result<u64> {
    if k < 2 {
        return domain(format!("modulus must be at least 2, got {k}"));
    }
    if m > n {
        return domain(format!("need m ≤ n, got m = {m}, n = {n}"));
    }
    let factors = factorize(k);
    let moduli: Vec<u64> = factors.iter().map(|&(p, a)| p.pow(a)).collect();
    let basis = crt_basis(&moduli);
    factors
        .iter()
        .zip(&basis)
        .try_fold(0u64, |acc, (&(p, a), &c)| {
            let r = binom_mod_pk(n, m, p, a)?;
            Ok((acc + mul_mod(r, c, k)) % k)
        })
}
