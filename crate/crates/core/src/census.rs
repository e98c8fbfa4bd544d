//! Row censuses `a_{k,r}(n)` and their known closed forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::digits::to_base;
use crate::error::{domain, Error, Result};
use crate::modarith::is_prime;
use crate::scan::RowScanner;

/// Largest modulus for which dense census arrays are built.
pub const MAX_CENSUS_MODULUS: u64 = 1 << 16;

/// `counts[r]` is the number of `0 ≤ m ≤ n` with `C(n, m) ≡ r (mod k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowResidueCensus {
    pub n: u64,
    pub k: u64,
    pub counts: Vec<u64>,
}

impl RowResidueCensus {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `(r, count)` for odd residues `r`.
    pub fn odd_classes(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .skip(1)
            .step_by(2)
            .map(|(r, &c)| (r as u64, c))
    }
}

pub(crate) fn check_census_modulus(k: u64) -> Result<()> {
    if k < 2 {
        return domain(format!("modulus must be at least 2, got {k}"));
    }
    if k > MAX_CENSUS_MODULUS {
        return domain(format!("census modulus {k} exceeds {MAX_CENSUS_MODULUS}"));
    }
    Ok(())
}

/// Census of row `n` using a prepared scanner.
///
/// Rows are palindromes, so only the first half is scanned and each entry
/// off the centre is counted twice.
pub fn census_with(scanner: &RowScanner, n: u64) -> RowResidueCensus {
    let k = scanner.modulus();
    let mut counts = vec![0u64; k as usize];
    let half = n / 2;
    for (m, r) in scanner.row(n).take(half as usize + 1).enumerate() {
        let weight = if 2 * m as u64 == n { 1 } else { 2 };
        counts[r as usize] += weight;
    }
    RowResidueCensus { n, k, counts }
}

pub fn census_row(n: u64, k: u64) -> Result<RowResidueCensus> {
    check_census_modulus(k)?;
    Ok(census_with(&RowScanner::new(k)?, n))
}

/// `a_{2,1}(n) = 2^{|n|_1}` (Glaisher).
pub fn glaisher_count(n: u64) -> u128 {
    1u128 << n.count_ones()
}

/// Number of entries of row `n` not divisible by `p`: `Π (n_i + 1)` (Fine).
pub fn fine_count(n: u64, p: u64) -> Result<u128> {
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    Ok(to_base(n, p)?
        .digits()
        .iter()
        .map(|&d| d as u128 + 1)
        .product())
}

fn integral(x: BigRational, what: &str) -> Result<u128> {
    if !x.is_integer() {
        return Err(Error::Internal(format!(
            "{what} evaluated to non-integer {x}"
        )));
    }
    x.to_integer()
        .to_u128()
        .ok_or_else(|| Error::Internal(format!("{what} out of range")))
}

/// `(a_{3,1}(n), a_{3,2}(n))` via the Hexel–Sachs formulas
/// `2^{|n|_1 - 1} (3^{|n|_2} ± 1)` in base 3.
///
/// The power of two is evaluated as an exact rational, so `|n|_1 = 0` is
/// handled without special-casing; the result must come out integral.
pub fn hexel_sachs_mod3(n: u64) -> Result<(u128, u128)> {
    let d = to_base(n, 3)?;
    let ones = d.count_digit(1) as i32;
    let twos = d.count_digit(2) as u32;
    let two = BigRational::from_integer(BigInt::from(2));
    let scale = two.pow(ones - 1);
    let three_pow = BigRational::from_integer(BigInt::from(3).pow(twos));
    let one = BigRational::one();
    let a1 = integral(&scale * (&three_pow + &one), "a_{3,1}")?;
    let a2 = integral(&scale * (&three_pow - &one), "a_{3,2}")?;
    Ok((a1, a2))
}

/// `(a_{4,1}(n), a_{4,2}(n), a_{4,3}(n))` via the Davis–Webb formulas.
///
/// Defined for `n ≥ 1`; row 0 is the single entry `1`.
pub fn davis_webb_mod4(n: u64) -> Result<(u128, u128, u128)> {
    if n == 0 {
        return domain("Davis–Webb formulas need n ≥ 1");
    }
    let d = to_base(n, 2)?;
    let ones = d.count_digit(1) as u32;
    let has_11 = d.count_word(&[1, 1])? > 0;
    let half = 1u128 << (ones - 1);
    let a1 = if has_11 { half } else { half << 1 };
    let a2 = half * d.count_word(&[1, 0])? as u128;
    let a3 = if has_11 { half } else { 0 };
    Ok((a1, a2, a3))
}

/// Granville: every odd-residue count of row `n` modulo 8 is 0 or a power of 2.
pub fn granville_mod8_check(n: u64) -> bool {
    let c = census_row(n, 8).expect("8 is a valid census modulus");
    let ok = c.odd_classes().all(|(_, v)| v == 0 || v.is_power_of_two());
    ok
}
